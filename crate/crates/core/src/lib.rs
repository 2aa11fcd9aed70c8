//! Exact symbolic engine for Poisson superalgebras `po(2n|m)`, their
//! QP-quantization, spinor-oscillator representations, Howe dual pairs and
//! semi-infinite Virasoro realizations.
//!
//! Every computation is exact over ℚ(i, √2) ([`Scalar`]).

pub mod dual_pairs;
pub mod error;
pub mod howe;
pub mod linalg;
pub mod operator;
pub mod poisson;
pub mod scalar;
pub mod stringy;
pub mod superpoly;
pub mod supermatrix;
pub mod weyl_clifford;

pub use error::{Error, Result};
pub use operator::NormalOrderedOperator;
pub use poisson::{Coordinates, PoissonAlgebra, PoissonAlgebraSpec, PoissonElement};
pub use scalar::{Rational, Scalar};
pub use superpoly::{Gen, GeneratorSet, Monomial, Parity, Role, SuperPolynomial};
