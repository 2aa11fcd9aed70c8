//! The Poisson superalgebra `po(2n|m)` in Θ coordinates and in ξ, η, θ
//! coordinates, its quadratic `osp(m|2n)` part and the Hamiltonian fields of
//! `h(0|2r)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseSpan, SparseVec};
use crate::operator::NormalOrderedOperator;
use crate::scalar::Scalar;
use crate::superpoly::{Gen, GeneratorSet, Monomial, Parity, Role, SuperPolynomial};

/// Elements of the Poisson superalgebra are polynomials over the spec's generators.
pub type PoissonElement = SuperPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coordinates {
    Theta,
    XiEtaTheta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoissonAlgebraSpec {
    pub n: usize,
    pub m: usize,
    pub coordinates: Coordinates,
}

impl PoissonAlgebraSpec {
    pub fn new(n: usize, m: usize, coordinates: Coordinates) -> Self {
        PoissonAlgebraSpec { n, m, coordinates }
    }

    pub fn r(&self) -> usize {
        self.m / 2
    }

    pub fn has_theta(&self) -> bool {
        self.m % 2 == 1
    }

    pub fn with_coordinates(&self, c: Coordinates) -> Self {
        PoissonAlgebraSpec { coordinates: c, ..*self }
    }

    /// Even generators `q1..qn, p1..pn`; odd ones `Theta1..Thetam`, or
    /// `xi1..xir, eta1..etar` followed by `theta` when `m` is odd.
    pub fn generator_set(&self) -> GeneratorSet {
        let mut g = GeneratorSet::new();
        for i in 1..=self.n {
            g = g.with_even(&format!("q{i}"), Role::Q);
        }
        for i in 1..=self.n {
            g = g.with_even(&format!("p{i}"), Role::P);
        }
        match self.coordinates {
            Coordinates::Theta => {
                for j in 1..=self.m {
                    g = g.with_odd(&format!("Theta{j}"), Role::Neutral);
                }
            }
            Coordinates::XiEtaTheta => {
                for j in 1..=self.r() {
                    g = g.with_odd(&format!("xi{j}"), Role::Q);
                }
                for j in 1..=self.r() {
                    g = g.with_odd(&format!("eta{j}"), Role::P);
                }
                if self.has_theta() {
                    g = g.with_odd("theta", Role::Neutral);
                }
            }
        }
        g
    }
}

/// A Poisson superalgebra with a fixed generator set.
#[derive(Clone, Debug)]
pub struct PoissonAlgebra {
    spec: PoissonAlgebraSpec,
    gens: Arc<GeneratorSet>,
}

impl PoissonAlgebra {
    pub fn new(spec: PoissonAlgebraSpec) -> Self {
        PoissonAlgebra { spec, gens: spec.generator_set().into_arc() }
    }

    pub fn spec(&self) -> PoissonAlgebraSpec {
        self.spec
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn var(&self, name: &str) -> Result<PoissonElement> {
        SuperPolynomial::var(&self.gens, name)
    }

    pub fn parse(&self, s: &str) -> Result<PoissonElement> {
        SuperPolynomial::parse(&self.gens, s)
    }

    pub fn q(&self, i: usize) -> Gen {
        Gen::Even(i)
    }

    pub fn p(&self, i: usize) -> Gen {
        Gen::Even(self.spec.n + i)
    }

    fn check(&self, f: &PoissonElement) -> Result<()> {
        if Arc::ptr_eq(&self.gens, f.generators()) || *self.gens == **f.generators() {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch("element does not belong to this Poisson algebra".into()))
        }
    }

    /// Pairs `(a, b)` contributing `∂f/∂a·∂g/∂b` to the odd block.
    fn odd_pairs(&self) -> Vec<(Gen, Gen)> {
        match self.spec.coordinates {
            Coordinates::Theta => (0..self.spec.m).map(|j| (Gen::Odd(j), Gen::Odd(j))).collect(),
            Coordinates::XiEtaTheta => {
                let r = self.spec.r();
                let mut v = Vec::new();
                for j in 0..r {
                    v.push((Gen::Odd(j), Gen::Odd(r + j)));
                    v.push((Gen::Odd(r + j), Gen::Odd(j)));
                }
                if self.spec.has_theta() {
                    v.push((Gen::Odd(2 * r), Gen::Odd(2 * r)));
                }
                v
            }
        }
    }

    fn bracket_homogeneous(&self, f: &PoissonElement, pf: Parity, g: &PoissonElement) -> PoissonElement {
        let mut out = SuperPolynomial::zero(&self.gens);
        let mul = |a: &SuperPolynomial, b: &SuperPolynomial| a.multiply(b).expect("same generators");
        for i in 0..self.spec.n {
            let (q, p) = (self.q(i), self.p(i));
            let t = mul(&f.derivative(p), &g.derivative(q)).try_sub(&mul(&f.derivative(q), &g.derivative(p)));
            out = out.try_add(&t.expect("same generators")).expect("same generators");
        }
        let mut odd = SuperPolynomial::zero(&self.gens);
        for (a, b) in self.odd_pairs() {
            let fa = f.derivative(a);
            if fa.is_zero() {
                continue;
            }
            odd = odd.try_add(&mul(&fa, &g.derivative(b))).expect("same generators");
        }
        // −(−1)^{p(f)}: +1 for odd f, −1 for even f.
        let sign = if pf == Parity::Odd { Scalar::one() } else { Scalar::from_int(-1) };
        out.try_add(&odd.scale(&sign)).expect("same generators")
    }

    /// The Poisson bracket, extended bilinearly over the parity components of `f`.
    pub fn bracket(&self, f: &PoissonElement, g: &PoissonElement) -> Result<PoissonElement> {
        self.check(f)?;
        self.check(g)?;
        let mut out = SuperPolynomial::zero(&self.gens);
        for (pf, part) in parity_parts(f) {
            out = out.try_add(&self.bracket_homogeneous(&part, pf, g))?;
        }
        Ok(out)
    }

    /// Images of this algebra's odd generators in the other coordinate system.
    fn odd_images(&self, target: &PoissonAlgebra) -> Vec<(Gen, SuperPolynomial)> {
        let r = self.spec.r();
        let half = Scalar::sqrt2().inv().expect("nonzero");
        let i = Scalar::i();
        let v = |j: usize| SuperPolynomial::from_term(&target.gens, Monomial::single(&target.gens, Gen::Odd(j)), Scalar::one());
        let comb = |a: usize, ca: Scalar, b: usize, cb: Scalar| {
            v(a).scale(&ca).try_add(&v(b).scale(&cb)).expect("same generators")
        };
        let mut out = Vec::new();
        match self.spec.coordinates {
            Coordinates::XiEtaTheta => {
                // ξ_j = (Θ_j − iΘ_{r+j})/√2, η_j = (Θ_j + iΘ_{r+j})/√2
                for j in 0..r {
                    out.push((Gen::Odd(j), comb(j, half.clone(), r + j, -(&i * &half))));
                }
                for j in 0..r {
                    out.push((Gen::Odd(r + j), comb(j, half.clone(), r + j, &i * &half)));
                }
            }
            Coordinates::Theta => {
                // Θ_j = (ξ_j + η_j)/√2, Θ_{r+j} = i(ξ_j − η_j)/√2
                for j in 0..r {
                    out.push((Gen::Odd(j), comb(j, half.clone(), r + j, half.clone())));
                }
                for j in 0..r {
                    out.push((Gen::Odd(r + j), comb(j, &i * &half, r + j, -(&i * &half))));
                }
            }
        }
        if self.spec.has_theta() {
            out.push((Gen::Odd(2 * r), v(2 * r)));
        }
        for k in 0..2 * self.spec.n {
            let e = SuperPolynomial::from_term(&target.gens, Monomial::single(&target.gens, Gen::Even(k)), Scalar::one());
            out.push((Gen::Even(k), e));
        }
        out
    }

    /// Rewrites `f` in the coordinates of `target` (same `n`, `m`).
    pub fn change_coordinates(&self, f: &PoissonElement, target: &PoissonAlgebra) -> Result<PoissonElement> {
        self.check(f)?;
        if target.spec.n != self.spec.n || target.spec.m != self.spec.m {
            return Err(Error::GeneratorMismatch("coordinate change between different po(2n|m)".into()));
        }
        if target.spec.coordinates == self.spec.coordinates {
            return Ok(f.clone());
        }
        f.substitute(&target.gens, &self.odd_images(target))
    }

    /// All quadratic monomials: a basis of the degree-0 part `osp(m|2n)`.
    pub fn osp_quadratic_basis(&self) -> OspBasis {
        let mut elements = Vec::new();
        let gens: Vec<Gen> = self.gens.gens().collect();
        for (a, &x) in gens.iter().enumerate() {
            for &y in &gens[a..] {
                if x == y && x.parity() == Parity::Odd {
                    continue;
                }
                let mx = Monomial::single(&self.gens, x);
                let my = Monomial::single(&self.gens, y);
                let (m, _) = mx.mul(&my).expect("distinct odd factors");
                elements.push(SuperPolynomial::from_term(&self.gens, m, Scalar::one()));
            }
        }
        let labels = elements.iter().map(|e| e.to_string()).collect();
        OspBasis { elements, labels }
    }

    /// Structure constants of the bracket on `basis`, or an error if the span
    /// is not closed.
    pub fn bracket_table(&self, basis: &OspBasis) -> Result<BracketTable> {
        let mut span: SparseSpan<Monomial> = SparseSpan::new();
        let mut independent = Vec::new();
        for (k, e) in basis.elements.iter().enumerate() {
            if span.insert(&to_sparse(e)) {
                independent.push(k);
            }
        }
        if independent.len() != basis.elements.len() {
            return Err(Error::InvariantViolation("basis elements are linearly dependent".into()));
        }
        let mut entries = Vec::new();
        for (a, x) in basis.elements.iter().enumerate() {
            for (b, y) in basis.elements.iter().enumerate() {
                let br = self.bracket(x, y)?;
                let coords = span.coordinates(&to_sparse(&br)).ok_or_else(|| {
                    Error::InvariantViolation(format!("{{{}, {}}} leaves the span", basis.labels[a], basis.labels[b]))
                })?;
                let terms: Vec<(String, Scalar)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (basis.labels[k].clone(), c))
                    .collect();
                if !terms.is_empty() {
                    entries.push(BracketEntry { left: basis.labels[a].clone(), right: basis.labels[b].clone(), terms });
                }
            }
        }
        Ok(BracketTable { labels: basis.labels.clone(), entries })
    }

    /// `H_f = (−1)^{p(f)} Σ_j (∂f/∂ξ_j ∂/∂η_j + ∂f/∂η_j ∂/∂ξ_j)` acting on `Λ(ξ, η)`.
    pub fn hamiltonian_quotient_field(&self, f: &PoissonElement) -> Result<NormalOrderedOperator> {
        self.check(f)?;
        if self.spec.n != 0 || self.spec.has_theta() || self.spec.coordinates != Coordinates::XiEtaTheta {
            return Err(Error::Unsupported("Hamiltonian fields are built for n = 0, even m, ξη coordinates".into()));
        }
        let r = self.spec.r();
        let mut out = NormalOrderedOperator::zero(&self.gens);
        for (pf, part) in parity_parts(f) {
            let sign = if pf == Parity::Odd { Scalar::from_int(-1) } else { Scalar::one() };
            for j in 0..r {
                for (a, b) in [(Gen::Odd(j), Gen::Odd(r + j)), (Gen::Odd(r + j), Gen::Odd(j))] {
                    let coef = part.derivative(a).scale(&sign);
                    let d = NormalOrderedOperator::derivative(&self.gens, b);
                    out = out.add(&NormalOrderedOperator::multiplication(&coef).compose(&d));
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn to_sparse(f: &SuperPolynomial) -> SparseVec<Monomial> {
    f.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Splits a polynomial into its nonzero even and odd components.
pub fn parity_parts(f: &SuperPolynomial) -> Vec<(Parity, SuperPolynomial)> {
    let mut even = SuperPolynomial::zero(f.generators());
    let mut odd = SuperPolynomial::zero(f.generators());
    for (m, c) in f.terms() {
        match m.parity() {
            Parity::Even => even.add_term(m.clone(), c.clone()),
            Parity::Odd => odd.add_term(m.clone(), c.clone()),
        }
    }
    [(Parity::Even, even), (Parity::Odd, odd)].into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

#[derive(Clone, Debug)]
pub struct OspBasis {
    pub elements: Vec<PoissonElement>,
    pub labels: Vec<String>,
}

impl OspBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `dim osp(m|2n) = n(2n+1) + m(m−1)/2 + 2nm`.
pub fn osp_dimension(n: usize, m: usize) -> usize {
    n * (2 * n + 1) + m * m.saturating_sub(1) / 2 + 2 * n * m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<(String, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTable {
    pub labels: Vec<String>,
    pub entries: Vec<BracketEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, m: usize, c: Coordinates) -> PoissonAlgebra {
        PoissonAlgebra::new(PoissonAlgebraSpec::new(n, m, c))
    }

    #[test]
    fn basic_brackets() {
        let a = alg(1, 3, Coordinates::XiEtaTheta);
        let one = SuperPolynomial::one(a.generators());
        assert_eq!(a.bracket(&a.var("p1").unwrap(), &a.var("q1").unwrap()).unwrap(), one);
        assert_eq!(a.bracket(&a.var("xi1").unwrap(), &a.var("eta1").unwrap()).unwrap(), one);
        assert_eq!(a.bracket(&a.var("theta").unwrap(), &a.var("theta").unwrap()).unwrap(), one);
    }

    #[test]
    fn theta_self_bracket_is_plus_one() {
        let a = alg(0, 2, Coordinates::Theta);
        let t = a.var("Theta1").unwrap();
        assert_eq!(a.bracket(&t, &t).unwrap(), SuperPolynomial::one(a.generators()));
    }

    #[test]
    fn coordinate_round_trip() {
        let x = alg(1, 5, Coordinates::XiEtaTheta);
        let t = alg(1, 5, Coordinates::Theta);
        let f = x.parse("xi1*eta1 + q1*theta + (1/2)*xi2*eta1*theta").unwrap();
        let back = t.change_coordinates(&x.change_coordinates(&f, &t).unwrap(), &x).unwrap();
        assert_eq!(back, f);
        let th = x.change_coordinates(&x.var("theta").unwrap(), &t).unwrap();
        assert_eq!(th, t.var("Theta5").unwrap());
    }

    #[test]
    fn osp_dimensions() {
        for (n, m, d) in [(1, 0, 3), (0, 2, 1), (1, 2, 8)] {
            let a = alg(n, m, Coordinates::XiEtaTheta);
            let b = a.osp_quadratic_basis();
            assert_eq!(b.len(), d);
            assert_eq!(osp_dimension(n, m), d);
            a.bracket_table(&b).unwrap();
        }
    }

    #[test]
    fn hamiltonian_field_of_xi() {
        let a = alg(0, 2, Coordinates::XiEtaTheta);
        let h = a.hamiltonian_quotient_field(&a.var("xi1").unwrap()).unwrap();
        let d = NormalOrderedOperator::partial(a.generators(), "eta1").unwrap();
        assert_eq!(h, d.scale(&Scalar::from_int(-1)));
        assert!(a.hamiltonian_quotient_field(&SuperPolynomial::one(a.generators())).unwrap().is_zero());
    }
}
