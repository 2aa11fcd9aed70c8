//! sl(2)-type actions on forms and polynomials: the Lefschetz triple,
//! spherical harmonics, joint kernels of lowering operators, Bernstein's
//! square root of the Lefschetz decomposition and the hyper-Kähler actions.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, rank, Matrix, SparseSpan, SparseVec};
use crate::operator::NormalOrderedOperator as Op;
use crate::scalar::Scalar;
use crate::supermatrix::{lie_closure, superdimension, MatrixAlgebra, SuperMatrix};
use crate::superpoly::{Gen, GeneratorSet, Monomial, Parity, Role, SuperPolynomial};
use crate::weyl_clifford::fock_basis;

pub(crate) fn poly_sparse(p: &SuperPolynomial) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Monomials of exact total degree `d`.
pub fn monomials_of_degree(gens: &GeneratorSet, d: usize) -> Vec<Monomial> {
    fock_basis(gens, d).into_iter().filter(|m| m.total_degree() as usize == d).collect()
}

/// Basis of `{v ∈ span(domain) : A v = 0 for all A ∈ ops}`.
pub fn joint_kernel(ops: &[Op], gens: &Arc<GeneratorSet>, domain: &[Monomial]) -> Vec<SuperPolynomial> {
    let mut rows: BTreeMap<(usize, Monomial), SparseVec<usize>> = BTreeMap::new();
    for (k, op) in ops.iter().enumerate() {
        for (j, m) in domain.iter().enumerate() {
            let img = op.apply(&SuperPolynomial::from_term(gens, m.clone(), Scalar::one()));
            for (mm, c) in img.terms() {
                rows.entry((k, mm.clone())).or_default().insert(j, c.clone());
            }
        }
    }
    let rows: Vec<_> = rows.into_values().collect();
    kernel_of_rows(&rows, domain.len())
        .into_iter()
        .map(|v| {
            let mut p = SuperPolynomial::zero(gens);
            for (j, c) in v.into_iter().enumerate() {
                p.add_term(domain[j].clone(), c);
            }
            p
        })
        .collect()
}

/// Matrices of `ops` on the span of the homogeneous, independent `vectors`.
pub fn restrict(ops: &[Op], vectors: &[SuperPolynomial]) -> Result<Vec<SuperMatrix>> {
    let mut span = SparseSpan::new();
    let mut odd = Vec::with_capacity(vectors.len());
    for v in vectors {
        if !span.insert(&poly_sparse(v)) {
            return Err(Error::Construction("restriction basis is dependent".into()));
        }
        odd.push(v.parity().ok_or_else(|| Error::Inhomogeneous(v.to_string()))? == Parity::Odd);
    }
    ops.iter()
        .map(|op| {
            let mut x = SuperMatrix::zeros(&odd);
            for (j, v) in vectors.iter().enumerate() {
                let coords = span
                    .coordinates(&poly_sparse(&op.apply(v)))
                    .ok_or_else(|| Error::Construction("subspace is not invariant".into()))?;
                for (i, c) in coords.into_iter().enumerate() {
                    x.m[(i, j)] = c;
                }
            }
            Ok(x)
        })
        .collect()
}

/// Superdimension of the supercommutant of a family of matrices.
pub fn commutant_sdim(mats: &[SuperMatrix], odd: &[bool]) -> (usize, usize) {
    MatrixAlgebra::gl(odd).centralizer(mats).sdim()
}

/// Elements of `span(candidates)` supercommuting with every element of `gammas`.
/// Candidates must be homogeneous.
pub fn operator_centralizer(candidates: &[Op], gammas: &[Op]) -> Vec<Op> {
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let cand: Vec<&Op> = candidates.iter().filter(|c| c.parity() == Some(p)).collect();
        let mut rows: BTreeMap<(usize, (Monomial, Monomial)), SparseVec<usize>> = BTreeMap::new();
        for (a, x) in cand.iter().enumerate() {
            for (g, gamma) in gammas.iter().enumerate() {
                for (k, c) in x.commutator(gamma).to_sparse() {
                    rows.entry((g, k)).or_default().insert(a, c);
                }
            }
        }
        let rows: Vec<_> = rows.into_values().collect();
        for v in kernel_of_rows(&rows, cand.len()) {
            let gens = cand[0].generators();
            let mut x = Op::zero(gens);
            for (a, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    x = x.add(&cand[a].scale(c));
                }
            }
            out.push(x);
        }
    }
    out
}

/// `x = c·y` for some scalar `c`; `None` if not proportional or `y = 0 ≠ x`.
pub fn op_ratio(x: &Op, y: &Op) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let (k, cy) = y.terms().next()?;
    let cx = x.to_sparse().get(k).cloned()?;
    let c = &cx / cy;
    (y.scale(&c) == *x).then_some(c)
}

/// Operators of the form `e_a ∂_b` over the listed generators.
pub fn gl_operators(gens: &Arc<GeneratorSet>, vars: &[Gen]) -> Vec<Op> {
    let mut out = Vec::new();
    for &a in vars {
        for &b in vars {
            let m = Op::multiplication(&SuperPolynomial::from_term(gens, Monomial::single(gens, a), Scalar::one()));
            out.push(m.compose(&Op::derivative(gens, b)));
        }
    }
    out
}

fn odd_var(gens: &Arc<GeneratorSet>, j: usize) -> SuperPolynomial {
    SuperPolynomial::from_term(gens, Monomial::single(gens, Gen::Odd(j)), Scalar::one())
}

fn even_var(gens: &Arc<GeneratorSet>, j: usize) -> SuperPolynomial {
    SuperPolynomial::from_term(gens, Monomial::single(gens, Gen::Even(j)), Scalar::one())
}

fn mul(a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
    a.multiply(b).expect("same generators")
}

fn sum_ops(gens: &Arc<GeneratorSet>, ops: impl IntoIterator<Item = Op>) -> Op {
    ops.into_iter().fold(Op::zero(gens), |a, b| a.add(&b))
}

fn sum_polys(gens: &Arc<GeneratorSet>, ps: impl IntoIterator<Item = SuperPolynomial>) -> SuperPolynomial {
    ps.into_iter().fold(SuperPolynomial::zero(gens), |a, b| a.try_add(&b).expect("same generators"))
}

/// Per-degree pieces `X₊^j P^{i−2j}` of an sl(2) decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DegreePiece {
    pub degree: usize,
    pub ambient_dim: usize,
    /// `(j, dim X₊^j P^{i−2j})`.
    pub components: Vec<(usize, usize)>,
    pub independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedDecomposition {
    pub pieces: Vec<DegreePiece>,
}

impl GradedDecomposition {
    /// Every degree is the independent direct sum of its components.
    pub fn is_complete(&self) -> bool {
        self.pieces.iter().all(|p| p.independent && p.components.iter().map(|c| c.1).sum::<usize>() == p.ambient_dim)
    }
}

fn sl2_decomposition(x_plus: &Op, primitives: &[Vec<SuperPolynomial>], ambient: &[usize]) -> GradedDecomposition {
    let mut pieces = Vec::new();
    for (i, &amb) in ambient.iter().enumerate() {
        let mut all = Vec::new();
        let mut components = Vec::new();
        for j in 0..=i / 2 {
            let mut vs: Vec<SuperPolynomial> = primitives[i - 2 * j].clone();
            for _ in 0..j {
                vs = vs.iter().map(|v| x_plus.apply(v)).collect();
            }
            let sp: Vec<_> = vs.iter().map(poly_sparse).collect();
            components.push((j, rank(&sp)));
            all.extend(sp);
        }
        let total: usize = components.iter().map(|c| c.1).sum();
        pieces.push(DegreePiece { degree: i, ambient_dim: amb, components, independent: rank(&all) == total });
    }
    GradedDecomposition { pieces }
}

/// Grading by integer weights on generators; used to certify that operators lower degree.
#[derive(Clone, Debug)]
pub struct Grading {
    pub even: Vec<i64>,
    pub odd: Vec<i64>,
}

impl Grading {
    pub fn standard(gens: &GeneratorSet) -> Self {
        Grading { even: vec![1; gens.n_even()], odd: vec![1; gens.n_odd()] }
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.even.iter().zip(&self.even).map(|(&e, &w)| e as i64 * w).sum::<i64>()
            + m.odd_indices().map(|j| self.odd[j]).sum::<i64>()
    }
}

/// Joint kernels of grade-lowering operators on each listed graded piece.
pub fn h_primitives(
    ops: &[Op],
    gens: &Arc<GeneratorSet>,
    grading: &Grading,
    pieces: &[(i64, Vec<Monomial>)],
) -> Result<Vec<(i64, Vec<SuperPolynomial>)>> {
    for op in ops {
        if let Some(((m, d), _)) = op.terms().find(|((m, d), _)| grading.weight(m) >= grading.weight(d)) {
            return Err(Error::Contract(format!(
                "operator does not lower the grading (term of weight {} ≥ {})",
                grading.weight(m),
                grading.weight(d)
            )));
        }
    }
    Ok(pieces.iter().map(|(deg, dom)| (*deg, joint_kernel(ops, gens, dom))).collect())
}

/// Odd generators `dq1..dqn, dp1..dpn` and, when `with_coords`, even `q1..qn, p1..pn`.
pub fn form_generators(n: usize, with_coords: bool) -> Arc<GeneratorSet> {
    let mut g = GeneratorSet::new();
    if with_coords {
        for i in 1..=n {
            g = g.with_even(&format!("q{i}"), Role::Q);
        }
        for i in 1..=n {
            g = g.with_even(&format!("p{i}"), Role::P);
        }
    }
    for i in 1..=n {
        g = g.with_odd(&format!("dq{i}"), Role::Q);
    }
    for i in 1..=n {
        g = g.with_odd(&format!("dp{i}"), Role::P);
    }
    g.into_arc()
}

/// `ω = Σ dp_i dq_i`, `X₊ = ω·`, `X₋ = Σ ∂_{dq_i} ∂_{dp_i}`, `H = [X₊, X₋]`.
fn symplectic_triple(gens: &Arc<GeneratorSet>, n: usize) -> (SuperPolynomial, Op, Op, Op) {
    let omega = sum_polys(gens, (0..n).map(|i| mul(&odd_var(gens, n + i), &odd_var(gens, i))));
    let xp = Op::multiplication(&omega);
    let xm = sum_ops(gens, (0..n).map(|i| Op::derivative(gens, Gen::Odd(i)).compose(&Op::derivative(gens, Gen::Odd(n + i)))));
    let h = xp.commutator(&xm);
    (omega, xp, xm, h)
}

#[derive(Clone, Debug)]
pub struct LefschetzTriple {
    pub n: usize,
    pub gens: Arc<GeneratorSet>,
    pub omega: SuperPolynomial,
    pub x_plus: Op,
    pub x_minus: Op,
    pub h: Op,
}

pub fn lefschetz_triple(n: usize) -> LefschetzTriple {
    let gens = form_generators(n, false);
    let (omega, x_plus, x_minus, h) = symplectic_triple(&gens, n);
    LefschetzTriple { n, gens, omega, x_plus, x_minus, h }
}

impl LefschetzTriple {
    pub fn sl2_relations_hold(&self) -> bool {
        let two = Scalar::from_int(2);
        self.h.commutator(&self.x_plus) == self.x_plus.scale(&two)
            && self.h.commutator(&self.x_minus) == self.x_minus.scale(&-two)
    }

    /// Scalar by which `H` acts on `Λ^i`, if it acts by one.
    pub fn h_on_degree(&self, i: usize) -> Option<Scalar> {
        let basis = monomials_of_degree(&self.gens, i);
        let mut val: Option<Scalar> = None;
        for m in basis {
            let v = SuperPolynomial::from_term(&self.gens, m.clone(), Scalar::one());
            let img = self.h.apply(&v);
            let c = img.coefficient(&m);
            if img != v.scale(&c) || val.as_ref().is_some_and(|x| *x != c) {
                return None;
            }
            val = Some(c);
        }
        val
    }

    /// `sp(W)` realized as the centralizer of `{X₊, X₋}` among the `e_a ∂_b`.
    pub fn symplectic_algebra(&self) -> Vec<Op> {
        let vars: Vec<Gen> = (0..2 * self.n).map(Gen::Odd).collect();
        operator_centralizer(&gl_operators(&self.gens, &vars), &[self.x_plus.clone(), self.x_minus.clone()])
    }

    pub fn primitive_forms(&self, i: usize) -> Vec<SuperPolynomial> {
        joint_kernel(std::slice::from_ref(&self.x_minus), &self.gens, &monomials_of_degree(&self.gens, i))
    }

    pub fn decomposition(&self) -> GradedDecomposition {
        let top = 2 * self.n;
        let prims: Vec<_> = (0..=top).map(|i| self.primitive_forms(i)).collect();
        let amb: Vec<_> = (0..=top).map(|i| monomials_of_degree(&self.gens, i).len()).collect();
        sl2_decomposition(&self.x_plus, &prims, &amb)
    }

    /// Supercommutant of `sp(W)` on `P^i`.
    pub fn primitive_commutant(&self, i: usize) -> Result<(usize, usize)> {
        let p = self.primitive_forms(i);
        if p.is_empty() {
            return Ok((0, 0));
        }
        let mats = restrict(&self.symplectic_algebra(), &p)?;
        Ok(commutant_sdim(&mats, &mats[0].odd))
    }
}

pub fn primitive_forms(n: usize, i: usize) -> Vec<SuperPolynomial> {
    lefschetz_triple(n).primitive_forms(i)
}

/// `S(W)` with the metric `g = Σ x_a²`, its Laplacian and `o(W)`.
#[derive(Clone, Debug)]
pub struct HarmonicSetup {
    pub d: usize,
    pub gens: Arc<GeneratorSet>,
    pub metric: SuperPolynomial,
    pub x_plus: Op,
    pub x_minus: Op,
    pub rotations: Vec<Op>,
}

pub fn harmonic_setup(d: usize) -> HarmonicSetup {
    let mut g = GeneratorSet::new();
    for a in 1..=d {
        g = g.with_even(&format!("x{a}"), Role::Q);
    }
    let gens = g.into_arc();
    let metric = sum_polys(&gens, (0..d).map(|a| mul(&even_var(&gens, a), &even_var(&gens, a))));
    let x_plus = Op::multiplication(&metric);
    let x_minus = sum_ops(&gens, (0..d).map(|a| Op::derivative(&gens, Gen::Even(a)).compose(&Op::derivative(&gens, Gen::Even(a)))));
    let mut rotations = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let xa = Op::multiplication(&even_var(&gens, a)).compose(&Op::derivative(&gens, Gen::Even(b)));
            let xb = Op::multiplication(&even_var(&gens, b)).compose(&Op::derivative(&gens, Gen::Even(a)));
            rotations.push(xa.sub(&xb));
        }
    }
    HarmonicSetup { d, gens, metric, x_plus, x_minus, rotations }
}

impl HarmonicSetup {
    pub fn harmonics(&self, i: usize) -> Vec<SuperPolynomial> {
        joint_kernel(std::slice::from_ref(&self.x_minus), &self.gens, &monomials_of_degree(&self.gens, i))
    }

    pub fn decomposition(&self, max_i: usize) -> GradedDecomposition {
        let prims: Vec<_> = (0..=max_i).map(|i| self.harmonics(i)).collect();
        let amb: Vec<_> = (0..=max_i).map(|i| monomials_of_degree(&self.gens, i).len()).collect();
        sl2_decomposition(&self.x_plus, &prims, &amb)
    }

    /// Supercommutant of `o(W)` on the harmonics of degree `i`.
    pub fn harmonic_commutant(&self, i: usize) -> Result<(usize, usize)> {
        let p = self.harmonics(i);
        let mats = restrict(&self.rotations, &p)?;
        Ok(commutant_sdim(&mats, &vec![false; p.len()]))
    }
}

pub fn spherical_harmonics(d: usize, i: usize) -> Vec<SuperPolynomial> {
    harmonic_setup(d).harmonics(i)
}

/// Proportionality constants among the osp(1|2) generators.
#[derive(Clone, Debug, Serialize)]
pub struct BernsteinCertificate {
    pub n: usize,
    pub hbar: Scalar,
    pub closure_sdim: (usize, usize),
    /// `[D₊, D₊] = c·X₊`.
    pub dplus_square: Option<Scalar>,
    /// `[D₋, D₋] = c·X₋`.
    pub dminus_square: Option<Scalar>,
    /// `[D₊, D₋] = c·H`.
    pub dplus_dminus: Option<Scalar>,
    /// `[H, D₊] = c·D₊`.
    pub h_dplus: Option<Scalar>,
    /// `[X₊, D₋] = c·D₊`.
    pub xplus_dminus: Option<Scalar>,
    pub degenerate: bool,
    pub relations_hold: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BernsteinOperators {
    pub gens: Arc<GeneratorSet>,
    pub x_plus: Op,
    pub x_minus: Op,
    pub h: Op,
    pub d_plus: Op,
    pub d_minus: Op,
}

/// Flat model: `D₊ = d + α`, `α = ħ Σ p_i dq_i`, `D₋ = [X₋, D₊]`.
pub fn bernstein_operators(n: usize, hbar: &Scalar) -> BernsteinOperators {
    let gens = form_generators(n, true);
    let (_, x_plus, x_minus, h) = symplectic_triple(&gens, n);
    let d = sum_ops(
        &gens,
        (0..2 * n).map(|k| Op::multiplication(&odd_var(&gens, k)).compose(&Op::derivative(&gens, Gen::Even(k)))),
    );
    let alpha = sum_polys(&gens, (0..n).map(|i| mul(&even_var(&gens, n + i), &odd_var(&gens, i)))).scale(hbar);
    let d_plus = d.add(&Op::multiplication(&alpha));
    let d_minus = x_minus.commutator(&d_plus);
    BernsteinOperators { gens, x_plus, x_minus, h, d_plus, d_minus }
}

fn op_closure(gens: &[Op], limit: usize) -> Result<Vec<Op>> {
    lie_closure(gens, |a, b| a.commutator(b), |a| a.to_sparse(), |a| a.parity(), limit)
}

pub fn bernstein_osp12(n: usize, hbar: &Scalar) -> Result<BernsteinCertificate> {
    let b = bernstein_operators(n, hbar);
    let closure = op_closure(&[b.x_plus.clone(), b.x_minus.clone(), b.d_plus.clone(), b.d_minus.clone()], 64);
    let closure_sdim = match &closure {
        Ok(c) => superdimension(c, |x| x.parity()),
        Err(_) => (usize::MAX, usize::MAX),
    };
    let dplus_square = op_ratio(&b.d_plus.commutator(&b.d_plus), &b.x_plus);
    let dminus_square = op_ratio(&b.d_minus.commutator(&b.d_minus), &b.x_minus);
    let dplus_dminus = op_ratio(&b.d_plus.commutator(&b.d_minus), &b.h);
    let h_dplus = op_ratio(&b.h.commutator(&b.d_plus), &b.d_plus);
    let xplus_dminus = op_ratio(&b.x_plus.commutator(&b.d_minus), &b.d_plus);
    let two = Scalar::from_int(2);
    let checks: Vec<(&str, bool)> = vec![
        ("[H, X+] = 2X+", b.h.commutator(&b.x_plus) == b.x_plus.scale(&two)),
        ("[H, X-] = -2X-", b.h.commutator(&b.x_minus) == b.x_minus.scale(&-two.clone())),
        ("[X+, D+] = 0", b.x_plus.commutator(&b.d_plus).is_zero()),
        ("[X-, D-] = 0", b.x_minus.commutator(&b.d_minus).is_zero()),
        ("[D+, D+] ∝ X+ (nonzero)", dplus_square.as_ref().is_some_and(|c| !c.is_zero())),
        ("[D-, D-] ∝ X- (nonzero)", dminus_square.as_ref().is_some_and(|c| !c.is_zero())),
        ("[D+, D-] ∝ H (nonzero)", dplus_dminus.as_ref().is_some_and(|c| !c.is_zero())),
        ("[H, D+] ∝ D+ (nonzero)", h_dplus.as_ref().is_some_and(|c| !c.is_zero())),
        ("[X+, D-] ∝ D+ (nonzero)", xplus_dminus.as_ref().is_some_and(|c| !c.is_zero())),
        ("closure superdimension (3|2)", closure_sdim == (3, 2)),
    ];
    let first_failure = checks.iter().find(|c| !c.1).map(|c| c.0.to_string());
    Ok(BernsteinCertificate {
        n,
        hbar: hbar.clone(),
        closure_sdim,
        degenerate: dplus_square.as_ref().is_some_and(|c| c.is_zero()),
        dplus_square,
        dminus_square,
        dplus_dminus,
        h_dplus,
        xplus_dminus,
        relations_hold: first_failure.is_none(),
        first_failure,
    })
}

/// Left multiplication by `i` and `j` on `H^n = R^{4n}`, block by block in the basis `1, i, j, k`.
#[derive(Clone, Debug)]
pub struct QuaternionicStructure {
    pub i: Matrix,
    pub j: Matrix,
}

impl QuaternionicStructure {
    pub fn standard(n: usize) -> Self {
        let d = 4 * n;
        let mut i = Matrix::zeros(d, d);
        let mut j = Matrix::zeros(d, d);
        // column c is the image of the c-th basis vector
        let li = [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)];
        let lj = [(0, 2, 1), (1, 3, -1), (2, 0, -1), (3, 1, 1)];
        for b in 0..n {
            for &(src, dst, s) in &li {
                i[(4 * b + dst, 4 * b + src)] = Scalar::from_int(s);
            }
            for &(src, dst, s) in &lj {
                j[(4 * b + dst, 4 * b + src)] = Scalar::from_int(s);
            }
        }
        QuaternionicStructure { i, j }
    }

    pub fn dim(&self) -> usize {
        self.i.rows
    }

    /// `W(u, v) = g(Iu, v)` for the complex structure `I`; entries `W_ab = I_ba`.
    pub fn form(m: &Matrix) -> Matrix {
        m.transpose()
    }

    /// `I² = J² = −1`, `IJ = −JI`, both forms skew and nondegenerate.
    pub fn is_valid(&self) -> bool {
        let d = self.dim();
        let minus = Matrix::identity(d).scale(&Scalar::from_int(-1));
        let skew = |m: &Matrix| m.transpose() == m.scale(&Scalar::from_int(-1));
        self.i.mul(&self.i) == minus
            && self.j.mul(&self.j) == minus
            && self.i.mul(&self.j) == self.j.mul(&self.i).scale(&Scalar::from_int(-1))
            && [&self.i, &self.j].iter().all(|m| {
                let w = Self::form(m);
                skew(&w) && w.rank() == d
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperKahlerReport {
    pub n: usize,
    pub structure_valid: bool,
    pub even_closure_dim: usize,
    pub killing_rank: usize,
    pub cartan_rank: usize,
    pub super_closure_sdim: (usize, usize),
    /// Even closure with the third form `ω_K`, `K = IJ`, added.
    pub three_form_even_closure_dim: usize,
    /// `(i, dim ker X⁻₁ ∩ ker X⁻₂ ∩ Λ^i)`.
    pub hk_primitive_dims: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct HyperKahlerOperators {
    pub gens: Arc<GeneratorSet>,
    pub x_plus: Vec<Op>,
    pub x_minus: Vec<Op>,
    pub d_plus: Vec<Op>,
    pub d_minus: Vec<Op>,
}

/// One triple per complex structure:
/// `X₊ = Σ_{a<b} W_ab e_a e_b`, `X₋ = Σ_{a<b} W_ab ∂_b ∂_a`, `D₊ = d + ħ Σ_{a<b} W_ab x_a e_b`.
pub fn hyperkahler_operators(structures: &[Matrix], hbar: &Scalar) -> HyperKahlerOperators {
    let d = structures[0].rows;
    let mut g = GeneratorSet::new();
    for a in 1..=d {
        g = g.with_even(&format!("x{a}"), Role::Q);
    }
    for a in 1..=d {
        g = g.with_odd(&format!("e{a}"), Role::Q);
    }
    let gens = g.into_arc();
    let ext_d = sum_ops(&gens, (0..d).map(|a| Op::multiplication(&odd_var(&gens, a)).compose(&Op::derivative(&gens, Gen::Even(a)))));
    let build = |m: &Matrix| {
        let w = QuaternionicStructure::form(m);
        let mut omega = SuperPolynomial::zero(&gens);
        let mut alpha = SuperPolynomial::zero(&gens);
        let mut xm = Op::zero(&gens);
        for a in 0..d {
            for b in a + 1..d {
                let c = &w[(a, b)];
                if c.is_zero() {
                    continue;
                }
                omega = omega.try_add(&mul(&odd_var(&gens, a), &odd_var(&gens, b)).scale(c)).unwrap();
                alpha = alpha.try_add(&mul(&even_var(&gens, a), &odd_var(&gens, b)).scale(&(c * hbar))).unwrap();
                xm = xm.add(&Op::derivative(&gens, Gen::Odd(b)).compose(&Op::derivative(&gens, Gen::Odd(a))).scale(c));
            }
        }
        let xp = Op::multiplication(&omega);
        let dp = ext_d.add(&Op::multiplication(&alpha));
        let dm = xm.commutator(&dp);
        (xp, xm, dp, dm)
    };
    let mut out = HyperKahlerOperators { gens: gens.clone(), x_plus: vec![], x_minus: vec![], d_plus: vec![], d_minus: vec![] };
    for m in structures {
        let (xp, xm, dp, dm) = build(m);
        out.x_plus.push(xp);
        out.x_minus.push(xm);
        out.d_plus.push(dp);
        out.d_minus.push(dm);
    }
    out
}

/// `ad` matrices of a basis in its own coordinates.
pub fn adjoint_matrices(basis: &[Op]) -> Result<Vec<Matrix>> {
    let mut span = SparseSpan::new();
    for b in basis {
        span.insert(&b.to_sparse());
    }
    let n = basis.len();
    basis
        .iter()
        .map(|x| {
            let mut m = Matrix::zeros(n, n);
            for (j, y) in basis.iter().enumerate() {
                let c = span
                    .coordinates(&x.commutator(y).to_sparse())
                    .ok_or_else(|| Error::Construction("basis is not closed".into()))?;
                for (i, v) in c.into_iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            Ok(m)
        })
        .collect()
}

/// Rank of the Killing form of a Lie algebra given by a closed basis.
pub fn killing_rank(ad: &[Matrix]) -> usize {
    let n = ad.len();
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = ad[i].mul(&ad[j]);
            k[(i, j)] = (0..n).map(|t| p[(t, t)].clone()).sum();
        }
    }
    k.rank()
}

/// Minimal dimension of `ker ad(x)` over seeded random integer combinations `x`.
pub fn generic_centralizer_dim(ad: &[Matrix], trials: usize, seed: u64) -> usize {
    let n = ad.len();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut best = n;
    for _ in 0..trials {
        let mut m = Matrix::zeros(n, n);
        for a in ad {
            m = m.add(&a.scale(&Scalar::from_int(rng.gen_range(-9..=9))));
        }
        best = best.min(n - m.rank());
    }
    best
}

pub fn hyperkahler_actions(n: usize, hbar: &Scalar) -> Result<HyperKahlerReport> {
    let q = QuaternionicStructure::standard(n);
    let ops = hyperkahler_operators(&[q.i.clone(), q.j.clone()], hbar);
    let even = op_closure(&[ops.x_plus.clone(), ops.x_minus.clone()].concat(), 200)?;
    let ad = adjoint_matrices(&even)?;
    let sup = op_closure(&[ops.x_plus.clone(), ops.x_minus.clone(), ops.d_plus.clone(), ops.d_minus.clone()].concat(), 200)?;
    let ops3 = hyperkahler_operators(&[q.i.clone(), q.j.clone(), q.i.mul(&q.j)], hbar);
    let even3 = op_closure(&[ops3.x_plus.clone(), ops3.x_minus.clone()].concat(), 200)?;
    let xm = &ops.x_minus;
    let hk_primitive_dims = (0..=4 * n)
        .map(|i| {
            let dom: Vec<Monomial> = monomials_of_degree(&ops.gens, i).into_iter().filter(|m| m.even.iter().all(|&e| e == 0)).collect();
            (i, joint_kernel(xm, &ops.gens, &dom).len())
        })
        .collect();
    Ok(HyperKahlerReport {
        n,
        structure_valid: q.is_valid(),
        even_closure_dim: even.len(),
        killing_rank: killing_rank(&ad),
        cartan_rank: generic_centralizer_dim(&ad, 8, 7),
        super_closure_sdim: superdimension(&sup, |x| x.parity()),
        three_form_even_closure_dim: even3.len(),
        hk_primitive_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lefschetz_small() {
        let t = lefschetz_triple(1);
        assert_eq!(t.x_minus.apply(&t.omega), SuperPolynomial::one(&t.gens));
        assert!(t.sl2_relations_hold());
        assert_eq!(t.h_on_degree(0), Some(Scalar::from_int(-1)));
        assert_eq!(primitive_forms(2, 2).len(), 5);
        assert_eq!(primitive_forms(1, 2).len(), 0);
    }

    #[test]
    fn harmonics_small() {
        assert_eq!(spherical_harmonics(3, 2).len(), 5);
        assert_eq!(spherical_harmonics(2, 4).len(), 2);
        assert_eq!(spherical_harmonics(5, 0).len(), 1);
    }

    #[test]
    fn quaternions() {
        assert!(QuaternionicStructure::standard(1).is_valid());
        assert!(QuaternionicStructure::standard(2).is_valid());
    }
}
