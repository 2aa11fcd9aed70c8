//! QP-quantization of `po(2n|m)` into differential operators on the Fock
//! space, spinor bases of `o(2k)`, `o(2k+1)`, vacuum weights and principal
//! `sl(2)` embeddings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::operator::NormalOrderedOperator;
use crate::poisson::{Coordinates, PoissonAlgebra, PoissonAlgebraSpec, PoissonElement};
use crate::scalar::{Rational, Scalar};
use crate::superpoly::{Gen, GeneratorSet, Monomial, Role, SuperPolynomial};

/// Fock variables: `q1..qn`, `xi1..xir` and, for odd `m`, `theta`.
pub fn fock_generators(spec: &PoissonAlgebraSpec) -> GeneratorSet {
    let mut g = GeneratorSet::new();
    for i in 1..=spec.n {
        g = g.with_even(&format!("q{i}"), Role::Q);
    }
    for j in 1..=spec.r() {
        g = g.with_odd(&format!("xi{j}"), Role::Q);
    }
    if spec.has_theta() {
        g = g.with_odd("theta", Role::Neutral);
    }
    g
}

/// All Fock monomials of total degree ≤ `max_degree` (odd variables count 1).
pub fn fock_basis(gens: &GeneratorSet, max_degree: usize) -> Vec<Monomial> {
    let ne = gens.n_even();
    let no = gens.n_odd();
    let mut out = Vec::new();
    let mut even = vec![0i32; ne];
    fn rec(i: usize, left: usize, even: &mut Vec<i32>, acc: &mut Vec<Vec<i32>>) {
        if i == even.len() {
            acc.push(even.clone());
            return;
        }
        for e in 0..=left {
            even[i] = e as i32;
            rec(i + 1, left - e, even, acc);
        }
        even[i] = 0;
    }
    let mut evens = Vec::new();
    rec(0, max_degree, &mut even, &mut evens);
    for odd in 0..(1u64 << no) {
        for e in &evens {
            let m = Monomial { even: e.clone(), odd };
            if m.total_degree() as usize <= max_degree {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// QP-quantization of one Poisson algebra (ξ, η, θ coordinates).
///
/// `Q ↦ Q̂`, `P ↦ ħ∂/∂Q` after moving Q-factors left, then θ, then P-factors;
/// `θ ↦ c(θ̂ + ∂/∂θ)` with `c² = ħ/2`, so that `[Q(θ), Q(θ)] = ħ·Q({θ, θ})`.
#[derive(Clone, Debug)]
pub struct Quantizer {
    algebra: PoissonAlgebra,
    fock: Arc<GeneratorSet>,
    hbar: Scalar,
    theta_coef: Scalar,
}

impl Quantizer {
    pub fn new(algebra: &PoissonAlgebra, hbar: Scalar) -> Result<Self> {
        let spec = algebra.spec();
        if spec.coordinates != Coordinates::XiEtaTheta {
            return Err(Error::Convention("quantization needs ξ, η, θ coordinates; convert first".into()));
        }
        let theta_coef = if spec.has_theta() {
            let h = hbar
                .as_rational()
                .ok_or_else(|| Error::Unsupported("θ quantization needs a rational ħ".into()))?;
            let half = h / Rational::from_integer(2.into());
            Scalar::sqrt_of_rational(&half)
                .ok_or_else(|| Error::Unsupported(format!("√(ħ/2) for ħ = {hbar} is outside ℚ(i,√2)")))?
        } else {
            Scalar::zero()
        };
        Ok(Quantizer { algebra: algebra.clone(), fock: fock_generators(&spec).into_arc(), hbar, theta_coef })
    }

    pub fn algebra(&self) -> &PoissonAlgebra {
        &self.algebra
    }

    pub fn fock(&self) -> &Arc<GeneratorSet> {
        &self.fock
    }

    pub fn hbar(&self) -> &Scalar {
        &self.hbar
    }

    pub fn vacuum(&self) -> SuperPolynomial {
        SuperPolynomial::one(&self.fock)
    }

    pub fn theta_operator(&self) -> NormalOrderedOperator {
        let spec = self.algebra.spec();
        let t = Gen::Odd(spec.r());
        let one = Monomial::one(&self.fock);
        let single = Monomial::single(&self.fock, t);
        NormalOrderedOperator::from_terms(
            &self.fock,
            [((single.clone(), one.clone()), self.theta_coef.clone()), ((one, single), self.theta_coef.clone())],
        )
    }

    fn quantize_monomial(&self, m: &Monomial) -> NormalOrderedOperator {
        let spec = self.algebra.spec();
        let (n, r) = (spec.n, spec.r());
        let mut mq = Monomial::one(&self.fock);
        let mut dp = Monomial::one(&self.fock);
        mq.even.copy_from_slice(&m.even[..n]);
        dp.even.copy_from_slice(&m.even[n..]);
        let xi_mask = (1u64 << r) - 1;
        mq.odd = m.odd & xi_mask;
        dp.odd = (m.odd >> r) & xi_mask;
        let has_theta = spec.has_theta() && (m.odd >> (2 * r)) & 1 == 1;
        let p_degree = dp.total_degree() as u32;
        let mut coef = self.hbar.pow(p_degree);
        // θ sits after the η's in canonical order and must move in front of them.
        if has_theta && dp.odd.count_ones() % 2 == 1 {
            coef = -coef;
        }
        if !has_theta {
            return NormalOrderedOperator::from_terms(&self.fock, [((mq, dp), coef)]);
        }
        let left = NormalOrderedOperator::from_terms(&self.fock, [((mq, Monomial::one(&self.fock)), coef)]);
        let right = NormalOrderedOperator::from_terms(&self.fock, [((Monomial::one(&self.fock), dp), Scalar::one())]);
        left.compose(&self.theta_operator()).compose(&right)
    }

    pub fn quantize(&self, f: &PoissonElement) -> Result<NormalOrderedOperator> {
        if !(Arc::ptr_eq(f.generators(), self.algebra.generators()) || **f.generators() == **self.algebra.generators()) {
            return Err(Error::GeneratorMismatch("element is not in the quantized algebra".into()));
        }
        let mut out = NormalOrderedOperator::zero(&self.fock);
        for (m, c) in f.terms() {
            out = out.add(&self.quantize_monomial(m).scale(c));
        }
        Ok(out)
    }

    /// The scalar `s` with `[Q(f), Q(g)] − ħ·Q({f, g}) = s·Id`.
    pub fn quantization_defect(&self, f: &PoissonElement, g: &PoissonElement) -> Result<Scalar> {
        let lhs = self.quantize(f)?.commutator(&self.quantize(g)?);
        let rhs = self.quantize(&self.algebra.bracket(f, g)?)?.scale(&self.hbar);
        let d = lhs.sub(&rhs);
        d.as_scalar()
            .ok_or_else(|| Error::InvariantViolation(format!("quantization defect is not scalar: {d}")))
    }
}

/// Rank of the quantized image of `po(0|m)` and its `q`-type certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub m: usize,
    pub dimension: usize,
    /// For odd `m`: every image operator supercommutes with `J = i(θ̂ + ∂/∂θ)`,
    /// where `po(0|m) ⊂ po(0|m+1)` omits `Θ_k` (`k = (m+1)/2`) and θ is the
    /// `k`-th Fock variable.
    pub j_supercommutes: Option<bool>,
    /// For odd `m`: rank in the direct realization `θ ↦ (θ̂ + ∂/∂θ)/√2`.
    pub direct_dimension: Option<usize>,
    /// For odd `m`: whether the direct image supercommutes with `i(θ̂ − ∂/∂θ)`.
    pub direct_j_supercommutes: Option<bool>,
    /// For odd `m`: whether the direct image supercommutes with `i(θ̂ + ∂/∂θ)`.
    pub direct_printed_j_supercommutes: Option<bool>,
}

fn all_monomials(alg: &PoissonAlgebra) -> Vec<PoissonElement> {
    let g = alg.generators();
    (0..(1u64 << g.n_odd()))
        .map(|odd| {
            let m = Monomial { even: vec![0; g.n_even()], odd };
            SuperPolynomial::from_term(g, m, Scalar::one())
        })
        .collect()
}

fn j_operator(fock: &Arc<GeneratorSet>, var: usize, sign: i64) -> NormalOrderedOperator {
    let one = Monomial::one(fock);
    let single = Monomial::single(fock, Gen::Odd(var));
    let i = Scalar::i();
    NormalOrderedOperator::from_terms(fock, [((single.clone(), one.clone()), i.clone()), ((one, single), &i * &Scalar::from_int(sign))])
}

/// Dimension of `Q(po(0|m))` at `ħ = 1`.
pub fn image_dimension(spec: &PoissonAlgebraSpec) -> Result<ImageReport> {
    if spec.n != 0 {
        return Err(Error::Unsupported("image dimension is computed for n = 0".into()));
    }
    let m = spec.m;
    let span_rank = |ops: &[NormalOrderedOperator]| rank(&ops.iter().map(|o| o.to_sparse()).collect::<Vec<_>>());
    if m % 2 == 0 {
        let alg = PoissonAlgebra::new(PoissonAlgebraSpec::new(0, m, Coordinates::XiEtaTheta));
        let q = Quantizer::new(&alg, Scalar::one())?;
        let ops = all_monomials(&alg).iter().map(|f| q.quantize(f)).collect::<Result<Vec<_>>>()?;
        return Ok(ImageReport {
            m,
            dimension: span_rank(&ops),
            j_supercommutes: None,
            direct_dimension: None,
            direct_j_supercommutes: None,
            direct_printed_j_supercommutes: None,
        });
    }
    let k = m.div_ceil(2);
    let big_theta = PoissonAlgebra::new(PoissonAlgebraSpec::new(0, 2 * k, Coordinates::Theta));
    let big = PoissonAlgebra::new(PoissonAlgebraSpec::new(0, 2 * k, Coordinates::XiEtaTheta));
    let q = Quantizer::new(&big, Scalar::one())?;
    let omitted = k - 1;
    let mut ops = Vec::new();
    for f in all_monomials(&big_theta) {
        let odd = f.terms().next().map(|(mm, _)| mm.odd).unwrap_or(0);
        if (odd >> omitted) & 1 == 1 {
            continue;
        }
        ops.push(q.quantize(&big_theta.change_coordinates(&f, &big)?)?);
    }
    let j = j_operator(q.fock(), k - 1, 1);
    let j_ok = ops.iter().all(|o| o.commutator(&j).is_zero());

    let small = PoissonAlgebra::new(PoissonAlgebraSpec::new(0, m, Coordinates::XiEtaTheta));
    let qs = Quantizer::new(&small, Scalar::one())?;
    let direct = all_monomials(&small).iter().map(|f| qs.quantize(f)).collect::<Result<Vec<_>>>()?;
    let theta_var = small.spec().r();
    let j_minus = j_operator(qs.fock(), theta_var, -1);
    let j_plus = j_operator(qs.fock(), theta_var, 1);
    Ok(ImageReport {
        m,
        dimension: span_rank(&ops),
        j_supercommutes: Some(j_ok),
        direct_dimension: Some(span_rank(&direct)),
        direct_j_supercommutes: Some(direct.iter().all(|o| o.commutator(&j_minus).is_zero())),
        direct_printed_j_supercommutes: Some(direct.iter().all(|o| o.commutator(&j_plus).is_zero())),
    })
}

/// A Chevalley-type generating set inside a Poisson algebra.
#[derive(Clone, Debug)]
pub struct ChevalleySet {
    pub name: String,
    pub algebra: PoissonAlgebra,
    pub raising: Vec<PoissonElement>,
    pub lowering: Vec<PoissonElement>,
    /// Cartan elements as displayed for the set (may differ from the brackets).
    pub cartan: Vec<PoissonElement>,
}

impl ChevalleySet {
    pub fn rank(&self) -> usize {
        self.raising.len()
    }

    /// `{X⁺_i, X⁻_i}` for each `i`.
    pub fn computed_cartan(&self) -> Result<Vec<PoissonElement>> {
        self.raising.iter().zip(&self.lowering).map(|(x, y)| self.algebra.bracket(x, y)).collect()
    }

    /// Checks `{X⁺_i, X⁻_j} = 0` (i ≠ j), `{H_i, X±_j} = ±A_{ji} X±_j` with
    /// `H_i = {X⁺_i, X⁻_i}`, and returns the matrix `A`.
    pub fn cartan_matrix(&self) -> Result<Matrix> {
        let n = self.rank();
        let h = self.computed_cartan()?;
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.algebra.bracket(&self.raising[i], &self.lowering[j])?.is_zero() {
                    return Err(Error::Construction(format!("{}: {{X+{}, X-{}}} ≠ 0", self.name, i + 1, j + 1)));
                }
                let up = self.algebra.bracket(&h[i], &self.raising[j])?;
                let down = self.algebra.bracket(&h[i], &self.lowering[j])?;
                let c = proportionality(&up, &self.raising[j]).ok_or_else(|| {
                    Error::Construction(format!("{}: {{H{}, X+{}}} not proportional to X+{}", self.name, i + 1, j + 1, j + 1))
                })?;
                let d = proportionality(&down, &self.lowering[j]).ok_or_else(|| {
                    Error::Construction(format!("{}: {{H{}, X-{}}} not proportional to X-{}", self.name, i + 1, j + 1, j + 1))
                })?;
                if c != -d {
                    return Err(Error::Construction(format!("{}: asymmetric weights at ({}, {})", self.name, i + 1, j + 1)));
                }
                a[(j, i)] = c;
            }
        }
        Ok(a)
    }
}

/// `s` with `x = s·y`, if it exists (`y ≠ 0`).
pub fn proportionality(x: &SuperPolynomial, y: &SuperPolynomial) -> Option<Scalar> {
    let (m, c) = y.terms().next()?;
    let s = x.coefficient(m).checked_div(c).ok()?;
    (x.try_sub(&y.scale(&s)).ok()?.is_zero()).then_some(s)
}

/// Cartan matrix of type `D_k` (`odd = false`) or `B_k` (`odd = true`),
/// in the convention `A_{ij} = ⟨α_i^∨, α_j⟩` indexed as `(row j, column i)`
/// by [`ChevalleySet::cartan_matrix`].
pub fn classical_cartan_matrix(k: usize, kind: char) -> Matrix {
    let mut a = Matrix::zeros(k, k);
    for i in 0..k {
        a[(i, i)] = Scalar::from_int(2);
        if i + 1 < k {
            a[(i, i + 1)] = Scalar::from_int(-1);
            a[(i + 1, i)] = Scalar::from_int(-1);
        }
    }
    match kind {
        'D' if k >= 3 => {
            a[(k - 2, k - 1)] = Scalar::zero();
            a[(k - 1, k - 2)] = Scalar::zero();
            a[(k - 3, k - 1)] = Scalar::from_int(-1);
            a[(k - 1, k - 3)] = Scalar::from_int(-1);
        }
        'D' if k == 2 => {
            a[(0, 1)] = Scalar::zero();
            a[(1, 0)] = Scalar::zero();
        }
        'B' if k >= 2 => a[(k - 2, k - 1)] = Scalar::from_int(-2),
        'C' if k >= 2 => a[(k - 1, k - 2)] = Scalar::from_int(-2),
        _ => {}
    }
    a
}

/// The spinor generating sets of `o(2k)` (`odd = false`, `k ≥ 2`) and
/// `o(2k+1)` (`odd = true`, `k ≥ 1`) inside `po(0|2k)` resp. `po(0|2k+1)`.
pub fn spinor_basis_o(k: usize, odd: bool) -> Result<ChevalleySet> {
    if (!odd && k < 2) || k == 0 {
        return Err(Error::Unsupported(format!("spinor basis needs k ≥ {}", if odd { 1 } else { 2 })));
    }
    let m = if odd { 2 * k + 1 } else { 2 * k };
    let alg = PoissonAlgebra::new(PoissonAlgebraSpec::new(0, m, Coordinates::XiEtaTheta));
    let p = |s: String| alg.parse(&s);
    let mut raising = Vec::new();
    let mut lowering = Vec::new();
    let mut cartan = Vec::new();
    for i in 1..k {
        raising.push(p(format!("xi{}*eta{}", i + 1, i))?);
        lowering.push(p(format!("xi{}*eta{}", i, i + 1))?);
        cartan.push(p(format!("xi{i}*eta{i} - xi{}*eta{}", i + 1, i + 1))?);
    }
    if odd {
        raising.push(p(format!("(r2)*eta{k}*theta"))?);
        lowering.push(p(format!("(r2)*theta*xi{k}"))?);
        cartan.push(p(format!("(2)*xi{k}*eta{k}"))?);
    } else {
        raising.push(p(format!("eta{k}*eta{}", k - 1))?);
        lowering.push(p(format!("xi{}*xi{k}", k - 1))?);
        cartan.push(p(format!("xi{0}*eta{0} + xi{k}*eta{k}", k - 1))?);
    }
    let name = if odd { format!("o({})", 2 * k + 1) } else { format!("o({})", 2 * k) };
    Ok(ChevalleySet { name, algebra: alg, raising, lowering, cartan })
}

/// Chevalley set of `sp(2n)` in `po(2n|0)`: `X⁺_i = q_i p_{i+1}`,
/// `X⁻_i = q_{i+1} p_i` (i < n), `X⁺_n = ½q_n²`, `X⁻_n = −½p_n²`.
pub fn sp_chevalley_set(n: usize) -> Result<ChevalleySet> {
    if n == 0 {
        return Err(Error::Unsupported("sp(0)".into()));
    }
    let alg = PoissonAlgebra::new(PoissonAlgebraSpec::new(n, 0, Coordinates::XiEtaTheta));
    let p = |s: String| alg.parse(&s);
    let mut raising = Vec::new();
    let mut lowering = Vec::new();
    for i in 1..n {
        raising.push(p(format!("q{i}*p{}", i + 1))?);
        lowering.push(p(format!("q{}*p{i}", i + 1))?);
    }
    raising.push(p(format!("(1/2)*q{n}^2"))?);
    lowering.push(p(format!("(-1/2)*p{n}^2"))?);
    let mut set = ChevalleySet { name: format!("sp({})", 2 * n), algebra: alg, raising, lowering, cartan: Vec::new() };
    set.cartan = set.computed_cartan()?;
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeightReport {
    pub algebra: String,
    /// Eigenvalues of `H_i = [Q(X⁺_i), Q(X⁻_i)]` on the vacuum.
    pub weights: Vec<(String, Scalar)>,
    /// Eigenvalues on the vacuum of the quantized displayed Cartan elements.
    pub displayed_cartan_weights: Vec<(String, Scalar)>,
    pub raising_annihilate: Vec<(String, bool)>,
}

fn eigenvalue_on(op: &NormalOrderedOperator, v: &SuperPolynomial) -> Option<Scalar> {
    let w = op.apply(v);
    if w.is_zero() {
        return Some(Scalar::zero());
    }
    proportionality(&w, v)
}

/// Vacuum weight of a quantized Chevalley set.
pub fn highest_weight_of_vacuum(set: &ChevalleySet, hbar: Scalar) -> Result<HighestWeightReport> {
    let q = Quantizer::new(&set.algebra, hbar)?;
    let vac = q.vacuum();
    let mut raising_annihilate = Vec::new();
    let mut plus = Vec::new();
    for (i, x) in set.raising.iter().enumerate() {
        let op = q.quantize(x)?;
        let kills = op.apply(&vac).is_zero();
        raising_annihilate.push((format!("X+{}", i + 1), kills));
        if !kills {
            return Err(Error::NotHighestWeight(format!("X+{} = {} does not annihilate the vacuum", i + 1, x)));
        }
        plus.push(op);
    }
    let mut weights = Vec::new();
    for (i, (xp, y)) in plus.iter().zip(&set.lowering).enumerate() {
        let h = xp.commutator(&q.quantize(y)?);
        let w = eigenvalue_on(&h, &vac)
            .ok_or_else(|| Error::NotHighestWeight(format!("H{} does not act diagonally on the vacuum", i + 1)))?;
        weights.push((format!("H{}", i + 1), w));
    }
    let mut displayed = Vec::new();
    for (i, h) in set.cartan.iter().enumerate() {
        let w = eigenvalue_on(&q.quantize(h)?, &vac)
            .ok_or_else(|| Error::NotHighestWeight(format!("displayed H{} is not diagonal on the vacuum", i + 1)))?;
        displayed.push((format!("H{}", i + 1), w));
    }
    Ok(HighestWeightReport { algebra: set.name.clone(), weights, displayed_cartan_weights: displayed, raising_annihilate })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalReport {
    pub n: usize,
    pub ambient: String,
    /// `X⁺ = Σ c_i X⁺_i`, solved from `[H, X⁻] = −2X⁻`.
    pub coefficients: Vec<Scalar>,
    pub sl2_relations_hold: bool,
    /// Eigenvalue of `H = [X⁺, X⁻]` on the vacuum.
    pub weight: Scalar,
    /// Which of `X⁺`, `X⁻` annihilates the vacuum.
    pub vacuum_killed_by: Vec<String>,
    /// The value displayed alongside the principal embedding formula.
    pub displayed_weight: Scalar,
}

pub fn displayed_principal_weight(n: usize) -> Scalar {
    let n = n as i64;
    if n % 2 == 1 {
        Scalar::from_int(n * (n + 1))
    } else {
        Scalar::frac(-n * n, 2)
    }
}

/// Principal `sl(2)` inside `sp(N+1)` (N odd) or `o(N+1)` (N even), acting on the Fock space.
pub fn principal_sl2_weight(n: usize) -> Result<PrincipalReport> {
    if n == 0 {
        return Err(Error::Unsupported("N ≥ 1".into()));
    }
    let set = if n % 2 == 1 { sp_chevalley_set(n.div_ceil(2))? } else { spinor_basis_o(n / 2, true)? };
    let a = set.cartan_matrix()?;
    let two = vec![Scalar::from_int(2); set.rank()];
    let coefficients = a
        .solve(&two)
        .ok_or_else(|| Error::Construction(format!("{}: no principal coefficients", set.name)))?;
    let q = Quantizer::new(&set.algebra, Scalar::one())?;
    let mut xp = NormalOrderedOperator::zero(q.fock());
    let mut xm = NormalOrderedOperator::zero(q.fock());
    for (c, (x, y)) in coefficients.iter().zip(set.raising.iter().zip(&set.lowering)) {
        xp = xp.add(&q.quantize(x)?.scale(c));
        xm = xm.add(&q.quantize(y)?);
    }
    let h = xp.commutator(&xm);
    let two = Scalar::from_int(2);
    let sl2_relations_hold = h.commutator(&xp) == xp.scale(&two) && h.commutator(&xm) == xm.scale(&-two);
    let vac = q.vacuum();
    let weight = eigenvalue_on(&h, &vac)
        .ok_or_else(|| Error::NotHighestWeight("principal H is not diagonal on the vacuum".into()))?;
    let mut vacuum_killed_by = Vec::new();
    if xp.apply(&vac).is_zero() {
        vacuum_killed_by.push("X+".to_string());
    }
    if xm.apply(&vac).is_zero() {
        vacuum_killed_by.push("X-".to_string());
    }
    Ok(PrincipalReport {
        n,
        ambient: set.name,
        coefficients,
        sl2_relations_hold,
        weight,
        vacuum_killed_by,
        displayed_weight: displayed_principal_weight(n),
    })
}
