//! Dual pairs in matrix superalgebras, the central extension of `spe(4)`
//! realized by `T_λ`, and the representation `ρ` of `gl(V₁)⊗Λ(n) ⋊ vect(0|n)`.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank, SparseSpan, SparseVec};
use crate::scalar::Scalar;
use crate::supermatrix::{Flavor, FormEquippedSpace, MatrixAlgebra, SuperMatrix};
use crate::superpoly::{odd_product, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DualPairRow {
    /// `sp(2) ⊕ sp(2)` in `o(4)`.
    SymplecticSquare,
    /// `(o(3), osp(1|2))` in `osp(3|6)`.
    OrthogonalOsp,
    /// `(sp(2), pe(3))` in `pe(6)`.
    SymplecticPe,
    /// `(osp(2|2), pe(1))` in `spe(4)`.
    OspPe,
}

impl DualPairRow {
    pub const ALL: [DualPairRow; 4] =
        [DualPairRow::SymplecticSquare, DualPairRow::OrthogonalOsp, DualPairRow::SymplecticPe, DualPairRow::OspPe];

    pub fn id(self) -> &'static str {
        match self {
            DualPairRow::SymplecticSquare => "sp2-sp2-in-o4",
            DualPairRow::OrthogonalOsp => "o3-osp12-in-osp36",
            DualPairRow::SymplecticPe => "sp2-pe3-in-pe6",
            DualPairRow::OspPe => "osp22-pe1-in-spe4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.id() == s)
    }

    fn factors(self) -> (FormEquippedSpace, FormEquippedSpace, Flavor, bool) {
        match self {
            DualPairRow::SymplecticSquare => {
                (FormEquippedSpace::symplectic(1), FormEquippedSpace::symplectic(1), Flavor::Orthogonal, false)
            }
            DualPairRow::OrthogonalOsp => {
                (FormEquippedSpace::orthogonal(3), FormEquippedSpace::orthosymplectic(1, 1), Flavor::Orthosymplectic, false)
            }
            DualPairRow::SymplecticPe => {
                (FormEquippedSpace::symplectic(1), FormEquippedSpace::periplectic(3), Flavor::Periplectic, false)
            }
            DualPairRow::OspPe => {
                (FormEquippedSpace::orthosymplectic(2, 1), FormEquippedSpace::periplectic(1), Flavor::Periplectic, true)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualPairCertificate {
    pub row: String,
    pub expected_flavor: Flavor,
    pub flavor: Flavor,
    pub supertraceless: bool,
    pub ambient_sdim: (usize, usize),
    pub gamma_sdim: (usize, usize),
    pub partner_sdim: (usize, usize),
    pub centralizer_of_gamma_sdim: (usize, usize),
    pub centralizer_of_partner_sdim: (usize, usize),
    pub embedded_in_ambient: bool,
    pub mutual: bool,
    pub double_centralizer: bool,
    /// Centralizer elements outside the expected partner, one per excess dimension.
    pub extra: Vec<String>,
}

impl DualPairCertificate {
    pub fn passed(&self) -> bool {
        self.flavor == self.expected_flavor && self.embedded_in_ambient && self.mutual && self.double_centralizer
    }
}

fn extra_elements(found: &MatrixAlgebra, expected: &MatrixAlgebra) -> Vec<String> {
    let mut span = SparseSpan::new();
    for b in &expected.basis {
        span.insert(&b.to_sparse());
    }
    found.basis.iter().filter(|b| span.insert(&b.to_sparse())).map(|b| format!("{b:?}")).collect()
}

pub fn dual_pair_table_check(row: DualPairRow) -> DualPairCertificate {
    let (v1, v2, expected_flavor, spe) = row.factors();
    let w = v1.tensor(&v2);
    let ambient = w.preserving_algebra(spe);
    let g1 = v1.preserving_algebra(false);
    let g2 = v2.preserving_algebra(false);
    let gamma =
        MatrixAlgebra::from_span(&w.odd, &g1.basis.iter().map(|x| x.tensor_left(&v2.odd)).collect::<Vec<_>>());
    let partner =
        MatrixAlgebra::from_span(&w.odd, &g2.basis.iter().map(|y| y.tensor_right(&v1.odd)).collect::<Vec<_>>());
    let embedded = gamma.basis.iter().chain(&partner.basis).all(|x| ambient.contains(x));
    let cg = ambient.centralizer(&gamma.basis);
    let cp = ambient.centralizer(&partner.basis);
    let ccg = ambient.centralizer(&cg.basis);
    let mutual = cg.same_span(&partner) && cp.same_span(&gamma);
    let mut extra = extra_elements(&cg, &partner);
    extra.extend(extra_elements(&cp, &gamma));
    DualPairCertificate {
        row: row.id().to_string(),
        expected_flavor,
        flavor: w.flavor,
        supertraceless: spe,
        ambient_sdim: ambient.sdim(),
        gamma_sdim: gamma.sdim(),
        partner_sdim: partner.sdim(),
        centralizer_of_gamma_sdim: cg.sdim(),
        centralizer_of_partner_sdim: cp.sdim(),
        embedded_in_ambient: embedded,
        mutual,
        double_centralizer: ccg.same_span(&gamma),
        extra,
    }
}

/// `c̃_ij = c_kl` for the even permutation `(1234) ↦ (ijkl)`.
pub fn sergeev_tilde(c: &[[Scalar; 4]; 4]) -> [[Scalar; 4]; 4] {
    let mut out: [[Scalar; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
            let (k, l) = if is_even_permutation(&[i, j, rest[0], rest[1]]) { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
            out[i][j] = c[k][l].clone();
        }
    }
    out
}

fn is_even_permutation(p: &[usize]) -> bool {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// An element `x + d·z` of the central extension of `spe(4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsElement {
    pub x: SuperMatrix,
    pub d: Scalar,
}

/// `spe(4)` on the `(4|4)` space with the odd form pairing `e_i` and `e_{4+i}`.
#[derive(Clone, Debug)]
pub struct Sergeev {
    pub spe: MatrixAlgebra,
}

impl Default for Sergeev {
    fn default() -> Self {
        Self::new()
    }
}

impl Sergeev {
    pub fn new() -> Self {
        Sergeev { spe: FormEquippedSpace::periplectic(4).preserving_algebra(true) }
    }

    pub fn odd(&self) -> &[bool] {
        &self.spe.odd
    }

    /// Symmetry of the off-diagonal blocks of `spe(4)`: `(b symmetric, c antisymmetric)`.
    pub fn block_symmetry(&self) -> (bool, bool) {
        let mut b_sym = true;
        let mut c_skew = true;
        for x in &self.spe.basis {
            for i in 0..4 {
                for j in 0..4 {
                    b_sym &= x.m[(i, 4 + j)] == x.m[(j, 4 + i)];
                    c_skew &= x.m[(4 + i, j)] == -&x.m[(4 + j, i)];
                }
            }
        }
        (b_sym, c_skew)
    }

    /// `(a b; c −aᵗ) + d·z ↦ (a b−λc̃; c −aᵗ) + λd·1`.
    pub fn t(&self, lambda: &Scalar, e: &AsElement) -> SuperMatrix {
        let mut c: [[Scalar; 4]; 4] = Default::default();
        for (i, row) in c.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = e.x.m[(4 + i, j)].clone();
            }
        }
        let ct = sergeev_tilde(&c);
        let mut out = e.x.clone();
        for (i, row) in ct.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.m[(i, 4 + j)] -= &(lambda * v);
            }
        }
        out.add(&SuperMatrix::identity(self.odd()).scale(&(lambda * &e.d)))
    }

    pub fn z(&self) -> AsElement {
        AsElement { x: SuperMatrix::zeros(self.odd()), d: Scalar::one() }
    }

    pub fn basis(&self) -> Vec<AsElement> {
        self.spe.basis.iter().map(|x| AsElement { x: x.clone(), d: Scalar::zero() }).collect()
    }

    /// `ω(x, y)` from `[T_λ x, T_λ y] − T_λ([x, y]) = λ ω(x, y)·1`.
    pub fn cocycle(&self, lambda: &Scalar, x: &SuperMatrix, y: &SuperMatrix) -> Result<Scalar> {
        if lambda.is_zero() {
            return Err(Error::Contract("cocycle extraction needs λ ≠ 0".into()));
        }
        let tx = self.t(lambda, &AsElement { x: x.clone(), d: Scalar::zero() });
        let ty = self.t(lambda, &AsElement { x: y.clone(), d: Scalar::zero() });
        let txy = self.t(lambda, &AsElement { x: x.bracket(y), d: Scalar::zero() });
        let defect = tx.bracket(&ty).sub(&txy);
        let s = defect.m[(0, 0)].clone();
        if defect != SuperMatrix::identity(self.odd()).scale(&s) {
            return Err(Error::InvariantViolation("representation defect is not a multiple of 1".into()));
        }
        Ok(&s / lambda)
    }

    pub fn image(&self, lambda: &Scalar) -> Vec<SuperMatrix> {
        let mut v: Vec<_> = self.basis().iter().map(|e| self.t(lambda, e)).collect();
        v.push(self.t(lambda, &self.z()));
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SergeevReport {
    pub spe_sdim: (usize, usize),
    pub b_symmetric: bool,
    pub c_antisymmetric: bool,
    /// Every basis defect is a scalar multiple of `1_{4|4}`.
    pub representation: bool,
    pub lambda_independent: bool,
    pub cocycle_nonzero: bool,
    pub cocycle_triples: usize,
    pub cocycle_identity: bool,
    /// `(λ, commutant superdimension)`.
    pub commutants: Vec<(Scalar, (usize, usize))>,
    pub z_separates: bool,
}

impl SergeevReport {
    pub fn passed(&self) -> bool {
        self.representation
            && self.lambda_independent
            && self.cocycle_identity
            && self.z_separates
            && self.commutants.iter().all(|c| c.1 == (1, 0))
    }
}

pub fn sergeev_check(triples: usize, seed: u64) -> SergeevReport {
    let s = Sergeev::new();
    let (b_symmetric, c_antisymmetric) = s.block_symmetry();
    let basis = &s.spe.basis;
    let one = Scalar::one();
    let half = Scalar::frac(1, 2);
    let mut representation = true;
    let mut lambda_independent = true;
    let mut omega = BTreeMap::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            match (s.cocycle(&one, x, y), s.cocycle(&half, x, y)) {
                (Ok(w1), Ok(w2)) => {
                    lambda_independent &= w1 == w2;
                    omega.insert((a, b), w1);
                }
                _ => representation = false,
            }
        }
    }
    let cocycle_nonzero = omega.values().any(|w| !w.is_zero());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cocycle_identity = representation;
    for _ in 0..triples {
        if !representation {
            break;
        }
        let (x, y, z) = (
            &basis[rng.gen_range(0..basis.len())],
            &basis[rng.gen_range(0..basis.len())],
            &basis[rng.gen_range(0..basis.len())],
        );
        let w = |u: &SuperMatrix, v: &SuperMatrix| s.cocycle(&one, u, v).unwrap_or_else(|_| Scalar::zero());
        let sign = if x.parity() == Some(Parity::Odd) && y.parity() == Some(Parity::Odd) { -Scalar::one() } else { Scalar::one() };
        let lhs = w(&x.bracket(y), z);
        let rhs = w(x, &y.bracket(z)) - sign * w(y, &x.bracket(z));
        cocycle_identity &= lhs == rhs;
    }
    let commutants = [Scalar::zero(), one.clone(), half.clone()]
        .into_iter()
        .map(|l| {
            let img = s.image(&l);
            let c = MatrixAlgebra::gl(s.odd()).centralizer(&img).sdim();
            (l, c)
        })
        .collect();
    let zs: Vec<SuperMatrix> = [Scalar::zero(), one, half].iter().map(|l| s.t(l, &s.z())).collect();
    let z_separates = zs[0] != zs[1] && zs[1] != zs[2] && zs[0] != zs[2]
        && zs[1] == SuperMatrix::identity(s.odd());
    SergeevReport {
        spe_sdim: s.spe.sdim(),
        b_symmetric,
        c_antisymmetric,
        representation,
        lambda_independent,
        cocycle_nonzero,
        cocycle_triples: triples,
        cocycle_identity,
        commutants,
        z_separates,
    }
}

/// Basis labels of `gl(V₁)⊗Λ(n) ⋊ vect(0|n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoBasis {
    /// `E_ab ⊗ ξ^S`.
    Tensor(usize, usize, u64),
    /// `ξ^S ∂_i`.
    Vect(u64, usize),
}

/// Which sign conventions `ρ` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RhoConvention {
    /// `ρ(X⊗φ)(v⊗ψ) = (−1)^{p(φ)p(ψ)} Xv⊗φψ`, `ρ(D)(v⊗ψ) = −(−1)^{p(D)p(v)} v⊗Dψ`.
    Printed,
    /// `ρ(X⊗φ)(v⊗ψ) = (−1)^{p(φ)p(v)} Xv⊗φψ`, `ρ(D)(v⊗ψ) = (−1)^{p(D)p(v)} v⊗Dψ`.
    Koszul,
}

/// `gl(V₁)⊗Λ(n) ⋊ vect(0|n)` with `dim V₁ = (r|s)`.
#[derive(Clone, Debug)]
pub struct RhoAlgebra {
    pub r: usize,
    pub s: usize,
    pub n: usize,
}

type RhoVec = SparseVec<RhoBasis>;

fn popcount_odd(m: u64) -> bool {
    m.count_ones() % 2 == 1
}

fn add_to(v: &mut RhoVec, k: RhoBasis, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        v.remove(&k);
    }
}

impl RhoAlgebra {
    pub fn new(r: usize, s: usize, n: usize) -> Self {
        RhoAlgebra { r, s, n }
    }

    fn dv(&self) -> usize {
        self.r + self.s
    }

    fn vodd(&self, a: usize) -> bool {
        a >= self.r
    }

    pub fn basis(&self) -> Vec<RhoBasis> {
        let mut out = Vec::new();
        for mask in 0..(1u64 << self.n) {
            for a in 0..self.dv() {
                for b in 0..self.dv() {
                    out.push(RhoBasis::Tensor(a, b, mask));
                }
            }
            for i in 0..self.n {
                out.push(RhoBasis::Vect(mask, i));
            }
        }
        out
    }

    pub fn sdim(&self) -> (usize, usize) {
        let b = self.basis();
        let odd = b.iter().filter(|&&x| self.parity(x)).count();
        (b.len() - odd, odd)
    }

    /// `true` for odd.
    pub fn parity(&self, x: RhoBasis) -> bool {
        match x {
            RhoBasis::Tensor(a, b, m) => self.vodd(a) ^ self.vodd(b) ^ popcount_odd(m),
            RhoBasis::Vect(m, _) => !popcount_odd(m),
        }
    }

    /// `∂_i ξ^S` as `(sign, mask)`.
    fn d_mask(i: usize, m: u64) -> Option<(Scalar, u64)> {
        if m & (1 << i) == 0 {
            return None;
        }
        let below = (m & ((1u64 << i) - 1)).count_ones();
        let s = if below % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        Some((s, m & !(1 << i)))
    }

    fn wedge(a: u64, b: u64) -> Option<(Scalar, u64)> {
        odd_product(a, b).map(|(m, neg)| (if neg { -Scalar::one() } else { Scalar::one() }, m))
    }

    /// `ξ^S ∂_i (ξ^T)`.
    fn vect_apply(m: u64, i: usize, t: u64) -> Option<(Scalar, u64)> {
        let (s1, t1) = Self::d_mask(i, t)?;
        let (s2, u) = Self::wedge(m, t1)?;
        Some((s1 * s2, u))
    }

    /// Abstract bracket of two basis elements.
    pub fn bracket(&self, x: RhoBasis, y: RhoBasis) -> RhoVec {
        let mut out = RhoVec::new();
        let (px, py) = (self.parity(x), self.parity(y));
        match (x, y) {
            (RhoBasis::Tensor(a, b, s), RhoBasis::Tensor(c, d, t)) => {
                // (X⊗φ)(Y⊗χ) = (−1)^{p(φ)p(Y)} XY⊗φχ
                let prod = |a: usize, b: usize, s: u64, c: usize, d: usize, t: u64| -> Option<(Scalar, RhoBasis)> {
                    if b != c {
                        return None;
                    }
                    let (sg, m) = Self::wedge(s, t)?;
                    let ko = popcount_odd(s) && (self.vodd(c) ^ self.vodd(d));
                    Some((if ko { -sg } else { sg }, RhoBasis::Tensor(a, d, m)))
                };
                if let Some((c1, k)) = prod(a, b, s, c, d, t) {
                    add_to(&mut out, k, c1);
                }
                if let Some((c2, k)) = prod(c, d, t, a, b, s) {
                    add_to(&mut out, k, if px && py { c2 } else { -c2 });
                }
            }
            (RhoBasis::Vect(m, i), RhoBasis::Tensor(a, b, t)) => {
                // [D, X⊗φ] = (−1)^{p(D)p(X)} X⊗D(φ)
                if let Some((c, u)) = Self::vect_apply(m, i, t) {
                    let neg = px && (self.vodd(a) ^ self.vodd(b));
                    add_to(&mut out, RhoBasis::Tensor(a, b, u), if neg { -c } else { c });
                }
            }
            (RhoBasis::Tensor(..), RhoBasis::Vect(..)) => {
                for (k, c) in self.bracket(y, x) {
                    add_to(&mut out, k, if px && py { c } else { -c });
                }
            }
            (RhoBasis::Vect(m, i), RhoBasis::Vect(t, j)) => {
                // [ξ^M∂_i, ξ^T∂_j] = ξ^M∂_i(ξ^T)∂_j − (−1)^{p p'} ξ^T∂_j(ξ^M)∂_i
                if let Some((c, u)) = Self::vect_apply(m, i, t) {
                    add_to(&mut out, RhoBasis::Vect(u, j), c);
                }
                if let Some((c, u)) = Self::vect_apply(t, j, m) {
                    add_to(&mut out, RhoBasis::Vect(u, i), if px && py { c } else { -c });
                }
            }
        }
        out
    }

    /// Odd flags of the basis `(a, ξ^U)` of `V₁⊗Λ(n)`, index `U·dim V₁ + a`.
    pub fn module_parities(&self) -> Vec<bool> {
        let mut v = Vec::new();
        for u in 0..(1u64 << self.n) {
            for a in 0..self.dv() {
                v.push(self.vodd(a) ^ popcount_odd(u));
            }
        }
        v
    }

    pub fn rho(&self, x: RhoBasis, conv: RhoConvention) -> SuperMatrix {
        let odd = self.module_parities();
        let dv = self.dv();
        let idx = |a: usize, u: u64| u as usize * dv + a;
        let mut out = SuperMatrix::zeros(&odd);
        for u in 0..(1u64 << self.n) {
            for c in 0..dv {
                let pv = self.vodd(c);
                match x {
                    RhoBasis::Tensor(a, b, s) => {
                        if b != c {
                            continue;
                        }
                        let Some((sg, m)) = Self::wedge(s, u) else { continue };
                        let neg = match conv {
                            RhoConvention::Printed => popcount_odd(s) && popcount_odd(u),
                            RhoConvention::Koszul => popcount_odd(s) && pv,
                        };
                        out.m[(idx(a, m), idx(c, u))] += &if neg { -sg } else { sg };
                    }
                    RhoBasis::Vect(m, i) => {
                        let Some((sg, w)) = Self::vect_apply(m, i, u) else { continue };
                        let mut neg = self.parity(x) && pv;
                        if conv == RhoConvention::Printed {
                            neg = !neg;
                        }
                        out.m[(idx(c, w), idx(c, u))] += &if neg { -sg } else { sg };
                    }
                }
            }
        }
        out
    }

    pub fn rho_vec(&self, v: &RhoVec, conv: RhoConvention) -> SuperMatrix {
        let mut out = SuperMatrix::zeros(&self.module_parities());
        for (k, c) in v {
            out = out.add(&self.rho(*k, conv).scale(c));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoReport {
    pub r: usize,
    pub s: usize,
    pub n: usize,
    pub convention: RhoConvention,
    pub algebra_sdim: (usize, usize),
    pub pairs_checked: usize,
    /// Pairs with `ρ([x, y]) ≠ [ρx, ρy]`, split by block type.
    pub defects_tensor_tensor: usize,
    pub defects_tensor_vect: usize,
    pub defects_vect_vect: usize,
    pub first_defect: Option<String>,
    pub kernel_rank: usize,
    pub identity_ok: bool,
    pub commutant_sdim: (usize, usize),
}

impl RhoReport {
    pub fn homomorphism(&self) -> bool {
        self.defects_tensor_tensor + self.defects_tensor_vect + self.defects_vect_vect == 0
    }
}

pub fn maximal_rho(r: usize, s: usize, n: usize, conv: RhoConvention) -> Result<RhoReport> {
    if n == 0 || r + s == 0 {
        return Err(Error::Contract("need n ≥ 1 and dim V₁ > 0".into()));
    }
    let g = RhoAlgebra::new(r, s, n);
    let basis = g.basis();
    let images: Vec<SuperMatrix> = basis.iter().map(|&x| g.rho(x, conv)).collect();
    let mut counts = [0usize; 3];
    let mut first_defect = None;
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            let lhs = g.rho_vec(&g.bracket(x, y), conv);
            let rhs = images[i].bracket(&images[j]);
            if lhs != rhs {
                let k = match (x, y) {
                    (RhoBasis::Tensor(..), RhoBasis::Tensor(..)) => 0,
                    (RhoBasis::Vect(..), RhoBasis::Vect(..)) => 2,
                    _ => 1,
                };
                counts[k] += 1;
                first_defect.get_or_insert_with(|| format!("{x:?} , {y:?}"));
            }
        }
    }
    let kernel_rank = basis.len() - rank(&images.iter().map(|m| m.to_sparse()).collect::<Vec<_>>());
    let mut unit = RhoVec::new();
    for a in 0..g.dv() {
        unit.insert(RhoBasis::Tensor(a, a, 0), Scalar::one());
    }
    let odd = g.module_parities();
    Ok(RhoReport {
        r,
        s,
        n,
        convention: conv,
        algebra_sdim: g.sdim(),
        pairs_checked: basis.len() * basis.len(),
        defects_tensor_tensor: counts[0],
        defects_tensor_vect: counts[1],
        defects_vect_vect: counts[2],
        first_defect,
        kernel_rank,
        identity_ok: g.rho_vec(&unit, conv) == SuperMatrix::identity(&odd),
        commutant_sdim: MatrixAlgebra::gl(&odd).centralizer(&images).sdim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilde_example() {
        let mut c: [[Scalar; 4]; 4] = Default::default();
        c[0][1] = Scalar::one();
        c[1][0] = -Scalar::one();
        let t = sergeev_tilde(&c);
        assert_eq!(t[2][3], Scalar::one());
        assert_eq!(t[3][2], -Scalar::one());
        assert!(t[0][1].is_zero());
    }

    #[test]
    fn lambda_zero_is_identity_embedding() {
        let s = Sergeev::new();
        for e in s.basis() {
            assert_eq!(s.t(&Scalar::zero(), &e), e.x);
        }
        assert!(s.t(&Scalar::zero(), &s.z()).is_zero());
    }

    #[test]
    fn symplectic_square_row() {
        let c = dual_pair_table_check(DualPairRow::SymplecticSquare);
        assert_eq!(c.ambient_sdim, (6, 0));
        assert!(c.passed(), "{c:?}");
    }
}
