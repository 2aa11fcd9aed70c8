//! The Virasoro algebra with bracket
//! `[e_i, e_j] = (j−i)e_{i+j} − (1/12)δ_{i+j,0}(i³−i)z`, density modules
//! `F_{λ,μ}`, their invariant forms, and semi-infinite Fock realizations with
//! exact `(c, h)` extraction.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, SparseVec};
use crate::operator::NormalOrderedOperator as Op;
use crate::scalar::Scalar;
use crate::superpoly::{Gen, GeneratorSet, Monomial, Role, SuperPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VirElement {
    pub e: BTreeMap<i64, Scalar>,
    pub z: Scalar,
}

impl VirElement {
    pub fn basis(i: i64) -> Self {
        VirElement { e: BTreeMap::from([(i, Scalar::one())]), z: Scalar::zero() }
    }

    pub fn central() -> Self {
        VirElement { e: BTreeMap::new(), z: Scalar::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.e.values().all(|c| c.is_zero()) && self.z.is_zero()
    }

    fn add_e(&mut self, i: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.e.entry(i).or_insert_with(Scalar::zero);
        *v += &c;
        if v.is_zero() {
            self.e.remove(&i);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &o.e {
            out.add_e(i, c.clone());
        }
        out.z += &o.z;
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = VirElement::default();
        for (&i, c) in &self.e {
            out.add_e(i, c * s);
        }
        out.z = &self.z * s;
        out
    }
}

pub fn vir_bracket(x: &VirElement, y: &VirElement) -> VirElement {
    let mut out = VirElement::default();
    for (&i, a) in &x.e {
        for (&j, b) in &y.e {
            let ab = a * b;
            out.add_e(i + j, &ab * &Scalar::from_int(j - i));
            if i + j == 0 {
                out.z -= &(&ab * &Scalar::frac(i * i * i - i, 12));
            }
        }
    }
    out
}

/// `F_{λ,μ}` with basis `φ_j = t^{μ+j}(dt)^λ`; the quotient flag removes the
/// constants (the index with `μ + j = 0`, for `λ = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityModuleSpec {
    pub lambda: Scalar,
    pub mu: Scalar,
    pub quotient: bool,
}

impl DensityModuleSpec {
    pub fn new(lambda: Scalar, mu: Scalar) -> Self {
        DensityModuleSpec { lambda, mu, quotient: false }
    }

    /// Constants form a submodule only for `λ = 0`, `μ ∈ Z`.
    pub fn quotient(lambda: Scalar, mu: Scalar) -> Result<Self> {
        if !lambda.is_zero() || mu.as_i64().is_none() {
            return Err(Error::Contract(format!("F_({lambda},{mu}) has no constants to divide out")));
        }
        Ok(DensityModuleSpec { lambda, mu, quotient: true })
    }

    pub fn is_excluded(&self, j: i64) -> bool {
        self.quotient && (&self.mu + &Scalar::from_int(j)).is_zero()
    }

    /// `e_n φ_j = (μ + j + λ(n+1)) φ_{j+n}`; `None` when zero or absent.
    pub fn action(&self, n: i64, j: i64) -> Option<(Scalar, i64)> {
        if self.is_excluded(j) || self.is_excluded(j + n) {
            return None;
        }
        let c = &(&self.mu + &Scalar::from_int(j)) + &(&self.lambda * &Scalar::from_int(n + 1));
        (!c.is_zero()).then_some((c, j + n))
    }

    /// `[e_m, e_n] φ_j − (n−m) e_{m+n} φ_j` as a coefficient on `φ_{j+m+n}`.
    pub fn representation_defect(&self, m: i64, n: i64, j: i64) -> Scalar {
        let apply = |k: i64, v: Option<(Scalar, i64)>| -> Option<(Scalar, i64)> {
            let (c, idx) = v?;
            let (c2, idx2) = self.action(k, idx)?;
            Some((c * c2, idx2))
        };
        let val = |v: Option<(Scalar, i64)>| v.map(|x| x.0).unwrap_or_else(Scalar::zero);
        let mn = apply(m, self.action(n, j));
        let nm = apply(n, self.action(m, j));
        let rhs = self.action(m + n, j).map(|(c, i)| (c * Scalar::from_int(n - m), i));
        &(&val(mn) - &val(nm)) - &val(rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// The pairing given by the Statement for `λ ∈ {1/2, 0}`.
pub fn printed_form(spec: &DensityModuleSpec, i: i64, j: i64) -> Option<Scalar> {
    let two_mu = &spec.mu * &Scalar::from_int(2);
    if spec.lambda == Scalar::frac(1, 2) {
        let s = &(&two_mu + &Scalar::from_int(i + j)) + &Scalar::one();
        return Some(if s.is_zero() { Scalar::one() } else { Scalar::zero() });
    }
    if spec.lambda.is_zero() {
        if spec.is_excluded(i) || spec.is_excluded(j) {
            return Some(Scalar::zero());
        }
        let s = &two_mu + &Scalar::from_int(i + j);
        return Some(if s.is_zero() { &spec.mu + &Scalar::from_int(j) } else { Scalar::zero() });
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct FormScan {
    pub spec: DensityModuleSpec,
    pub window: i64,
    /// A nondegenerate invariant symmetric pairing exists on the window.
    pub symmetric: bool,
    pub skew: bool,
}

/// Searches for invariant pairings `B` on `|i|, |j| ≤ window`, invariance
/// under `e_n` for `|n| ≤ 3`, and tests nondegeneracy on the inner window
/// `|i| ≤ window − 4`.
pub fn invariant_form_scan(spec: &DensityModuleSpec, window: i64) -> FormScan {
    let idx: Vec<i64> = (-window..=window).filter(|&i| !spec.is_excluded(i)).collect();
    let pos: BTreeMap<i64, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let n_idx = idx.len();
    let var = |i: i64, j: i64| pos[&i] * n_idx + pos[&j];
    let mut base_rows: Vec<SparseVec<usize>> = Vec::new();
    for n in -3..=3i64 {
        for &i in &idx {
            for &j in &idx {
                // ⟨e_n φ_i, φ_j⟩ + ⟨φ_i, e_n φ_j⟩ = 0, used only when fully inside the window
                let a = spec.action(n, i);
                let b = spec.action(n, j);
                let inside = |t: &Option<(Scalar, i64)>| t.as_ref().map_or(true, |(_, k)| pos.contains_key(k));
                if !inside(&a) || !inside(&b) {
                    continue;
                }
                let mut row: SparseVec<usize> = BTreeMap::new();
                if let Some((c, k)) = a {
                    *row.entry(var(k, j)).or_insert_with(Scalar::zero) += &c;
                }
                if let Some((c, k)) = b {
                    *row.entry(var(i, k)).or_insert_with(Scalar::zero) += &c;
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    base_rows.push(row);
                }
            }
        }
    }
    let inner: Vec<i64> = idx.iter().copied().filter(|i| i.abs() <= window - 4).collect();
    let solve = |sign: i64| -> bool {
        let mut rows = base_rows.clone();
        for &i in &idx {
            for &j in &idx {
                let mut row: SparseVec<usize> = BTreeMap::new();
                *row.entry(var(i, j)).or_insert_with(Scalar::zero) += &Scalar::one();
                *row.entry(var(j, i)).or_insert_with(Scalar::zero) -= &Scalar::from_int(sign);
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let (rows, free) = eliminate_singletons(rows, n_idx * n_idx);
        let col: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let rows: Vec<SparseVec<usize>> = rows.iter().map(|r| r.iter().map(|(v, c)| (col[v], c.clone())).collect()).collect();
        let ker = kernel_of_rows(&rows, free.len());
        // every inner index must be paired by some kernel vector
        inner.iter().all(|&i| {
            idx.iter().any(|&j| col.get(&var(i, j)).is_some_and(|&k| ker.iter().any(|v| !v[k].is_zero())))
        })
    };
    FormScan { spec: spec.clone(), window, symmetric: solve(1), skew: solve(-1) }
}

/// Repeatedly sets variables fixed by one-term rows to zero; returns the
/// reduced rows and the surviving variables.
fn eliminate_singletons(mut rows: Vec<SparseVec<usize>>, n_vars: usize) -> (Vec<SparseVec<usize>>, Vec<usize>) {
    let mut zero: BTreeSet<usize> = BTreeSet::new();
    loop {
        let fresh: BTreeSet<usize> = rows.iter().filter(|r| r.len() == 1).flat_map(|r| r.keys().copied()).collect();
        if fresh.is_empty() {
            break;
        }
        zero.extend(&fresh);
        for r in &mut rows {
            r.retain(|v, _| !zero.contains(v));
        }
        rows.retain(|r| !r.is_empty());
    }
    let free = (0..n_vars).filter(|v| !zero.contains(v)).collect();
    (rows, free)
}

/// Invariance of the printed pairing under `e_n`, `|n| ≤ 3`, on `|i|, |j| ≤ window`.
pub fn printed_form_is_invariant(spec: &DensityModuleSpec, window: i64) -> Option<bool> {
    printed_form(spec, 0, 0)?;
    let val = |t: Option<(Scalar, i64)>, other: i64, left: bool| -> Scalar {
        t.map(|(c, k)| &c * &(if left { printed_form(spec, k, other) } else { printed_form(spec, other, k) }).unwrap())
            .unwrap_or_else(Scalar::zero)
    };
    for n in -3..=3 {
        for i in -window..=window {
            for j in -window..=window {
                if spec.is_excluded(i) || spec.is_excluded(j) {
                    continue;
                }
                let s = &val(spec.action(n, i), j, true) + &val(spec.action(n, j), i, false);
                if !s.is_zero() {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

/// Basis label of a mode of `F` or of its restricted dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mode {
    F(i64),
    Dual(i64),
}

impl Mode {
    fn index(self) -> i64 {
        match self {
            Mode::F(i) | Mode::Dual(i) => i,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Statistics {
    /// Exterior algebra, Clifford relations.
    Fermionic,
    /// Symmetric algebra, Weyl relations.
    Bosonic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// `F` itself with its invariant form, creation modes `φ_i`, `i < 0`.
    Half,
    /// `W = F ⊕ F*` with creation modes `φ_i`, `i < s`, and `φ*_j`, `j ≥ s`.
    Doubled { charge: i64 },
}

/// How a realization was set up; embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct ConventionRecord {
    pub construction: Construction,
    pub statistics: Statistics,
    pub polarization: String,
    pub normal_ordering: String,
    pub weights: String,
}

/// A space with banded `vir` action and an invariant pairing `B(m, σ(m)) ≠ 0`.
#[derive(Clone, Debug)]
pub struct ModeSpace {
    pub spec: DensityModuleSpec,
    pub construction: Construction,
    pub statistics: Statistics,
}

impl ModeSpace {
    pub fn half(spec: DensityModuleSpec, statistics: Statistics) -> Result<Self> {
        let m = ModeSpace { spec, construction: Construction::Half, statistics };
        m.partner(Mode::F(1)).ok_or_else(|| Error::Contract("no invariant form for this density module".into()))?;
        Ok(m)
    }

    /// Spin for fermions (symmetric `B`), Osc for bosons (skew `B`).
    pub fn doubled(spec: DensityModuleSpec, statistics: Statistics, charge: i64) -> Self {
        ModeSpace { spec, construction: Construction::Doubled { charge }, statistics }
    }

    fn exists(&self, m: Mode) -> bool {
        match (&self.construction, m) {
            (Construction::Half, Mode::Dual(_)) => false,
            _ => !self.spec.is_excluded(m.index()),
        }
    }

    pub fn is_creation(&self, m: Mode) -> bool {
        match (&self.construction, m) {
            (Construction::Half, Mode::F(i)) => i < 0,
            (Construction::Doubled { charge }, Mode::F(i)) => i < *charge,
            (Construction::Doubled { charge }, Mode::Dual(j)) => j >= *charge,
            _ => false,
        }
    }

    /// `(σ(m), B(m, σ(m)))`.
    pub fn partner(&self, m: Mode) -> Option<(Mode, Scalar)> {
        match (&self.construction, m) {
            (Construction::Half, Mode::F(i)) => {
                let two_mu = (&self.spec.mu * &Scalar::from_int(2)).as_i64()?;
                let s = if self.spec.lambda == Scalar::frac(1, 2) { -1 - two_mu } else { -two_mu };
                let b = printed_form(&self.spec, i, s - i)?;
                (!b.is_zero()).then_some((Mode::F(s - i), b))
            }
            (Construction::Doubled { .. }, Mode::F(i)) => Some((
                Mode::Dual(i),
                match self.statistics {
                    Statistics::Fermionic => Scalar::one(),
                    Statistics::Bosonic => -Scalar::one(),
                },
            )),
            (Construction::Doubled { .. }, Mode::Dual(j)) => Some((Mode::F(j), Scalar::one())),
            _ => None,
        }
    }

    /// `e_n m = c·m'`.
    pub fn action(&self, n: i64, m: Mode) -> Option<(Scalar, Mode)> {
        match m {
            Mode::F(j) => self.spec.action(n, j).map(|(c, k)| (c, Mode::F(k))),
            // (e·ξ)(v) = −ξ(e·v)
            Mode::Dual(j) => {
                if self.spec.is_excluded(j) {
                    return None;
                }
                self.spec.action(n, j - n).map(|(c, _)| (-c, Mode::Dual(j - n)))
            }
        }
    }

    fn record(&self) -> ConventionRecord {
        ConventionRecord {
            construction: self.construction.clone(),
            statistics: self.statistics,
            polarization: match &self.construction {
                Construction::Half => "creation: φ_i, i < 0".into(),
                Construction::Doubled { charge } => format!("creation: φ_i (i < {charge}), φ*_j (j ≥ {charge})"),
            },
            normal_ordering: "creation operators left of annihilation operators".into(),
            weights: "h = −½⟨[e₁,e₋₁]⟩, c = −2(⟨[e₂,e₋₂]⟩ + 4h)".into(),
        }
    }
}

/// Quadratic operators `ê_n = ½ Σ_c a_{n,c} :x̂_{k} x̂_{c*}:` on the Fock space of
/// the creation modes with index in `[−M, M)`.
#[derive(Clone, Debug)]
pub struct FockRealization {
    pub space: ModeSpace,
    pub window: i64,
    pub gens: Arc<GeneratorSet>,
    var_of: BTreeMap<Mode, Gen>,
}

impl FockRealization {
    pub fn new(space: ModeSpace, window: i64) -> Self {
        let mut g = GeneratorSet::new();
        let mut names = Vec::new();
        for i in -window..window {
            for m in [Mode::F(i), Mode::Dual(i)] {
                if space.exists(m) && space.is_creation(m) {
                    let name = match m {
                        Mode::F(i) => format!("f{}", i),
                        Mode::Dual(i) => format!("d{}", i),
                    }
                    .replace('-', "m");
                    g = match space.statistics {
                        Statistics::Fermionic => g.with_odd(&name, Role::Q),
                        Statistics::Bosonic => g.with_even(&name, Role::Q),
                    };
                    names.push((m, name));
                }
            }
        }
        let gens = g.into_arc();
        let var_of = names.into_iter().map(|(m, n)| (m, gens.gen(&n).expect("declared"))).collect();
        FockRealization { space, window, gens, var_of }
    }

    fn in_window(&self, m: Mode) -> bool {
        (-self.window..self.window).contains(&m.index()) && self.space.exists(m)
    }

    /// The operator `x̂_m`: multiplication for creation modes, `B(m, σm)·∂_{σm}` otherwise.
    pub fn mode_operator(&self, m: Mode) -> Result<Op> {
        let missing = || Error::WindowTooSmall(format!("mode {m:?} outside [−{0}, {0})", self.window));
        if self.space.is_creation(m) {
            let g = *self.var_of.get(&m).ok_or_else(missing)?;
            Ok(Op::multiplication(&SuperPolynomial::from_term(&self.gens, Monomial::single(&self.gens, g), Scalar::one())))
        } else {
            let (p, b) = self.space.partner(m).ok_or_else(|| Error::Contract(format!("mode {m:?} is unpaired")))?;
            let g = *self.var_of.get(&p).ok_or_else(missing)?;
            Ok(Op::derivative(&self.gens, g).scale(&b))
        }
    }

    fn normal_product(&self, a: Mode, b: Mode) -> Result<Op> {
        let (x, y) = (self.mode_operator(a)?, self.mode_operator(b)?);
        if !self.space.is_creation(a) && self.space.is_creation(b) {
            let s = match self.space.statistics {
                Statistics::Fermionic => -Scalar::one(),
                Statistics::Bosonic => Scalar::one(),
            };
            Ok(y.compose(&x).scale(&s))
        } else {
            Ok(x.compose(&y))
        }
    }

    /// `x_{c*} = φ_{σ(c)} / B(φ_{σ(c)}, φ_c)`, so that `B(x_{c*}, x_d) = δ_{cd}`.
    fn dual_mode(&self, c: Mode) -> Option<(Mode, Scalar)> {
        let (s, _) = self.space.partner(c)?;
        let (back, b) = self.space.partner(s)?;
        debug_assert_eq!(back, c);
        Some((s, b.inv()?))
    }

    /// `ê_n` restricted to the window (terms with every mode inside).
    pub fn e(&self, n: i64) -> Result<Op> {
        let half = Scalar::frac(1, 2);
        let mut out = Op::zero(&self.gens);
        for i in -self.window..self.window {
            for c in [Mode::F(i), Mode::Dual(i)] {
                if !self.in_window(c) {
                    continue;
                }
                let Some((a, k)) = self.space.action(n, c) else { continue };
                let Some((cs, w)) = self.dual_mode(c) else { continue };
                if !self.in_window(k) || !self.in_window(cs) {
                    continue;
                }
                out = out.add(&self.normal_product(k, cs)?.scale(&(&(&a * &w) * &half)));
            }
        }
        Ok(out)
    }

    /// Modes `c` (scanned over a wide range) whose term in `ê_n` has two
    /// creation factors; these must all lie in the window for exact vacuum values.
    fn vacuum_terms(&self, n: i64) -> Vec<Mode> {
        let wide = 4 * self.window + 16;
        let mut out = Vec::new();
        for i in -wide..wide {
            for c in [Mode::F(i), Mode::Dual(i)] {
                if !self.space.exists(c) {
                    continue;
                }
                let Some((_, k)) = self.space.action(n, c) else { continue };
                let Some((cs, _)) = self.dual_mode(c) else { continue };
                if self.space.exists(k) && self.space.is_creation(k) && self.space.is_creation(cs) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Fails with a resize request if any vacuum-relevant term leaves the window.
    pub fn check_window(&self, max_n: i64) -> Result<()> {
        for n in -max_n..=max_n {
            for c in self.vacuum_terms(n) {
                let (_, k) = self.space.action(n, c).unwrap();
                let (cs, _) = self.dual_mode(c).unwrap();
                if !(self.in_window(c) && self.in_window(k) && self.in_window(cs)) {
                    return Err(Error::WindowTooSmall(format!(
                        "e_{n} pairs {c:?} into {k:?}, {cs:?}; enlarge the window beyond {}",
                        self.window
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vacuum(&self) -> SuperPolynomial {
        SuperPolynomial::one(&self.gens)
    }

    /// `⟨0|[ê_m, ê_n]|0⟩`; fails if the commutator does not map the vacuum to a multiple of itself.
    pub fn vacuum_commutator(&self, m: i64, n: i64) -> Result<Scalar> {
        let (a, b) = (self.e(m)?, self.e(n)?);
        let v = a.commutator(&b).apply(&self.vacuum());
        let c = v.coefficient(&Monomial::one(&self.gens));
        if v != self.vacuum().scale(&c) {
            return Err(Error::Convention(format!("[e_{m}, e_{n}] does not preserve the vacuum line")));
        }
        Ok(c)
    }

    /// `ê_n 1 = 0` for `1 ≤ n ≤ max_n`.
    pub fn vacuum_is_highest(&self, max_n: i64) -> Result<bool> {
        for n in 1..=max_n {
            if !self.e(n)?.apply(&self.vacuum()).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn weights(&self) -> Result<(Scalar, Scalar)> {
        self.check_window(2)?;
        let h = &self.vacuum_commutator(1, -1)? * &Scalar::frac(-1, 2);
        let c = &(&self.vacuum_commutator(2, -2)? + &(&h * &Scalar::from_int(4))) * &Scalar::from_int(-2);
        Ok((c, h))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralChargeReport {
    pub c: Scalar,
    pub h: Scalar,
    pub window: i64,
    pub window_stable: bool,
    pub vacuum_highest: bool,
    pub convention: ConventionRecord,
}

/// `(c, h)` at windows `M` and `M + 4`.
pub fn central_charge(space: &ModeSpace, window: i64) -> Result<CentralChargeReport> {
    let r = FockRealization::new(space.clone(), window);
    let (c, h) = r.weights()?;
    let (c2, h2) = FockRealization::new(space.clone(), window + 4).weights()?;
    Ok(CentralChargeReport {
        window_stable: c == c2 && h == h2,
        vacuum_highest: r.vacuum_is_highest(2)?,
        c,
        h,
        window,
        convention: space.record(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HalfModule {
    /// Exterior algebra on `F_{1/2,0}`.
    OscSqrtVol,
    /// Symmetric algebra on `F_{0,1/2}`.
    SpinSqrtTF,
    /// Symmetric algebra on `F_{0,0}/C`.
    SpinDF,
}

impl HalfModule {
    pub const ALL: [HalfModule; 3] = [HalfModule::OscSqrtVol, HalfModule::SpinSqrtTF, HalfModule::SpinDF];

    pub fn name(self) -> &'static str {
        match self {
            HalfModule::OscSqrtVol => "osc(sqrt Vol)",
            HalfModule::SpinSqrtTF => "spin(sqrt t F)",
            HalfModule::SpinDF => "spin(dF)",
        }
    }

    pub fn space(self) -> ModeSpace {
        let (spec, st) = match self {
            HalfModule::OscSqrtVol => (DensityModuleSpec::new(Scalar::frac(1, 2), Scalar::zero()), Statistics::Fermionic),
            HalfModule::SpinSqrtTF => (DensityModuleSpec::new(Scalar::zero(), Scalar::frac(1, 2)), Statistics::Bosonic),
            HalfModule::SpinDF => (DensityModuleSpec::quotient(Scalar::zero(), Scalar::zero()).unwrap(), Statistics::Bosonic),
        };
        ModeSpace::half(spec, st).expect("invariant form exists")
    }

    /// Values printed next to each construction.
    pub fn displayed(self) -> (Scalar, Scalar) {
        match self {
            HalfModule::OscSqrtVol => (Scalar::frac(-1, 3), Scalar::zero()),
            HalfModule::SpinSqrtTF => (Scalar::frac(1, 6), Scalar::frac(1, 2)),
            HalfModule::SpinDF => (Scalar::frac(-1, 6), Scalar::zero()),
        }
    }
}

/// Table formulas for the `n = 0` column.
pub fn table_formula(lambda: &Scalar, mu: &Scalar) -> (Scalar, Scalar) {
    let c = &(&(&(lambda * lambda) * &Scalar::from_int(12)) - &(lambda * &Scalar::from_int(12))) + &Scalar::from_int(2);
    let h = &(mu + &(lambda * &Scalar::from_int(2))) * &(mu + &Scalar::one());
    (c, h)
}

/// `(c, h)` of `Spin(F_{λ,μ})` (fermionic) or `Osc(F_{λ,μ})` (bosonic) at vacuum charge `s`.
pub fn doubled_weights(lambda: &Scalar, mu: &Scalar, statistics: Statistics, charge: i64, window: i64) -> Result<CentralChargeReport> {
    let space = ModeSpace::doubled(DensityModuleSpec::new(lambda.clone(), mu.clone()), statistics, charge);
    central_charge(&space, window)
}

#[derive(Clone, Debug, Serialize)]
pub struct TablePoint {
    pub lambda: Scalar,
    pub mu: Scalar,
    pub c: Scalar,
    pub h: Scalar,
    pub expected_c: Scalar,
    pub expected_h: Scalar,
    pub osc_c: Scalar,
    pub osc_h: Scalar,
    pub window_stable: bool,
}

impl TablePoint {
    pub fn matches(&self) -> bool {
        self.c == self.expected_c && self.h == self.expected_h
    }

    pub fn osc_flips(&self) -> bool {
        self.osc_c == -&self.c && self.osc_h == self.h
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub anchor: (Scalar, Scalar),
    pub charge: i64,
    pub points: Vec<TablePoint>,
    pub convention: ConventionRecord,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|p| p.matches() && p.osc_flips() && p.window_stable)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("lambda,mu,c,h,expected_c,expected_h,osc_c,osc_h\n");
        for p in &self.points {
            s.push_str(&format!("{},{},{},{},{},{},{},{}\n", p.lambda, p.mu, p.c, p.h, p.expected_c, p.expected_h, p.osc_c, p.osc_h));
        }
        s
    }
}

/// Twelve grid points besides the anchor `(1, 0)`.
pub fn default_grid() -> Vec<(Scalar, Scalar)> {
    let lambdas = [Scalar::zero(), Scalar::frac(1, 2), Scalar::frac(3, 2), Scalar::from_int(2)];
    let mus = [Scalar::zero(), Scalar::frac(1, 2), Scalar::frac(-1, 3)];
    lambdas.iter().flat_map(|l| mus.iter().map(move |m| (l.clone(), m.clone()))).collect()
}

pub const ANCHOR_CHARGES: std::ops::RangeInclusive<i64> = -4..=4;

/// `(charge, c, h)` of `Spin(F_{1,0})` for each candidate vacuum charge.
pub fn anchor_scan(window: i64) -> Result<Vec<(i64, Scalar, Scalar)>> {
    ANCHOR_CHARGES
        .map(|s| doubled_weights(&Scalar::one(), &Scalar::zero(), Statistics::Fermionic, s, window).map(|r| (s, r.c, r.h)))
        .collect()
}

/// Evaluates Spin and Osc over the grid at a fixed vacuum charge.
pub fn table_at_charge(grid: &[(Scalar, Scalar)], charge: i64, window: i64) -> Result<TableReport> {
    let mut points = Vec::new();
    for (l, m) in grid {
        let spin = doubled_weights(l, m, Statistics::Fermionic, charge, window)?;
        let osc = doubled_weights(l, m, Statistics::Bosonic, charge, window)?;
        let (ec, eh) = table_formula(l, m);
        points.push(TablePoint {
            lambda: l.clone(),
            mu: m.clone(),
            c: spin.c,
            h: spin.h,
            expected_c: ec,
            expected_h: eh,
            osc_c: osc.c,
            osc_h: osc.h,
            window_stable: spin.window_stable && osc.window_stable,
        });
    }
    let space = ModeSpace::doubled(DensityModuleSpec::new(Scalar::one(), Scalar::zero()), Statistics::Fermionic, charge);
    Ok(TableReport { anchor: (Scalar::one(), Scalar::zero()), charge, points, convention: space.record() })
}

/// Chooses the vacuum charge so that `h` matches the table at `(λ, μ) = (1, 0)`,
/// then evaluates the grid; a convention error if no charge fits.
pub fn table_n0(grid: &[(Scalar, Scalar)], window: i64) -> Result<TableReport> {
    let (_, target) = table_formula(&Scalar::one(), &Scalar::zero());
    let scan = anchor_scan(window)?;
    match scan.iter().find(|(_, _, h)| *h == target) {
        Some(&(s, _, _)) => table_at_charge(grid, s, window),
        None => {
            let seen: Vec<String> = scan.iter().map(|(s, _, h)| format!("s={s}: h={h}")).collect();
            Err(Error::Convention(format!(
                "no vacuum charge gives h = {target} for Spin(F_(1,0)); observed {}",
                seen.join(", ")
            )))
        }
    }
}

/// Indices touched by `e_n` on the window, for diagnostics.
pub fn touched_modes(r: &FockRealization, n: i64) -> BTreeSet<Mode> {
    r.vacuum_terms(n).into_iter().collect()
}
