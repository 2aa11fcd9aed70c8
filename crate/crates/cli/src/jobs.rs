//! Verification jobs: each one computes exact values and compares them with
//! expectations, producing a serializable [`Outcome`].

use howe_core::dual_pairs::{dual_pair_table_check, maximal_rho, sergeev_check, DualPairRow, RhoConvention, Sergeev};
use howe_core::howe::{bernstein_osp12, commutant_sdim, harmonic_setup, hyperkahler_actions, lefschetz_triple};
use howe_core::poisson::osp_dimension;
use howe_core::stringy::{
    anchor_scan, central_charge, default_grid, doubled_weights, table_at_charge, table_formula, table_n0, HalfModule,
    Statistics,
};
use howe_core::weyl_clifford::{highest_weight_of_vacuum, image_dimension, principal_sl2_weight, spinor_basis_o};
use howe_core::{Coordinates, Error, PoissonAlgebra, PoissonAlgebraSpec, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use crate::props::property_suite;

#[derive(Clone, Debug)]
pub struct Settings {
    pub window: i64,
    pub grid: Vec<(Scalar, Scalar)>,
    pub seed: u64,
    pub instances: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { window: 8, grid: default_grid(), seed: 20_240_521, instances: 120 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Values reported without expectations.
    Measured,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: String,
    pub criterion: Option<u8>,
    pub title: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub details: Value,
}

impl Outcome {
    fn new(id: &str, criterion: Option<u8>, title: &str) -> Self {
        Outcome {
            id: id.into(),
            criterion,
            title: title.into(),
            status: Status::Measured,
            checks: Vec::new(),
            details: Value::Null,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, expected: impl ToString, measured: impl ToString) -> bool {
        let (e, m) = (expected.to_string(), measured.to_string());
        let ok = e == m;
        self.checks.push(Check { name: name.into(), expected: e, measured: m, ok });
        ok
    }

    /// Records the value without an expectation.
    pub fn measure(&mut self, name: impl Into<String>, measured: impl ToString) {
        self.checks.push(Check { name: name.into(), expected: String::new(), measured: measured.to_string(), ok: true });
    }

    fn finish(mut self) -> Self {
        if self.status != Status::Error {
            self.status = if self.checks.iter().any(|c| !c.ok) {
                Status::Fail
            } else if self.checks.iter().all(|c| c.expected.is_empty()) {
                Status::Measured
            } else {
                Status::Pass
            };
        }
        self
    }

    fn error(mut self, e: impl std::fmt::Display) -> Self {
        self.status = Status::Error;
        self.checks.push(Check { name: "error".into(), expected: String::new(), measured: e.to_string(), ok: false });
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Measured)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn run(mut o: Outcome, body: impl FnOnce(&mut Outcome) -> howe_core::Result<()>) -> Outcome {
    match body(&mut o) {
        Ok(()) => o.finish(),
        Err(e) => o.error(e),
    }
}

fn sdim((a, b): (usize, usize)) -> String {
    format!("({a}|{b})")
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

pub fn bracket(spec: PoissonAlgebraSpec, f: &str, g: &str, expect: Option<&str>) -> Outcome {
    run(Outcome::new("bracket", None, "Poisson bracket"), |o| {
        let alg = PoissonAlgebra::new(spec);
        let b = alg.bracket(&alg.parse(f)?, &alg.parse(g)?)?;
        match expect {
            Some(e) => {
                o.check(format!("{{{f}, {g}}}"), alg.parse(e)?, &b);
            }
            None => o.measure(format!("{{{f}, {g}}}"), &b),
        }
        Ok(())
    })
}

pub fn quantize(spec: PoissonAlgebraSpec, hbar: &Scalar, f: &str) -> Outcome {
    run(Outcome::new("quantize", None, "QP-quantization"), |o| {
        let alg = PoissonAlgebra::new(spec);
        let q = howe_core::weyl_clifford::Quantizer::new(&alg, hbar.clone())?;
        let op = q.quantize(&alg.parse(f)?)?;
        o.measure(format!("Q({f})"), &op);
        o.measure("Q(f) 1", op.apply(&q.vacuum()));
        Ok(())
    })
}

pub fn spinor(k: usize, odd: bool) -> Outcome {
    let name = if odd { format!("o({})", 2 * k + 1) } else { format!("o({})", 2 * k) };
    run(Outcome::new(&format!("spinor-o{}", if odd { 2 * k + 1 } else { 2 * k }), Some(4), &format!("{name} spinor vacuum weight")), |o| {
        let set = spinor_basis_o(k, odd)?;
        let r = highest_weight_of_vacuum(&set, Scalar::one())?;
        let mut unit = vec![0; k];
        unit[k - 1] = 1;
        let w: Vec<String> = r.weights.iter().map(|w| w.1.to_string()).collect();
        o.check(format!("{name} weights (H_i 1 = w_i 1)"), list(&unit), list(&w));
        o.check(format!("{name} raising operators kill 1"), true, r.raising_annihilate.iter().all(|x| x.1));
        o.details = to_json(&r);
        Ok(())
    })
}

pub fn principal(n: usize) -> Outcome {
    run(Outcome::new(&format!("principal-N{n}"), Some(5), &format!("principal sl(2), N = {n}")), |o| {
        let r = principal_sl2_weight(n)?;
        let n_i = n as i64;
        let expected = if n % 2 == 1 { Scalar::from_int(n_i * (n_i + 1)) } else { Scalar::frac(-n_i * n_i, 2) };
        o.check("sl(2) relations", true, r.sl2_relations_hold);
        o.check("weight of H = [X+, X-] on 1", &expected, &r.weight);
        o.details = to_json(&r);
        Ok(())
    })
}

pub fn lefschetz(n: usize, commutants: bool) -> Outcome {
    run(Outcome::new(&format!("lefschetz-n{n}"), Some(6), &format!("Lefschetz decomposition, n = {n}")), |o| {
        let t = lefschetz_triple(n);
        o.check("sl(2) relations", true, t.sl2_relations_hold());
        let n_i = n as i64;
        let mut dims = Vec::new();
        for i in 0..=2 * n {
            let expected = (binom(2 * n_i, i as i64) - binom(2 * n_i, i as i64 - 2)).max(0);
            let got = t.primitive_forms(i).len();
            dims.push(got);
            o.check(format!("dim P^{i}"), expected, got);
        }
        let dec = t.decomposition();
        o.check("Λ = ⊕ ω^j P^(i−2j)", true, dec.is_complete());
        if commutants {
            for i in 0..=n {
                o.check(format!("commutant on P^{i}"), sdim((1, 0)), sdim(t.primitive_commutant(i)?));
            }
        }
        o.details = json!({ "primitive_dims": dims, "decomposition": to_json(&dec) });
        Ok(())
    })
}

pub fn harmonics(d: usize, imax: usize, commutant_max: Option<usize>) -> Outcome {
    run(Outcome::new(&format!("harmonics-d{d}"), Some(6), &format!("spherical harmonics, d = {d}")), |o| {
        let h = harmonic_setup(d);
        let d_i = d as i64;
        for i in 0..=imax {
            let i_i = i as i64;
            let expected = binom(d_i + i_i - 1, i_i) - binom(d_i + i_i - 3, i_i - 2);
            o.check(format!("dim H^{i}"), expected, h.harmonics(i).len());
        }
        if d <= 4 {
            o.check("polynomials = ⊕ g^j H^(i−2j)", true, h.decomposition(imax.min(6)).is_complete());
        }
        if let Some(max) = commutant_max {
            for i in 0..=max {
                o.check(format!("commutant on H^{i}"), sdim((1, 0)), sdim(h.harmonic_commutant(i)?));
            }
        }
        Ok(())
    })
}

pub fn bernstein(n: usize, hbar: &Scalar) -> Outcome {
    run(Outcome::new(&format!("bernstein-n{n}-h{hbar}"), Some(7), &format!("osp(1|2) on forms, n = {n}, ħ = {hbar}")), |o| {
        let c = bernstein_osp12(n, hbar)?;
        o.check("closure superdimension", sdim((3, 2)), sdim(c.closure_sdim));
        o.check("osp(1|2) relations", true, c.relations_hold);
        o.details = to_json(&c);
        Ok(())
    })
}

pub fn hyperkahler(n: usize) -> Outcome {
    run(Outcome::new(&format!("hyperkahler-n{n}"), Some(8), &format!("hyper-Kähler closures, n = {n}")), |o| {
        let r = hyperkahler_actions(n, &Scalar::one())?;
        o.check("quaternionic structure", true, r.structure_valid);
        if n == 1 {
            o.check("even closure dimension", 10, r.even_closure_dim);
            o.check("super closure superdimension", sdim((10, 4)), sdim(r.super_closure_sdim));
        }
        o.measure("Killing form rank", r.killing_rank);
        o.measure("Cartan rank", r.cartan_rank);
        o.measure("even closure with the third form", r.three_form_even_closure_dim);
        o.details = to_json(&r);
        Ok(())
    })
}

pub fn dual_pair(row: DualPairRow) -> Outcome {
    let c = dual_pair_table_check(row);
    let mut o = Outcome::new(&format!("dualpair-{}", row.id()), Some(9), &format!("dual pair {}", row.id()));
    o.check("form flavor", format!("{:?}", c.expected_flavor), format!("{:?}", c.flavor));
    o.check("pair inside the ambient", true, c.embedded_in_ambient);
    o.check("C(Γ) = Γ' and C(Γ') = Γ", true, c.mutual);
    o.check("C(C(Γ)) = Γ", true, c.double_centralizer);
    o.measure("ambient superdimension", sdim(c.ambient_sdim));
    o.details = to_json(&c);
    o.finish()
}

pub fn sergeev(seed: u64, lambdas: &[Scalar]) -> Outcome {
    run(Outcome::new("sergeev", Some(10), "Sergeev T_λ on (4|4)"), |o| {
        let r = sergeev_check(50, seed);
        o.check("T_λ representation up to scalars", true, r.representation);
        o.check("cocycle independent of λ", true, r.lambda_independent);
        o.check("cocycle nonzero", true, r.cocycle_nonzero);
        o.check(format!("cocycle identity on {} triples", r.cocycle_triples), true, r.cocycle_identity);
        o.check("T_λ(z) separates λ", true, r.z_separates);
        let s = Sergeev::new();
        for l in lambdas {
            let image = s.image(l);
            o.check(format!("commutant at λ = {l}"), sdim((1, 0)), sdim(commutant_sdim(&image, s.odd())));
            let tz = s.t(l, &s.z());
            let expected = howe_core::supermatrix::SuperMatrix::identity(s.odd()).scale(l);
            o.check(format!("T_λ(z) = λ·1 at λ = {l}"), true, tz == expected);
        }
        o.details = to_json(&r);
        Ok(())
    })
}

pub fn rho(r: usize, s: usize, n: usize, conv: RhoConvention) -> Outcome {
    let id = format!("rho-{r}-{s}-n{n}-{}", if conv == RhoConvention::Printed { "printed" } else { "koszul" });
    let criterion = (conv == RhoConvention::Printed).then_some(11);
    run(Outcome::new(&id, criterion, &format!("ρ on V(1|{n}) for ({r}|{s})")), |o| {
        let rep = maximal_rho(r, s, n, conv)?;
        o.check(format!("homomorphism on {} pairs", rep.pairs_checked), "0 defects", format!(
            "{} defects",
            rep.defects_tensor_tensor + rep.defects_tensor_vect + rep.defects_vect_vect
        ));
        o.check("kernel rank", 0, rep.kernel_rank);
        o.measure("commutant", sdim(rep.commutant_sdim));
        o.details = to_json(&rep);
        Ok(())
    })
}

fn half_module(m: HalfModule, window: i64) -> Outcome {
    let id = match m {
        HalfModule::OscSqrtVol => "vir-osc-sqrt-vol",
        HalfModule::SpinSqrtTF => "vir-spin-sqrt-tf",
        HalfModule::SpinDF => "vir-spin-df",
    };
    run(Outcome::new(id, Some(12), &format!("(c, h) of {}", m.name())), |o| {
        let r = central_charge(&m.space(), window)?;
        let (c, h) = m.displayed();
        o.check("(c, h)", format!("({c}, {h})"), format!("({}, {})", r.c, r.h));
        o.check(format!("window stability ({} vs {})", window, window + 4), true, r.window_stable);
        o.check("vacuum killed by e_1, e_2", true, r.vacuum_highest);
        o.details = to_json(&r);
        Ok(())
    })
}

pub fn vir_weights(lambda: &Scalar, mu: &Scalar, stat: Statistics, half: bool, charge: i64, window: i64) -> Outcome {
    let id = format!("vir-weights-{lambda}-{mu}");
    run(Outcome::new(&id, None, &format!("(c, h) for F_({lambda},{mu})")), |o| {
        if half {
            let m = HalfModule::ALL
                .into_iter()
                .find(|m| {
                    let sp = m.space();
                    sp.spec.lambda == *lambda && sp.spec.mu == *mu && sp.statistics == stat
                })
                .ok_or_else(|| Error::Contract(format!("no half construction for F_({lambda},{mu}) with {stat:?} statistics")))?;
            *o = half_module(m, window);
            return Ok(());
        }
        let r = doubled_weights(lambda, mu, stat, charge, window)?;
        let (c, h) = table_formula(lambda, mu);
        let (c, h) = if stat == Statistics::Fermionic { (c, h) } else { (-c, h) };
        o.check("(c, h)", format!("({c}, {h})"), format!("({}, {})", r.c, r.h));
        o.check("window stability", true, r.window_stable);
        o.details = to_json(&r);
        Ok(())
    })
}

pub fn table43(grid: &[(Scalar, Scalar)], window: i64) -> Outcome {
    let mut o = Outcome::new("vir-table-n0", Some(12), "Spin(F_(λ,μ)) and Osc(F_(λ,μ)) weights, n = 0 column");
    match table_n0(grid, window) {
        Ok(t) => {
            o.measure("vacuum charge fixed at (1, 0)", t.charge);
            for p in &t.points {
                o.check(format!("Spin (c, h) at ({}, {})", p.lambda, p.mu), format!("({}, {})", p.expected_c, p.expected_h), format!("({}, {})", p.c, p.h));
                o.check(format!("Osc (c, h) at ({}, {})", p.lambda, p.mu), format!("({}, {})", -p.c.clone(), p.h), format!("({}, {})", p.osc_c, p.osc_h));
                o.check(format!("window stability at ({}, {})", p.lambda, p.mu), true, p.window_stable);
            }
            o.details = to_json(&t);
            o.finish()
        }
        Err(e @ Error::Convention(_)) => {
            let scan = anchor_scan(window).unwrap_or_default();
            let diag = table_at_charge(grid, 1, window).ok();
            o.details = json!({
                "anchor_scan": scan.iter().map(|(s, c, h)| json!({"charge": s, "c": c, "h": h})).collect::<Vec<_>>(),
                "charge_1": diag.as_ref().map(to_json),
            });
            o.error(e)
        }
        Err(e) => o.error(e),
    }
}

pub fn properties(seed: u64, instances: usize) -> Outcome {
    let mut o = Outcome::new("properties", Some(1), "algebraic property suites");
    let tallies = property_suite(seed, instances);
    for t in &tallies {
        o.check(format!("{} failures in {} instances", t.property, t.instances), 0, t.failures);
    }
    o.details = to_json(&tallies);
    o.finish()
}

pub fn osp_dimensions(max_m: usize, max_n: usize) -> Outcome {
    run(Outcome::new("osp-dimensions", Some(2), "dim osp(m|2n) and bracket closure"), |o| {
        for n in 0..=max_n {
            for m in 0..=max_m {
                let alg = PoissonAlgebra::new(PoissonAlgebraSpec::new(n, m, Coordinates::XiEtaTheta));
                let basis = alg.osp_quadratic_basis();
                let expected = n * (2 * n + 1) + m * m.saturating_sub(1) / 2 + 2 * n * m;
                debug_assert_eq!(expected, osp_dimension(n, m));
                let closed = alg.bracket_table(&basis).is_ok();
                o.check(format!("osp({m}|{})", 2 * n), format!("{expected} closed"), format!("{} {}", basis.len(), if closed { "closed" } else { "open" }));
            }
        }
        Ok(())
    })
}

pub fn quantization_images() -> Outcome {
    run(Outcome::new("quantization-images", Some(3), "dimensions of Q(po(0|m))"), |o| {
        for (m, d) in [(2usize, 4usize), (4, 16), (6, 64), (3, 8)] {
            let r = image_dimension(&PoissonAlgebraSpec::new(0, m, Coordinates::XiEtaTheta))?;
            o.check(format!("dim Q(po(0|{m}))"), d, r.dimension);
            if let Some(j) = r.j_supercommutes {
                o.check(format!("image of po(0|{m}) supercommutes with J"), true, j);
            }
        }
        Ok(())
    })
}

/// One verification job of `verify-all`.
pub struct Job {
    pub id: String,
    pub run: Box<dyn Fn(&Settings) -> Vec<Outcome> + Send + Sync>,
}

fn job(id: &str, f: impl Fn(&Settings) -> Vec<Outcome> + Send + Sync + 'static) -> Job {
    Job { id: id.into(), run: Box::new(f) }
}

/// Every job of `verify-all`, ordered by id.
pub fn all_jobs() -> Vec<Job> {
    let mut jobs = vec![
        job("01-properties", |s| vec![properties(s.seed, s.instances)]),
        job("02-osp-dimensions", |_| vec![osp_dimensions(6, 3)]),
        job("03-quantization-images", |_| vec![quantization_images()]),
        job("04-spinor-weights", |_| {
            let mut v = Vec::new();
            for k in 1..=4 {
                if k >= 2 {
                    v.push(spinor(k, false));
                }
                v.push(spinor(k, true));
            }
            v
        }),
        job("05-principal", |_| (1..=6).map(principal).collect()),
        job("06-lefschetz", |_| (1..=4).map(|n| lefschetz(n, n <= 2)).collect()),
        job("06-harmonics", |_| (1..=6).map(|d| harmonics(d, 6, (2..=4).contains(&d).then_some(3))).collect()),
        job("07-bernstein", |_| {
            let mut v = Vec::new();
            for n in 1..=2 {
                for h in [Scalar::frac(1, 2), Scalar::one(), Scalar::from_int(2)] {
                    v.push(bernstein(n, &h));
                }
            }
            v
        }),
        job("08-hyperkahler", |_| vec![hyperkahler(1)]),
        job("09-dual-pairs", |_| DualPairRow::ALL.into_iter().map(dual_pair).collect()),
        job("10-sergeev", |s| vec![sergeev(s.seed, &[Scalar::zero(), Scalar::one(), Scalar::frac(1, 2)])]),
        job("11-rho", |_| {
            let mut v = Vec::new();
            for (r, s) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
                for n in 1..=2 {
                    v.push(rho(r, s, n, RhoConvention::Printed));
                    v.push(rho(r, s, n, RhoConvention::Koszul));
                }
            }
            v
        }),
        job("12-virasoro-half", |s| HalfModule::ALL.into_iter().map(|m| half_module(m, s.window)).collect()),
        job("12-virasoro-table", |s| vec![table43(&s.grid, s.window)]),
    ];
    jobs.sort_by(|a, b| a.id.cmp(&b.id));
    jobs
}
