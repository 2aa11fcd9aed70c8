//! Acceptance suite: one line per criterion, exact comparisons against pinned values.

use std::path::Path;
use std::process::{Command, ExitCode};

use howe_cli::props::property_suite;
use howe_core::dual_pairs::{dual_pair_table_check, maximal_rho, sergeev_check, DualPairRow, RhoConvention, Sergeev};
use howe_core::howe::{bernstein_osp12, commutant_sdim, harmonic_setup, hyperkahler_actions, lefschetz_triple};
use howe_core::stringy::{central_charge, default_grid, table_n0, HalfModule};
use howe_core::supermatrix::SuperMatrix;
use howe_core::weyl_clifford::{highest_weight_of_vacuum, image_dimension, principal_sl2_weight, spinor_basis_o};
use howe_core::{Coordinates, PoissonAlgebra, PoissonAlgebraSpec, Scalar};

/// Mismatches found by a criterion; empty means pass.
type Findings = Vec<String>;

fn expect<T: PartialEq + std::fmt::Debug>(f: &mut Findings, what: &str, expected: T, got: T) {
    if expected != got {
        f.push(format!("{what}: expected {expected:?}, got {got:?}"));
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::frac(a, b)
}

fn c01_properties() -> Findings {
    let mut f = Vec::new();
    let tallies = property_suite(7, 120);
    expect(&mut f, "properties covered", 7, tallies.len());
    for t in tallies {
        if t.instances < 100 {
            f.push(format!("{}: only {} instances", t.property, t.instances));
        }
        expect(&mut f, &t.property, 0, t.failures);
    }
    f
}

fn c02_osp() -> Findings {
    let mut f = Vec::new();
    for n in 0..=3usize {
        for m in 0..=6usize {
            let alg = PoissonAlgebra::new(PoissonAlgebraSpec::new(n, m, Coordinates::XiEtaTheta));
            let basis = alg.osp_quadratic_basis();
            expect(&mut f, &format!("dim osp({m}|{})", 2 * n), n * (2 * n + 1) + m * m.saturating_sub(1) / 2 + 2 * n * m, basis.len());
            if let Err(e) = alg.bracket_table(&basis) {
                f.push(format!("osp({m}|{}) not closed: {e}", 2 * n));
            }
        }
    }
    f
}

fn c03_images() -> Findings {
    let mut f = Vec::new();
    for (m, d) in [(2, 4), (4, 16), (6, 64), (3, 8)] {
        let r = image_dimension(&PoissonAlgebraSpec::new(0, m, Coordinates::XiEtaTheta)).unwrap();
        expect(&mut f, &format!("dim Q(po(0|{m}))"), d, r.dimension);
        if m == 3 {
            expect(&mut f, "image supercommutes with J", Some(true), r.j_supercommutes);
        }
    }
    f
}

fn c04_spinors() -> Findings {
    let mut f = Vec::new();
    for k in 1..=4usize {
        for odd in [false, true] {
            if !odd && k == 1 {
                continue;
            }
            let set = spinor_basis_o(k, odd).unwrap();
            let r = highest_weight_of_vacuum(&set, Scalar::one()).unwrap();
            let mut unit = vec![Scalar::zero(); k];
            unit[k - 1] = Scalar::one();
            expect(&mut f, &format!("{} vacuum weight", set.name), unit, r.weights.into_iter().map(|w| w.1).collect());
        }
    }
    f
}

fn c05_principal() -> Findings {
    let mut f = Vec::new();
    let pinned = [(1, q(2, 1)), (3, q(12, 1)), (5, q(30, 1)), (2, q(-2, 1)), (4, q(-8, 1)), (6, q(-18, 1))];
    for (n, w) in pinned {
        let r = principal_sl2_weight(n).unwrap();
        expect(&mut f, &format!("N={n} sl(2) relations"), true, r.sl2_relations_hold);
        expect(&mut f, &format!("N={n} weight"), w.to_string(), r.weight.to_string());
    }
    f
}

fn c06_lefschetz_harmonics() -> Findings {
    let mut f = Vec::new();
    for n in 1..=4usize {
        let t = lefschetz_triple(n);
        for i in 0..=n {
            let d = binom(2 * n as i64, i as i64) - binom(2 * n as i64, i as i64 - 2);
            expect(&mut f, &format!("n={n} dim P^{i}"), d as usize, t.primitive_forms(i).len());
        }
        expect(&mut f, &format!("n={n} Lefschetz decomposition complete"), true, t.decomposition().is_complete());
        if n <= 2 {
            for i in 0..=n {
                expect(&mut f, &format!("n={n} commutant on P^{i}"), (1, 0), t.primitive_commutant(i).unwrap());
            }
        }
    }
    for d in 1..=6usize {
        let h = harmonic_setup(d);
        for i in 0..=6usize {
            let (d_i, i_i) = (d as i64, i as i64);
            let dim = binom(d_i + i_i - 1, i_i) - binom(d_i + i_i - 3, i_i - 2);
            expect(&mut f, &format!("d={d} dim H^{i}"), dim as usize, h.harmonics(i).len());
        }
        if (2..=4).contains(&d) {
            for i in 1..=3 {
                expect(&mut f, &format!("d={d} commutant on H^{i}"), (1, 0), h.harmonic_commutant(i).unwrap());
            }
        }
    }
    f
}

fn c07_bernstein() -> Findings {
    let mut f = Vec::new();
    for n in 1..=2 {
        for h in [q(1, 2), q(1, 1), q(2, 1)] {
            let c = bernstein_osp12(n, &h).unwrap();
            expect(&mut f, &format!("n={n} ħ={h} closure"), (3, 2), c.closure_sdim);
            expect(&mut f, &format!("n={n} ħ={h} osp(1|2) relations"), true, c.relations_hold);
        }
    }
    f
}

fn c08_hyperkahler() -> Findings {
    let mut f = Vec::new();
    let r = hyperkahler_actions(1, &Scalar::one()).unwrap();
    expect(&mut f, "even closure dimension", 10, r.even_closure_dim);
    expect(&mut f, "super closure superdimension", (10, 4), r.super_closure_sdim);
    f
}

fn c09_dual_pairs() -> Findings {
    let mut f = Vec::new();
    for row in DualPairRow::ALL {
        let c = dual_pair_table_check(row);
        expect(&mut f, &format!("{} mutual centralizers", row.id()), true, c.mutual);
        expect(&mut f, &format!("{} C(C(Γ)) = Γ", row.id()), true, c.double_centralizer);
        expect(&mut f, &format!("{} inside the ambient", row.id()), true, c.embedded_in_ambient);
    }
    f
}

fn c10_sergeev() -> Findings {
    let mut f = Vec::new();
    let r = sergeev_check(50, 3);
    expect(&mut f, "representation up to scalars", true, r.representation);
    expect(&mut f, "cocycle independent of λ", true, r.lambda_independent);
    expect(&mut f, "cocycle triples", 50, r.cocycle_triples);
    expect(&mut f, "cocycle identity", true, r.cocycle_identity);
    let s = Sergeev::new();
    for l in [q(0, 1), q(1, 1), q(1, 2)] {
        expect(&mut f, &format!("commutant at λ={l}"), (1, 0), commutant_sdim(&s.image(&l), s.odd()));
        expect(&mut f, &format!("T_λ(z) at λ={l}"), SuperMatrix::identity(s.odd()).scale(&l), s.t(&l, &s.z()));
    }
    expect(&mut f, "T_λ(z) separates λ", true, r.z_separates);
    f
}

fn c11_rho() -> Findings {
    let mut f = Vec::new();
    for (r, s) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
        for n in 1..=2 {
            let rep = maximal_rho(r, s, n, RhoConvention::Printed).unwrap();
            let defects = rep.defects_tensor_tensor + rep.defects_tensor_vect + rep.defects_vect_vect;
            expect(&mut f, &format!("({r}|{s}) n={n} bracket defects"), 0, defects);
            expect(&mut f, &format!("({r}|{s}) n={n} kernel rank"), 0, rep.kernel_rank);
        }
    }
    f
}

fn c12_virasoro() -> Findings {
    let mut f = Vec::new();
    let pinned = [
        (HalfModule::OscSqrtVol, q(-1, 3), q(0, 1)),
        (HalfModule::SpinSqrtTF, q(1, 6), q(1, 2)),
        (HalfModule::SpinDF, q(-1, 6), q(0, 1)),
    ];
    for (m, c, h) in pinned {
        match central_charge(&m.space(), 8) {
            Ok(r) => {
                expect(&mut f, &format!("{} (c, h)", m.name()), (c.to_string(), h.to_string()), (r.c.to_string(), r.h.to_string()));
                expect(&mut f, &format!("{} window stable", m.name()), true, r.window_stable);
            }
            Err(e) => f.push(format!("{}: {e}", m.name())),
        }
    }
    let grid = default_grid();
    expect(&mut f, "grid points", 12, grid.len());
    match table_n0(&grid, 8) {
        Ok(t) => {
            for p in &t.points {
                let c = &(&(&(&p.lambda * &p.lambda) * &Scalar::from_int(12)) - &(&p.lambda * &Scalar::from_int(12))) + &Scalar::from_int(2);
                let h = &(&p.mu + &(&p.lambda * &Scalar::from_int(2))) * &(&p.mu + &Scalar::one());
                let at = format!("({}, {})", p.lambda, p.mu);
                expect(&mut f, &format!("Spin {at}"), (c.clone(), h.clone()), (p.c.clone(), p.h.clone()));
                expect(&mut f, &format!("Osc {at}"), (-c, h), (p.osc_c.clone(), p.osc_h.clone()));
                expect(&mut f, &format!("window stable {at}"), true, p.window_stable);
            }
        }
        Err(e) => f.push(format!("table calibration: {e}")),
    }
    f
}

fn c13_determinism() -> Findings {
    let mut f = Vec::new();
    let exe = env!("CARGO_BIN_EXE_howe");
    let base = std::env::temp_dir().join(format!("howe-acceptance-{}", std::process::id()));
    let run = |dir: &Path| Command::new(exe).args(["verify-all", "--jobs", "4", "--out"]).arg(dir).output();
    let (a, b) = (base.join("a"), base.join("b"));
    match (run(&a), run(&b)) {
        (Ok(x), Ok(y)) => {
            expect(&mut f, "exit codes agree", x.status.code(), y.status.code());
            expect(&mut f, "stdout identical", true, x.stdout == y.stdout);
            for name in ["report.json", "report.md"] {
                let (p, r) = (std::fs::read(a.join(name)), std::fs::read(b.join(name)));
                match (p, r) {
                    (Ok(p), Ok(r)) => expect(&mut f, &format!("{name} byte-identical"), true, p == r),
                    _ => f.push(format!("{name} missing")),
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => f.push(format!("could not run howe: {e}")),
    }
    let _ = std::fs::remove_dir_all(&base);
    f
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Findings); 13] = [
        ("algebraic property suites", c01_properties),
        ("osp(m|2n) dimensions and closure", c02_osp),
        ("quantization image dimensions", c03_images),
        ("spinor highest weights", c04_spinors),
        ("principal sl(2) weights", c05_principal),
        ("Lefschetz and harmonic decompositions", c06_lefschetz_harmonics),
        ("Bernstein osp(1|2) closure", c07_bernstein),
        ("hyper-Kähler closures", c08_hyperkahler),
        ("dual pair certificates", c09_dual_pairs),
        ("Sergeev extension", c10_sergeev),
        ("representation rho", c11_rho),
        ("Virasoro weights", c12_virasoro),
        ("verify-all determinism", c13_determinism),
    ];
    let results: Vec<Findings> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, run)| s.spawn(run)).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| vec!["panicked".into()])).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), findings)) in criteria.iter().zip(&results).enumerate() {
        let verdict = if findings.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {name}", k + 1);
        for line in findings {
            println!("               {line}");
        }
        failed += usize::from(!findings.is_empty());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
