use std::process::{Command, Output};

use howe_core::Scalar;
use serde_json::Value;

fn howe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe")).args(args).output().expect("runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = howe(&a);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).expect("json report"))
}

fn checks(report: &Value) -> Vec<(String, String, String, bool)> {
    report["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|o| o["checks"].as_array().unwrap().clone())
        .map(|c| {
            (
                c["name"].as_str().unwrap().to_string(),
                c["expected"].as_str().unwrap().to_string(),
                c["measured"].as_str().unwrap().to_string(),
                c["ok"].as_bool().unwrap(),
            )
        })
        .collect()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(howe(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(howe(&["spinor", "--bogus"]).status.code(), Some(2));
    assert_eq!(howe(&["dualpair", "--row", "nope"]).status.code(), Some(2));
    assert_eq!(howe(&["table43", "--grid", "/nonexistent/grid.txt"]).status.code(), Some(2));
}

#[test]
fn spinor_o7_weights() {
    let (code, r) = json(&["spinor", "--algebra", "o", "--k", "3", "--odd"]);
    assert_eq!(code, 0);
    let c = checks(&r);
    assert_eq!(c[0].2, "(0,0,1)");
    assert!(c.iter().all(|x| x.3));
}

#[test]
fn half_construction_mismatch_exits_1_with_diff() {
    let out = howe(&["vir-weights", "--lambda", "1/2", "--mu", "0", "--stat", "fermi", "--construction", "half"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("expected (-1/3, 0), got (-1/2, 0)"), "{text}");
}

#[test]
fn half_construction_needs_a_known_module() {
    let (code, r) = json(&["vir-weights", "--lambda", "1", "--mu", "0", "--stat", "fermi", "--construction", "half"]);
    assert_eq!(code, 1);
    assert_eq!(r["outcomes"][0]["status"], "error");
}

#[test]
fn doubled_weights_at_charge() {
    let (_, r) = json(&["vir-weights", "--lambda", "2", "--mu", "0", "--stat", "fermi", "--construction", "doubled", "--charge", "1"]);
    let c = checks(&r);
    assert_eq!(c[0].2, "(26, -2)");
    assert_eq!(c[0].1, "(26, 4)");
}

#[test]
fn bracket_from_arguments_and_file() {
    let (code, r) = json(&["bracket", "--n", "1", "--m", "0", "p1", "q1", "--expect", "1"]);
    assert_eq!(code, 0);
    assert!(checks(&r)[0].3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    std::fs::write(&path, r#"{"n": 0, "m": 2, "coordinates": "XiEtaTheta", "f": "xi1", "g": "eta1", "expect": "2"}"#).unwrap();
    let (code, r) = json(&["bracket", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let c = checks(&r);
    assert_eq!((c[0].1.as_str(), c[0].2.as_str()), ("(2)", "(1)"));
}

#[test]
fn quantize_reports_operator() {
    let (code, r) = json(&["quantize", "--n", "1", "--hbar", "3", "q1*p1"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcomes"][0]["status"], "measured");
}

#[test]
fn reports_are_written_and_scalars_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = howe(&["table43", "--out", dir.path().to_str().unwrap(), "--window", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let r: Value = serde_json::from_str(&text).unwrap();
    let scan = r["outcomes"][0]["details"]["anchor_scan"].as_array().unwrap();
    assert_eq!(scan.len(), 9);
    for entry in scan {
        for key in ["c", "h"] {
            let s = entry[key].as_str().unwrap();
            assert_eq!(s.parse::<Scalar>().unwrap().to_string(), s);
        }
    }
    assert!(std::fs::read_to_string(dir.path().join("report.md")).unwrap().contains("| check | expected | measured | ok |"));
    assert!(dir.path().join("timings.json").exists());
}

#[test]
fn grid_and_config_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("howe.conf");
    std::fs::write(&cfg, "# preset\nwindow = 7\ngrid = 0,0; 1/2,1/2\n").unwrap();
    let (_, r) = json(&["--config", cfg.to_str().unwrap(), "table43"]);
    assert!(r["outcomes"][0]["details"]["charge_1"]["points"].as_array().unwrap().len() == 2);
    let grid = dir.path().join("grid.txt");
    std::fs::write(&grid, "1,0\n2,1/3  # comment\n\n").unwrap();
    let (_, r) = json(&["table43", "--grid", grid.to_str().unwrap()]);
    let pts = r["outcomes"][0]["details"]["charge_1"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 2);
    assert_eq!(pts[1]["mu"], "1/3");
    let (_, r) = json(&["table43", "--window", "3"]);
    let msg = r["outcomes"][0]["checks"][0]["measured"].as_str().unwrap();
    assert!(msg.contains("window"), "{msg}");
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(howe(&["--config", bad.to_str().unwrap(), "principal", "--N", "1"]).status.code(), Some(2));
}

#[test]
fn passing_subcommands_exit_0() {
    for args in [
        vec!["lefschetz", "--n", "2"],
        vec!["harmonics", "--d", "3", "--imax", "4"],
        vec!["bernstein", "--n", "1", "--hbar", "1/2"],
        vec!["dualpair", "--row", "sp2-sp2-in-o4"],
        vec!["sergeev", "--lambda", "1/3"],
        vec!["rho", "--r", "1", "--s", "1", "--n", "1", "--convention", "koszul"],
    ] {
        assert_eq!(howe(&args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn failing_printed_values_exit_1() {
    for args in [
        vec!["principal", "--N", "3"],
        vec!["hyperkahler", "--n", "1"],
        vec!["rho", "--r", "1", "--s", "0", "--n", "1"],
    ] {
        assert_eq!(howe(&args).status.code(), Some(1), "{args:?}");
    }
}
