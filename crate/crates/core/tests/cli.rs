use qrefless::cli::{parse_seeds, run_with, worker_count, WORKERS_ENV};
use std::process::Command;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let argv = std::iter::once("qrefless").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn amplitude_sweep_is_unitary() {
    let (code, out, _) = run(&["scatter", "amplitudes", "--gamma", "0.5", "--h", "2", "--k-grid", "0.1:6:60"], "");
    assert_eq!(code, 0);
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "k,t_re,t_im,r_re,r_im,defect");
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 60);
    assert!(rows.iter().all(|r| r[5] < 1e-8));
}

#[test]
fn empty_seed_list_gives_free_potential() {
    for input in ["[]", "", "# nothing here\n"] {
        let (code, out, _) = run(&["refless", "table", "--gamma", "0.5", "--seeds", "-"], input);
        assert_eq!(code, 0, "input {input:?}");
        for r in data_rows(&out) {
            assert_eq!((r[1], r[2]), (1.0, 0.0));
        }
    }
}

#[test]
fn seed_formats_agree() {
    let json = r#"[{"k": 1.0, "c_tilde": 1.0}, {"k": 2.0, "c_tilde": -1.0}]"#;
    let text = "1.0 1.0\n2.0, -1.0  # second seed\n";
    assert_eq!(parse_seeds(json).unwrap(), parse_seeds(text).unwrap());
    let a = run(&["refless", "table", "--gamma", "0.5", "--seeds", "-", "--x-range", "-2:2:0.5"], json);
    let b = run(&["refless", "table", "--gamma", "0.5", "--seeds", "-", "--x-range", "-2:2:0.5"], text);
    assert_eq!(a, b);
    let header = a.1.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header.split(',').count(), 1 + 2 + 2 + 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["solvable", "eigen", "--gamma", "0.3", "--h", "1.7", "--n", "1", "--x-range", "-3:3:0.25"];
    let a = run(&args, "");
    let b = run(&["--workers", "3"].iter().chain(args.iter()).copied().collect::<Vec<_>>(), "");
    assert_eq!(a, b);
    assert!(data_rows(&a.1).iter().all(|r| r[3] < 1e-7));
}

#[test]
fn json_outputs_carry_schema() {
    for args in [
        vec!["qdilog", "eval", "--gamma", "0.5", "--z", "0.3,-0.2"],
        vec!["qseries", "phi21", "--gamma", "0.3", "--a", "0.5,0.1", "--b", "0.2", "--c", "0.7,0.2", "--z", "0.3,0"],
        vec!["solvable", "identify", "--gamma", "0.4", "--N", "2"],
        vec!["scatter", "amplitudes", "--gamma", "0.5", "--h", "1.5", "--k-grid", "0.5:2:4", "--out", "json"],
    ] {
        let (code, out, _) = run(&args, "");
        assert_eq!(code, 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1, "{args:?}");
    }
}

#[test]
fn conjecture_suites_report_per_case() {
    for suite in ["terminating", "qeuler", "double", "random"] {
        let (code, out, _) = run(&["scatter", "verify-conjecture", "--suite", suite, "--tol", "1e-6"], "");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["suite"], suite);
        assert_eq!(code, 0, "{suite}");
        assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] != "FAIL"));
    }
    // an impossible tolerance must fail and exit nonzero
    let (code, out, _) = run(&["scatter", "verify-conjecture", "--suite", "double", "--tol", "1e-300"], "");
    assert_eq!(code, 1);
    assert!(out.contains("\"FAIL\""));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["scatter", "amplitudes", "--gamma", "0.5", "--h", "9", "--k-grid", "0.1:1:3"],
        vec!["scatter", "amplitudes", "--gamma", "0.5", "--h", "1", "--k-grid", "0.1:1"],
        vec!["qdilog", "eval", "--gamma", "-1", "--z", "0,0"],
        vec!["scatter", "verify-conjecture", "--suite", "nope"],
        vec!["solvable", "eigen", "--gamma", "0.3", "--h", "1.5", "--n", "5"],
    ] {
        let (code, _, err) = run(&args, "");
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, _, _) = run(&["refless", "table", "--gamma", "0.5", "--seeds", "-"], "[{\"k\": 2.0, \"c_tilde\": 1.0}, {\"k\": 1.0, \"c_tilde\": -1.0}]");
    assert_eq!(code, 2);
}

#[test]
fn numerical_failure_exits_one_with_json() {
    let (code, out, err) = run(&["qdilog", "eval", "--gamma", "0.5", "--z", "0,-3.6415926535897931"], "");
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["error"], "pole");
}

#[test]
fn worker_flag_beats_environment() {
    std::env::set_var(WORKERS_ENV, "2");
    assert_eq!(worker_count(None), Some(2));
    assert_eq!(worker_count(Some(5)), Some(5));
    std::env::remove_var(WORKERS_ENV);
    assert_eq!(worker_count(None), None);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qrefless");
    let ok = Command::new(bin).args(["verify-all", "--only", "10,4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS criterion 10"));
    let bad = Command::new(bin).args(["scatter"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
