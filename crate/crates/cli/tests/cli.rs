use std::path::PathBuf;
use std::process::{Command, Output};

use locproj::models::{jtp_table, vanishing_lemma_check, ExampleSpec};
use locproj::plethysm::SymFun;
use locproj::projection::{check_conditions, verify_projection, Schedule};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locproj")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_plane_matches() {
    let o = run(&["verify", "--example", "hilbert-plane", "--n", "2", "--m", "2", "--order", "10"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("result      match"));
}

#[test]
fn verify_affine_gives_partition_numbers() {
    let o = run(&["verify", "--example", "affine-sl2", "--order", "6", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let coeffs: Vec<String> = v["rhs"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
    let every_third: Vec<&str> = coeffs.iter().step_by(3).map(|s| s.as_str()).collect();
    assert_eq!(every_third, ["1", "1", "2", "3", "5", "7", "11"]);
}

#[test]
fn verify_user_spec() {
    let o = run(&["verify", "--spec", data("plane.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn constant_term_in_c_is_rejected() {
    let o = run(&["verify", "--spec", data("bad_c0.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("(c) FAILED"));
    let o = run(&["verify", "--spec", data("bad_c0.json").to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["conditions"]["all_passed"], false);
}

#[test]
fn curve_without_twist_mismatches() {
    let o = run(&["verify", "--example", "cusp-curve", "--m", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("MISMATCH at t^6"));
}

#[test]
fn exhausted_budget_exits_3() {
    assert_eq!(code(&run(&["verify", "--example", "hilbert-plane", "--budget", "1"])), 3);
}

#[test]
fn config_errors_exit_64() {
    assert_eq!(code(&run(&["verify", "--bogus"])), 64);
    assert_eq!(code(&run(&["verify"])), 64);
    assert_eq!(code(&run(&["verify", "--example", "nope"])), 64);
    assert_eq!(code(&run(&["verify", "--spec", data("broken.json").to_str().unwrap()])), 64);
    assert_eq!(code(&run(&["verify", "--spec", data("missing.json").to_str().unwrap()])), 64);
    assert_eq!(code(&run(&["verify", "--example", "hilbert-plane", "--f", "[{\"coeff\": 1}]"])), 64);
    assert_eq!(code(&run(&["verify", "--example", "hilbert-plane", "--grading", "1,1"])), 64);
    assert_eq!(code(&run(&["verify", "--example", "hilbert-plane", "--grading", "1"])), 64);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["verify", "--help"])), 0);
}

#[test]
fn json_is_deterministic_across_thread_settings() {
    let args = ["verify", "--example", "hilbert-plane", "--n", "2", "--json"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_locproj")).args(args).env("LOCPROJ_THREADS", "0").output().unwrap();
    let c = Command::new(env!("CARGO_BIN_EXE_locproj")).args(args).env("LOCPROJ_THREADS", "2").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn verify_json_is_the_library_report() {
    let o = run(&["verify", "--example", "cusp-curve", "--n", "2", "--m", "1", "--json"]);
    let spec = ExampleSpec::builtin("cusp-curve", 2, 1, SymFun::one(), 10).unwrap();
    let g = spec.grading.clone();
    let s = Schedule::for_spec(&spec, &g, 10, 40, 8).unwrap();
    let report = verify_projection(&spec, &s, &g).unwrap();
    let mut want = serde_json::to_value(&report).unwrap();
    want["conditions"] = serde_json::to_value(check_conditions(&spec, 40).unwrap()).unwrap();
    assert_eq!(json(&o), want);
}

#[test]
fn euler_projective_line() {
    let o = run(&["euler", "--weights", "0,1", "--m", "3", "--cross-check"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("chi         1 + t + t^2 + t^3 + O(t^11)"));
    assert!(stdout(&o).contains("localized   match"));
    let o = run(&["euler", "--spec", data("line.json").to_str().unwrap(), "--m", "3", "--json"]);
    assert_eq!(json(&o)["chi"]["coeffs"].as_array().unwrap().len(), 11);
}

#[test]
fn euler_structure_sheaf() {
    let o = run(&["euler", "--weights", "-2,0,1,5,7", "--n", "2", "--json"]);
    assert_eq!(json(&o)["chi"]["coeffs"][0], "1");
    assert_eq!(json(&o)["chi"]["coeffs"][1], "0");
}

#[test]
fn euler_degenerate_grading_suggests_one() {
    let dir = std::env::temp_dir().join(format!("locproj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("w.json");
    std::fs::write(&p, "[[0,0],[1,1],[2,0]]").unwrap();
    let o = run(&["euler", "--spec", p.to_str().unwrap(), "--grading", "1,1"]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("try grading [1, 5]"));
    let o = run(&["euler", "--spec", p.to_str().unwrap(), "--grading", "1,5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn lemma_runs_and_detects_transpose() {
    let o = run(&["lemma", "--n", "2", "--k", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["lemma", "--n", "0"])), 0);
    let o = run(&["lemma", "--n", "2", "--k", "4", "--inject-transpose"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("symmetry    FAILED"));
    let o = run(&["lemma", "--n", "2", "--k", "3", "--json"]);
    let want = serde_json::to_value(vanishing_lemma_check(2, 3, false).unwrap()).unwrap();
    assert_eq!(json(&o), want);
}

#[test]
fn conditions_on_examples() {
    for name in ["hilbert-plane", "cusp-curve", "affine-sl2"] {
        let o = run(&["conditions", "--example", name]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn jtp_range_control() {
    assert_eq!(code(&run(&["jtp", "--order", "8", "--range", "3"])), 0);
    let o = run(&["jtp", "--order", "8", "--range", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("MISMATCH at q^1"));
    let o = run(&["jtp", "--order", "8", "--range", "3", "--json"]);
    assert_eq!(json(&o), serde_json::to_value(jtp_table(3, 8).unwrap()).unwrap());
}
