//! End-to-end tests of the command-line interface: report shapes,
//! determinism, and exit codes.

use serde_json::Value;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gl3padic"))
}

fn fixtures() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .unwrap()
}

fn run_ok(args: &[&str]) -> Value {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn crit_enumerates_the_documented_example() {
    let v = run_ok(&["crit", "--a", "2", "--omega-parity", "even"]);
    assert_eq!(v["minus"], serde_json::json!([-2, 0]));
    assert_eq!(v["plus"], serde_json::json!([1, 3]));
    assert_eq!(v["schema"], "gl3padic/crit/1");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["crit", "--a", "4", "--omega-parity", "odd"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn einf_reports_the_symbolic_period() {
    let v = run_ok(&["einf", "--a", "10", "--j", "4"]);
    assert_eq!(v["e_infty"]["gamma_arg"], 7);
    assert_eq!(v["e_infty"]["power_of_2pi_i"], -7);
    assert_eq!(v["e_infty"]["rational_part"], "2");
}

#[test]
fn einf_out_of_range_is_a_domain_error() {
    let out = bin().args(["einf", "--a", "2", "--j", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn refine_reports_ordinary_lift_at_eleven() {
    let v = run_ok(&["refine", "--p", "11"]);
    assert_eq!(v["valuations"], serde_json::json!([-11, 0, 11]));
    assert_eq!(v["ordinary_p1"], true);
    assert_eq!(v["cohomologically_normalized"], true);
}

#[test]
fn refine_accepts_the_hecke_fixture() {
    let path = fixtures().join("delta_hecke.json");
    let v = run_ok(&["refine", "--p", "11", "--coeffs", path.to_str().unwrap()]);
    assert_eq!(v["valuations"], serde_json::json!([-11, 0, 11]));
}

#[test]
fn refine_at_a_composite_is_a_domain_error() {
    let out = bin().args(["refine", "--p", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn zeta_closed_and_sum_agree_on_the_spherical_fixture() {
    let path = fixtures().join("zeta_spherical.json");
    let path = path.to_str().unwrap();
    for j in ["0", "1", "2"] {
        let closed = run_ok(&["zeta", "--form", "closed", "--j", j, "--input", path]);
        let sum = run_ok(&["zeta", "--form", "sum", "--j", j, "--input", path]);
        assert_eq!(
            closed["value"]["specialized"], sum["value"]["specialized"],
            "j = {j}"
        );
        assert!(closed["value"]["specialized"].is_object());
    }
}

#[test]
fn zeta_reads_stdin_and_rejects_malformed_input_with_a_field_pointer() {
    use std::io::Write;
    let mut child = bin()
        .args(["zeta", "--form", "sum", "--j", "0"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"{\"prime\": 5}")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("weight_a"), "stderr should name the field: {err}");
}

#[test]
fn branch_reports_consistent_dimensions() {
    let v = run_ok(&["branch", "--a", "3"]);
    assert_eq!(v["gl3_dimension"], v["total_restricted_dimension"]);
    assert_eq!(v["constituents"].as_array().unwrap().len(), 16);
}

#[test]
fn eis_distribution_check_passes() {
    let v = run_ok(&["eis", "check-distribution", "--p", "3", "--t", "2"]);
    assert_eq!(v["holds"], true);
}

#[test]
fn measure_fixture_evaluates_against_a_tame_character() {
    let path = fixtures().join("measure_dirac.json");
    let v = run_ok(&[
        "measure",
        "--input",
        path.to_str().unwrap(),
        "--eta-modulus",
        "3",
        "--eta-exponents",
        "1",
    ]);
    // The Dirac measure at 2 evaluates to η(2) = −1 for the quadratic
    // character mod 3.
    assert_eq!(v["value"]["coeffs"], serde_json::json!(["-1"]));
}

#[test]
fn selftest_passes() {
    let v = run_ok(&["selftest"]);
    assert_eq!(v["all_ok"], true);
}

#[test]
fn unknown_subcommand_is_a_domain_error() {
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
