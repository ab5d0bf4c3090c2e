//! End-to-end checks of the command-line interface: worked examples, exit
//! codes, provenance echo, and output formats.

use std::process::{Command, Output};

fn qce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qce"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(args: &[&str]) -> serde_json::Value {
    let out = qce(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn as_f64(v: &serde_json::Value) -> f64 {
    v.as_f64().expect("numeric field")
}

#[test]
// 0.7071 is the worked example's literal input, not a stand-in constant
#[allow(clippy::approx_constant)]
fn decompose_balanced_mixture_gives_weight_one_half_and_orthogonal_counter() {
    let v = json_stdout(&["decompose", "--r", "0.5", "--p", "0.7071", "--theta", "0"]);
    let result = &v["result"];
    assert_eq!(as_f64(&result["w"]), 0.5);
    // ⟨φ∣φ^c⟩ from the emitted amplitudes
    let amp = |field: &str, k: usize, part: usize| as_f64(&result[field][k][part]);
    let mut re = 0.0;
    let mut im = 0.0;
    for k in 0..2 {
        let (ar, ai) = (amp("phi", k, 0), amp("phi", k, 1));
        let (br, bi) = (amp("phi_counter", k, 0), amp("phi_counter", k, 1));
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    assert!(re.hypot(im) <= 1e-12, "counter state not orthogonal");
    assert!(as_f64(&result["reconstruction_residual"]) <= 1e-12);
    // inputs echoed for provenance
    assert_eq!(as_f64(&v["inputs"]["r"]), 0.5);
    assert_eq!(as_f64(&v["inputs"]["p"]), 0.7071);
}

#[test]
fn decomposition_for_schmidt_branch() {
    let v = json_stdout(&[
        "decomposition-for",
        "--r",
        "0.3",
        "--q",
        "0",
        "--lambda",
        "0",
    ]);
    assert_eq!(as_f64(&v["result"]["p"]), 0.0);
    assert_eq!(as_f64(&v["result"]["w"]), 0.7);
}

#[test]
fn decompose_accepts_a_target_weight() {
    let v = json_stdout(&["decompose", "--r", "0.3", "--w", "0.5"]);
    let p = as_f64(&v["result"]["phi"][0][0]);
    assert!((p - 0.3f64.sqrt()).abs() <= 1e-12);
    assert!((as_f64(&v["result"]["w"]) - 0.5).abs() <= 1e-12);
}

#[test]
fn decompose_exposes_the_weight_split() {
    let v = json_stdout(&[
        "decompose",
        "--r",
        "0.3",
        "--p",
        "0.6",
        "--split-fraction",
        "0.5",
    ]);
    let split = &v["result"]["split"];
    assert!(split["residual_state"].is_array());
    let v = json_stdout(&[
        "decompose",
        "--r",
        "0.3",
        "--p",
        "0.6",
        "--split-fraction",
        "1.1",
    ]);
    assert_eq!(v["result"]["split"]["overweight_impossible"], true);
}

#[test]
fn counter_is_an_involution_through_the_cli() {
    let v = json_stdout(&["counter", "--r", "0.3", "--p", "0.6", "--theta", "0.2"]);
    let counter_p = as_f64(&v["result"]["p"]);
    let counter_theta = as_f64(&v["result"]["theta"]);
    assert!((as_f64(&v["result"]["weight"]) - (1.0 - 35.0 / 74.0)).abs() <= 1e-12);
    let back = json_stdout(&[
        "counter",
        "--r",
        "0.3",
        "--p",
        &counter_p.to_string(),
        "--theta",
        &counter_theta.to_string(),
    ]);
    assert!((as_f64(&back["result"]["p"]) - 0.6).abs() <= 1e-9);
}

#[test]
fn measure_reports_both_branches_and_the_nonselective_state() {
    let v = json_stdout(&["measure", "--r", "0.5", "--q", "0.7071067811865476"]);
    let branches = v["result"]["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 2);
    assert_eq!(branches[0]["label"], "mu1");
    let total: f64 = branches.iter().map(|b| as_f64(&b["probability"])).sum();
    assert!((total - 1.0).abs() <= 1e-12);
    let matrix = v["result"]["nonselective_state"].as_array().unwrap();
    assert_eq!(matrix.len(), 4);
    let trace: f64 = (0..4).map(|k| as_f64(&matrix[k][k][0])).sum();
    assert!((trace - 1.0).abs() <= 1e-12);
}

#[test]
fn distant_check_separates_schmidt_from_oblique_measurements() {
    let v = json_stdout(&["distant-check", "--r", "0.3", "--q", "1"]);
    assert_eq!(v["result"]["distant"], true);
    let v = json_stdout(&["distant-check", "--r", "0.3", "--q", "0.5"]);
    assert_eq!(v["result"]["distant"], false);
    assert!(as_f64(&v["result"]["commutator_max"]) > 1e-12);
    let v = json_stdout(&["distant-check", "--r", "0.5", "--q", "0.5", "--lambda", "2"]);
    assert_eq!(v["result"]["distant"], true);
}

#[test]
fn degree_flags_match_radian_flags() {
    let deg = qce(&[
        "measurement-for",
        "--r",
        "0.3",
        "--p",
        "0.6",
        "--theta-deg",
        "45",
    ]);
    let rad = qce(&[
        "measurement-for",
        "--r",
        "0.3",
        "--p",
        "0.6",
        "--theta",
        "0.7853981633974483",
    ]);
    assert_eq!(deg.stdout, rad.stdout);
}

#[test]
fn domain_errors_name_the_violated_bound_and_exit_1() {
    let out = qce(&["decompose", "--r", "1.2", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("r = 1.2"));
    assert!(stderr.contains("(0, 1/2]"));

    let out = qce(&["decompose", "--r", "0.5", "--w", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = qce(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qce(&["decompose", "--r", "0.3"]);
    assert_eq!(out.status.code(), Some(2), "--p/--w group is required");
    let out = qce(&["decompose", "--r", "0.3", "--p", "0.5", "--w", "0.4"]);
    assert_eq!(out.status.code(), Some(2), "--p conflicts with --w");
}

#[test]
fn pattern_csv_is_versioned_and_complete() {
    let out = qce(&["pattern"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# qce-pattern-csv v1");
    assert!(lines.next().unwrap().starts_with("# inputs:"));
    assert!(lines.next().unwrap().starts_with("# overlap:"));
    assert_eq!(lines.next().unwrap(), "x,p_i,p_i_c,p_mix");
    assert_eq!(lines.count(), 2048);
}

#[test]
fn pattern_json_carries_the_densities() {
    let v = json_stdout(&["pattern", "--format", "json", "--samples", "256"]);
    assert_eq!(v["result"]["x"].as_array().unwrap().len(), 256);
    for integral in v["result"]["integrals"].as_array().unwrap() {
        assert!((integral.as_f64().unwrap() - 1.0).abs() <= 1e-8);
    }
}

#[test]
fn out_flag_writes_the_artifact_to_a_file() {
    let dir = std::env::temp_dir().join("qce-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("purify.json");
    let out = qce(&["purify", "--r", "0.3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).expect("file is JSON");
    assert!((as_f64(&v["result"]["amps"][0][0]) - 0.3f64.sqrt()).abs() <= 1e-15);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn simulate_without_screen_has_no_histograms() {
    let v = json_stdout(&[
        "simulate",
        "--r",
        "0.3",
        "--q",
        "1",
        "--photons",
        "5000",
        "--seed",
        "3",
    ]);
    assert!(v["result"]["histograms"].is_null());
    let counts: u64 = v["result"]["branches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["count"].as_u64().unwrap())
        .sum();
    assert_eq!(counts, 5000);
    assert_eq!(v["result"]["seed"], 3);
}

#[test]
fn verify_small_lattice_passes_and_reports_residuals() {
    let v = json_stdout(&[
        "verify",
        "--grid-steps",
        "3",
        "--random-cases",
        "50",
        "--seed",
        "9",
    ]);
    assert_eq!(v["result"]["passed"], true);
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    for check in checks {
        assert_eq!(check["passed"], true, "{} failed", check["name"]);
    }
}
