//! End-to-end checks of the command-line contract: exit codes, negative
//! controls, determinism, and output shape.

use std::path::Path;
use std::process::{Command, Output};

fn fieldlab(args: &[&str], out_dir: &Path) -> Output {
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full.push("--out".to_string());
    full.push(out_dir.display().to_string());
    Command::new(env!("CARGO_BIN_EXE_fieldlab"))
        .args(&full)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn saddle_passes_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["saddle"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.starts_with("# fieldlab v"));
    assert!(report.contains("stationary point"));
    assert!(dir.path().join("saddle_minmax.csv").exists());
}

#[test]
fn translated_saddle_is_found() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &["saddle", "--function", "cubic", "--start", "0.9,0.0"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn non_analytic_function_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["saddle", "--function", "conj"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not analytic"));
}

#[test]
fn verify_identities_passes_and_fault_injection_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &[
            "verify-identities",
            "--samples",
            "200",
            "--exact-samples",
            "20",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.contains("annotated"), "annotated check surfaced");

    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &[
            "verify-identities",
            "--samples",
            "50",
            "--exact-samples",
            "10",
            "--inject-fault",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("det F_C"),
        "failing identity named: {stderr}"
    );
}

#[test]
fn zero_sample_count_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["verify-identities", "--samples", "0"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn unstable_dt_exits_one_with_stability_message() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["evolve", "--dt", "0.5", "--steps", "10"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("stability"));
}

#[test]
fn zero_preset_writes_all_zero_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &[
            "evolve", "--preset", "zero", "--steps", "10", "--dt", "0.01",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let trajectory = std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    for line in trajectory.lines().skip(2) {
        let fields: Vec<&str> = line.split(',').collect();
        for value in &fields[5..] {
            assert_eq!(*value, "0", "nonzero field in zero trajectory");
        }
    }
}

#[test]
fn oversized_lattice_with_fd_oracle_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["action-check", "--lattice", "8"], dir.path());
    assert_eq!(code(&out), 2);
    // and the FD oracle can be switched off explicitly
    let out = fieldlab(&["action-check", "--lattice", "6", "--no-fd"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn action_check_default_passes_and_writes_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["action-check"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let grad = std::fs::read_to_string(dir.path().join("gradient_comparison.csv")).unwrap();
    assert!(grad.lines().nth(1).unwrap().starts_with("node,component"));
    assert!(dir.path().join("bi_nonlinearity_sweep.csv").exists());
}

#[test]
fn electrostatic_zero_charge_and_bad_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["bi-electrostatic", "--q", "0"], dir.path());
    assert_eq!(code(&out), 0);

    let config = dir.path().join("bad.toml");
    std::fs::write(
        &config,
        "[bi_electrostatic]\nr_min_factor = 10.0\nr_max_factor = 1.0\n",
    )
    .unwrap();
    let out = fieldlab(
        &["bi-electrostatic", "--config", config.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn electrostatic_default_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["bi-electrostatic"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let profile = std::fs::read_to_string(dir.path().join("pointcharge_profile.csv")).unwrap();
    assert!(profile
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("r,d,e,u_bi,u_maxwell"));
    assert!(dir.path().join("energy_convergence.csv").exists());
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let args = ["evolve", "--steps", "50", "--seed", "7"];
    assert_eq!(code(&fieldlab(&args, dir_a.path())), 0);
    assert_eq!(code(&fieldlab(&args, dir_b.path())), 0);
    for name in ["report.csv", "trajectory.csv", "energy_series.csv"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn json_format_and_svg_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &["bi-electrostatic", "--format", "json", "--svg"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let report = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["command"], "bi-electrostatic");
    assert_eq!(parsed["pass"], true);
    assert!(parsed["config_hash"].is_string());
    assert!(dir.path().join("energy_convergence.svg").exists());

    let out = fieldlab(&["saddle", "--format", "nonsense"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn exact_flag_rejected_where_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(&["evolve", "--exact", "--steps", "10"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn lagrangian_eval_beyond_nonlinear_bound_still_reports() {
    // the complex forms are defined everywhere; the real nonlinear forms
    // are skipped with a note when the field exceeds the bound
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &[
            "lagrangian-eval",
            "--e",
            "3,0,0",
            "--b",
            "0,0,0",
            "--k",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("negative radicand"));
}

#[test]
fn lagrangian_eval_exact_domain() {
    let dir = tempfile::tempdir().unwrap();
    let out = fieldlab(
        &[
            "lagrangian-eval",
            "--e",
            "0.5,0,0",
            "--b",
            "0.25,0,0",
            "--k",
            "2",
            "--exact",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[exact]"));
    assert!(dir.path().join("lagrangian_values.csv").exists());
}
