//! End-to-end tests of the `purecc` binary: exit codes, config merging,
//! output schemas, and reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn purecc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_purecc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal termination")
}

const HUB_GRAPH: &str = "\
vertices 7
v ra R
v rx R
v ry R
v rz R
v t1 T
v t2 T
v t3 T
e t1 ra
e t2 ra
e t3 ra
e t1 rx
e t2 rx
e t1 ry
e t3 ry
e t2 rz
e t3 rz
";

#[test]
fn fidelity_defaults_produce_both_schemes() {
    let dir = tempfile::tempdir().unwrap();
    let output = purecc(&["fidelity"], dir.path());
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scheme,F0,n,fidelity"));
    // 2 schemes x 5 starting fidelities x 11 rows (n = 0..=10).
    assert_eq!(text.lines().count(), 1 + 2 * 5 * 11);
    assert!(text.contains("purification,0.51,7,0.994063508715"));
    assert!(text.contains("ecc,0.51,3,0.999294709129"));
}

#[test]
fn fidelity_accepts_perfect_pairs_and_rejects_the_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let perfect = purecc(&["fidelity", "--f0", "1.0", "--rounds", "2"], dir.path());
    assert_eq!(exit_code(&perfect), 0);
    for line in stdout(&perfect).lines().skip(1) {
        assert!(line.ends_with(",1"), "constant rows of 1, got {line}");
    }

    let rejected = purecc(&["fidelity", "--f0", "0.5"], dir.path());
    assert_eq!(exit_code(&rejected), 2);
    assert!(
        stderr(&rejected).contains("0.5"),
        "message must cite the threshold: {}",
        stderr(&rejected)
    );
}

#[test]
fn iterations_reports_the_reference_counts() {
    let dir = tempfile::tempdir().unwrap();
    let output = purecc(
        &["iterations", "--f0", "0.51", "--targets", "0.99", "--format", "json"],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["scheme"], "purification");
    assert_eq!(rows[0]["n"], 7);
    assert_eq!(rows[1]["scheme"], "ecc");
    assert_eq!(rows[1]["n"], 3);
}

#[test]
fn resources_sweep_ends_at_the_target() {
    let dir = tempfile::tempdir().unwrap();
    let output = purecc(&["resources", "--lengths", "4"], dir.path());
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.starts_with("scheme,ell,n,achieved_fidelity,qubits,operations\n"));
    let last_purification = text
        .lines()
        .filter(|l| l.starts_with("purification"))
        .next_back()
        .unwrap();
    assert_eq!(last_purification, "purification,4,7,0.994063508715,1024,147");
    let last_ecc = text.lines().filter(|l| l.starts_with("ecc")).next_back().unwrap();
    assert_eq!(last_ecc, "ecc,4,3,0.999294709129,729,12");
}

#[test]
fn resources_operations_are_zero_on_single_hop_paths() {
    let dir = tempfile::tempdir().unwrap();
    let output = purecc(
        &["resources", "--lengths", "1", "--scheme", "purification"],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 0);
    for line in stdout(&output).lines().skip(1) {
        assert!(line.ends_with(",0"), "operations must be zero: {line}");
    }
}

#[test]
fn resources_overflow_reports_the_offending_point() {
    let dir = tempfile::tempdir().unwrap();
    let output = purecc(
        &["resources", "--lengths", "200", "--scheme", "ecc"],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 1);
    let message = stderr(&output);
    assert!(
        message.contains("ell=200") && message.contains("n="),
        "must name the offending point: {message}"
    );
}

#[test]
fn config_file_flag_overrides_and_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.json");
    fs::write(
        &config_path,
        r#"{"command": "fidelity", "f0": [0.75], "rounds": 4}"#,
    )
    .unwrap();
    let config = config_path.to_str().unwrap();

    let from_file = purecc(&["fidelity", "--config", config], dir.path());
    assert_eq!(exit_code(&from_file), 0, "{}", stderr(&from_file));
    assert_eq!(stdout(&from_file).lines().count(), 1 + 2 * 5); // n = 0..=4

    let overridden = purecc(
        &["fidelity", "--config", config, "--rounds", "1"],
        dir.path(),
    );
    assert_eq!(exit_code(&overridden), 0);
    assert_eq!(stdout(&overridden).lines().count(), 1 + 2 * 2); // n = 0..=1

    let mismatched = purecc(&["iterations", "--config", config], dir.path());
    assert_eq!(exit_code(&mismatched), 2);
    assert!(stderr(&mismatched).contains("fidelity"));

    fs::write(&config_path, r#"{"f0": [0.75], "surprise": 1}"#).unwrap();
    let unknown = purecc(&["fidelity", "--config", config], dir.path());
    assert_eq!(exit_code(&unknown), 2);
    assert!(
        stderr(&unknown).contains("surprise"),
        "unknown keys must be named: {}",
        stderr(&unknown)
    );
}

#[test]
fn verify_passes_by_default_and_fails_when_corrupted() {
    let dir = tempfile::tempdir().unwrap();
    let clean = purecc(&["verify"], dir.path());
    assert_eq!(exit_code(&clean), 0, "{}", stderr(&clean));
    let text = stdout(&clean);
    assert_eq!(text.lines().count(), 1 + 6, "six checks");
    assert!(!text.contains("FAIL"));

    let corrupted = purecc(
        &["verify", "--corrupt", "repetition-code-fidelity"],
        dir.path(),
    );
    assert_eq!(exit_code(&corrupted), 1);
    assert!(stderr(&corrupted).contains("repetition-code-fidelity"));
    let report = stdout(&corrupted);
    assert!(report.contains("repetition-code-fidelity") && report.contains("FAIL"));

    let unknown = purecc(&["verify", "--corrupt", "no-such-check"], dir.path());
    assert_eq!(exit_code(&unknown), 2);
}

#[test]
fn gridsim_requires_a_seed_and_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let missing_seed = purecc(&["gridsim", "--k-min", "4", "--k-max", "4"], dir.path());
    assert_eq!(exit_code(&missing_seed), 2);
    assert!(stderr(&missing_seed).contains("seed"));

    let args = [
        "gridsim", "--k-min", "4", "--k-max", "5", "--runs", "6", "--seed", "99", "--out", "a",
    ];
    let first = purecc(&args, dir.path());
    assert_eq!(exit_code(&first), 0, "{}", stderr(&first));
    let mut second_args = args;
    *second_args.last_mut().unwrap() = "b";
    let second = purecc(&second_args, dir.path());
    assert_eq!(exit_code(&second), 0);
    for suffix in ["purification.csv", "ecc.csv", "summary.json"] {
        let a = fs::read(dir.path().join(format!("a_{suffix}"))).unwrap();
        let b = fs::read(dir.path().join(format!("b_{suffix}"))).unwrap();
        assert_eq!(a, b, "{suffix} must be byte-identical across reruns");
    }
    let csv = fs::read_to_string(dir.path().join("a_purification.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("k,run,seed,active,reversals,congestion,ell,qubits,ops"));
    assert_eq!(csv.lines().count(), 1 + 2 * 6);
}

#[test]
fn gridsim_inactive_runs_emit_zero_rows() {
    let dir = tempfile::tempdir().unwrap();
    let output = purecc(
        &[
            "gridsim", "--k-min", "3", "--k-max", "3", "--runs", "1", "--p", "0", "--seed", "7",
            "--out", "quiet",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let csv = fs::read_to_string(dir.path().join("quiet_purification.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "3");
    assert_eq!(fields[1], "0");
    assert_eq!(&fields[3..], ["0", "0", "0", "0", "0", "0"]);
}

#[test]
fn capacity_reports_all_three_methods() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("hub.txt");
    fs::write(&graph_path, HUB_GRAPH).unwrap();
    let output = purecc(
        &["capacity", "--graph", graph_path.to_str().unwrap(), "--format", "json"],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 0, "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["shortest_path"], 3);
    assert_eq!(report["heuristic"], 1);
    assert_eq!(report["brute_force"], 1);
}

#[test]
fn capacity_rejects_malformed_graphs_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("bad.txt");
    fs::write(&graph_path, "vertices 2\nv a R\nv t T\ne a missing\ne a t\n").unwrap();
    let output = purecc(
        &["capacity", "--graph", graph_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 2);
    let message = stderr(&output);
    assert!(
        message.contains("line 4") && message.contains("missing"),
        "must cite the offending line: {message}"
    );
}

#[test]
fn capacity_unroutable_pair_is_a_computation_failure() {
    let dir = tempfile::tempdir().unwrap();
    // Valid graph (connected, terminals non-adjacent, all attached), yet
    // t1-t2 has no repeater-interior route: the only ra-rb link runs
    // through terminal t3.
    let graph_path = dir.path().join("gap.txt");
    fs::write(
        &graph_path,
        "vertices 5\nv ra R\nv rb R\nv t1 T\nv t2 T\nv t3 T\ne t1 ra\ne t2 rb\ne ra t3\ne t3 rb\n",
    )
    .unwrap();
    let output = purecc(
        &["capacity", "--graph", graph_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(exit_code(&output), 1);
    assert!(stderr(&output).contains("no repeater-interior route"));
}
