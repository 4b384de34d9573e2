//! End-to-end tests of the `immlift` binary: argument handling, exact output
//! shapes, documented exit codes, and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_immlift"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("immlift-cli-{tag}-{}.json", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn lift_det_renders_the_sign_lift() {
    let out = run(&["lift", "--fn", "det", "--n", "2", "--emit", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "tr(X1)·1 − X1");
}

#[test]
fn lift_per_json_has_six_terms() {
    let out = run(&["lift", "--fn", "per", "--n", "3", "--emit", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn lift_a4_character_in_unit_trace_display() {
    let out = run(&["lift", "--fn", "a4:chi1", "--emit", "text", "--trace-one"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "3·1 − tr(X1X2)·X3 − tr(X1X3)·X2 − tr(X2X3)·X1"
    );
}

#[test]
fn lift_latex_emission() {
    let out = run(&["lift", "--fn", "det", "--n", "2", "--emit", "latex"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "\\operatorname{tr}(X_{1})\\,\\mathbb{1} - X_{1}"
    );
}

#[test]
fn lift_reads_function_files() {
    let path = temp_file(
        "fnfile",
        r#"{"n": 2, "entries": [{"perm": [2, 1], "value": [1.0, 0.0]}]}"#,
    );
    let spec = format!("file:{}", path.display());
    let out = run(&["lift", "--fn", &spec, "--emit", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "X1");
}

#[test]
fn lift_rejects_unknown_function_specs() {
    let out = run(&["lift", "--fn", "nonsense", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lift", "--fn", "det"]);
    assert_eq!(out.status.code(), Some(2), "--n is required for det");
    let out = run(&["lift", "--fn", "a4:chi9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn imm_computes_determinant_permanent_and_immanants() {
    let path = temp_file("matrix", "[[[1,0],[2,0]],[[3,0],[4,0]]]");
    let matrix = path.to_str().unwrap();

    let out = run(&["imm", "--partition", "1,1", "--matrix", matrix]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[-2.0,0.0]");

    let out = run(&["imm", "--det", "--matrix", matrix]);
    assert!(out.status.success());
    let value: [f64; 2] = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value[0], -2.0);
    assert_eq!(value[1], 0.0);

    let out = run(&["imm", "--per", "--matrix", matrix]);
    assert_eq!(stdout(&out).trim(), "[10.0,0.0]");

    let ones = temp_file("ones", "[[[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0]]]");
    let out = run(&["imm", "--per", "--matrix", ones.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "[6.0,0.0]");
}

#[test]
fn imm_error_paths_exit_2() {
    let path = temp_file("matrix2", "[[[1,0],[2,0]],[[3,0],[4,0]]]");
    let matrix = path.to_str().unwrap();
    // no mode selected
    let out = run(&["imm", "--matrix", matrix]);
    assert_eq!(out.status.code(), Some(2));
    // partition weight disagrees with matrix size
    let out = run(&["imm", "--partition", "3", "--matrix", matrix]);
    assert_eq!(out.status.code(), Some(2));
    // unreadable file
    let out = run(&["imm", "--det", "--matrix", "/nonexistent/a.json"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed JSON
    let bad = temp_file("badmatrix", "[[[1,0],[2,0]]");
    let out = run(&["imm", "--det", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_lew_identity_passes() {
    let out = run(&["verify", "--suite", "lew-identity", "--trials", "100"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("2/2 specs clean"));
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn verify_impossible_tolerance_exits_1() {
    let out = run(&[
        "verify",
        "--suite",
        "lew-identity",
        "--trials",
        "50",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_degree_filter() {
    let out = run(&[
        "verify",
        "--suite",
        "appendix-scalar",
        "--n",
        "2",
        "--trials",
        "50",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("appendix-scalar/hadamard/n2"));
    assert!(!text.contains("/n3/"), "degree filter leaked:\n{text}");
    // a degree with no specs is a usage error
    let out = run(&["verify", "--suite", "lew-identity", "--n", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_reports_are_thread_count_invariant() {
    let args = [
        "verify",
        "--suite",
        "anticommutator",
        "--trials",
        "60",
        "--m",
        "2",
        "--format",
        "json",
    ];
    let single = bin()
        .args(args)
        .env("IMMLIFT_THREADS", "1")
        .output()
        .unwrap();
    let many = bin()
        .args(args)
        .env("IMMLIFT_THREADS", "4")
        .output()
        .unwrap();
    assert!(single.status.success());
    assert_eq!(single.stdout, many.stdout);

    let reports: serde_json::Value = serde_json::from_slice(&single.stdout).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn falsify_reports_search_extent() {
    let out = run(&[
        "falsify",
        "--conjecture",
        "perm-dominance",
        "--n",
        "3",
        "--m",
        "2",
        "--trials",
        "150",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("no counterexample in 150 trials"));
    assert!(text.contains("perm-dominance/scalar/n3/"));

    let out = run(&[
        "falsify",
        "--conjecture",
        "perm-dominance-lifted",
        "--n",
        "3",
        "--m",
        "2",
        "--trials",
        "100",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("perm-dominance/lift/n3/"));
}

#[test]
fn falsify_unknown_conjecture_exits_2() {
    let out = run(&["falsify", "--conjecture", "riemann"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn closed_stdout_pipe_exits_cleanly() {
    use std::io::Read;
    // large output: ~5000 terms, well past the OS pipe buffer
    let mut child = bin()
        .args(["lift", "--fn", "per", "--n", "7", "--emit", "json"])
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let mut out = child.stdout.take().unwrap();
    let mut buf = [0u8; 16];
    out.read_exact(&mut buf).unwrap();
    drop(out); // reader hangs up mid-stream, as in `immlift … | head`
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0), "broken pipe must not panic");
}

#[test]
fn lift_writes_output_files() {
    let path = std::env::temp_dir().join(format!("immlift-out-{}.txt", std::process::id()));
    let out = run(&[
        "lift",
        "--fn",
        "det",
        "--n",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap().trim(),
        "tr(X1)·1 − X1"
    );
}
