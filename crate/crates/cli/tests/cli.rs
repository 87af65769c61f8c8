use std::io::Write;
use std::process::{Command, Output, Stdio};

use lexwreath::Report;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lexwreath"));
    cmd.env_remove("LEXWREATH_WORKERS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    // the binary may exit before reading, e.g. on a usage error
    let _ = child.stdin.take().unwrap().write_all(input);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    let holds = run(&["analyze", "K2", "C6", "--json"]);
    assert_eq!(holds.status.code(), Some(0));
    let report: Report = serde_json::from_str(stdout(&holds).trim()).unwrap();
    assert_eq!(serde_json::to_value(report.quantum).unwrap(), "HOLDS");
    assert!(report.spectral.applicable && !report.spectral.holds);

    let fails = run(&["analyze", "E2", "E2"]);
    assert_eq!(fails.status.code(), Some(1));
    assert!(stdout(&fails).contains("FAILS"));

    let na = run(&["analyze", "P3", "K2", "--json"]);
    assert_eq!(na.status.code(), Some(2));
    assert!(stdout(&na).contains(r#""quantum":"NOT_APPLICABLE""#));
}

#[test]
fn analyze_json_round_trips() {
    for (x, y) in [("K2", "C6"), ("E2", "E2"), ("P3", "K2"), ("C5", "K2")] {
        let out = run(&["analyze", x, y, "--json", "--verbose"]);
        let text = stdout(&out);
        assert_eq!(text.lines().count(), 1);
        let report: Report = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), text.trim());
    }
}

#[test]
fn parse_errors_exit_64_with_position() {
    let out = run(&["analyze", "K2*Q3", "C6"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("at byte 3"), "{}", stderr(&out));
    assert_eq!(run(&["analyze", "K2"]).status.code(), Some(64));
    assert_eq!(
        run(&["--aut-limit", "65", "analyze", "K2", "C6"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        run(&["--brute-limit", "9", "aut", "K2"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn aut_orders() {
    assert!(stdout(&run(&["aut", "C8"])).contains("order: 16"));
    let out = run(&["aut", "K2*E3", "--brute"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("order: 48"));
    assert!(stdout(&out).contains("brute force: 48"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["aut", "E1", "--json"]))).unwrap();
    assert_eq!(json["order"], "1");
}

#[test]
fn aut_brute_above_limit_is_refused() {
    assert_eq!(run(&["aut", "C9", "--brute"]).status.code(), Some(65));
    assert_eq!(
        run(&["--brute-limit", "5", "aut", "C6", "--brute"])
            .status
            .code(),
        Some(65)
    );
}

#[test]
fn product_and_pipeline() {
    assert_eq!(stdout(&run(&["product", "K2", "E1"])).trim(), "A_");
    let product = run(&["product", "K2", "K2"]);
    let piped = run_with_stdin(&["aut", "-"], &product.stdout);
    assert_eq!(piped.status.code(), Some(0));
    assert!(stdout(&piped).contains("order: 24"));
    let stats = stdout(&run(&["product", "C5", "K2", "--stats"]));
    assert!(
        stats.contains("10 vertices, 7-regular, connected"),
        "{stats}"
    );
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["product", "C5", "K2", "--stats", "--json"]))).unwrap();
    assert_eq!(json["order"], 10);
    assert_eq!(json["valence"], 7);
}

#[test]
fn analyze_reads_stdin() {
    let out = run_with_stdin(&["analyze", "-", "C6", "--json"], b"A_\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, run(&["analyze", "K2", "C6", "--json"]).stdout);
    assert_eq!(
        run_with_stdin(&["analyze", "-", "-"], b"A_\n")
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn verify_sweeps() {
    let out = run(&["verify", "--max-x", "3", "--max-y", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("counterexamples: 0"));
    let out = run(&[
        "--workers",
        "2",
        "verify",
        "--max-x",
        "4",
        "--max-y",
        "3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["pairs_checked"], 825);
    assert_eq!(
        run(&["verify", "--max-x", "9", "--max-y", "4"])
            .status
            .code(),
        Some(65)
    );
}

#[test]
fn workers_env_is_validated() {
    let out = bin()
        .args(["verify", "--max-x", "2", "--max-y", "2"])
        .env("LEXWREATH_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
    let out = bin()
        .args(["--workers", "1", "verify", "--max-x", "2", "--max-y", "2"])
        .env("LEXWREATH_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn scan_matches_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let xf = dir.path().join("x.g6");
    let yf = dir.path().join("y.g6");
    std::fs::write(&xf, "A_\n").unwrap();
    std::fs::write(&yf, "EhEG\n").unwrap();
    let scan = bin()
        .args(["scan", "--x-file"])
        .arg(&xf)
        .arg("--y-file")
        .arg(&yf)
        .output()
        .unwrap();
    assert_eq!(scan.status.code(), Some(0));
    let single = run(&["analyze", "K2", "C6", "--json"]);
    assert!(!scan.stdout.is_empty());
    assert_eq!(scan.stdout, single.stdout);
}

#[test]
fn scan_orders_pairs_and_skips_corrupt_lines() {
    let dir = tempfile::tempdir().unwrap();
    let xf = dir.path().join("x.g6");
    let yf = dir.path().join("y.g6");
    std::fs::write(&xf, "A_\n!!corrupt\nBw\n").unwrap();
    std::fs::write(&yf, "A_\nDhc\n").unwrap();
    let out = bin()
        .args(["--workers", "3", "scan", "--x-file"])
        .arg(&xf)
        .arg("--y-file")
        .arg(&yf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("x.g6:2:"), "{}", stderr(&out));
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    let expected: Vec<String> = [("K2", "K2"), ("K2", "C5"), ("K3", "K2"), ("K3", "C5")]
        .iter()
        .map(|(x, y)| {
            stdout(&run(&["analyze", x, y, "--json"]))
                .trim()
                .to_string()
        })
        .collect();
    assert_eq!(lines, expected);

    std::fs::write(&yf, "").unwrap();
    let out = bin()
        .args(["scan", "--x-file"])
        .arg(&xf)
        .arg("--y-file")
        .arg(&yf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(&xf, "A_\n").unwrap();
    let out = bin()
        .args(["scan", "--x-file"])
        .arg(&xf)
        .arg("--y-file")
        .arg(&yf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
