//! End-to-end tests of the `fekete` binary: exit codes, report-file shape,
//! and byte-level reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

static DIR_COUNTER: AtomicUsize = AtomicUsize::new(0);

/// A fresh scratch directory per call, namespaced by pid so parallel test
/// binaries cannot collide.
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "fekete-cli-{tag}-{}-{}",
        std::process::id(),
        DIR_COUNTER.fetch_add(1, Ordering::SeqCst)
    ));
    fs::create_dir_all(&dir).expect("can create scratch dir");
    dir
}

/// Run the binary with `--out {out}`. `epoch` pins SOURCE_DATE_EPOCH;
/// `None` scrubs it so ambient values cannot leak in.
fn fekete(args: &[&str], out: &Path, epoch: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fekete"));
    cmd.args(args).arg("--out").arg(out);
    match epoch {
        Some(e) => {
            cmd.env("SOURCE_DATE_EPOCH", e);
        }
        None => {
            cmd.env_remove("SOURCE_DATE_EPOCH");
        }
    }
    cmd.output().expect("binary launches")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn read_json(path: &Path) -> Value {
    let bytes = fs::read(path).expect("report file exists");
    serde_json::from_slice(&bytes).expect("report is valid JSON")
}

fn finding<'a>(report: &'a Value, check_id: &str) -> &'a Value {
    report["findings"]
        .as_array()
        .expect("findings is an array")
        .iter()
        .find(|f| f["check_id"] == check_id)
        .unwrap_or_else(|| panic!("finding {check_id} present"))
}

#[test]
fn certify_writes_passing_report_for_valid_prime() {
    let out = scratch("certify");
    let run = fekete(&["certify", "--p", "101"], &out, None);
    assert_eq!(exit_code(&run), 0, "stderr: {}", String::from_utf8_lossy(&run.stderr));

    let report = read_json(&out.join("certify.json"));
    assert_eq!(report["command"], "certify");
    assert_eq!(report["generator"], "splitmix64");
    assert_eq!(report["seed"], 20_240_817u64);
    assert_eq!(report["params"]["p"], 101);
    assert_eq!(report["params"]["certificate"]["holds"], true);
    assert_eq!(finding(&report, "T2.1-certificate")["status"], "pass");
    assert_eq!(finding(&report, "T2.1-ratio")["status"], "pass");

    let csv = fs::read_to_string(out.join("certify.csv")).expect("csv exists");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2, "header plus one certificate row");
    assert!(lines[0].starts_with("p,m,g_at_one,"));
    assert!(lines[1].starts_with("101,"));
    assert!(!csv.contains('\r'), "LF line endings only");
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn malformed_and_invalid_arguments_exit_2() {
    let out = scratch("usage");
    // Not a prime: rejected by the library's argument validation.
    assert_eq!(exit_code(&fekete(&["certify", "--p", "8"], &out, None)), 2);
    // Not a number: rejected by the argument parser.
    assert_eq!(exit_code(&fekete(&["certify", "--p", "abc"], &out, None)), 2);
    // Unknown subcommand and unknown flag.
    assert_eq!(exit_code(&fekete(&["frobnicate"], &out, None)), 2);
    assert_eq!(exit_code(&fekete(&["gauss", "--bogus", "1"], &out, None)), 2);
    // Empty prime range: rejected by the library.
    assert_eq!(exit_code(&fekete(&["gauss", "--pmin", "50", "--pmax", "10"], &out, None)), 2);
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn failing_finding_exits_1_and_is_recorded() {
    let out = scratch("fail");
    // An absurdly tight band the empirical fraction cannot meet.
    let run = fekete(
        &["distribution", "--p", "1009", "--band", "1e-9"],
        &out,
        None,
    );
    assert_eq!(exit_code(&run), 1);
    let report = read_json(&out.join("distribution.json"));
    assert_eq!(finding(&report, "L3.8-fraction")["status"], "fail");
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn reports_are_byte_identical_across_reruns_and_thread_counts() {
    let (a, b, c) = (scratch("repro-a"), scratch("repro-b"), scratch("repro-c"));
    let epoch = Some("1700000000");
    let args = ["sieve", "--cases", "50", "--pmax", "61"];
    assert_eq!(exit_code(&fekete(&args, &a, epoch)), 0);
    assert_eq!(exit_code(&fekete(&args, &b, epoch)), 0);
    let with_threads: Vec<&str> = args.iter().copied().chain(["--threads", "2"]).collect();
    assert_eq!(exit_code(&fekete(&with_threads, &c, epoch)), 0);

    let json = fs::read(a.join("sieve.json")).unwrap();
    assert_eq!(json, fs::read(b.join("sieve.json")).unwrap(), "rerun must match");
    assert_eq!(json, fs::read(c.join("sieve.json")).unwrap(), "thread count must not matter");
    let csv = fs::read(a.join("sieve.csv")).unwrap();
    assert_eq!(csv, fs::read(b.join("sieve.csv")).unwrap());
    assert_eq!(csv, fs::read(c.join("sieve.csv")).unwrap());

    // The pinned clock lands in both timestamp slots.
    let report = read_json(&a.join("sieve.json"));
    assert_eq!(report["started"], "2023-11-14T22:13:20Z");
    assert_eq!(report["ended"], "2023-11-14T22:13:20Z");
    for dir in [a, b, c] {
        let _ = fs::remove_dir_all(dir);
    }
}

#[test]
fn seed_changes_randomized_suites_only_through_the_flag() {
    let (a, b) = (scratch("seed-a"), scratch("seed-b"));
    let epoch = Some("1700000000");
    let base = ["ensemble", "--n", "8", "--q", "0", "--samples", "100"];
    assert_eq!(exit_code(&fekete(&base, &a, epoch)), 0);
    let reseeded: Vec<&str> = base.iter().copied().chain(["--seed", "7"]).collect();
    assert_eq!(exit_code(&fekete(&reseeded, &b, epoch)), 0);

    let default_csv = fs::read(a.join("ensemble.csv")).unwrap();
    let reseeded_csv = fs::read(b.join("ensemble.csv")).unwrap();
    assert_ne!(default_csv, reseeded_csv, "a new seed must draw new samples");

    let report = read_json(&b.join("ensemble.json"));
    assert_eq!(report["seed"], 7);
    for dir in [a, b] {
        let _ = fs::remove_dir_all(dir);
    }
}

#[test]
fn zeros_table_has_one_row_per_prime() {
    let out = scratch("zeros");
    let run = fekete(&["zeros", "--pmin", "11", "--pmax", "101"], &out, None);
    assert_eq!(exit_code(&run), 0);
    let csv = fs::read_to_string(out.join("zeros.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,zero_count,floor,fraction,sign_agreements");
    let primes = fekete_core::primes_in_range(11, 101).unwrap();
    assert_eq!(lines.len(), 1 + primes.len());
    for (line, p) in lines[1..].iter().zip(&primes) {
        assert!(
            line.starts_with(&format!("{},", p.get())),
            "rows ordered by prime: {line}"
        );
    }
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn cdelta_report_carries_the_promised_keys() {
    let out = scratch("cdelta");
    let run = fekete(&["cdelta", "--delta", "0.5", "--tol", "1e-8"], &out, None);
    assert_eq!(exit_code(&run), 0);
    let report = read_json(&out.join("cdelta.json"));
    let value = report["params"]["value"].as_f64().expect("value present");
    assert!((value - 0.694_072).abs() < 1e-4, "c(0.5) = {value}");
    assert!(report["params"]["truncation_K"].as_u64().expect("truncation_K") > 0);
    assert!(report["params"]["cutoff_X"].as_f64().expect("cutoff_X") >= 4.0);
    assert_eq!(finding(&report, "L3.8-reflection")["status"], "pass");
    let _ = fs::remove_dir_all(&out);
}

#[test]
fn sweep_report_below_margin_regime_observes_instead_of_failing() {
    let out = scratch("report");
    let run = fekete(&["report", "--pmin", "11", "--pmax", "31"], &out, None);
    assert_eq!(exit_code(&run), 0, "stderr: {}", String::from_utf8_lossy(&run.stderr));
    let report = read_json(&out.join("report.json"));
    assert_eq!(finding(&report, "T2.1-certificate")["status"], "pass");
    assert_eq!(finding(&report, "T2.1-ratio")["status"], "observe");
    assert_eq!(finding(&report, "T2.1-kzeros")["status"], "observe");

    let csv = fs::read_to_string(out.join("report.csv")).unwrap();
    let rows = csv.lines().count() - 1;
    assert_eq!(rows, fekete_core::primes_in_range(11, 31).unwrap().len());
    let _ = fs::remove_dir_all(&out);
}
