//! End-to-end tests of the `relprime` binary: outputs, exit codes, cache
//! round trips, and byte-level determinism across parallelism settings.

use std::path::Path;
use std::process::{Command, Output};

fn relprime(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relprime"))
        .args(args)
        .current_dir(dir)
        .env_remove("RELPRIME_CACHE")
        .output()
        .expect("failed to run relprime")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout not utf-8")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn compute_and_oracle_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = relprime(dir.path(), &["compute", "f", "10"]);
    assert_code(&out, 0);
    assert_eq!(stdout(&out), "983\n");

    let g = relprime(dir.path(), &["compute", "g", "6"]);
    assert_eq!(stdout(&g), "10\n");
    let og = relprime(dir.path(), &["oracle", "g", "6"]);
    assert_eq!(stdout(&og), "10\n");
    let of = relprime(dir.path(), &["oracle", "f", "10"]);
    assert_eq!(stdout(&of), "983\n");

    let json = relprime(dir.path(), &["compute", "f", "10", "--format", "json"]);
    assert_eq!(
        stdout(&json),
        "{\"op\":\"f\",\"n\":10,\"value_decimal\":\"983\"}\n"
    );

    let bounds = relprime(dir.path(), &["compute", "bounds", "10"]);
    assert_eq!(
        stdout(&bounds),
        "n=10 f_lower=912 f=983 f_upper=992 sandwich=true\n"
    );
}

#[test]
fn delta_scan_csv_has_45_rows_all_pos() {
    let dir = tempfile::tempdir().unwrap();
    let out = relprime(
        dir.path(),
        &[
            "scan", "delta", "--k", "2", "--from", "6", "--to", "50", "--format", "csv",
        ],
    );
    assert_code(&out, 0);
    let text = stdout(&out);
    let data_rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data_rows.len(), 45);
    assert!(data_rows.iter().all(|l| l.contains(",POS,")));
    assert!(text.lines().any(|l| l.starts_with("# summary: delta")));
}

#[test]
fn determinism_across_runs_and_parallelism() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "scan", "chain", "--to", "25", "--format", "json",
    ];
    let single = relprime(dir.path(), &[&args[..], &["--parallelism", "1"]].concat());
    let single_again = relprime(dir.path(), &[&args[..], &["--parallelism", "1"]].concat());
    let wide = relprime(dir.path(), &[&args[..], &["--parallelism", "4"]].concat());
    assert_code(&single, 0);
    assert_eq!(single.stdout, single_again.stdout);
    assert_eq!(single.stdout, wide.stdout);

    let delta_args = [
        "scan", "delta", "--k", "3", "--from", "4", "--to", "120", "--format", "csv",
    ];
    let a = relprime(dir.path(), &[&delta_args[..], &["--parallelism", "1"]].concat());
    let b = relprime(dir.path(), &[&delta_args[..], &["--parallelism", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn expectations_drive_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    // Plain scan: completion is success even though n = 3 is negative.
    let plain = relprime(
        dir.path(),
        &["scan", "delta", "--k", "2", "--from", "3", "--to", "5"],
    );
    assert_code(&plain, 0);

    let expect = relprime(
        dir.path(),
        &[
            "scan", "delta", "--k", "2", "--from", "3", "--to", "5", "--expect", "all-positive",
        ],
    );
    assert_code(&expect, 1);
    // Output stays identical; the violation goes to stderr.
    assert_eq!(plain.stdout, expect.stdout);
    assert!(String::from_utf8_lossy(&expect.stderr).contains("all-positive"));

    let alternating = relprime(
        dir.path(),
        &[
            "scan", "delta", "--k", "1", "--from", "2", "--to", "60", "--expect", "alternating",
        ],
    );
    assert_code(&alternating, 0);

    let chain = relprime(
        dir.path(),
        &["scan", "chain", "--to", "10", "--expect", "all-hold", "--summary"],
    );
    assert_code(&chain, 0);

    let mismatch = relprime(
        dir.path(),
        &["scan", "chain", "--to", "10", "--expect", "all-positive"],
    );
    assert_code(&mismatch, 2);
}

#[test]
fn resource_guard_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let guarded = relprime(dir.path(), &["oracle", "f", "30"]);
    assert_code(&guarded, 3);

    let forced = relprime(dir.path(), &["oracle", "f", "25", "--force"]);
    assert_code(&forced, 0);

    let bad_range = relprime(
        dir.path(),
        &["scan", "delta", "--k", "2", "--from", "2", "--to", "5"],
    );
    assert_code(&bad_range, 2);

    let unknown = relprime(dir.path(), &["frobnicate"]);
    assert_code(&unknown, 2);

    let bad_class = relprime(dir.path(), &["decompose", "--class", "6n-3", "--n", "4"]);
    assert_code(&bad_class, 2);
}

#[test]
fn cache_round_trip_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("f.txt");
    let cache_str = cache.to_str().unwrap();

    let cold = relprime(dir.path(), &["compute", "f", "25"]);
    let build = relprime(dir.path(), &["cache", "build", "--to", "30", "--cache", cache_str]);
    assert_code(&build, 0);
    assert!(stdout(&build).starts_with("wrote 30 entries"));

    // Warm and cold computations print the same bytes.
    let warm = relprime(dir.path(), &["compute", "f", "25", "--cache", cache_str]);
    assert_eq!(cold.stdout, warm.stdout);

    let verify = relprime(dir.path(), &["cache", "verify", "--to", "30", "--cache", cache_str]);
    assert_code(&verify, 0);

    // Corrupt one value; verification must fail with exit 1.
    let text = std::fs::read_to_string(&cache).unwrap();
    std::fs::write(&cache, text.replace("10\t983", "10\t982")).unwrap();
    let bad = relprime(dir.path(), &["cache", "verify", "--to", "30", "--cache", cache_str]);
    assert_code(&bad, 1);

    // A warm compute without verification still reads the file silently;
    // with --verify-cache it refuses.
    let trusting = relprime(dir.path(), &["compute", "f", "10", "--cache", cache_str]);
    assert_code(&trusting, 0);
    assert_eq!(stdout(&trusting), "982\n");
    let checking = relprime(
        dir.path(),
        &["compute", "f", "10", "--cache", cache_str, "--verify-cache"],
    );
    assert_code(&checking, 1);
}

#[test]
fn cache_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env-cache.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_relprime"))
        .args(["cache", "build", "--to", "12"])
        .current_dir(dir.path())
        .env("RELPRIME_CACHE", &cache)
        .output()
        .expect("failed to run relprime");
    assert_eq!(out.status.code(), Some(0));
    assert!(cache.exists());
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with("relprime-fcache v1\n"));
    assert!(text.contains("10\t983"));
}

#[test]
fn decompose_and_threshold_output() {
    let dir = tempfile::tempdir().unwrap();
    let decomposition = relprime(dir.path(), &["decompose", "--class", "6n-2", "--n", "2"]);
    assert_code(&decomposition, 0);
    let text = stdout(&decomposition);
    assert!(text.starts_with("class 6n-2 n=2: g(10) = 40"));
    assert!(text.contains("remainder = 5 (bound 12)"));

    let t2 = relprime(
        dir.path(),
        &[
            "scan", "thresholds", "--case", "T2", "--from", "51", "--to", "60", "--format", "json",
        ],
    );
    assert_code(&t2, 0);
    let first = stdout(&t2);
    assert_eq!(
        first.lines().next().unwrap(),
        r#"{"n":51,"case":"T2","holds":true}"#
    );

    let catalog = relprime(dir.path(), &["scan", "thresholds", "--summary"]);
    assert_code(&catalog, 0);
    assert!(stdout(&catalog).contains("all_hold=true"));

    let t9 = relprime(
        dir.path(),
        &["scan", "thresholds", "--case", "T9", "--k", "9", "--to", "20", "--format", "csv"],
    );
    assert_code(&t9, 0);
    assert!(stdout(&t9).lines().next().unwrap().starts_with("10,T9,9,"));
}

#[test]
fn reduced_scan_reports_missing_onset() {
    let dir = tempfile::tempdir().unwrap();
    let out = relprime(
        dir.path(),
        &["scan", "reduced", "--which", "R3", "--to", "30", "--summary"],
    );
    assert_code(&out, 0);
    assert!(stdout(&out).contains("onset=none"));

    let r1 = relprime(
        dir.path(),
        &["scan", "reduced", "--which", "R1", "--to", "30", "--summary", "--expect", "all-hold"],
    );
    assert_code(&r1, 0);
    assert!(stdout(&r1).contains("onset=1"));
}
