use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const PLUS: &str = r#"{"re": [[0.5, 0.5], [0.5, 0.5]]}"#;
const DIAGONAL: &str = r#"{"re": [[0.25, 0.0], [0.0, 0.75]]}"#;
const DEPHASING: &str = r#"{"type": "dephasing", "dim": 2}"#;
const DEPOLARIZING: &str = r#"{"type": "kraus", "dim": 2, "operators": [
    {"re": [[0.7905694150420949, 0], [0, 0.7905694150420949]]},
    {"re": [[0, 0.3535533905932738], [0.3535533905932738, 0]]},
    {"re": [[0, 0], [0, 0]], "im": [[0, -0.3535533905932738], [0.3535533905932738, 0]]},
    {"re": [[0.3535533905932738, 0], [0, -0.3535533905932738]]}
]}"#;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let fixture = Fixture { dir: TempDir::new().unwrap() };
        for (name, text) in [("plus.json", PLUS), ("diag.json", DIAGONAL), ("deph.json", DEPHASING), ("depol.json", DEPOLARIZING)] {
            fs::write(fixture.path(name), text).unwrap();
        }
        fixture
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_rmeasure")).current_dir(self.dir.path()).args(args).output().unwrap()
    }
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap()
}

fn value_at(v: &serde_json::Value, key: &str) -> f64 {
    v[key].as_f64().unwrap()
}

#[test]
fn measure_plus_state_at_order_two() {
    let fx = Fixture::new();
    let out = fx.run(&["measure", "--state", "plus.json", "--map", "deph.json", "--a", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert!((value_at(&report, "value") - 0.414214).abs() < 1e-6);
    assert!(stdout(&out).contains("\"value\": 4.14213562373e-1"));
    assert!((value_at(&report, "N") - std::f64::consts::SQRT_2).abs() < 1e-11);
}

#[test]
fn measure_diagonal_state_is_zero() {
    let fx = Fixture::new();
    for a in ["0.3", "1", "2"] {
        let out = fx.run(&["measure", "--state", "diag.json", "--map", "deph.json", "--a", a]);
        assert_eq!(out.status.code(), Some(0));
        assert!(value_at(&json(&out), "value").abs() < 1e-12);
    }
}

#[test]
fn measure_csv_and_out_file() {
    let fx = Fixture::new();
    let out = fx.run(&["measure", "--state", "plus.json", "--map", "deph.json", "--a", "1", "--output", "csv", "--out", "m.csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(fx.path("m.csv")).unwrap();
    assert_eq!(text, "a,value,N\n1.00000000000e0,6.93147180560e-1,1.00000000000e0\n");
}

#[test]
fn depolarizing_map_fails_certification() {
    let fx = Fixture::new();
    let out = fx.run(&["measure", "--state", "plus.json", "--map", "depol.json", "--a", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.starts_with("error: NotIdempotent"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn input_errors_exit_two_on_one_line() {
    let fx = Fixture::new();
    fs::write(fx.path("bad.json"), r#"{"re": [[1.0, 0.0], [0.0, 1.0]]}"#).unwrap();
    let cases: [&[&str]; 5] = [
        &["measure", "--state", "bad.json", "--map", "deph.json", "--a", "1"],
        &["measure", "--state", "missing.json", "--map", "deph.json", "--a", "1"],
        &["measure", "--state", "plus.json", "--map", "deph.json", "--a", "2.5"],
        &["measure", "--state", "plus.json", "--map", "deph.json"],
        &["verify", "nosuch"],
    ];
    for args in cases {
        let out = fx.run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert_eq!(stderr(&out).lines().count(), 1, "{args:?}");
        assert!(stderr(&out).starts_with("error: "));
    }
    assert!(stderr(&fx.run(cases[0])).contains("TraceNotOne"));
}

#[test]
fn sweep_endpoints_and_snapping() {
    let fx = Fixture::new();
    let out = fx.run(&["sweep", "--state", "plus.json", "--map", "deph.json", "--a-min", "0.5", "--a-max", "2.0", "--steps", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows: Vec<Vec<f64>> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    assert!((rows[0][1] - 1.0).abs() < 1e-11);
    assert_eq!(rows[1][0], 1.0);
    assert!((rows[1][1] - std::f64::consts::LN_2).abs() < 1e-11);
    assert!((rows[3][1] - (std::f64::consts::SQRT_2 - 1.0)).abs() < 1e-11);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
}

#[test]
fn sweep_of_free_state_is_zero_and_two_steps_give_two_rows() {
    let fx = Fixture::new();
    let out = fx.run(&["sweep", "--state", "diag.json", "--map", "deph.json", "--a-min", "0.2", "--a-max", "1.8", "--steps", "2", "--out", "s.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(fx.path("s.csv")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!(value.abs() < 1e-12);
    }
}

#[test]
fn sweep_rejects_bad_ranges() {
    let fx = Fixture::new();
    for (lo, hi, steps) in [("0.5", "2.5", "4"), ("1.5", "1.0", "4"), ("0", "1", "4"), ("0.5", "1.5", "1")] {
        let out = fx.run(&["sweep", "--state", "plus.json", "--map", "deph.json", "--a-min", lo, "--a-max", hi, "--steps", steps]);
        assert_eq!(out.status.code(), Some(2), "{lo} {hi} {steps}");
        assert!(stderr(&out).starts_with("error: BadRange"));
    }
}

fn verify_args<'a>(suite: &'a str, dims: &'a str, trials: &'a str, seed: &'a str) -> Vec<&'a str> {
    vec!["verify", suite, "--dims", dims, "--trials", trials, "--seed", seed]
}

#[test]
fn verify_theorem1_small() {
    let fx = Fixture::new();
    let mut args = verify_args("theorem1", "2,3", "5", "42");
    args.extend(["--restarts", "2"]);
    let out = fx.run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["failures"], 0);
    assert_eq!(report["trials"], 5);
}

#[test]
fn verify_theorem2_passes() {
    let fx = Fixture::new();
    let out = fx.run(&verify_args("theorem2", "3", "100", "7"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failures"], 0);
}

#[test]
fn verify_output_is_byte_stable() {
    let fx = Fixture::new();
    let args = verify_args("axioms", "2,3", "4", "9");
    let first = fx.run(&args);
    let second = fx.run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let mut csv_args = args.clone();
    csv_args.extend(["--output", "csv"]);
    assert_eq!(fx.run(&csv_args).stdout, fx.run(&csv_args).stdout);
}

#[test]
fn verify_failure_exits_nonzero() {
    let fx = Fixture::new();
    let mut args = verify_args("continuity", "2", "3", "1");
    args.push("--tol=-1");
    let out = fx.run(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("SuiteFailed"));
    assert_eq!(json(&out)["failures"], 3);
}

#[test]
fn verify_rejects_out_of_range_dims() {
    let fx = Fixture::new();
    let out = fx.run(&verify_args("theorem2", "2", "1", "0"));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("BadDimension"));
}

#[test]
fn verify_writes_report_file() {
    let fx = Fixture::new();
    let mut args = verify_args("adjoint", "2", "2", "0");
    args.extend(["--out", "report.json"]);
    let out = fx.run(&args);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(Path::new(&fx.path("report.json"))).unwrap()).unwrap();
    assert_eq!(report["suite"], "adjoint");
}
