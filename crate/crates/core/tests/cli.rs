use std::fs;
use std::process::{Command, Output};

fn hcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcross"))
        .args(args)
        .output()
        .expect("hcross runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn no_arguments_prints_usage_and_exits_2() {
    let out = hcross(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Usage"), "{}", stderr(&out));
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(hcross(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn witness_is_deterministic_and_valid() {
    let args = ["--seed", "7", "witness", "--d", "2", "--n", "6"];
    let a = hcross(&args);
    let b = hcross(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("support_in_cross = true"));
    assert!(text.contains("blocks_unique = true"));
    assert!(text.contains("m = 32"));
}

#[test]
fn infeasible_witness_exits_1() {
    let out = hcross(&["witness", "--d", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("infeasible"));
}

#[test]
fn sp1_audit_has_no_violations() {
    let out = hcross(&["audit", "--family", "sp1", "--trials", "1000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("violations: 0"));
    let csv = stdout(&out);
    let row = csv.lines().nth(1).unwrap();
    assert!(row.starts_with("inequalities/sp1,2,"), "{row}");
    assert!(row.ends_with(",ok"), "{row}");
}

#[test]
fn bad_config_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "experiment = \"qpT1\"\nd = 2\nbogus = 1\n").unwrap();
    let out = hcross(&["--config", path.to_str().unwrap(), "rates"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("bogus"), "{err}");
}

#[test]
fn norms_of_a_coefficient_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, "d=2\n0 0 1 0\n1 2 0.5 0\n-1 -2 0.5 0\n").unwrap();
    let out = hcross(&["norms", path.to_str().unwrap(), "--p", "2", "--beta", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    // ‖1 + cos(x + 2y)‖_2 = √(3/2), exact by Parseval.
    assert!(text.contains("L2 = 1.224744871391589e0 (exact)"), "{text}");
    assert!(text.contains("A = 2.000000000000000e0"), "{text}");
}

#[test]
fn rates_csv_is_byte_identical_and_timestamp_only_adds_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let path = dir.path().join(name);
        let mut args = vec!["--seed", "3", "--out", path.to_str().unwrap()];
        args.extend_from_slice(&["rates", "--experiment", "qpT1", "--n", "6,9"]);
        args.extend_from_slice(extra);
        let out = hcross(&args);
        assert!(out.status.success(), "{}", stderr(&out));
        fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv", &[]);
    assert!(a.lines().skip(1).all(|l| l.ends_with(",ok")), "{a}");
    let b = run("b.csv", &[]);
    assert_eq!(a, b);
    let stamped = run("c.csv", &["--timestamp"]);
    let (first, rest) = stamped.split_once('\n').unwrap();
    assert!(first.starts_with("# generated unix:"), "{first}");
    assert_eq!(rest, a);
}
