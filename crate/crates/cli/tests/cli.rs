use std::process::{Command, Output};

use ellipf_core::tables::rows_from_csv;

fn ellipf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellipf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn eval_first_series_at_table_point() {
    let o = ellipf(&["eval", "0.9", "0.9", "series_one", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(format!("{:.4}", field(&s, "value")), "1.3547");
    assert_eq!(format!("{:.5}", field(&s, "error")), "-0.00153");
    assert!(s.contains("contained true"));
}

#[test]
fn eval_flags_match_positionals() {
    let a = ellipf(&["eval", "0.9", "0.9", "series_one", "2"]);
    let b = ellipf(&[
        "eval",
        "0.9",
        "0.9",
        "--method",
        "series_one",
        "--order",
        "2",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = ellipf(&["eval", "0.9", "0.9", "series_one", "--method", "cg1"]);
    assert_eq!(c.status.code(), Some(1));
}

#[test]
fn eval_at_zero_amplitude_is_zero() {
    let o = ellipf(&["eval", "0", "0.5", "series_one", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "value"), 0.0);
}

#[test]
fn eval_second_series_error_is_negative() {
    let o = ellipf(&["eval", "0.95", "0.99", "series_two", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "error") < 0.0);
}

#[test]
fn eval_json_and_csv() {
    let o = ellipf(&["eval", "0.8", "0.8", "series_one", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["method"], "series_one");
    assert!(arr[0]["contained"].as_bool().unwrap());

    let o = ellipf(&["eval", "0.8", "0.8", "cg2", "--format", "csv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("method,order,lambda,k,value"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("cg2,2,8e-1,8e-1,"), "{row}");
}

#[test]
fn region_violation_names_the_inequality() {
    let o = ellipf(&["eval", "0.99", "0.5", "--method", "radon", "--order", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("1 - k^2 < (1 - lambda^2)/lambda^2"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn domain_errors_exit_2() {
    assert_eq!(ellipf(&["eval", "1.5", "0.5"]).status.code(), Some(2));
    assert_eq!(ellipf(&["eval", "1", "1"]).status.code(), Some(2));
    assert_eq!(
        ellipf(&["eval", "0.5", "1", "series_two", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["eval", "0.5"],
        vec!["eval", "x", "0.5"],
        vec!["eval", "0.5", "0.5", "bogus"],
        vec!["table", "4"],
        vec!["table", "1", "--format", "xml"],
        vec!["audit", "--step", "0.7"],
        vec!["audit", "--order", "0..2"],
        vec!["--tol", "1e-40", "table", "1"],
        vec!["frobnicate"],
        vec![],
    ] {
        assert_eq!(ellipf(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(ellipf(&["--help"]).status.code(), Some(0));
}

#[test]
fn tables_check_pass() {
    for which in ["1", "2", "3"] {
        let o = ellipf(&["table", which, "--check"]);
        assert_eq!(o.status.code(), Some(0), "table {which}: {}", stderr(&o));
        assert!(stderr(&o).contains("cells match"));
    }
}

#[test]
fn table_csv_round_trips() {
    let o = ellipf(&["table", "2"]);
    let s = stdout(&o);
    assert!(s.starts_with("lambda,k,reference,approx,abs_error,interval_len,method,order\n"));
    let rows = rows_from_csv(&s).unwrap();
    assert_eq!(rows.len(), 12);
    assert!(s.lines().nth(1).unwrap().contains('e'));
}

#[test]
fn table_json_is_flat_array() {
    let o = ellipf(&["table", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 16);
    for r in arr {
        for key in [
            "lambda",
            "k",
            "reference",
            "approx",
            "abs_error",
            "interval_len",
            "method",
        ] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn audit_smoke_single_point() {
    let o = ellipf(&[
        "audit",
        "--step",
        "0.5",
        "--method",
        "series_one",
        "--order",
        "1",
        "--check",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2);
    assert!(s.lines().nth(1).unwrap().starts_with("series_one,1,1,0,0,"));
}

#[test]
fn audit_grid_has_no_violations() {
    let o = ellipf(&[
        "audit",
        "--step",
        "0.02",
        "--method",
        "series_one,series_two",
        "--order",
        "1..3",
        "--format",
        "json",
        "--check",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 6);
    for e in arr {
        assert_eq!(e["violated"], 0);
        let total = e["sound"].as_u64().unwrap() + e["skipped"].as_u64().unwrap();
        assert_eq!(total, 49 * 49);
    }
}
