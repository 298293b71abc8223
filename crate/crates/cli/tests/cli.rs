use std::io::Write;
use std::process::{Command, Output, Stdio};

fn latpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(args)
        .env_remove("LATPATH_BUDGET")
        .env_remove("LATPATH_OEIS_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(args)
        .env_remove("LATPATH_OEIS_CACHE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const DYCK_TABLE: &str = "\
dyck paths
statistic                     | a_n, 1 <= n <= 9
------------------------------+-------------------
h, U, D, UU, UD, DD, UUD, UDD | 1, 2, 4, 9, 21, 51, 127, 323, 835
DU                            | 1, 2, 4, 8, 17, 39, 94, 233, 588
UUU, DDD                      | 1, 2, 5, 13, 35, 97, 274, 786, 2282
UDU, DUD                      | 1, 2, 4, 9, 22, 56, 146, 389, 1053
DUU, DDU                      | 1, 2, 5, 13, 34, 89, 234, 621, 1669
";

#[test]
fn dyck_table_is_reproduced_and_stable() {
    let args = ["table", "--family", "dyck", "--max-pattern-len", "3", "--n", "9", "--format", "text-table"];
    let first = latpath(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), DYCK_TABLE);
    assert_eq!(latpath(&args).stdout, first.stdout);
}

#[test]
fn verified_tables() {
    let out = latpath(&["table", "--family", "motzkin", "--n", "9", "--format", "csv", "--verify", "cross"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("patterns,1,2,3,4,5,6,7,8,9\n"));
    assert!(text.contains("\nFF,1,2,4,9,20,47,111,268,653\n"));
    let out = latpath(&["table", "--family", "skew-dyck", "--n", "9", "--verify", "cross"]);
    assert!(out.status.success());
    assert!(stdout(&out)
        .lines()
        .any(|l| l.starts_with("L, DL ") && l.ends_with("| 1, 3, 9, 28, 91, 307, 1062, 3748, 13429")));
}

#[test]
fn b_files() {
    let out = latpath(&["series", "--family", "dyck", "--pattern", "U", "--order", "8", "--format", "b-file"]);
    assert_eq!(stdout(&out), "1 1\n2 2\n3 4\n4 9\n5 21\n6 51\n7 127\n8 323\n");
    let out = latpath(&["series", "--family", "motzkin", "--pattern", "UD", "--order", "0"]);
    assert_eq!(stdout(&out), "0 1\n");
    let out = latpath(&["series", "--family", "skew-motzkin", "--pattern", "L", "--order", "11", "--format", "b-file"]);
    assert!(stdout(&out).ends_with("10 3639\n11 9831\n"));
}

#[test]
fn fibonacci_level() {
    let out = latpath(&["series", "--family", "dyck", "--pattern", "UU", "--order", "10", "--level", "2"]);
    let values: Vec<u64> = stdout(&out)
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values, [0, 1, 2, 4, 7, 12, 20, 33, 54, 88]);
}

#[test]
fn json_schema() {
    let out = latpath(&["series", "--family", "dyck", "--pattern", "UUD", "--order", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["family"], "dyck");
    assert_eq!(v["pattern"], "UUD");
    assert_eq!(v["order"], 6);
    assert_eq!(v["coefficients"], serde_json::json!([1, 1, 2, 4, 9, 21, 51]));
    assert_eq!(v["levels"]["0"], serde_json::json!([1, 1, 1, 1, 1, 1, 1]));
    assert!(v["levels"].get("1").is_none());
    assert_eq!(v["levels"]["2"], serde_json::json!([0, 0, 1, 2, 4, 7, 12]));
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(["series", "--family", "dyck", "--pattern", "U", "--order", "6"])
        .env("LATPATH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(latpath(&["table", "--family", "motzkin", "--n", "40"]).status.code(), Some(2));
}

#[test]
fn usage_errors_do_not_look_like_budget_errors() {
    assert_eq!(latpath(&["table", "--family", "nope"]).status.code(), Some(64));
    assert_eq!(latpath(&["series", "--family", "dyck", "--pattern", "X"]).status.code(), Some(64));
    assert_eq!(latpath(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let out = latpath(&["verify", "--level", "cross", "--family", "dyck"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).ends_with(" checks, 0 failed\n"));
    let out = latpath(&["verify", "--level", "cross", "--family", "dyck", "--corrupt-base"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL dyck/U oracle vs series"));
}

#[test]
fn full_verification_includes_phi() {
    let out = latpath(&["verify", "--level", "full", "--family", "motzkin", "--phi-steps", "8"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS motzkin/DU phi bijection onto DU"));
    assert!(text.contains("PASS motzkin/UU radical form"));
}

#[test]
fn oeis_from_series() {
    let series = latpath(&["series", "--family", "dyck", "--pattern", "U", "--order", "9"]);
    let out = with_stdin(&["oeis", "--mode", "cache-only", "--from-series", "-"], &stdout(&series));
    assert_eq!(stdout(&out), "A001006 Motzkin numbers\n");
    let out = latpath(&["oeis", "--terms", "1,3,10,35,126,463,1728"]);
    assert_eq!(stdout(&out), "no match\n");
    let out = latpath(&["oeis", "--mode", "off", "--terms", "1,1,2,4,9,21"]);
    assert_eq!(stdout(&out), "lookup disabled\n");
}

#[test]
fn oeis_json_input_and_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("motzkin.json");
    let json = latpath(&["series", "--family", "motzkin", "--pattern", "U", "--order", "9", "--format", "json"]);
    std::fs::write(&doc, &json.stdout).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(["oeis", "--from-series"])
        .arg(&doc)
        .env("LATPATH_OEIS_CACHE", dir.path().join("absent.jsonl"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("A026418 "));
}
