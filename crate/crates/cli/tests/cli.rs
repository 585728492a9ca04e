use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn eulerian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(args)
        .env_remove(eulerian_cli::OUTPUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let out = eulerian(args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), value)
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n} in output"),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn type_b_table_by_enumeration() {
    let (code, v) = json_run(&["table", "--family", "TypeB", "--nmax", "4", "--route", "enum"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rows"], json!([["1"], ["1", "1"], ["1", "6", "1"], ["1", "23", "23", "1"]]));
    assert_eq!(v["meta"]["command"], "table");
}

#[test]
fn type_a_strong_check_passes() {
    let (code, v) = json_run(&["check", "--family", "TypeA", "--nmax", "9", "--mode", "strong"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["verdict"], true);
    assert_eq!(v["result"]["report"]["witnesses"], json!([]));
}

#[test]
fn general_production_matrix_bands() {
    let (code, v) = json_run(&["prodmat", "--family", "General", "--a", "1", "--d", "3", "--order", "6"]);
    assert_eq!(code, 0);
    let s: Vec<Value> = (0..5).map(|i| json!([(3 * i + 1).to_string(), (3 * i + 2).to_string()])).collect();
    assert_eq!(v["result"]["s"], Value::Array(s));
    let t: Vec<Value> = (1..5).map(|i| json!(["0", (9 * i * i).to_string()])).collect();
    assert_eq!(v["result"]["t"], Value::Array(t));
    assert_eq!(v["result"]["tridiagonal"], true);
}

#[test]
fn routes_agree_through_the_cli() {
    let rows = |route: &str| {
        let (code, v) = json_run(&["table", "--family", "TypeB_qt", "--t", "1/2", "--nmax", "6", "--route", route]);
        assert_eq!(code, 0, "{route}");
        v["result"]["rows"].clone()
    };
    let egf = rows("egf");
    assert_eq!(egf, rows("cfrac"));
    assert_eq!(egf, rows("enum"));
}

#[test]
fn failing_check_exits_one_with_witnesses() {
    let (code, v) = json_run(&["check", "--family", "General", "--a", "3", "--d", "1", "--nmax", "5", "--mode", "zhu"]);
    assert_eq!(code, 1);
    assert_eq!(v["meta"]["exit_code"], 1);
    assert_eq!(v["result"]["report"]["verdict"], false);
    assert_eq!(v["result"]["hypothesis_nonneg"], false);
    assert!(!v["result"]["report"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["table", "--family", "TypeA_qt", "--nmax", "3"][..],
        &["table", "--family", "TypeB", "--t", "1", "--nmax", "3"],
        &["table", "--family", "General", "--a", "0.5", "--d", "1", "--nmax", "3"],
        &["table", "--family", "TypeC", "--nmax", "3"],
        &["table", "--family", "TypeB", "--nmax", "9", "--route", "enum"],
        &["table", "--family", "TypeB_qt", "--t", "2", "--nmax", "3", "--route", "recurrence"],
        &["table", "--family", "TypeB", "--nmax", "0"],
        &["check", "--family", "TypeB", "--nmax", "2", "--mode", "strong"],
        &["conjecture", "--triangle", "A", "--seq", "no-such-sequence", "--nmax", "4"],
        &["frobnicate"],
    ] {
        let out = eulerian(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn selftest_all_pass_and_deterministic() {
    let first = eulerian(&["selftest"]);
    assert_eq!(first.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["result"]["summary"]["failed"], 0);
    assert_eq!(v["meta"]["config"]["max_symmetric"], 8);
    assert_eq!(v["meta"]["config"]["max_signed"], 7);
    assert_no_floats(&v);
    // B_n(q;0) is P(A_n,q), never A_n(q) past n = 0
    for row in v["result"]["t_zero"].as_array().unwrap() {
        assert_eq!(row["equals_P_A_n"], true);
        assert_eq!(row["equals_A_n"], row["n"] == 0);
    }
    assert_eq!(first.stdout, eulerian(&["selftest"]).stdout);
}

#[test]
fn injected_fault_shows_in_continued_fraction_cells() {
    let (code, v) = json_run(&["selftest", "--inject-fault", "--max-symmetric", "5", "--max-signed", "4"]);
    assert_eq!(code, 1);
    let cells = v["result"]["matrix"].as_array().unwrap();
    let failing: Vec<&Value> = cells.iter().filter(|c| c["pass"] == false).collect();
    assert!(!failing.is_empty());
    for c in &failing {
        assert!(c["pair"].as_str().unwrap().contains("cfrac"), "{c}");
        assert!(c["n"].as_u64().unwrap() >= 2, "{c}");
    }
    assert!(cells
        .iter()
        .filter(|c| c["pair"].as_str().unwrap().starts_with("egf=") && c["pair"] != "egf=cfrac")
        .all(|c| c["pass"] == true));
}

#[test]
fn moments_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (_, cf) = json_run(&["cfrac", "--family", "TypeA_qt", "--t", "2/3", "--depth", "4", "--moments", "8"]);
    let path = dir.path().join("mu.json");
    std::fs::write(&path, json!({ "mu": cf["result"]["mu"] }).to_string()).unwrap();
    let (code, inv) = json_run(&["invert-moments", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(inv["result"]["s"], cf["result"]["s"]);
    assert_eq!(inv["result"]["t"], cf["result"]["t"]);

    std::fs::write(&path, r#"{"mu": [["1"], [], [], [], [], []]}"#).unwrap();
    let (code, inv) = json_run(&["invert-moments", "--input", path.to_str().unwrap(), "--depth", "3"]);
    assert_eq!(code, 1);
    assert!(inv["result"]["error"].as_str().unwrap().contains("quasi-definite"));
}

#[test]
fn conjecture_accepts_files_and_refuses_non_log_convex() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"["1", "1", "2", "6", "24", "120"]"#).unwrap();
    let (code, v) = json_run(&["conjecture", "--triangle", "B", "--seq", good.to_str().unwrap(), "--nmax", "5"]);
    assert_eq!(code, 0);
    // B row 2 is (1, 6, 1): z_2 = 1 + 6 + 2
    assert_eq!(v["result"]["z"][2], "9");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"x": [1, 2, 1, 2]}"#).unwrap();
    let out = eulerian(&["conjecture", "--triangle", "A", "--seq", bad.to_str().unwrap(), "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not log-convex"));
}

#[test]
fn output_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("reports");
    let out = Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(["cfrac", "--family", "TypeB", "--depth", "3", "--format", "text"])
        .env(eulerian_cli::OUTPUT_DIR_ENV, &target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(Path::new(&target).join("cfrac.txt")).unwrap();
    assert_eq!(written, out.stdout);
}

#[test]
fn outputs_are_exact_and_reproducible() {
    for args in [
        &["table", "--family", "General", "--a", "1/3", "--d", "2", "--nmax", "6"][..],
        &["prodmat", "--family", "TypeB_qt", "--t", "1/2", "--order", "5", "--full"],
        &["check", "--family", "TypeB", "--nmax", "6", "--mode", "zhu"],
        &["conjecture", "--triangle", "A", "--seq", "motzkin", "--nmax", "8"],
    ] {
        let first = eulerian(args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, eulerian(args).stdout, "{args:?}");
        assert_no_floats(&serde_json::from_slice(&first.stdout).unwrap());
    }
}
