//! End-to-end runs of the `blobrep` binary.

use serde_json::Value;
use std::process::{Command, Output};

fn blobrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blobrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = blobrep(&a);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn entry(matrix: &Value, row: [u64; 2], col: [u64; 2]) -> &Value {
    let pos = |key: &str, w: [u64; 2]| {
        matrix[key]
            .as_array()
            .unwrap()
            .iter()
            .position(|b| b == &serde_json::json!(w))
            .unwrap_or_else(|| panic!("{w:?} missing from {key}"))
    };
    &matrix["entries"][pos("rows", row)][pos("cols", col)]
}

fn laurent(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn decomp_examples() {
    let d = json(&["decomp", "--n", "9", "--e", "4", "--kappa", "0,2"]);
    assert_eq!(entry(&d["matrix"], [4, 5], [8, 1]), &laurent(r#"{"2":1}"#));
    assert_eq!(d["walls"], serde_json::json!([-6, -2, 2, 6]));

    let d = json(&["decomp", "--n", "1"]);
    let m = &d["matrix"];
    assert_eq!(m["rows"].as_array().unwrap().len(), 2);
    assert_eq!(
        m["entries"],
        serde_json::json!([[{"0": 1}, {}], [{}, {"0": 1}]])
    );

    let d = json(&["decomp", "--n", "6"]);
    assert_eq!(entry(&d["matrix"], [2, 4], [6, 0]), &laurent(r#"{"1":1}"#));
}

#[test]
fn tilting_examples() {
    let d = json(&["tilting", "--n", "9"]);
    let m = &d["matrix"];
    assert_eq!(entry(m, [4, 5], [8, 1]), &laurent(r#"{"-2":1}"#));
    for (k, row) in m["entries"].as_array().unwrap().iter().enumerate() {
        assert_eq!(row[k], laurent(r#"{"0":1}"#));
    }
}

#[test]
fn tilting_modes_agree_up_to_12() {
    for n in 1..=12 {
        let n = n.to_string();
        let d = json(&["tilting", "--n", &n, "--mode", "both"]);
        assert_eq!(d["diff"], serde_json::json!([]), "n = {n}");
        assert_eq!(d["formula"], d["construction"]);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        ["decomp", "--n", "10", "--format", "csv"],
        ["tilting", "--n", "8", "--format", "json"],
        ["socle", "--n", "9", "--format", "pretty"],
    ] {
        let a = blobrep(&args);
        let b = blobrep(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["decomp", "--n", "4", "--kappa", "0,1"],
        vec!["decomp", "--n", "4", "--e", "3"],
        vec!["decomp", "--n", "0"],
        vec!["gram", "--n", "11"],
        vec!["verify", "--n", "8", "--identity", "i"],
        vec!["verify", "--n", "6", "--identity", "Ucenterdoublecross"],
        vec!["verify", "--n", "6", "--identity", "nosuchlemma"],
        vec!["verify", "--n", "6"],
        vec!["basis", "--n", "4", "--lambda", "2,1"],
        vec!["frobnicate"],
    ] {
        let out = blobrep(&args);
        assert_eq!(code(&out), 2, "{args:?}");
    }
    let out = blobrep(&["verify", "--n", "8", "--identity", "i"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("(mod 4)"));
}

#[test]
fn gram_three_way_rows() {
    let d = json(&["gram", "--n", "6"]);
    let rows = d["rows"].as_array().unwrap();
    let row = |w: [u64; 2]| {
        let r = rows
            .iter()
            .find(|r| r["weight"] == serde_json::json!(w))
            .unwrap();
        (
            r["dim"].as_u64(),
            r["rank_diagram"].as_u64(),
            r["rank_klr"].as_u64(),
            r["dim_simple"].as_u64(),
        )
    };
    assert_eq!(row([2, 4]), (Some(15), Some(14), Some(14), Some(14)));
    assert_eq!(row([6, 0]), (Some(1), Some(1), Some(1), Some(1)));
}

#[test]
fn gram_agrees_up_to_8() {
    for n in 1..=8 {
        let out = blobrep(&["gram", "--n", &n.to_string()]);
        assert!(
            out.status.success(),
            "n = {n}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn verify_examples() {
    let out = blobrep(&[
        "verify",
        "--n",
        "6",
        "--e",
        "4",
        "--kappa",
        "0,2",
        "--identity",
        "deg1vanishing",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "consistent");
    assert_eq!(r["semantics"], "necessary-condition");

    let out = blobrep(&[
        "verify",
        "--n",
        "10",
        "--identity",
        "socle-nonvanishing",
        "--k",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "holds");
    assert_eq!(r["semantics"], "conclusive");
    assert_eq!(r["params"]["k"], 1);

    let out = blobrep(&["verify", "--all", "--n", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.iter().all(|r| r["status"] != "fails"));
    let ids: Vec<&str> = lines
        .iter()
        .map(|r| r["identity"].as_str().unwrap())
        .collect();
    for id in ["a", "b", "c", "i"] {
        assert!(ids.contains(&id), "{id} missing from the suite");
    }
}

#[test]
fn linkage_and_basis() {
    let d = json(&["linkage", "--n", "9", "--lambda", "8,1"]);
    assert_eq!(d["count"], 4);
    let d = json(&["linkage", "--n", "9"]);
    let classes = d["classes"].as_array().unwrap();
    let c = classes
        .iter()
        .find(|c| c["members"] == serde_json::json!([7, 5, -1, -3, -9]))
        .unwrap();
    assert_eq!(
        c["paired"],
        serde_json::json!([true, true, false, true, true])
    );

    let d = json(&["basis", "--n", "6"]);
    let total: usize = d["shapes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["tableaux"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, 64);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("blobrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("decomp.csv");
    let out = blobrep(&[
        "decomp",
        "--n",
        "5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# decomp n=5 e=4 kappa=(0,2) walls=[-2,2]\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/");
    let text = std::fs::read_to_string(format!("{path}{name}")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn json_output_matches_the_schemas() {
    let output = schema("output.schema.json");
    let matrix = schema("matrix.schema.json");
    let runs: [&[&str]; 9] = [
        &["decomp", "--n", "7"],
        &["tilting", "--n", "7"],
        &["tilting", "--n", "7", "--mode", "both"],
        &["weyl-dims", "--n", "7"],
        &["socle", "--n", "10"],
        &["gram", "--n", "5"],
        &["linkage", "--n", "9"],
        &["linkage", "--n", "9", "--lambda", "8,1"],
        &["basis", "--n", "5"],
    ];
    for args in runs {
        let d = json(args);
        assert!(output.is_valid(&d), "{args:?}");
        for key in ["matrix", "formula", "construction"] {
            if let Some(m) = d.get(key) {
                assert!(matrix.is_valid(m), "{args:?} {key}");
            }
        }
    }
    let out = blobrep(&["verify", "--all", "--n", "6", "--format", "json"]);
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        assert!(
            output.is_valid(&serde_json::from_str(line).unwrap()),
            "{line}"
        );
    }
}
