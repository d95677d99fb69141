use std::path::Path;
use std::process::{Command, Output};

use gerbegw::base::table::TableFile;
use gerbegw::{builtin_theory, CurveClass};
use serde_json::Value;

fn gerbegw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gerbegw"))
        .args(args)
        .env_remove("GERBEGW_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    let value: Value = serde_json::from_slice(&out.stdout).expect("json output");
    assert_eq!(value["schema"], 1);
    value
}

fn p2_table(dir: &Path, corrupt: bool) -> String {
    let p2 = builtin_theory("P2").unwrap();
    let mut file = TableFile::export(&p2, &CurveClass::degree(2), 5, 0).unwrap();
    if corrupt {
        // pretend there are two conics through five points
        for entry in file.invariants.iter_mut().filter(|e| e.beta == [2]) {
            let value: i64 = entry.value.parse().unwrap();
            entry.value = (2 * value).to_string();
        }
    }
    let path = dir.join(if corrupt { "bad.json" } else { "p2.json" });
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn twisted_invariant_on_p2() {
    let out = gerbegw(&[
        "invariant",
        "--base",
        "P2",
        "--gerbe",
        "r=2,L=1",
        "--beta",
        "1",
        "--ins",
        "g=1:pt",
        "--ins",
        "g=0:pt",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1/2\n");

    let out = gerbegw(&[
        "invariant",
        "--base",
        "P2",
        "--gerbe",
        "r=2,L=1",
        "--beta",
        "1",
        "--ins",
        "g=1:pt",
        "--ins",
        "g=1:pt",
    ]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn base_and_character_invariants() {
    let out = gerbegw(&[
        "invariant",
        "--base",
        "P2",
        "--beta",
        "2",
        "--ins",
        "pt",
        "--ins",
        "pt",
        "--ins",
        "pt",
        "--ins",
        "pt",
        "--ins",
        "pt",
    ]);
    assert_eq!(stdout(&out), "1\n");

    let out = gerbegw(&[
        "--format",
        "json",
        "invariant",
        "--base",
        "P1",
        "--gerbe",
        "r=3,L=1",
        "--beta",
        "1",
        "--ins",
        "rho=1:pt",
        "--ins",
        "rho=1:pt",
        "--ins",
        "rho=1:pt",
    ]);
    assert_eq!(code(&out), 0);
    let value = json(&out);
    assert_eq!(value["value"]["level"], 3);
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec![
            "invariant",
            "--base",
            "P2",
            "--gerbe",
            "r=2,L=1",
            "--beta",
            "1",
            "--ins",
            "g=1:pt:x",
        ],
        vec!["invariant", "--base", "P2", "--gerbe", "r=2", "--beta", "1"],
        vec!["invariant", "--base", "P7", "--beta", "1"],
        vec!["invariant", "--beta", "1"],
        vec!["chartable", "--group", "two"],
    ] {
        let out = gerbegw(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_3() {
    // unstable: two points in degree zero
    let out = gerbegw(&[
        "invariant",
        "--base",
        "P2",
        "--beta",
        "0",
        "--ins",
        "pt",
        "--ins",
        "pt",
    ]);
    assert_eq!(code(&out), 3);
    // residue vector of the wrong length for the group
    let out = gerbegw(&[
        "invariant",
        "--base",
        "P2",
        "--gerbe",
        "r=2,L=1",
        "--beta",
        "1",
        "--ins",
        "g=1,0:pt",
        "--ins",
        "g=0:pt",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn limits_exit_4() {
    let out = gerbegw(&["--limit", "3", "chartable", "--group", "4"]);
    assert_eq!(code(&out), 4);
    let out = gerbegw(&[
        "--limit", "10", "sectors", "--gerbe", "r=3,L=1", "--n", "3", "--beta", "1",
    ]);
    assert_eq!(code(&out), 4);

    let out = Command::new(env!("CARGO_BIN_EXE_gerbegw"))
        .args(["chartable", "--group", "5"])
        .env("GERBEGW_LIMIT", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
}

#[test]
fn sector_counts() {
    let count = |gerbe: &str, n: &str| {
        let out = gerbegw(&[
            "--format", "json", "sectors", "--gerbe", gerbe, "--n", n, "--beta", "1",
        ]);
        assert_eq!(code(&out), 0);
        json(&out)["count"].as_u64().unwrap()
    };
    assert_eq!(count("r=2,L=1", "2"), 2);
    assert_eq!(count("r=1,L=1", "2"), 1);
    assert_eq!(count("r=3,L=1", "3"), 9);
}

#[test]
fn character_tables() {
    let out = gerbegw(&["--format", "json", "chartable", "--group", "2"]);
    let table = &json(&out)["table"];
    assert_eq!(table, &serde_json::json!([["1", "1"], ["1", "-1"]]));

    let out = gerbegw(&["--format", "json", "chartable", "--group", "2:2"]);
    let table = json(&out)["table"].clone();
    let rows = table.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        for cell in row.as_array().unwrap() {
            assert!(cell == "1" || cell == "-1", "{cell}");
        }
    }

    let out = gerbegw(&["--format", "json", "chartable", "--group", "3"]);
    let table = json(&out)["table"].clone();
    // the middle entry is a primitive cube root of unity
    assert_eq!(table[1][1]["level"], 3);
}

#[test]
fn verify_passes_on_builtin_bases() {
    let out = gerbegw(&[
        "verify",
        "--base",
        "P2",
        "--gerbe",
        "r=2,L=1",
        "--beta-max",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with("PASS\n"));

    let out = gerbegw(&["verify", "--base", "P1", "--gerbe", "r=1,L=1"]);
    assert_eq!(code(&out), 0);

    let out = gerbegw(&[
        "--format",
        "json",
        "verify",
        "--base",
        "P1",
        "--gerbe",
        "r=2:2,L=1:0",
        "--n-max",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn verify_reads_tables() {
    let dir = tempfile::tempdir().unwrap();
    let good = p2_table(dir.path(), false);
    let out = gerbegw(&[
        "verify", "--table", &good, "--gerbe", "r=2,L=1", "--n-max", "5",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let bad = p2_table(dir.path(), true);
    let out = gerbegw(&[
        "--format", "json", "verify", "--table", &bad, "--gerbe", "r=2,L=1", "--n-max", "5",
    ]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["passed"], false);
    assert!(report["base_associativity"]["witness"].is_string());

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"name\": \"P2\", \"dim\": ").unwrap();
    let out = gerbegw(&[
        "verify",
        "--table",
        broken.to_str().unwrap(),
        "--gerbe",
        "r=2,L=1",
    ]);
    assert_eq!(code(&out), 2);

    let singular = dir.path().join("singular.json");
    let mut file =
        TableFile::export(&builtin_theory("P1").unwrap(), &CurveClass::degree(1), 3, 0).unwrap();
    file.pairing = vec![vec!["1".into(), "0".into()], vec!["0".into(), "0".into()]];
    std::fs::write(&singular, serde_json::to_string(&file).unwrap()).unwrap();
    let out = gerbegw(&[
        "verify",
        "--table",
        singular.to_str().unwrap(),
        "--gerbe",
        "r=2,L=1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn potential_dump() {
    let out = gerbegw(&[
        "--format",
        "json",
        "potential",
        "--base",
        "P1",
        "--gerbe",
        "r=2,L=1",
        "--beta-max",
        "1",
        "--n-max",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let value = json(&out);
    assert!(!value["terms"].as_array().unwrap().is_empty());
}

#[test]
fn node_dump() {
    let out = gerbegw(&[
        "--format", "json", "nodes", "--gerbe", "r=2,L=1", "--n", "4", "--beta", "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 11);

    let out = gerbegw(&[
        "--format", "json", "nodes", "--gerbe", "r=2,L=1", "--n", "4", "--beta", "1", "--sector",
        "1", "--sector", "0", "--sector", "0", "--sector", "0",
    ]);
    let value = json(&out);
    for index in value["indices"].as_array().unwrap() {
        assert!(index["node"].is_array());
    }
    // not admissible
    let out = gerbegw(&[
        "nodes", "--gerbe", "r=2,L=1", "--n", "4", "--beta", "1", "--sector", "1", "--sector", "1",
        "--sector", "0", "--sector", "0",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format", "json", "verify", "--base", "P2", "--gerbe", "r=3,L=1", "--seed", "7",
    ];
    assert_eq!(gerbegw(&args).stdout, gerbegw(&args).stdout);
}
