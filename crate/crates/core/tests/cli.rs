use std::process::Command;

use hypercolor::cli::{run, CliError};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hypercolor");

const FANO: &str = "# Fano plane\n7 7 3\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n";

fn json(args: &[&str]) -> Value {
    let mut full = vec!["hypercolor"];
    full.extend_from_slice(args);
    let out = run(full).unwrap();
    assert_eq!(out.status, 0);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn chains_on_fano_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.txt");
    std::fs::write(&path, FANO).unwrap();
    let out = Command::new(BIN)
        .args(["chains", "--input", path.to_str().unwrap(), "--r", "2", "--mode", "sets"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["count"], 21);
    assert_eq!(v["tool"], "hypercolor");
    assert_eq!(v["version"], hypercolor::VERSION);
    assert_eq!(v["config"]["command"], "chains");
    assert!(v["wall_time_ms"].is_number());
    assert!(v["config"].get("seed").is_some());
}

#[test]
fn chains_sequences_and_extras() {
    let v = json(&["chains", "--family", "fano", "--r", "2", "--mode", "sequences", "--chromatic", "--good-order"]);
    assert_eq!(v["result"]["count"], 42);
    assert_eq!(v["result"]["chromatic_number"], 3);
    assert_eq!(v["result"]["good_order"]["exists"], false);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "hypercolor", "simulate", "--algorithm", "as", "--family", "complete:6:3", "--r", "4", "--a", "3",
        "--p", "0.741", "--trials", "2000", "--seed", "123", "--omit-timing",
    ];
    let a = run(args).unwrap().stdout;
    let b = run(args).unwrap().stdout;
    assert_eq!(a, b);
    assert!(!a.contains("wall_time_ms"));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["seed"], 123);
    assert_eq!(v["result"]["trials"]["trials"], 2000);

    let bounds = ["hypercolor", "bounds", "--r-max", "50", "--f-n-max", "300", "--omit-timing"];
    assert_eq!(run(bounds).unwrap().stdout, run(bounds).unwrap().stdout);
}

#[test]
fn simulate_needs_a_seed() {
    let err = run(["hypercolor", "simulate", "--algorithm", "pluhar", "--family", "fano", "--r", "3"]).unwrap_err();
    assert!(matches!(err, CliError::Usage(_)));
    assert_ne!(err.exit_code(), 0);

    let v = json(&["simulate", "--algorithm", "pluhar", "--family", "fano", "--r", "3", "--trials", "50", "--seed", "auto"]);
    assert!(v["config"]["seed"].is_u64());
    let seed = v["config"]["seed"].as_u64().unwrap().to_string();
    let again = json(&["simulate", "--algorithm", "pluhar", "--family", "fano", "--r", "3", "--trials", "50", "--seed", &seed]);
    assert_eq!(v["result"], again["result"]);
}

#[test]
fn bounds_rows() {
    let v = json(&["bounds", "--n", "3", "--r-max", "1000", "--f-n-max", "2000"]);
    let rows = v["result"].as_array().unwrap();
    let find = |name: &str, r: &str| {
        rows.iter()
            .find(|x| x["name"] == name && x["r"].to_string().trim_matches('"') == r)
            .unwrap_or_else(|| panic!("{name} {r}"))
    };
    assert_eq!(find("alon_recolor", "limit")["exact"], "8/27");
    assert!((find("pluhar_random_order", "limit")["value"].as_f64().unwrap() - 0.199148).abs() < 1e-6);
    assert!((find("inducibility_chain", "limit")["value"].as_f64().unwrap() - 0.541341).abs() < 1e-6);
    assert_eq!(find("complete_hypergraph_upper", "limit")["exact"], "4/3");
    let f = find("f_recursion_segment", "limit");
    assert!(f["value"].as_f64().unwrap() >= 11.0 / 27.0);
    assert_eq!(f["parameters"]["target"], 0.324);
    let comb = find("akolzin_shabanov_combined", "limit")["value"].as_f64().unwrap();
    assert!((0.42..=0.44).contains(&comb));
    let pure = find("akolzin_shabanov_pure", "limit")["value"].as_f64().unwrap();
    assert!((0.200..=0.210).contains(&pure));
}

#[test]
fn bounds_csv_and_other_n() {
    let out = run(["hypercolor", "bounds", "--r-max", "30", "--f-n-max", "0", "--format", "csv", "--omit-timing"]).unwrap();
    let lines: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "name,n,r,value,exact,parameters,notes");
    assert!(lines.iter().any(|l| l.starts_with("alon_recolor,3,limit,") && l.contains("8/27")));
    assert!(!out.stdout.contains("f_recursion"));

    let v = json(&["bounds", "--n", "4", "--r-max", "12"]);
    let rows = v["result"].as_array().unwrap();
    assert!(rows.iter().all(|x| x["n"] == 4));
    assert!(rows.iter().any(|x| x["name"] == "complete_hypergraph_upper" && x["exact"] == "27/8"));
}

#[test]
fn fbound_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("table.csv");
    let v = json(&["fbound", "--n-max", "1500", "--p-set", "2,3", "--table-csv", csv.to_str().unwrap()]);
    assert_eq!(v["result"]["seed_table_best"]["m"], 11);
    assert_eq!(v["result"]["seed_table_best"]["l3_exact"], "11/27");
    assert!(v["result"]["best"]["l3"].as_f64().unwrap() >= 11.0 / 27.0);
    assert_eq!(v["result"]["report"]["parameters"]["target"], 0.324);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "N,upper,exact,provenance");
    assert_eq!(text.lines().count(), 1 + 1501);

    let out = run(["hypercolor", "fbound", "--n-max", "100", "--format", "csv", "--omit-timing"]).unwrap();
    let body: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 1 + 101);
}

#[test]
fn inducibility_inputs() {
    let v = json(&["inducibility", "--blowup", "3:2"]);
    assert_eq!(v["result"]["example_formula"], "272");
    assert!(v["result"]["induced_paths"].as_u64().unwrap() >= 272);

    let dir = tempfile::tempdir().unwrap();
    let c4 = dir.path().join("c4.txt");
    std::fs::write(&c4, "4 4 2\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    let v = json(&["inducibility", "--input", c4.to_str().unwrap(), "--r", "3"]);
    assert_eq!(v["result"]["induced_paths"], 4);
    assert_eq!(v["result"]["upper_bound"], 8.0);

    let v = json(&["inducibility", "--family", "chain:3:3", "--r", "3"]);
    assert_eq!(v["result"]["induced_paths"], 1);
    assert_eq!(v["result"]["chains"], 1);
}

#[test]
fn verify_quick_exits_zero() {
    let out = Command::new(BIN).args(["verify", "--quick"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);
    assert!(v["result"]["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn usage_errors_go_to_stderr() {
    for args in [
        vec!["frobnicate"],
        vec!["chains", "--r", "2"],
        vec!["chains", "--family", "fano", "--r", "2", "--mode", "bags"],
        vec!["bounds", "--cap-chromatic", "0"],
        vec!["simulate", "--algorithm", "alon", "--family", "fano", "--r", "3", "--seed", "soon"],
    ] {
        let out = Command::new(BIN).args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_errors_emit_no_report() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1 3\n0 1 7\n").unwrap();
    for args in [
        vec!["chains", "--input", bad.to_str().unwrap(), "--r", "2"],
        vec!["chains", "--input", "/nonexistent/file", "--r", "2"],
        vec!["chains", "--family", "fano", "--r", "2", "--cap-chain-edges", "3"],
        vec!["simulate", "--algorithm", "alon", "--family", "fano", "--r", "3", "--seed", "1"],
    ] {
        let out = Command::new(BIN).args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn help_and_version_succeed() {
    let out = Command::new(BIN).arg("--version").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains(hypercolor::VERSION));
    let out = Command::new(BIN).args(["help", "bounds"]).output().unwrap();
    assert!(out.status.success());
}
