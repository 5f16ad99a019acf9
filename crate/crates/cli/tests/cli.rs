use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anharmonic")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn spectrum_records_are_self_describing() {
    let doc =
        json(&["spectrum", "--kind", "quartic-aho", "--g", "1", "--lambda", "0.1", "--levels", "0..4", "--order", "2"]);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 5);
    let r = &records[0];
    for key in ["kind", "g", "lambda", "n", "phase", "convention", "w", "E0", "corrections", "oracle"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["n"], 0);
    assert_eq!(format!("{:.4}", f(&r["E0"])), "0.5603");
    assert_eq!(r["corrections"].as_array().unwrap().len(), 2);
    assert!((f(&r["energy"]) - 0.55893).abs() < 5e-6);
    assert_eq!(doc["meta"]["order"], 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "spectrum",
        "--kind",
        "sextic-dwo",
        "--g",
        "3",
        "--lambda",
        "0.5,0.01:0.05:0.01",
        "--levels",
        "0..6",
        "--order",
        "3",
        "--with-oracle",
        "--format",
        "json",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let csv = ["table", "--id", "3", "--order", "2"];
    assert_eq!(stdout(&csv), stdout(&csv));
}

#[test]
fn json_round_trips() {
    for args in [
        &[
            "spectrum",
            "--kind",
            "octic-aho",
            "--lambda",
            "0.001,1,1e6",
            "--levels",
            "0,3,9",
            "--order",
            "4",
            "--format",
            "json",
        ][..],
        &["vacuum", "--lambda", "1e-3:1e-2:1e-3", "--format", "json"][..],
        &["table", "--id", "4", "--format", "json"][..],
    ] {
        let text = stdout(args);
        let v: Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(text, again);
    }
}

#[test]
fn output_keeps_request_order() {
    let doc = json(&["spectrum", "--kind", "quartic-aho", "--lambda", "100,0.1,10", "--levels", "4,0"]);
    let got: Vec<(f64, u64)> =
        doc["records"].as_array().unwrap().iter().map(|r| (f(&r["lambda"]), r["n"].as_u64().unwrap())).collect();
    assert_eq!(got, vec![(100.0, 4), (100.0, 0), (0.1, 4), (0.1, 0), (10.0, 4), (10.0, 0)]);
}

#[test]
fn table_two_csv() {
    let text = stdout(&["table", "--id", "2"]);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&header[..4], ["table", "lambda", "n", "convention"]);
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 20);
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rational = rows.iter().find(|r| r[col("lambda")] == "1.0" && r[col("n")] == "1").unwrap();
    assert_eq!(rational[col("lo")], "2.125");
    assert_eq!(rational[col("printed_lo")], "2.1250");
    assert!(rows.iter().all(|r| r[col("convention")] == "paper: E + g^2/(16 lambda)"));
}

#[test]
fn table_one_with_oracle() {
    let doc = json(&["table", "--id", "1", "--with-oracle", "--rel-tol", "1e-12"]);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 24);
    let first = &records[0];
    assert_eq!(first["printed_exact"], "0.5591");
    assert!((f(&first["oracle"]) - 0.5591).abs() < 5e-4);
    assert!(f(&first["lo_units_off"]).abs() <= 1.0);
}

#[test]
fn paper_convention_doubles_sextic_energies() {
    let half = json(&["spectrum", "--kind", "sextic-aho", "--g", "3", "--lambda", "0.5", "--levels", "0"]);
    let paper = json(&[
        "spectrum",
        "--kind",
        "sextic-aho",
        "--g",
        "3",
        "--lambda",
        "0.5",
        "--levels",
        "0",
        "--convention",
        "paper",
    ]);
    let (h, p) = (f(&half["records"][0]["E0"]), f(&paper["records"][0]["E0"]));
    assert!((p - 1.95608).abs() < 1e-5);
    assert!((p - 2.0 * h).abs() < 1e-9);
}

#[test]
fn susy_wavefunction_samples() {
    let text = stdout(&["susy", "wavefunction", "--b", "100", "--grid", "-2:2:0.005"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "f,susy_exact,ngas_lo");
    assert_eq!(lines.len(), 802);
    let centre: Vec<f64> = lines[401].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(centre[0], 0.0);
    assert!((centre[1] - 1.211144).abs() < 1e-6);
}

#[test]
fn susy_ispp_and_scaling() {
    let doc = json(&[
        "susy",
        "ispp",
        "--b",
        "1",
        "--levels",
        "0..3",
        "--with-oracle",
        "--convention",
        "paper",
        "--rel-tol",
        "1e-12",
    ]);
    for r in doc["records"].as_array().unwrap() {
        assert!(f(&r["oracle_residual"]).abs() < 1e-8);
    }
    assert!((f(&doc["records"][0]["residual"]) - 0.431133).abs() < 1e-6);
    let doc = json(&["susy", "scaling", "--b", "0.25,100", "--levels", "0..20"]);
    assert_eq!(doc["records"].as_array().unwrap().len(), 42);
    for r in doc["records"].as_array().unwrap() {
        assert!(f(&r["max_relative"]) < 1e-10);
    }
}

#[test]
fn vacuum_and_effective_potential() {
    let doc = json(&["vacuum", "--lambda", "0.1"]);
    let r = &doc["records"][0];
    assert!((f(&r["n0"]) - 0.010016).abs() < 1e-6);
    assert!(f(&r["stability_gap"]) < 0.0);
    let doc = json(&["effective-potential", "--lambda", "1", "--grid", "-1:1:0.5"]);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 5);
    for r in records {
        assert!(f(&r["ngas"]) <= f(&r["perturbative"]));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["spectrum", "--lambda", "0.1"]), 2);
    assert_eq!(code(&["spectrum", "--kind", "quartic-aho", "--lambda", "1:0:0.1"]), 2);
    assert_eq!(code(&["spectrum", "--kind", "quartic-aho", "--lambda", "0.1", "--levels", "3..1"]), 2);
    assert_eq!(code(&["spectrum", "--kind", "quartic-aho", "--lambda", "0.1", "--g", "-1"]), 2);
    assert_eq!(code(&["spectrum", "--kind", "quartic-aho", "--lambda", "-0.1"]), 2);
    assert_eq!(code(&["spectrum", "--kind", "quartic-aho", "--lambda", "0.1", "--order", "5"]), 2);
    assert_eq!(code(&["oracle", "--kind", "quartic-aho", "--lambda", "0.1", "--rel-tol", "1e-14"]), 2);
    assert_eq!(code(&["table", "--id", "6"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn numerical_failures_exit_3() {
    let out = run(&["spectrum", "--kind", "quartic-dwo", "--lambda", "0.5", "--phase", "ssb"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("critical coupling"));
    assert!(out.stdout.is_empty());
}

#[test]
fn out_file_is_all_or_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let p = path.to_str().unwrap();

    let failed = run(&["spectrum", "--kind", "quartic-dwo", "--lambda", "0.01,0.5", "--phase", "ssb", "--out", p]);
    assert_eq!(failed.status.code(), Some(3));
    assert!(!path.exists());

    let ok = run(&["spectrum", "--kind", "quartic-dwo", "--lambda", "0.01", "--phase", "ssb", "--out", p]);
    assert!(ok.status.success());
    assert!(ok.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",SSB,"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

    let missing = dir.path().join("no/such/dir/x.csv");
    assert_eq!(code(&["vacuum", "--lambda", "1", "--out", missing.to_str().unwrap()]), 1);
}
