use std::process::{Command, Output};

fn relcyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcyc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_reports_the_violated_axiom() {
    let o = relcyc(&["validate", "--instance", "TP3-broken"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nabla.associativity"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().iter().all(|x| x["axiom"] == "nabla.associativity"));

    let o = relcyc(&["validate", "--instance", "TP3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["valid"].clone(), v["dim_a"].clone(), v["dim_m"].clone()), (true.into(), 1.into(), 2.into()));
}

#[test]
fn homology_csv_for_dual_numbers() {
    let o = relcyc(&["homology", "--instance", "DN", "--kind", "hc", "--max-degree", "8", "--pipeline", "oracle,quotient", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["instance", "kind", "degree", "pipeline", "dim", "weight"]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    for pipeline in ["oracle", "quotient"] {
        let totals: Vec<usize> =
            rows.iter().filter(|x| &x[3] == pipeline && x[5].is_empty()).map(|x| x[4].parse().unwrap()).collect();
        assert_eq!(totals, vec![1, 0, 1, 0, 1, 0, 1, 0, 1], "{pipeline}");
    }
    let weighted: usize = rows.iter().filter(|x| &x[3] == "oracle" && !x[5].is_empty()).map(|x| x[4].parse::<usize>().unwrap()).sum();
    assert_eq!(weighted, 5);
}

#[test]
fn homology_json_lists_each_pipeline() {
    let o = relcyc(&["homology", "--instance", "T", "--kind", "hh", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = v.to_string();
    assert!(s.contains("\"oracle\"") && s.contains("\"hatX\""), "{s}");
}

#[test]
fn verify_passes_on_triangular_matrices() {
    let o = relcyc(&["verify", "--instance", "T", "--max-degree", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|x| &x[3] == "0"), "{rows:?}");
}

#[test]
fn bad_requests_exit_with_usage_status() {
    let o = relcyc(&["validate", "--instance", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NOPE"));
    let o = relcyc(&["homology", "--kind", "hc", "--max-degree", "2", "--pipeline", "hatx"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hatX"));
    let o = relcyc(&["homology", "--kind", "hz", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = relcyc(&["verify"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_receives_the_report() {
    let path = std::env::temp_dir().join(format!("relcyc-cli-test-{}.json", std::process::id()));
    let o = relcyc(&["sbi", "--instance", "DN", "--max-degree", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let direct = relcyc(&["sbi", "--instance", "DN", "--max-degree", "4"]);
    assert_eq!(written, stdout(&direct));
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let args = ["compare", "--instance", "TP3", "--max-degree", "4"];
    let a = relcyc(&args);
    let b = relcyc(&args);
    let c = Command::new(env!("CARGO_BIN_EXE_relcyc")).args(args).env("RELCYC_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let args = ["verify", "--instance", "DN", "--max-degree", "4", "--samples", "2", "--seed", "7", "--format", "csv"];
    assert_eq!(relcyc(&args).stdout, Command::new(env!("CARGO_BIN_EXE_relcyc")).args(args).env("RELCYC_THREADS", "1").output().unwrap().stdout);
}

#[test]
fn harmonic_report_rows() {
    let o = relcyc(&["harmonic", "--instance", "TP3", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    for r in rows {
        assert_eq!(r["harmonic"].as_u64().unwrap() + r["perp"].as_u64().unwrap(), r["dim"].as_u64().unwrap());
    }
}
