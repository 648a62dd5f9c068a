use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallach"))
        .args(args)
        .env_remove("WALLACH_WORKERS")
        .output()
        .expect("binary runs")
}

fn run_with_workers(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallach"))
        .args(args)
        .env("WALLACH_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&run(&a))).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn classify_reference_points() {
    assert_eq!(json(&["classify", "1/6", "1/6", "1/6"])["region"], "O1");
    assert_eq!(json(&["classify", "1/6", "1/4", "1/3"])["region"], "O3");
    assert_eq!(json(&["classify", "29/70", "3/10", "3/10"])["region"], "Omega");
}

#[test]
fn solve_class_counts() {
    assert_eq!(json(&["solve", "--so", "5", "5", "4"])["classes"], 3);
    let v = json(&["solve", "--a", "1/4", "1/4", "1/4"]);
    assert_eq!(v["classes"], 1);
    let s = &v["solutions"][0];
    assert_eq!((s["x1"].as_str(), s["x2"].as_str(), s["x3"].as_str()), (Some("1"), Some("1"), Some("1")));
    let v = json(&["solve", "--so", "3", "1", "1"]);
    assert_eq!(v["classes"], 1);
    let s = &v["solutions"][0];
    // a = (1/2, 1/6, 1/6): the metric (6, 4, 4) up to scale
    assert_eq!((s["x1"].as_str(), s["x2"].as_str(), s["x3"].as_str()), (Some("3/2"), Some("1"), Some("1")));
}

#[test]
fn portrait_equilibrium_classes() {
    let v = json(&["portrait", "--a", "1/6", "1/4", "1/3", "--grid", "20"]);
    assert_eq!(v["classes"], serde_json::json!({"saddle": 2}));
    let v = json(&["portrait", "--a", "7/15", "7/15", "7/15", "--grid", "10"]);
    assert_eq!(v["classes"]["stable_node"], 1);
    assert_eq!(v["classes"]["saddle"], 3);
    assert_eq!(v["samples"].as_array().unwrap().len(), 100);
}

#[test]
fn flow_csv_conserves_volume() {
    let out = stdout(&run(&["flow", "--a", "1/6", "1/6", "1/6", "--x0", "1,1,1.01", "--t-max", "5", "--step", "0.001"]));
    assert!(!out.contains('\r'));
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["t", "x1", "x2", "x3", "v1", "v2", "v3", "volume"]);
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() > 4000);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
    let v0 = rows[0][7];
    let drift = rows.iter().map(|r| (r[7] / v0 - 1.0).abs()).fold(0.0, f64::max);
    assert!(drift < 1e-8, "drift {drift}");
}

#[test]
fn census_table_and_zero_scan() {
    let out = stdout(&run(&["census", "--table3", "--format", "csv"]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 45);
    let failing: Vec<&&str> = rows.iter().filter(|r| r.ends_with(",FAIL")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("5,5,4,"));

    let out = stdout(&run(&["scan-zeros", "--max", "30", "--format", "csv"]));
    for want in ["2,2,2,t=1", "5,5,4,t=2", "10,10,6,t=3"] {
        assert!(out.lines().any(|l| l == want), "missing {want} in {out}");
    }
    assert!(out.lines().skip(1).all(|l| l.split(',').count() == 4));
}

#[test]
fn catalog_line() {
    let v = json(&["catalog", "--line", "7"]);
    assert_eq!(v["a"], serde_json::json!(["1/6", "1/6", "1/6"]));
    assert_eq!(v["region"], "O1");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify", "1/6", "1/6"]), 2);
    assert_eq!(code(&["classify", "1/6", "x", "1/6"]), 2);
    assert_eq!(code(&["classify", "1/2", "1/6", "1/6"]), 2);
    assert_eq!(code(&["classify", "1/6", "1/6", "1/6", "--digits", "3"]), 2);
    assert_eq!(code(&["census", "--max", "40", "--workers", "0"]), 2);
    assert_eq!(code(&["flow", "--so", "3", "1", "1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["flow", "--a", "1/6", "1/6", "1/6", "--t-max", "1", "--step", "2"]), 3);

    let o = run(&["classify", "0", "1/6", "1/6"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["exit_code"], 2);
    assert!(err["error"].is_string() && err["message"].is_string());
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["classify", "1/6", "1/4", "1/3", "--format", "json"],
        vec!["solve", "--so", "5", "5", "4", "--format", "json"],
        vec!["census", "--max", "12", "--format", "json"],
        vec!["catalog", "--line", "9", "--format", "json"],
    ] {
        let text = stdout(&run(&args));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }
}

#[test]
fn output_bytes_do_not_depend_on_workers() {
    for args in [vec!["census", "--max", "22", "--format", "csv"], vec!["scan-zeros", "--max", "26"]] {
        let one = stdout(&run_with_workers(&args, "1"));
        let many = stdout(&run_with_workers(&args, "5"));
        assert_eq!(one, many);
    }
}

#[test]
fn perturbed_flow_is_reproducible_from_the_seed() {
    let args = ["flow", "--a", "1/6", "1/4", "1/3", "--t-max", "0.5", "--perturb", "1e-3", "--seed", "7"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
