use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinomax")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn triple(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.to_string()).collect()
}

#[test]
fn echo_round_trips_to_identical_results() {
    for args in [
        ["analyze", "-l", "-2", "0", "1", "-r", "4", "1", "1", "-p", "0", "1.0471975511965976", "0"],
        ["analyze", "-l", "11", "5", "2", "-r", "0.3", "7", "1.25", "-p", "0.1", "-2.5", "3"],
        ["analyze", "-l", "-1", "0", "1", "-r", "1", "2", "1", "-p", "0", "1.5707963", "0"],
    ] {
        let mut a: Vec<&str> = args.to_vec();
        a.push("--json");
        let first = json(&a);
        let input = &first["input"];
        let (l, r, p) = (triple(&input["freqs"]), triple(&input["moduli"]), triple(&input["phases"]));
        let mut b = vec!["analyze", "--json", "-l"];
        b.extend(l.iter().map(String::as_str));
        b.push("-r");
        b.extend(r.iter().map(String::as_str));
        b.push("-p");
        b.extend(p.iter().map(String::as_str));
        let second = json(&b);
        assert_eq!(first["results"].to_string(), second["results"].to_string());
        assert_eq!(first["input"], second["input"]);
    }
}

#[test]
fn envelope_fields() {
    let v = json(&["sidon", "-l", "-1", "0", "1", "--json"]);
    assert_eq!(v["command"], "sidon");
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["toolVersion"], env!("CARGO_PKG_VERSION"));
    assert!((v["results"]["constant"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12);
    let v = json(&["verify", "--seed", "3", "--count", "50", "--json"]);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["results"]["passed"], true);
}

#[test]
fn degrees_are_converted() {
    let a = json(&["analyze", "-l", "-1", "0", "1", "-r", "1", "2", "1", "-p", "0", "90", "0", "--degrees", "--json"]);
    let b = json(&["analyze", "-l", "-1", "0", "1", "-r", "1", "2", "1", "-p", "0", "1.5707963267948966", "0", "--json"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn spectrum_examples() {
    let v = json(&["analyze", "-l", "2", "5", "11", "-r", "1", "1", "1", "-p", "0", "0", "0", "--json"]);
    assert_eq!(v["results"]["stats"]["tau"], 0.0);
    assert_eq!(v["results"]["max"]["points"].as_array().unwrap().len(), 1);
    let v = json(&["analyze", "-l", "-2", "0", "1", "-r", "4", "1", "1", "-p", "0", "1.0471975511965976", "0", "--json"]);
    assert_eq!(v["results"]["max"]["points"].as_array().unwrap().len(), 2);
}

#[test]
fn multiplier_measure_atoms() {
    let v = json(&["multiplier", "-l", "-1", "0", "1", "-p", "0", "1.5707963267948966", "0", "--json"]);
    let r = &v["results"];
    assert!((r["norm"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12);
    for m in r["measureLift"]["atomModuli"].as_array().unwrap() {
        assert!((m.as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}

#[test]
fn bad_input_exits_with_2_and_error_body() {
    for args in [
        vec!["analyze", "-l", "1", "1", "2", "-r", "1", "1", "1", "--json"],
        vec!["analyze", "-l", "1", "2", "3", "-r", "1", "0", "1", "--json"],
        vec!["sweep", "-k", "2", "-l", "4", "-r", "1", "1", "1", "--json"],
        vec!["hypotrochoid", "-l", "-2", "0", "1", "-r", "1", "1", "1", "--n", "3", "--json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v["error"]["kind"].is_string());
    }
    assert_eq!(run(&["analyze", "-l", "1", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_is_monotone() {
    let out = run(&["sweep", "-k", "1", "-l", "2", "-r", "1", "1", "1", "--n", "16", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["tau", "t", "fstar", "ratio", "bound"]);
    let fstar: Vec<f64> = rdr.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    assert_eq!(fstar.len(), 16);
    assert!(fstar.windows(2).all(|w| w[1] < w[0]));
    assert!(!String::from_utf8(out.stdout).unwrap().contains('\r'));
}

#[test]
fn hypotrochoid_exports_points() {
    let v = json(&["hypotrochoid", "-l", "-2", "0", "1", "-r", "0.3333333333333333", "1", "0.6666666666666666", "--n", "300", "--json"]);
    assert_eq!(v["results"]["curve"]["samples"].as_array().unwrap().len(), 300);
    assert_eq!(v["results"]["curve"]["cusp_count"], 3);
    let out = run(&["hypotrochoid", "-l", "-2", "0", "1", "-r", "4", "1", "1", "--n", "64", "--csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 65);
}

#[test]
fn human_table_uses_nine_digits() {
    let out = run(&["sidon", "-l", "-1", "0", "1"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("1.41421356\n"), "{s}");
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--seed", "42", "--count", "2000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
