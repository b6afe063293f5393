use std::process::{Command, Output};

fn crr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crr")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn row(v: &serde_json::Value, label: &str) -> Vec<f64> {
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["label"] == label)
        .unwrap_or_else(|| panic!("no row {label}"))["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn documented_examples() {
    let z = crr(&["zeros", "--lambda", "1", "--eta", "0", "--n", "2"]);
    assert_eq!(z.status.code(), Some(0));
    let v = row(&json(&z), "eigen");
    let r = 1.0 / 3f64.sqrt();
    assert!((v[0] + r).abs() < 1e-15 && (v[1] - r).abs() < 1e-15);

    let c = crr(&["chain", "--lambda", "1", "--n-max", "2"]);
    assert_eq!(row(&json(&c), "gamma"), vec![1.0, 0.5, 0.25]);

    let f = crr(&["coulomb", "--L", "0", "--eta", "0", "--w-grid", "2:2:1"]);
    let v = row(&json(&f), "w=2");
    assert_eq!(v[0], 2.0);
    assert!((v[1] - 2f64.sin()).abs() < 1e-16);
}

#[test]
fn schema_has_sorted_top_level_keys() {
    let out = crr(&["bessel", "--alpha", "0.5", "--w-grid", "0.5:5:4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos: Vec<usize> = ["\"command\"", "\"diagnostics\"", "\"params\"", "\"rows\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "bessel");
    assert_eq!(v["params"]["columns"], "w,J");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic_and_parallel_safe() {
    let args = ["coulomb", "--L", "2", "--eta", "-1.5", "--w-grid", "0.5:10:40", "--check", "ode,recurrence"];
    let a = crr(&args);
    let b = crr(&args);
    let mut par = args.to_vec();
    par.push("--parallel");
    let c = crr(&par);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn floats_round_trip() {
    let out = crr(&["eval-poly", "--lambda", "0.6", "--eta", "3", "--n", "7", "--x-grid", "-2:2:9", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("label,x,recurrence"));
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let x: f64 = cells[1].parse().unwrap();
        let p: f64 = cells[2].parse().unwrap();
        let want = crr::crr::crr_eval_recurrence(crr::ParamB::new(0.6, 3.0), 7, x).unwrap();
        assert_eq!(p, want);
    }
}

#[test]
fn method_both_reports_discrepancy() {
    let out = crr(&["eval-poly", "--lambda", "2.5", "--eta", "-2", "--n", "30", "--x-grid", "-10:10:50", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let d = &v["diagnostics"].as_array().unwrap()[0];
    assert_eq!(d["name"], "max_discrepancy");
    assert!(d["value"].as_f64().unwrap() <= 1e-10);

    let z = crr(&["zeros", "--lambda", "0.6", "--eta", "3", "--n", "8", "--method", "both"]);
    assert_eq!(z.status.code(), Some(0));
    let v = json(&z);
    let a = row(&v, "eigen");
    let b = row(&v, "electro");
    assert!(a.iter().zip(&b).all(|(p, q)| (p - q).abs() <= 1e-8));
}

#[test]
fn exit_codes() {
    assert_eq!(crr(&["zeros", "--lambda", "-1", "--n", "2"]).status.code(), Some(2));
    let stderr = String::from_utf8(crr(&["zeros", "--lambda", "-1", "--n", "2"]).stderr).unwrap();
    assert!(stderr.contains("lambda > 0"), "{stderr}");
    assert_eq!(crr(&["ortho", "--lambda", "0.4", "--n-max", "2"]).status.code(), Some(2));
    assert_eq!(crr(&["bessel", "--alpha", "0.3", "--w-grid", "-1:1:3"]).status.code(), Some(2));
    assert_eq!(crr(&["zeros", "--lambda", "1"]).status.code(), Some(64));
    assert_eq!(crr(&["zeros", "--lambda", "1", "--n", "2", "--method", "magic"]).status.code(), Some(64));
    assert_eq!(crr(&["eval-poly", "--lambda", "1", "--n", "2", "--x-grid", "0:1"]).status.code(), Some(64));
    assert_eq!(crr(&[]).status.code(), Some(64));
    let help = crr(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8(help.stdout).unwrap().contains("eval-poly"));
}

#[test]
fn max_terms_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_crr"))
        .args(["coulomb", "--L", "0", "--eta", "1", "--w-grid", "8:8:1"])
        .env("CRR_MAX_TERMS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no convergence"));
}

#[test]
fn expand_kinds() {
    let a = crr(&["expand", "--lambda", "3", "--eta", "-0.5", "--kind", "acoeffs", "--order", "4"]);
    let v = json(&a);
    let coeffs = row(&v, "A");
    assert_eq!(coeffs[0], 1.0);
    assert!((coeffs[1] - 0.5 / 3.0).abs() < 1e-15);
    assert_eq!(v["params"]["L"], 2);

    let s = crr(&["expand", "--lambda", "1", "--kind", "sincos", "--order", "30", "--w", "1.5"]);
    let v = json(&s);
    assert_eq!(row(&v, "b")[1], 1.0);
    for d in v["diagnostics"].as_array().unwrap() {
        assert!(d["value"].as_f64().unwrap() < 1e-10);
    }

    let w = crr(&["expand", "--lambda", "1.2", "--eta", "0.4", "--kind", "weber", "--order", "80", "--x", "0.3", "--w", "0.1"]);
    assert_eq!(w.status.code(), Some(0));
    let v = json(&w);
    assert!((row(&v, "closed_form")[0] - row(&v, "series")[0]).abs() < 1e-12);

    let p = crr(&["expand", "--lambda", "1", "--kind", "appell", "--order", "25", "--x", "0", "--w", "1"]);
    let v = json(&p);
    assert!((row(&v, "series")[0] - 1f64.sin()).abs() < 1e-12);
}

#[test]
fn ortho_small_matrix() {
    let out = crr(&["ortho", "--lambda", "1", "--n-max", "2", "--tol", "1e-12"]);
    let v = json(&out);
    assert!((row(&v, "n=2")[2] - 0.25).abs() < 1e-10);
    let diag = &v["diagnostics"].as_array().unwrap()[0];
    assert!(diag["value"].as_f64().unwrap() < 1e-10);
}
