use std::process::{Command, Output};

use serde_json::Value;

use carlitz_core::algebra::FieldSpec;
use carlitz_core::goss::{lfunction_exact, CharacterIndex, PolyX};
use carlitz_core::local::{PadicElem, ZpApprox};
use carlitz_core::verify::SuiteReport;
use carlitz_core::Context;

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = carlitz(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).unwrap()
}

#[test]
fn bernoulli_rows() {
    let v = json(&["bernoulli", "--jmax", "2"]);
    let rows = v["rows"].as_array().unwrap();
    let got: Vec<(u64, Value)> = rows.iter().map(|r| (r["j"].as_u64().unwrap(), r["beta"].clone())).collect();
    assert_eq!(got, vec![(0, Value::from(vec![1])), (1, Value::from(vec![1])), (2, Value::from(vec![1]))]);
    assert!(rows[0].get("valuation").is_none());

    let v = json(&["bernoulli", "--jmax", "0"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);

    let v = json(&["--prime", "0,1", "bernoulli", "--jmax", "3"]);
    assert_eq!(v["rows"][3]["valuation"], serde_json::json!({ "kind": "finite", "value": 0 }));
}

#[test]
fn csv_has_header_and_rows() {
    let out = ok(&["--format", "csv", "bernoulli", "--jmax", "1"]);
    assert_eq!(out, "j,beta,deg\n0,1,0\n1,1,0\n");
}

#[test]
fn lfunction_methods_agree_and_round_trip() {
    let v = json(&["lfunction", "--i", "1", "--y", "2", "--method", "both", "--prec", "5"]);
    assert_eq!(v["diff"], Value::Array(vec![]));
    let exact: PolyX<PadicElem> = serde_json::from_value(v["exact"].clone()).unwrap();
    let ctx = Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap();
    let y = ZpApprox::new(3, 2, 2).unwrap();
    let want = lfunction_exact(&ctx, CharacterIndex::new(&ctx, 1).unwrap(), &y, 5).unwrap();
    assert_eq!(exact, want);
    let y_back: ZpApprox = serde_json::from_value(v["y"].clone()).unwrap();
    assert_eq!(y_back, y);
}

#[test]
fn lfunction_trivial_and_even() {
    let v = json(&["lfunction", "--i", "0", "--y", "0"]);
    let s: PolyX<PadicElem> = serde_json::from_value(v["exact"].clone()).unwrap();
    // constant term 1; the whole series is the removed Euler factor 1 - X^d
    let reps: Vec<Vec<u32>> = s.coeffs().iter().map(|c| c.rep().to_ints()).collect();
    assert_eq!(reps, vec![vec![1], vec![2]]);

    for y in ["1", "4", "7"] {
        let v = json(&["lfunction", "--i", "0", "--y", y, "--at-one"]);
        assert_eq!(v["at_one"]["valuation"]["kind"], "at_least", "y = {y}");
    }
}

#[test]
fn stickelberger_sharp_at_one() {
    let out = ok(&["stickelberger", "--i", "1", "--sharp", "--at-one"]);
    assert_eq!(out.lines().last(), Some("1"));
    let v = json(&["stickelberger", "--i", "1", "--sharp", "--at-one"]);
    assert_eq!(v["at_one"], serde_json::json!([{ "gamma": [1], "coeff": 1 }]));
}

#[test]
fn invariants_theta_i1() {
    let out = ok(&["--format", "csv", "invariants", "--i", "1"]);
    assert_eq!(out.lines().nth(1), Some("1,0,0,1,0,OK,OK"));
}

#[test]
fn sinnott_witness() {
    let out = ok(&["sinnott"]);
    assert!(out.contains("witness: "));
    assert!(out.lines().any(|l| l == "zero function: true"));
    let v = json(&["sinnott", "--i", "1"]);
    assert_eq!(v["zero_function"], true);
    assert!(v["stick_lfun"].as_array().unwrap().iter().all(|r| r["matches"].as_array().unwrap().iter().all(|b| b == true)));
}

#[test]
fn zeta_at_negative_integers() {
    // ζ_A(-2) = 0 for q = 3; ζ_A(-1) = 1 + S_1(1) = 1
    assert_eq!(json(&["zeta", "--j", "2"])["value"], Value::Array(vec![]));
    assert_eq!(json(&["zeta", "--j", "1"])["value"], Value::from(vec![1]));
    let v = json(&["zeta", "--x=-2", "--y=-2", "--target", "6"]);
    assert_eq!(v["zeta"]["value"]["coeffs"], Value::Array(vec![]));
    let v = json(&["zeta", "--x", "1", "--y", "1", "--euler", "3", "--target", "6"]);
    assert_eq!(v["interpolation"]["agree"], true);
}

#[test]
fn exit_codes() {
    // θ^3 + θ + 1 = (θ + 2)(θ^2 + θ + 2) over F_3
    let o = carlitz(&["--prime", "1,1,0,1", "verify", "--suite", "interp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not irreducible"));

    assert_eq!(carlitz(&["lfunction", "--i", "5", "--y", "0"]).status.code(), Some(2));
    assert_eq!(carlitz(&["--prec", "10", "--ydigits", "1", "lfunction", "--i", "1", "--y", "0"]).status.code(), Some(2));
    assert_eq!(carlitz(&["stickelberger", "--i", "0", "--sharp"]).status.code(), Some(2));
    assert_eq!(carlitz(&["--p", "4", "bernoulli", "--jmax", "1"]).status.code(), Some(2));

    // m_π(18) = 1 for q = 5, π = θ^2 + 2, so precision 1 cannot resolve it
    let o = carlitz(&["--p", "5", "--prime", "2,0,1", "invariants", "--i", "18", "--m-init", "1", "--m-cap", "1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = carlitz(&["--p", "5", "--prime", "2,0,1", "invariants", "--i", "18"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_report_round_trips() {
    let text = ok(&["--json", "verify", "--suite", "kernel"]);
    let r: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!((r.suite.as_str(), r.failures.len()), ("kernel", 0));
    assert!(r.cases > 0);
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    let reparsed: Value = serde_json::from_str(&again).unwrap();
    assert_eq!(reparsed, serde_json::from_str::<Value>(&text).unwrap());
}

#[test]
fn output_independent_of_thread_count() {
    for args in [
        vec!["verify", "--suite", "stick"],
        vec!["--p", "5", "invariants"],
        vec!["--level", "1", "stickelberger", "--i", "1"],
    ] {
        let run = |t: &str| {
            let mut a = vec!["--json", "--threads", t];
            a.extend(args.iter().copied());
            ok(&a)
        };
        let one = run("1");
        assert_eq!(one, run("3"), "{args:?}");
        assert_eq!(one, run("1"), "{args:?}");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("carlitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.toml");
    std::fs::write(&path, "p = 5\nprime = \"0,1\"\nformat = \"csv\"\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["--config", p, "bernoulli", "--jmax", "0"]);
    assert_eq!(v["config"]["p"], 5);
    let csv = ok(&["--config", p, "--p", "3", "bernoulli", "--jmax", "0"]);
    assert_eq!(csv, "j,beta,deg,v\n0,1,0,0\n");

    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(carlitz(&["--config", p, "bernoulli", "--jmax", "0"]).status.code(), Some(2));
}
