use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn permpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permpoly"))
        .args(args)
        .env_remove("PERMPOLY_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn field_info() {
    let out = permpoly(&["field", "info", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 4);
    assert_eq!(v["modulus"], "13");
    assert_eq!(v["gamma"], "2");
    assert_eq!(v["factors"], serde_json::json!([3, 5]));

    let out = permpoly(&["field", "info", "--n", "4", "--modulus", "1f"]);
    assert_eq!(json(&out)["modulus"], "1f");
    assert_eq!(
        permpoly(&["field", "info", "--n", "4", "--modulus", "11"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_methods() {
    let out = permpoly(&["check", "--n", "2", "--poly", "3:1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_pp"], false);
    assert_eq!(v["witness"]["kind"], "collision");

    for method in ["brute", "hermite"] {
        let out = permpoly(&[
            "check",
            "--n",
            "3",
            "--poly",
            "5:1,3:1,1:1",
            "--method",
            method,
        ]);
        assert_eq!(json(&out)["is_pp"], true, "{method}");
    }

    // x (x^9 + 1) over F_64 vanishes at x = 1
    let out = permpoly(&[
        "check",
        "--n",
        "6",
        "--method",
        "wanlidl",
        "--d",
        "7",
        "--r",
        "1",
        "--inner-poly",
        "1:1,0:1",
    ]);
    let v = json(&out);
    assert_eq!(v["is_pp"], false);
    assert_eq!(v["witness"]["kind"], "condition_b");
}

#[test]
fn check_rejects_bad_input() {
    assert_eq!(
        permpoly(&["check", "--n", "29", "--poly", "1:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        permpoly(&["check", "--n", "3", "--poly", "1:zz"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        permpoly(&["check", "--n", "3", "--method", "wanlidl", "--poly", "1:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        permpoly(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn trinomial_check_flags_literal_gap() {
    let args = [
        "trinomial",
        "check",
        "--s",
        "4",
        "--t",
        "3",
        "--alpha",
        "1",
        "--oracle",
    ];
    let out = permpoly(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["decision"]["is_pp"], true);
    assert_eq!(v["oracle"]["is_pp"], true);

    let out = permpoly(&[&args[..], &["--mode", "literal"]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["decision"]["failed_condition"], "s-range");
}

#[test]
fn binomial_check_reports_reduction() {
    let out = permpoly(&[
        "binomial", "check", "--s", "1", "--t", "3", "--a", "3", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 6);
    assert_eq!(v["decision"]["is_pp"], true);
    assert_eq!(v["agree"], true);
    assert!(v["reduced"]["trinomial"]["alpha"].is_string());

    let out = permpoly(&["binomial", "check", "--s", "1", "--t", "3", "--a", "1"]);
    let v = json(&out);
    assert_eq!(v["decision"]["is_pp"], false);
    assert!(v["reduced"].is_null());

    assert_eq!(
        permpoly(&["binomial", "check", "--s", "1", "--t", "3", "--a", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_is_stable_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let path = dir.path().join(format!("w{workers}.csv"));
        let out = permpoly(&[
            "binomial",
            "enumerate",
            "--s",
            "1",
            "--t",
            "5",
            "--oracle",
            "brute",
            "--format",
            "csv",
            "--no-timing",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        outputs.push(fs::read_to_string(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0].lines().count(), 1 + 62);
    assert!(outputs[0].starts_with("index,a,s,t,classifier:canonical,oracle:brute,agree,detail\n"));
}

#[test]
fn workers_env_fallback() {
    let out = Command::new(env!("CARGO_BIN_EXE_permpoly"))
        .args([
            "binomial",
            "enumerate",
            "--s",
            "1",
            "--t",
            "2",
            "--no-timing",
        ])
        .env("PERMPOLY_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["pp_count"], 0);
    assert_eq!(v["summary"]["expected_pp_count"], 0);
}

#[test]
fn verify_and_audit() {
    let out = permpoly(&[
        "verify",
        "--suite",
        "reduction",
        "--max-n",
        "8",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["disagreements"], 0);

    let out = permpoly(&[
        "verify", "--suite", "trith", "--max-t", "5", "--cases", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "verify-trith");
    assert_eq!(v["summary"]["pp_count"], 5);

    let out = permpoly(&["audit", "--s-max", "4", "--t-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let cases = json(&out)["cases"].as_array().unwrap().clone();
    assert!(cases
        .iter()
        .any(|c| c["input"]["kind"] == "binomial" && c["input"]["s"] == 3 && c["input"]["t"] == 1));
}
