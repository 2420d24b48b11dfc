use std::process::{Command, Output};

use serde_json::Value;

fn charvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar")).args(args).env_remove("CHARVAR_SEED").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dim_counts_laplace_degree_four() {
    let out = charvar(&["dim", "--d", "3", "--n", "2", "--m", "4"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["predicted"], 9);
    assert_eq!(v["computed"], 9);
    assert_eq!(v["seed"], 0);
}

#[test]
fn dim_with_explicit_symbol() {
    let symbol = r#"{"nvars":3,"degree":2,"field":"exact","terms":[{"exps":[2,0,0],"re":"1"},{"exps":[0,2,0],"re":"1"},{"exps":[0,0,2],"re":"1"}]}"#;
    let v = json_of(&charvar(&["dim", "--d", "3", "--n", "2", "--m", "3", "--symbol", symbol]));
    assert_eq!(v["computed"], 7);
}

#[test]
fn dixon_cubic_identity_holds() {
    let out = charvar(&["dixon", "--eval", "0.5", "--order", "40"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!(v["cubic_residual"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["u"], serde_json::json!([0.5, 0.0]));
}

#[test]
fn dixon_outside_validated_radius_is_a_usage_error() {
    let out = charvar(&["dixon", "--eval", "0.9", "--order", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("validated radius"));
}

#[test]
fn dixon_coefficients_are_exact() {
    let v = json_of(&charvar(&["dixon", "--coeffs", "12"]));
    assert_eq!(v["c_coeffs"][12], "25/13608");
    assert_eq!(v["s_coeffs"][4], "-1/6");
}

#[test]
fn represent_laplace_closed_form() {
    let out = charvar(&[
        "represent",
        "--preset",
        "laplace",
        "--profile",
        r#"{"kind":"poly_in_w","coeffs":[0,0,1]}"#,
        "--at",
        "1,2,3",
        "--check",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    let re = v["value"][0].as_f64().unwrap();
    assert!((re - 13.0 * std::f64::consts::PI).abs() <= 1e-9);
    assert!(v["residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["nodes"], 64);
}

#[test]
fn represent_check_failure_exits_one() {
    // Every quadrature sum is an exact solution, so force the failure with a
    // tolerance below rounding level.
    let cfg = std::env::temp_dir().join(format!("charvar-strict-{}.json", std::process::id()));
    std::fs::write(&cfg, r#"{"tolerances": {"residual": 1e-300}}"#).unwrap();
    let out = charvar(&[
        "--config",
        cfg.to_str().unwrap(),
        "represent",
        "--preset",
        "wave",
        "--profile",
        r#"{"kind":"series","coeffs":[1,1,1,1,1,1,1]}"#,
        "--at",
        "0.3,0.2,0.1,0.4",
        "--check",
    ]);
    std::fs::remove_file(&cfg).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["residual"].as_f64().unwrap() > 1e-300);
}

#[test]
fn usage_errors_exit_two() {
    let missing = charvar(&["represent", "--profile", r#"{"kind":"poly_in_w","coeffs":[1]}"#, "--at", "1,2,3"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = charvar(&["chart", "--preset", "klein_quartic"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown preset"));
    let bad_json = charvar(&["dim", "--d", "3", "--n", "2", "--m", "1", "--symbol", "{nope"]);
    assert_eq!(bad_json.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_json.stderr).contains("malformed polynomial JSON"));
    let wrong_arity = charvar(&["john", "--at", "1,2,3"]);
    assert_eq!(wrong_arity.status.code(), Some(2));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "7", "cayley-bacharach", "--instance", "chasles"];
    let a = charvar(&args);
    let b = charvar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["seed"], 7);
    let exact = ["serret", "--points", "1,0,0;0,1,0;0,0,1;1,1,1;1,2,4;1,3,9", "--r", "2"];
    assert_eq!(charvar(&exact).stdout, charvar(&exact).stdout);
}

#[test]
fn seed_from_environment_and_config() {
    let out = Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(["chart", "--preset", "laplace", "--samples", "1"])
        .env("CHARVAR_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], 11);
    let dir = std::env::temp_dir().join(format!("charvar-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    std::fs::write(&cfg, r#"{"seed": 5}"#).unwrap();
    let from_file = json_of(&charvar(&["--config", cfg.to_str().unwrap(), "chart", "--preset", "laplace", "--samples", "1"]));
    assert_eq!(from_file["seed"], 5);
    let flag_wins =
        json_of(&charvar(&["--config", cfg.to_str().unwrap(), "--seed", "3", "chart", "--preset", "laplace", "--samples", "1"]));
    assert_eq!(flag_wins["seed"], 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("charvar-bott-{}.json", std::process::id()));
    let out = charvar(&["bott", "--n", "2", "--k", "-5", "--q", "2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dimension"], 6);
    std::fs::remove_file(&path).ok();
}

#[test]
fn serret_on_a_conic() {
    let v = json_of(&charvar(&["serret", "--points", "1,0,0;1,1,1;1,2,4;1,3,9;1,-1,1;1,-2,4", "--r", "2"]));
    assert_eq!(v["field"], "exact");
    assert_eq!(v["nullspace_dim"], 1);
    assert_eq!(v["all_coeffs_nonzero"], true);
}

#[test]
fn collinear_instance_flags_exception() {
    let v = json_of(&charvar(&["cayley-bacharach", "--instance", "collinear"]));
    assert_eq!(v["status"], "exception_detected");
}

#[test]
fn john_check_passes() {
    let out = charvar(&["john", "--at", "0.2,-0.1,0.3,0.5", "--check"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json_of(&out)["error"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn chart_of_generic_plane_curve() {
    let symbol = r#"{"nvars":3,"degree":3,"field":"exact","terms":[{"exps":[3,0,0],"re":"1"},{"exps":[0,3,0],"re":"1"},{"exps":[0,0,3],"re":"1"},{"exps":[1,1,1],"re":"2"}]}"#;
    let out = charvar(&["chart", "--symbol", symbol, "--samples", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for s in json_of(&out)["samples"].as_array().unwrap() {
        assert!(s["residual"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn basis_for_preset() {
    let v = json_of(&charvar(&["basis", "--preset", "fermat_cubic", "--m", "3"]));
    assert_eq!(v["chart"], "fermat_cubic");
    assert!(v["max_kernel_residual"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn afbg_decomposes() {
    let l = r#"{"nvars":2,"degree":2,"field":"exact","terms":[{"exps":[2,0],"re":"3"},{"exps":[0,2],"re":"-1"}]}"#;
    let f = r#"{"nvars":2,"degree":1,"field":"exact","terms":[{"exps":[1,0],"re":"1"}]}"#;
    let g = r#"{"nvars":2,"degree":1,"field":"exact","terms":[{"exps":[0,1],"re":"1"}]}"#;
    let out = charvar(&["afbg", "--l", l, "--f", f, "--g", g]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn selftest_fault_injection_fails_dixon() {
    let out = charvar(&["selftest", "--only", "5", "--inject-fault", "dixon"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("criterion  5 FAIL"));
    assert!(stderr.contains("cubic identity"));
    let clean = charvar(&["selftest", "--only", "5,11"]);
    assert!(clean.status.success());
}
