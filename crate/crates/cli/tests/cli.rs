use std::process::{Command, Output};

use serde_json::Value;

fn aybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aybe"))
        .args(args)
        .env_remove("YBE_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = aybe(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), v)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn has_coeff(t: &Value, entry: Value) -> bool {
    t["coeffs"].as_array().expect("coeffs").contains(&entry)
}

#[test]
fn construct_2_1_has_the_e21_e21_coefficient() {
    let (code, v) = json(&["construct", "--n", "2", "--d", "1", "--v", "1", "--y1", "0", "--y2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 2);
    assert!(has_coeff(&v, serde_json::json!([2, 1, 2, 1, "-1"])));
    assert!(has_coeff(&v, serde_json::json!([1, 1, 1, 1, "3/2"])));
}

#[test]
fn construct_5_2_is_nondegenerate() {
    let (code, v) = json(&["construct", "--n", "5", "--d", "2", "--v", "1/2", "--y1", "-1", "--y2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["nondegenerate"], true);
}

#[test]
fn preconditions_exit_with_usage_code() {
    let out = aybe(&["construct", "--n", "4", "--d", "2", "--v", "1", "--y1", "0", "--y2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n and d must be coprime"));
    let out = aybe(&["construct", "--n", "2", "--d", "1", "--v", "0", "--y1", "0", "--y2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("v≠0"));
    let out = aybe(&["construct", "--n", "2", "--d", "1", "--v", "1", "--y1", "3/2", "--y2", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("y₁≠y₂"));
    let out = aybe(&["construct", "--n", "3", "--d", "3", "--v", "1", "--y1", "0", "--y2", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decimals_are_rejected() {
    let out = aybe(&["construct", "--n", "2", "--d", "1", "--v", "0.5", "--y1", "0", "--y2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a rational literal"));
}

#[test]
fn negative_literals_parse() {
    let (code, _) = json(&["construct", "--n", "2", "--d", "1", "--v", "-2/3", "--y1", "-1", "--y2", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_aybe_for_3_2() {
    let (code, v) = json(&["verify", "--n", "3", "--d", "2", "--law", "aybe", "--samples", "25", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution"], "r(3,2)");
    assert_eq!(v["d"], 2);
    assert_eq!(v["seed"], 7);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 25);
    assert!(checks.iter().all(|c| c["law"] == "aybe" && c["residual_zero"] == true));
    assert_eq!(checks[0]["point"].as_object().unwrap().len(), 5);
}

#[test]
fn verify_qybe_at_fixed_v() {
    let (code, v) = json(&["verify", "--n", "2", "--d", "1", "--law", "qybe", "--v0", "1", "--samples", "10", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_conditions_for_yang() {
    let (code, v) = json(&["verify", "--builtin", "yang2", "--law", "conds", "--v0", "1", "--samples", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["symmetry_dim"], 3);
    assert_eq!(v["conditions"]["a"], true);
    assert_eq!(v["conditions"]["b"], true);
    assert_eq!(v["pole_scalar"], "1/2");
}

#[test]
fn verify_conditions_for_3_1() {
    let (code, v) = json(&["verify", "--n", "3", "--d", "1", "--law", "conds", "--samples", "2", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["symmetry_dim"], 0);
    for k in ["a", "b", "c", "d"] {
        assert_eq!(v["conditions"][k], true);
    }
    // prerequisites first: aybe and unitarity records precede any verdict
    let laws: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["law"].as_str().unwrap()).collect();
    assert!(laws.contains(&"aybe") && laws.contains(&"unitarity"));
}

#[test]
fn every_law_holds_for_2_1() {
    let (code, v) = json(&[
        "verify",
        "--n",
        "2",
        "--d",
        "1",
        "--law",
        "aybe,dual,unitarity,nondeg,cybe,qybe,r0r1,residue",
        "--samples",
        "3",
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 24);
    assert_eq!(v["passed"], true);
}

#[test]
fn failing_law_exits_1_with_residual() {
    let (code, v) = json(&["verify", "--builtin", "r31-printed", "--law", "unitarity", "--samples", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    let residual = &v["failure"]["residual"];
    assert_eq!(v["failure"]["law"], "unitarity");
    let keys: Vec<&Value> = residual["coeffs"].as_array().unwrap().iter().collect();
    assert!(!keys.is_empty());
    assert!(keys.iter().all(|c| c[0] == 3 && c[1] == 1 && c[2] == 3 && c[3] == 2));
}

#[test]
fn expand_pole_scalars() {
    let (code, v) = json(&["expand", "--n", "2", "--d", "1", "--y1", "0", "--y2", "1", "--order", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["pole_scalar"], "1/2");
    assert_eq!(v["orders"][0]["k"], -1);
    let (_, v) = json(&["expand", "--n", "3", "--d", "1", "--y1", "2", "--y2", "-1/3"]);
    assert_eq!(v["pole_scalar"], "1/3");
}

#[test]
fn expand_past_the_degree_gives_empty_coefficients() {
    let (code, v) = json(&["expand", "--n", "2", "--d", "1", "--y1", "1", "--y2", "3", "--order", "8"]);
    assert_eq!(code, 0);
    let orders = v["orders"].as_array().unwrap();
    assert_eq!(orders.len(), 10);
    assert_eq!(orders[9]["k"], 8);
    assert_eq!(orders[9]["coeffs"], serde_json::json!([]));
}

#[test]
fn oracles_agree() {
    for which in ["r21", "r31", "c21", "c31"] {
        let (code, v) = json(&["oracle", "--which", which, "--samples", "10", "--seed", "3"]);
        assert_eq!(code, 0, "{which}");
        assert_eq!(v["equal"], true, "{which}");
        assert_eq!(v["points"].as_array().unwrap().len(), 10);
    }
}

#[test]
fn printed_r31_differs_in_one_coefficient() {
    let (code, v) = json(&["oracle", "--which", "r31", "--as-printed", "--samples", "4", "--seed", "3"]);
    assert_eq!(code, 1);
    for p in v["points"].as_array().unwrap() {
        if p["equal"] == false {
            let coeffs = p["difference"]["coeffs"].as_array().unwrap();
            assert_eq!(coeffs.len(), 1);
            assert_eq!(coeffs[0].as_array().unwrap()[..4], [3, 1, 3, 2]);
        }
    }
}

#[test]
fn jmatrix_schema() {
    let (code, v) = json(&["jmatrix", "--n", "5", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"n": 5, "split": 3, "ones": [[1, 2], [2, 3], [2, 4], [3, 5]]}));
}

#[test]
fn symmetry_dimensions() {
    let (_, v) = json(&["symmetries", "--builtin", "yang2", "--samples", "3"]);
    assert_eq!(v["symmetry_dim"], 3);
    let (_, v) = json(&["symmetries", "--n", "2", "--d", "1", "--samples", "3"]);
    assert_eq!(v["symmetry_dim"], 0);
}

#[test]
fn output_is_deterministic_and_seed_env_is_honoured() {
    let args = ["verify", "--n", "3", "--d", "1", "--law", "unitarity,residue", "--samples", "4", "--seed", "9"];
    let a = aybe(&args);
    let b = aybe(&args);
    assert_eq!(a.stdout, b.stdout);
    let via_env = Command::new(env!("CARGO_BIN_EXE_aybe"))
        .args(["verify", "--n", "3", "--d", "1", "--law", "unitarity,residue", "--samples", "4"])
        .env("YBE_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, via_env.stdout);
}

#[test]
fn text_output_is_aligned() {
    let out = aybe(&["construct", "--n", "2", "--d", "1", "--v", "1", "--y1", "0", "--y2", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let table: Vec<&str> = text.lines().skip(1).collect();
    let width = table[0].chars().count();
    assert!(table.iter().all(|l| l.chars().count() == width));
    assert!(table.contains(&"2  1  2  1     -1"));
}

#[test]
fn missing_source_is_a_usage_error() {
    let out = aybe(&["verify", "--law", "aybe"]);
    assert_eq!(out.status.code(), Some(2));
}
