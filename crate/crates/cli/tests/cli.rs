use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polypade")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}\n{}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn anchor_approximant() {
    let (code, v) = json(&["pade", "build", "-n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["p"], serde_json::json!(["1", "-2"]));
    assert_eq!(v["q"][0]["q"], serde_json::json!(["2"]));
    assert_eq!(v["remainders"][0]["ord"], 2);
}

#[test]
fn order_and_closed_forms_two_shifts() {
    let cfg = r#"{"alphas":["0","1/3"],"weights":[1,1]}"#;
    for sub in ["verify-order", "explicit-check"] {
        let (code, v) = json(&["pade", sub, "--config", cfg, "--nmax", "3"]);
        assert_eq!(code, 0, "{sub}");
        assert_eq!(v["failures"].as_array().unwrap().len(), 0);
        assert_eq!(v["systems"], 12);
    }
}

#[test]
fn determinants() {
    let (code, v) = json(&["det", "theta", "--nmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["theta"], "-1/6");
    let (code, v) = json(&["det", "matp", "--nmax", "2"]);
    assert_eq!(code, 0);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["agree"] == true));
    let (code, v) = json(&["det", "conjecture", "-m", "2", "--max-entry", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"].as_array().unwrap().len(), 8);
}

#[test]
fn recurrences() {
    let (code, v) = json(&["recur", "verify", "-z", "1/4"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["firstFailure"].is_null()));
    let (code, v) = json(&["recur", "find", "--max-order", "3", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["found"]["order"], 2);
    assert!(v["knownRatio"].is_string());
    let (code, v) = json(&["recur", "charpoly", "--max-order", "3", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["charPoly"], serde_json::json!(["-1", "0", "1"]));
    assert_eq!(v["matchesTabulated"], true);
    // No known recurrence for this configuration.
    assert_eq!(run(&["recur", "verify", "--config", r#"{"alphas":["0"],"weights":[3]}"#]).status.code(), Some(2));
}

#[test]
fn padic_values() {
    let (code, v) = json(&["padic", "omega", "-p", "5", "-x", "1/5"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], "1/5");
    let (code, v) = json(&["padic", "zeta", "-p", "5", "-x", "1/5", "-s", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["polygammaCheck"]["agree"], true);
    assert_eq!(run(&["padic", "zeta", "-p", "5", "-x", "1/5", "-s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["padic", "zeta", "-p", "5", "-x", "1/5", "-s", "-1"]).status.code(), Some(0));
    let (code, v) = json(&["padic", "rseries", "-p", "7", "-x", "2/7", "-s", "2", "--precision", "6"]);
    assert_eq!(code, 0);
    assert!(v["result"]["value"]["absPrecision"].as_i64().unwrap() >= 6);
    let (code, v) = json(&["padic", "slope", "-p", "5", "-x", "1/5", "--nmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn main_criterion_exit_codes() {
    let o = run(&["criterion", "main", "-p", "5", "-x", "1/5", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: holds"));
    let o = run(&["criterion", "main", "-p", "3", "-x", "1/3", "--nmax", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: fails"));
    assert_eq!(run(&["criterion", "main", "-p", "5", "-x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["criterion", "main", "-p", "4", "-x", "1/4"]).status.code(), Some(2));
}

#[test]
fn table_and_two_shift() {
    let (code, v) = json(&["criterion", "table", "--m-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["newThreshold"], "5");
    assert_eq!(v["rows"][1]["newThreshold"], "144");
    assert_eq!(v["rows"][0]["classicalThreshold"], "874");
    assert_eq!(v["rows"][1]["classicalThreshold"], "4148779");
    let (code, v) = json(&["criterion", "two-shift", "-p", "1000003", "-a", "10", "-b", "1", "-m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(run(&["criterion", "two-shift", "-p", "5", "-a", "6", "-b", "1", "-m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["criterion", "two-shift", "-p", "2", "-a", "9", "-b", "1", "-m", "1"]).status.code(), Some(2));
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(run(&["pade", "build", "-n", "1", "--config", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["pade", "build", "-n", "1", "--ell", "5"]).status.code(), Some(2));
    assert_eq!(run(&["padic", "omega", "-p", "5", "-x", "1/0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}
