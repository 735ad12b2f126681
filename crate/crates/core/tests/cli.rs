use std::process::{Command, Output};

fn wadge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wadge")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn invariants_of_baire_as_json() {
    let out = wadge(&["--json", "invariants", "N"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!({"alpha": "T", "theta": "T"}));
}

#[test]
fn simple_queries() {
    assert_eq!(stdout(&wadge(&["theta", "1"])), "2\n");
    assert_eq!(stdout(&wadge(&["alpha", "Y(w)"])), "w+1\n");
    assert_eq!(stdout(&wadge(&["same", "N", "w*C"])), "true\n");
    assert_eq!(stdout(&wadge(&["same", "Y(w)", "Z(w)"])), "false\n");
    assert_eq!(stdout(&wadge(&["realize", "w+1", "T"])), "sum(C, Y(w))\n");
}

#[test]
fn level_json_schema() {
    let out = wadge(&["level", "C", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["level"], "3");
    assert_eq!(v["kind"], "nsd");
    assert_eq!(v["label"]["type"], "DifferenceClassPair");
    assert_eq!(v["label"]["index"], "1");
}

#[test]
fn hierarchy_text_and_json() {
    let text = stdout(&wadge(&["hierarchy", "K(2)", "4"]));
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains("nsd-pair") && lines[0].contains("BottomPair"));
    assert!(lines[1].contains("sd") && lines[1].contains("ClopenDegree"));
    let out = wadge(&["hierarchy", "N", "w+2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let omega = v["levels"].as_array().unwrap().iter().find(|d| d["level"] == "w").unwrap();
    assert_eq!(omega["kind"], "sd");
    assert!(stdout(&wadge(&["hierarchy", "N", "w+2"])).contains("uncountable cofinality"));
}

#[test]
fn reductions_and_witnesses() {
    let out = wadge(&["--json", "verify-reduction", "w", "--depth", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert!(v["checked"].as_u64().unwrap() > 0);
    let out = wadge(&["diff-witness", "K(4)", "3"]);
    assert!(stdout(&out).starts_with("beta = 3\n"));
    assert!(wadge(&["oracle-check", "--count", "50", "--seed", "9"]).status.success());
}

#[test]
fn exit_codes_and_single_line_diagnostics() {
    for (args, code) in [
        (vec!["theta", "K(w"], 2),
        (vec!["nonsense"], 2),
        (vec!["level", "C"], 2),
        (vec!["realize", "w", "T"], 1),
        (vec!["level", "1", "5"], 1),
        (vec!["alpha", "attach(C)"], 2),
    ] {
        let out = wadge(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert_eq!(stderr(&out).lines().count(), 1, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "hierarchy", "sum(C, Z(w^2))", "w^2+3"];
    assert_eq!(wadge(&args).stdout, wadge(&args).stdout);
    let args = ["oracle-check", "--seed", "4", "--count", "30"];
    assert_eq!(wadge(&args).stdout, wadge(&args).stdout);
}
