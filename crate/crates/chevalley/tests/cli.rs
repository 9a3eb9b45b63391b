use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevalley")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn roots_of_g2() {
    let out = run(&["roots", "--type", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["roots"].as_array().unwrap().len(), 12);
    assert_eq!(v["weyl_order"], 12);
    let short = v["roots"].as_array().unwrap().iter().filter(|r| r["length"] == "short").count();
    assert_eq!(short, 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rng seed: "));
}

#[test]
fn table_of_b2_has_two_term_commutator() {
    let v = json(&run(&["table", "--type", "B2"]));
    let entries = v["commutators"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["terms"].as_array().unwrap().len() == 2));
    for c in v["structure_constants"].as_array().unwrap() {
        let n = c["n"].as_i64().unwrap();
        assert!(n != 0 && n.abs() <= 2);
    }
}

#[test]
fn eval_reports_centrality() {
    let v = json(&run(&["eval", "--type", "A2", "--ring", "gf:3", "--in", "[]"]));
    assert_eq!(v["central"], true);
    assert_eq!(v["element"]["dim"], 8);
    let v = json(&run(&["eval", "--type", "A2", "--ring", "gf:3", "--in", r#"[{"g":"x","root":[1,0],"t":"1"}]"#]));
    assert_eq!(v["central"], false);
    assert_eq!(v["in_big_cell"], true);
}

#[test]
fn decompose_round_trips() {
    let word = r#"[{"g":"x","root":[-1,0],"t":"2"},{"g":"w","root":[0,1],"eps":"3"},{"g":"x","root":[1,1],"t":"4"}]"#;
    for o in ["ubw", "uminus-bw"] {
        let out = run(&["decompose", "--type", "A2", "--ring", "gf:5", "--in", word, "--orientation", o]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["round_trip"], true);
    }
    // decomposition needs a field
    let out = run(&["decompose", "--type", "A2", "--ring", "mod:4", "--in", word]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn extract_over_field_and_radical() {
    let out = run(&["extract", "--type", "B2", "--ring", "gf:3", "--in", r#"[{"g":"h","root":[1,0],"eps":"2"},{"g":"x","root":[0,1],"t":"1"}]"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certificate_checked"], true);
    assert_eq!(v["route"], "field");

    let v = json(&run(&["extract", "--type", "A2", "--ring", "mod:9", "--in", r#"[{"g":"x","root":[1,0],"t":"3"}]"#]));
    assert_eq!(v["root"], serde_json::json!([1, 0]));
    assert_eq!(v["t"], "3");
    assert_eq!(v["certificate"]["tag"], "seed");
}

#[test]
fn central_input_is_a_failure_not_a_usage_error() {
    let out = run(&["extract", "--type", "A2", "--ring", "gf:2", "--in", "[]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["roots", "--type", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--type", "A2", "--ring", "gf:6", "--in", "[]"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--type", "A2", "--ring", "gf:5", "--in", r#"[{"g":"x","root":[2,0],"t":"1"}]"#]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["generic-check", "--type", "G2", "--alpha", "1,0"]).status.code(), Some(2));
}

#[test]
fn sandwich_and_level_over_z4() {
    let seed = r#"[{"g":"x","root":[1,0],"t":"2"}]"#;
    let v = json(&run(&["sandwich", "--type", "A2", "--ring", "mod:4", "--seed", seed]));
    assert_eq!(v["ideal"], "(2)");
    assert_eq!(v["holds"], true);
    assert_eq!(v["competing"].as_array().unwrap().len(), 0);
    let v = json(&run(&["level", "--type", "A2", "--ring", "mod:4", "--seed", seed]));
    assert_eq!(v["ideal"], "(2)");
    assert_eq!(v["root_independent"], true);
}

#[test]
fn level_checks_the_condition() {
    let out = run(&["level", "--type", "B2", "--ring", "mod:4", "--seed", "[]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generic_check_fixed_root_case() {
    let out = run(&["generic-check", "--type", "A2", "--w", "", "--alpha", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["case"], "fixed-root");
    assert_eq!(v["passed"], true);
    assert!(v["factorization_pit"]["points"].as_u64().unwrap() >= 20);
    assert_eq!(v["rings"].as_array().unwrap().len(), 3);
}

#[test]
fn reports_are_deterministic() {
    let args = ["generic-check", "--type", "A2", "--w", "1,2", "--alpha", "1,0", "--rng-seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify-all", "--quick", "--only", "2,4"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_and_quick_suite() {
    let path = std::env::temp_dir().join(format!("chevalley-verify-{}.json", std::process::id()));
    let out = run(&["verify-all", "--quick", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
}

fn schema(name: &str) -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/").to_string() + name;
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn has_required(report: &Value, schema: &Value) {
    for k in schema["required"].as_array().unwrap() {
        assert!(report.get(k.as_str().unwrap()).is_some(), "missing {k}");
    }
}

#[test]
fn reports_carry_schema_fields() {
    let v = json(&run(&["extract", "--type", "A2", "--ring", "gf:3", "--in", r#"[{"g":"x","root":[1,0],"t":"1"}]"#]));
    has_required(&v, &schema("extraction_report.v1.json"));
    has_required(&v["ring"], &serde_json::json!({ "required": ["kind", "p"] }));
    let v = json(&run(&["sandwich", "--type", "A2", "--ring", "mod:4", "--seed", "[]"]));
    has_required(&v, &schema("sandwich_report.v1.json"));
    let v = json(&run(&["eval", "--type", "A2", "--ring", "gf:3", "--in", "[]"]));
    has_required(&v["element"], &schema("group_element.v1.json"));
    let v = json(&run(&["verify-all", "--quick", "--only", "2"]));
    has_required(&v, &schema("verify_report.v1.json"));
    has_required(&v["criteria"][0], &schema("verify_report.v1.json")["properties"]["criteria"]["items"]);
}
