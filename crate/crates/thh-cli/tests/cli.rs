use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_thh-engine"));
    c.env_remove("THH_ENGINE_MAX_DEGREE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn validate(schema: &str, value: &Value) {
    let path = root().join("docs/schemas/v1").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{}: {errors:?}", path.display());
}

#[test]
fn classify_prints_the_documented_object() {
    let o = run(&["classify", "--q", "7", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"r":4,"v":2,"case":2}"#);
    validate("classify.json", &json(&o));
}

#[test]
fn classify_text_and_csv_carry_the_same_numbers() {
    let text = stdout(&run(&["classify", "--q", "49", "--output", "text"]));
    assert_eq!(text.trim(), "r=2 v=2 case=3");
    let csv = stdout(&run(&["classify", "--q", "49", "--output", "csv"]));
    assert_eq!(csv.trim(), "r,v,case\n2,2,3");
}

#[test]
fn primitives_scenario_passes() {
    let o = run(&["scenario", "--id", "primitives-2p2-1", "--q", "2", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    validate("report.json", &v);
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["pass"] == Value::Bool(true)));
}

/// E(x, λ1, λ2) ⊗ P(μ2) ⊗ Γ(γ1') at p = 5 has generators in degrees
/// 7, 9, 49, 50 and 8, counted here by brute force.
fn case_two_dims(top: usize) -> Vec<usize> {
    let mut dims = vec![0; top + 1];
    for x in 0..=1 {
        for l1 in 0..=1 {
            for l2 in 0..=1 {
                for mu in 0..=top / 50 {
                    for g in 0..=top / 8 {
                        let d = 7 * x + 9 * l1 + 49 * l2 + 50 * mu + 8 * g;
                        if d <= top {
                            dims[d] += 1;
                        }
                    }
                }
            }
        }
    }
    dims
}

#[test]
fn poincare_of_the_case_two_answer() {
    let o = run(&["poincare", "--preset", "v1-thh-case2", "--p", "5", "--max-degree", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate("presentation.json", &v);
    let dims: Vec<usize> = serde_json::from_value(v["dims"].clone()).unwrap();
    assert_eq!(dims, case_two_dims(20));
    let text = stdout(&run(&["poincare", "--preset", "v1-thh-case2", "--max-degree", "20", "--output", "text"]));
    let line = text.lines().find(|l| l.starts_with("dims")).unwrap();
    let from_text: Vec<usize> = line.split(':').nth(1).unwrap().split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert_eq!(from_text, dims);
}

#[test]
fn environment_sets_the_default_bound_and_the_flag_wins() {
    let o = bin().args(["poincare", "--preset", "v1-thh-case2"]).env("THH_ENGINE_MAX_DEGREE", "12").output().unwrap();
    assert_eq!(json(&o)["dims"].as_array().unwrap().len(), 13);
    let o = bin()
        .args(["poincare", "--preset", "v1-thh-case2", "--max-degree", "5"])
        .env("THH_ENGINE_MAX_DEGREE", "12")
        .output()
        .unwrap();
    assert_eq!(json(&o)["dims"].as_array().unwrap().len(), 6);
    let o = run(&["poincare", "--preset", "v1-thh-case2"]);
    assert_eq!(json(&o)["dims"].as_array().unwrap().len(), 61);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--q", "7", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["scenario", "--id", "no-such-thing", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["scenario", "--id", "v0-thh-case2", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["poincare"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--q", "7", "--output", "yaml"]).status.code(), Some(2));
    let o = run(&["classify", "--q", "6"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("prime power"));
}

#[test]
fn an_ill_defined_differential_exits_with_one() {
    let o = run(&["page", &data("ill-defined.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not well defined"));
}

#[test]
fn tor_from_an_input_file_by_both_methods() {
    let f = data("exterior.json");
    let a = json(&run(&["tor", "--input-file", &f, "--max-degree", "15"]));
    let b = json(&run(&["tor", "--input-file", &f, "--max-degree", "15", "--method", "bar"]));
    validate("bigraded.json", &a);
    assert_eq!(a["dims"], b["dims"]);
    // Γ(σx) with |σx| = (1, 3).
    let want: Vec<Value> = (0..=5).map(|n| serde_json::json!({"s": n, "t": 3 * n, "dim": 1})).collect();
    assert_eq!(a["dims"], Value::Array(want));
}

#[test]
fn tor_text_and_json_agree() {
    let args = ["tor", "--preset", "v0-k", "--q", "49", "--max-degree", "20"];
    let v = json(&run(&args));
    let text = stdout(&run(&[&args[..], &["--output", "text"]].concat()));
    let from_text: Vec<(u64, u64, u64)> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix("(s="))
        .map(|l| {
            let nums: Vec<u64> =
                l.split(|c: char| !c.is_ascii_digit()).filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect();
            (nums[0], nums[1], nums[2])
        })
        .collect();
    let from_json: Vec<(u64, u64, u64)> = v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["s"].as_u64().unwrap(), d["t"].as_u64().unwrap(), d["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(from_text, from_json);
    let csv = stdout(&run(&[&args[..], &["--output", "csv"]].concat()));
    assert_eq!(csv.lines().count(), from_json.len() + 1);
}

#[test]
fn hochschild_homology_of_an_exterior_algebra() {
    let v = json(&run(&["hh", "--input-file", &data("exterior.json"), "--max-degree", "12"]));
    validate("bigraded.json", &v);
    // HH(E(x)) = E(x) ⊗ Γ(σx): totals 1 in degrees 0, 3, 4, 7, 8, 11, 12.
    let totals: Vec<u64> = v["totals"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let want: Vec<u64> = (0..=12).map(|n| u64::from(n % 4 == 0 || n % 4 == 3)).collect();
    assert_eq!(totals, want);
}

#[test]
fn explicit_case_four_resolution() {
    let o = run(&["resolution", "--explicit", "--q", "4", "--max-degree", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate("resolution.json", &v);
    assert_eq!(v["square_zero"], Value::Bool(true));
    assert_eq!(v["exactness"]["failures"], serde_json::json!([]));
    assert_eq!(run(&["resolution", "--explicit", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn minimal_resolution_of_a_preset() {
    let v = json(&run(&["resolution", "--preset", "v1-k", "--q", "7", "--max-degree", "20"]));
    validate("resolution.json", &v);
    assert_eq!(v["minimal"], Value::Bool(true));
}

#[test]
fn primitives_of_the_case_one_comodule() {
    let o = run(&["primitives", "--max-degree", "49"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate("primitives.json", &v);
    assert_eq!(v["dims"][49], 0);
    assert_eq!(v["dims"][40], 1);
    let a = json(&run(&["primitives", "--comodule", "dual-steenrod", "--max-degree", "30"]));
    let dims: Vec<u64> = serde_json::from_value(a["dims"].clone()).unwrap();
    assert_eq!(dims[0], 1);
    assert!(dims[1..].iter().all(|&d| d == 0));
    let hk = run(&["primitives", "--comodule", "hk", "--q", "7", "--a", "3", "--max-degree", "30"]);
    validate("primitives.json", &json(&hk));
    assert_eq!(run(&["primitives", "--comodule", "hk", "--q", "4"]).status.code(), Some(2));
}

#[test]
fn page_runs_a_described_spectral_sequence() {
    let file = root().join("docs/examples/page-v0-thh-case1.json").display().to_string();
    let o = run(&["page", &file, "--q", "2", "--max-degree", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate("page.json", &v);
    assert_eq!(v["final_page"], 11);
    assert_eq!(v["euler_consistent"], Value::Bool(true));
    // Compare with the case-1 answer through the preset command.
    let want = json(&run(&["poincare", "--preset", "v0-thh", "--q", "2", "--max-degree", "40"]));
    assert_eq!(v["totals"], want["dims"]);
    let input: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    validate("page-input.json", &input);
    validate("page-input.json", &serde_json::from_str(&std::fs::read_to_string(data("ill-defined.json")).unwrap()).unwrap());
}

#[test]
fn listings_validate() {
    for args in [&["poincare", "--list"][..], &["scenario"][..]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0));
        validate("listing.json", &json(&o));
    }
}

#[test]
fn suite_runs_every_scenario_and_passes() {
    let o = run(&["suite", "--max-degree", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    validate("suite.json", &v);
    assert_eq!(v["failed"], 0);
    let reports = v["reports"].as_array().unwrap();
    let ids: std::collections::BTreeSet<&str> = reports.iter().map(|r| r["scenario"].as_str().unwrap()).collect();
    let listed = json(&run(&["scenario"]));
    for s in listed.as_array().unwrap() {
        assert!(ids.contains(s["id"].as_str().unwrap()), "{} never ran", s["id"]);
    }
    // Round trip through the library type.
    for r in reports {
        let typed: thh_engine::Report = serde_json::from_value(r.clone()).unwrap();
        assert_eq!(&serde_json::to_value(&typed).unwrap(), r);
    }
}

#[test]
fn scenario_text_and_json_show_the_same_claims() {
    let args = ["scenario", "--id", "v0-thh-case1", "--q", "2", "--max-degree", "40"];
    let v = json(&run(&args));
    let text = stdout(&run(&[&args[..], &["--output", "text"]].concat()));
    for c in v["claims"].as_array().unwrap() {
        assert!(text.contains(&format!("expected {}", c["expected"])));
        assert!(text.contains(&format!("computed {}", c["computed"])));
    }
    let csv = stdout(&run(&[&args[..], &["--output", "csv"]].concat()));
    assert_eq!(csv.lines().next().unwrap(), thh_engine::report::CSV_HEADER);
}
