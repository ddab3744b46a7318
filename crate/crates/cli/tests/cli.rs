use std::process::{Command, Output};

use serde_json::Value;

fn prudent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prudent")).args(args).output().expect("run prudent")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = prudent(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn counts(v: &Value) -> Vec<String> {
    v["counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

#[test]
fn count_routes_agree() {
    for class in ["one-sided", "two-sided", "three-sided", "triangular"] {
        let a = counts(&stdout_json(&["count", "-c", class, "-n", "9", "--route", "brute-force"]));
        for route in ["table", "iteration", "closed"] {
            let b = counts(&stdout_json(&["count", "-c", class, "-n", "9", "--route", route]));
            assert_eq!(a, b, "{class} {route}");
        }
    }
    let p = counts(&stdout_json(&["count", "-c", "prudent", "-n", "6", "--sequential"]));
    assert_eq!(p, ["1", "4", "12", "36", "100", "276", "748"]);
}

#[test]
fn big_counts_are_strings() {
    let v = stdout_json(&["count", "-c", "2", "-n", "60", "--route", "closed"]);
    let last = v["counts"][60].as_str().unwrap();
    assert!(last.len() > 20 && last.bytes().all(|b| b.is_ascii_digit()));
}

#[test]
fn exit_codes() {
    assert_eq!(prudent(&["count", "-c", "2", "-n", "5000"]).status.code(), Some(2));
    assert_eq!(prudent(&["count", "-c", "prudent", "-n", "5", "--route", "closed"]).status.code(), Some(2));
    assert_eq!(prudent(&["asym", "-c", "one-sided"]).status.code(), Some(2));
    assert_eq!(prudent(&["closedform", "-c", "3", "-N", "40", "--terms", "1"]).status.code(), Some(2));
    assert_eq!(prudent(&["render", "--walk", "NX"]).status.code(), Some(2));
    let budget = prudent(&["sample", "-c", "prudent", "-n", "60", "--budget-mib", "1"]);
    assert_eq!(budget.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&budget.stderr).contains("budget"));
}

#[test]
fn series_json_round_trips() {
    let v = stdout_json(&["series", "-c", "2", "-N", "5", "--what", "p-of-u"]);
    assert_eq!(v["order"], 5);
    let length = stdout_json(&["series", "-c", "2", "-N", "5"]);
    assert_eq!(length["terms"][0]["coeffs"], serde_json::json!(["1", "4", "10", "26", "66", "168"]));
    let refined = stdout_json(&["series", "-c", "2", "-N", "4", "--what", "refined-diff"]);
    assert!(refined["terms"].as_array().unwrap().iter().any(|t| t["z"].as_i64().unwrap() < 0));
    assert_eq!(prudent(&["series", "-c", "3", "-N", "4", "--what", "refined-sum"]).status.code(), Some(2));
}

#[test]
fn closedform_fields() {
    let v = stdout_json(&["closedform", "-c", "two-sided", "-N", "5", "--full"]);
    assert_eq!(v["u"], serde_json::json!(["0", "1", "1", "1", "1", "2"]));
    assert!(v["p_of_u"]["terms"].is_array());
    let t = stdout_json(&["closedform", "-c", "tri", "-N", "4"]);
    assert_eq!(t["p1"], serde_json::json!(["1", "6", "30", "132", "552"]));
}

#[test]
fn asym_reports_provenance() {
    let v = stdout_json(&["asym", "-c", "two-sided"]);
    let rho = v["constants"].as_array().unwrap().iter().find(|c| c["name"] == "rho").unwrap();
    assert!((rho["value"].as_f64().unwrap() - 0.403031716762685).abs() < 1e-12);
    assert_eq!(rho["provenance"], "closed-form");
    let g = stdout_json(&["asym", "-c", "3", "--growth-order", "60"]);
    assert!(g["growth_estimate"]["mu_hat"].as_f64().unwrap() > 2.3);
}

#[test]
fn sampling_is_deterministic() {
    let args = ["sample", "-c", "three-sided", "-n", "30", "--count", "20", "--seed", "11"];
    let a = prudent(&args);
    let b = prudent(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(prudent(&seq).stdout, a.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 20);
    assert!(text.lines().all(|l| l.len() == 30));
    let other = prudent(&["sample", "-c", "three-sided", "-n", "30", "--count", "20", "--seed", "12"]);
    assert_ne!(other.stdout, text.as_bytes());
}

#[test]
fn kinetic_only_for_prudent() {
    assert!(prudent(&["sample", "-c", "prudent", "-n", "50", "--kinetic", "--count", "3"]).status.success());
    assert_eq!(prudent(&["sample", "-c", "two-sided", "-n", "5", "--kinetic"]).status.code(), Some(2));
}

#[test]
fn sample_json_renders() {
    let dir = std::env::temp_dir().join(format!("prudent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let walk = dir.join("walk.json");
    let svg = dir.join("walk.svg");
    let w = walk.to_str().unwrap();
    assert!(prudent(&["sample", "-c", "tri", "-n", "12", "--format", "json", "-o", w]).status.success());
    assert!(prudent(&["render", "--input", w, "-o", svg.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("class=\"walk\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn render_ascii() {
    let out = prudent(&["render", "--walk", "NES", "--format", "ascii"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "+-+\n| |\no *\n");
}

#[test]
fn verify_small() {
    let args = [
        "verify",
        "--oracle-n",
        "7",
        "--table-n",
        "10",
        "--series-order",
        "12",
        "--prudent4-order",
        "8",
        "--box-k",
        "3",
    ];
    let out = prudent(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let mut json = args.to_vec();
    json.push("--json");
    let v = stdout_json(&json);
    assert!(v.is_object());
}
