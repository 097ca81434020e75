use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn xmodlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xmodlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = xmodlab(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    (v, out.status.code().unwrap())
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn verdict<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name}"))
}

#[test]
fn verify_killing_values_passes() {
    let (v, code) = json(&["verify", "lemma4"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "lemma4.killing")["witness"], "κ([e,f],h) = 8");
    assert_eq!(verdict(&v, "lemma4.theta0")["witness"], "θ(0)(e,f,h) = -4");
    assert!(v["config"].is_object() && v["tables"].is_array());
}

#[test]
fn betti_trivial_sl2() {
    let (v, code) = json(&["betti", "--algebra", "sl2", "--module", "trivial"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "betti.total")["witness"], "(1, 0, 0, 1)");
}

#[test]
fn betti_from_files() {
    let (v, code) = json(&["betti", "--algebra", &data("sl2.toml"), "--module", &data("f1.toml")]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "betti.total")["witness"], "(0, 1, 1, 0)");
    let (v, _) = json(&["betti", "--module", &data("verma_n.toml")]);
    assert_eq!(verdict(&v, "betti.total")["witness"], "(0, 1, 1, 0)");
    let (v, _) = json(&["betti", "--module", &data("standard.toml")]);
    assert_eq!(verdict(&v, "betti.total")["witness"], "(0, 0, 0, 0)");
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = xmodlab(&["verify", "theorem4", "--format", "json", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn failing_verdict_sets_exit_status() {
    let (v, code) = json(&["verify", "relative"]);
    assert_eq!(code, 1);
    assert_eq!(verdict(&v, "relative.verma")["status"], "fail");
}

#[test]
fn reconciliation_warns_without_failing() {
    let (v, code) = json(&["reconcile"]);
    assert_eq!(code, 0);
    let warns = v["verdicts"].as_array().unwrap().iter().filter(|x| x["status"] == "warn").count();
    assert!(warns > 0);
}

#[test]
fn errors_exit_with_two() {
    let out = xmodlab(&["betti", "--module", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown object"));
    let out = xmodlab(&["betti", "--algebra", "w1", "--window", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index 4"));

    let dir = tempfile::tempdir().unwrap();
    let heis = dir.path().join("heis.toml");
    std::fs::write(&heis, "name = \"heis3\"\ndim = 3\nlabels = [\"p\", \"q\", \"z\"]\nconstants = [[0, 1, 2, 1]]\n").unwrap();
    let out = xmodlab(&["betti", "--algebra", heis.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grading"));

    let bad = dir.path().join("bad.toml");
    let text = std::fs::read_to_string(data("standard.toml")).unwrap().replace("[2, 0, 1, 1]", "[2, 0, 1, 2]");
    std::fs::write(&bad, text).unwrap();
    let out = xmodlab(&["betti", "--module", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("module axiom fails"));
}

#[test]
fn crossed_and_catalog() {
    let (_, code) = json(&["crossed", "check", "--data", "verma"]);
    assert_eq!(code, 0);
    let (v, code) = json(&["crossed", "equiv", "--data", "density"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "density_verma_ladder_negated")["status"], "pass");
    let (v, _) = json(&["catalog", "--algebra", "w1", "--name", "gelfand_fuks_alpha", "--tuple", "e_0,e_1"]);
    assert_eq!(verdict(&v, "gelfand_fuks_alpha(e_0, e_1)")["witness"], "2*1 dx");
    let (v, _) = json(&["catalog"]);
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn e2_and_connecting() {
    let (v, code) = json(&["e2"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "relative")["witness"], "(1, 0, 0, 0)");
    let (v, code) = json(&["connecting", "--ses", "verma"]);
    assert_eq!(code, 0);
    assert_eq!(verdict(&v, "exactness")["status"], "pass");
}
