use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ldescent"));
    c.env_remove("LDESCENT_FIELD");
    c
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ldescent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_case(family: &str, seed: u64, name: &str) -> PathBuf {
    let p = tmp(name);
    let o = bin()
        .args(["generate", "--family", family, "--seed", &seed.to_string(), "--output"])
        .arg(&p)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn verify_tower_is_clean() {
    let o = bin().args(["verify", "--suite", "tower", "--cases", "200", "--seed", "7", "--jobs", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cases"], 200);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn generate_is_byte_identical() {
    let a = bin().args(["generate", "--family", "Mp", "--seed", "11"]).output().unwrap();
    let b = bin().args(["generate", "--family", "Mp", "--seed", "11"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["group"]["family"], "Mp");
}

#[test]
fn illegal_ell_is_an_input_error() {
    let p = write_case("Sp", 3, "sp.json");
    let o = bin().args(["descend", "--ell", "3", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["descend", "--ell", "2", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["ell"], 2);
}

#[test]
fn first_occurrence_both_modes_agree() {
    for (fam, seed) in [("SO_odd", 1), ("SO_even", 2), ("Sp", 3), ("Mp", 4), ("U", 5)] {
        let p = write_case(fam, seed, &format!("fo-{fam}.json"));
        let o = bin().args(["first-occurrence", "--mode", "both", "--input"]).arg(&p).output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["fa"], v["fs"]);
        assert_eq!(v["equal"], true);
        let a = &v["arithmetic"];
        assert!(a.get("ell0").is_some() && a["members"].is_array() && a["bound_limited"].is_boolean());
    }
}

#[test]
fn packet_characters_are_wrapped() {
    let p = write_case("SO_odd", 8, "packet.json");
    let o = bin().args(["packet", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len() as u64, v["component_group_order"].as_u64().unwrap());
    assert!(entries.iter().all(|e| e["mu"]["chi"].is_object()));
}

#[test]
fn malformed_input_exits_2() {
    let p = tmp("bad.json");
    std::fs::write(&p, "{\"schema\": 1, \"field\": {\"kind\": \"p-adic\", \"p\": 4}}").unwrap();
    let o = bin().args(["packet", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&p, "not json").unwrap();
    let o = bin().args(["spectrum", "--p1", "1", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_comes_from_the_environment() {
    let p = tmp("space.json");
    std::fs::write(&p, r#"{"group": {"family": "SO", "dim": 5}}"#).unwrap();
    let o = bin().args(["classify-space", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().env("LDESCENT_FIELD", "Q3").args(["classify-space", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["witt"], 2);
    assert_eq!(v["admissible_p1"], serde_json::json!([1, 3, 5]));
    assert_eq!(v["pure_inner_forms"].as_array().unwrap().len(), 2);
}

#[test]
fn spectrum_and_submodule_run() {
    let p = write_case("SO_odd", 21, "spec.json");
    let o = bin().args(["submodule", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin().args(["spectrum", "--p1", "1", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["p1"], 1);
    let o = bin().args(["spectrum", "--p1", "2", "--input"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
