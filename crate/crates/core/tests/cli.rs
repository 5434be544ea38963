use std::path::PathBuf;

use mdjohnson::verdicts::cli::cli_main;
use mdjohnson::verdicts::files::AutoSpecFile;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli_main(std::iter::once("mdjohnson").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mdjohnson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON output")
}

#[test]
fn ag_structure_text() {
    let (code, out, _) = run(&["ag-structure", "--free", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("A(G): free rank 6"), "{out}");
    assert!(out.contains("W: rank 1"), "{out}");
    assert!(out.contains("A_W(G): free rank 0"), "{out}");
}

#[test]
fn ag_structure_surface_json() {
    let (code, out, _) = run(&["ag-structure", "--surface", "2", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["A"]["free_rank"], "56");
    assert_eq!(v["W_rank"], "5");
    assert_eq!(v["A_W"]["free_rank"], "16");
}

#[test]
fn ag_structure_needs_a_kind() {
    assert_eq!(run(&["ag-structure"]).0, 2);
    assert_eq!(run(&["ag-structure", "--free", "2", "--surface", "1"]).0, 2);
}

#[test]
fn random_spec_round_trips_through_cocycle() {
    let (code, spec, _) = run(&["random-spec", "--free", "3", "--torelli", "--seed", "5", "--prime", "3"]);
    assert_eq!(code, 0);
    let file = AutoSpecFile::from_json(&spec).unwrap();
    assert_eq!(file.prime, Some(3));
    let path = temp_file("torelli.json", &spec);
    let p = path.to_str().unwrap();

    let (code, out, _) = run(&["skew-check", p, "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["context"]["prime"], "3");

    let (code, out, _) = run(&["cocycle", p, "--prime", "5", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["context"]["prime"], "5");

    let (code, out, _) = run(&["johnson", p, "--json"]);
    assert_eq!(code, 0);
    assert!(json(&out)["coordinates"].is_array());
}

#[test]
fn skew_check_rejects_non_torelli() {
    let path = temp_file("swap.json", r#"{"kind": {"free": 2}, "images": [[[1, 1]], [[0, 1]]]}"#);
    let (code, _, err) = run(&["skew-check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "), "{err}");
}

#[test]
fn cocycle_requires_automorphism() {
    let path = temp_file("square.json", r#"{"kind": {"free": 1}, "images": [[[0, 2]]]}"#);
    let (code, _, err) = run(&["cocycle", path.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(code, 2, "{err}");
    // Invertible once 2 is a unit.
    assert_eq!(run(&["cocycle", path.to_str().unwrap(), "--prime", "3"]).0, 0);
}

#[test]
fn bad_inputs_exit_two() {
    let bad = temp_file("bad.json", r#"{"kind": {"free": 2}, "images": [], "bogus": true}"#);
    assert_eq!(run(&["cocycle", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["cocycle", "/definitely/not/here.json"]).0, 2);
    assert_eq!(run(&["char-check", "--builtin", "psl2-8", "--action", "chi_12"]).0, 2);
    assert_eq!(run(&["char-check", "--builtin", "nonsense", "--action", "chi_1"]).0, 2);
    assert_eq!(run(&["demo", "hyperelliptic", "--genus", "0"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn char_check_verdicts() {
    let (code, out, _) = run(&["char-check", "--builtin", "psl2-8", "--action", "2*chi_2", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["bound"], "504");
    assert!(v["caveats"].as_array().is_some_and(|c| !c.is_empty()));

    let (code, out, _) = run(&["char-check", "--builtin", "trivial", "--action", "chi_1"]);
    assert_eq!(code, 1);
    assert!(out.contains("not certified"), "{out}");
}

#[test]
fn char_check_from_table_file() {
    let file = mdjohnson::verdicts::files::CharTableFile::from_table(&mdjohnson::chartab::builtin::cyclic(2).unwrap());
    let path = temp_file("c2.json", &file.to_json());
    let (code, out, _) = run(&["char-check", path.to_str().unwrap(), "--action", "6*chi_2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("order divides 2"), "{out}");
}

#[test]
fn demos() {
    let (code, out, _) = run(&["demo", "hyperelliptic", "--genus", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("4·16−4·16 = 0"), "{out}");
    let (code, out, _) = run(&["demo", "fricke-macbeath", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["quotient_genus"], "3");
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("ag-structure"));
    assert_eq!(run(&["--version"]).0, 0);
}
