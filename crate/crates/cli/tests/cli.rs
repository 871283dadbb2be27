use std::io::Cursor;
use std::path::PathBuf;
use std::process::{Command, Output};

use ciore::fo_semantics::{fo_sequent_satisfied, Assignment};
use ciore::json::{proof_from_json, proof_to_json, structure_from_json};
use ciore::sequent::check_proof;
use ciore::{parse_sequent, Calculus, RuleId};
use serde_json::Value;

fn ciore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ciore")).args(args).env_remove("CIORE_ATOM_CAP").output().expect("spawn ciore")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// In-process run with the given standard input.
fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["ciore"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ciore_cli::run(argv, &mut Cursor::new(input.as_bytes().to_vec()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ciore-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn double_consistency_is_proved_cut_free() {
    let o = ciore(&["prove", "--json", "|- o o p"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "proved");
    let proof = proof_from_json(&v["proof"]).unwrap();
    assert_eq!(proof.sequent, parse_sequent("|- o o p").unwrap());
    assert!(!proof.uses(RuleId::Cut));
    check_proof(&proof, Calculus::GCiorePrime, false).unwrap();
}

#[test]
fn countermodel_of_consistency_from_atom() {
    let o = ciore(&["countermodel", "p |- o p"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"p": "1/2"}));
    // p designated and o p undesignated: by the tables only p = 1/2 does that.
    let falsifiers: Vec<&str> = [("1", "1"), ("1/2", "0"), ("0", "1")]
        .iter()
        .filter(|(p, circ_p)| *p != "0" && *circ_p == "0")
        .map(|(p, _)| *p)
        .collect();
    assert_eq!(falsifiers, ["1/2"]);
}

#[test]
fn existential_to_universal_is_refuted_with_a_checked_structure() {
    let src = "exists x. P(x) |- forall x. P(x)";
    let o = ciore(&["prove", "--fo", "--json", src]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "refuted");
    let st = structure_from_json(&v["structure"]).unwrap();
    let mut s = Assignment::new();
    for (var, elem) in v["assignment"].as_object().unwrap() {
        s.insert(var.clone(), st.element(elem.as_str().unwrap()).unwrap());
    }
    assert!(!fo_sequent_satisfied(&st, &s, &parse_sequent(src).unwrap()).unwrap());

    let human = ciore(&["prove", "--fo", src]);
    assert_eq!(human.status.code(), Some(1));
    let text = stdout(&human);
    let (head, body) = text.split_once('\n').unwrap();
    assert_eq!(head, "refuted");
    let v: Value = serde_json::from_str(body).unwrap();
    assert!(v["structure"]["domain"].is_array());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["prove", "forall x. P(x) |- P(a1)"], "").0, 64);
    assert_eq!(run(&["prove", "p & |- q"], "").0, 65);
    assert_eq!(run(&["prove", "--no-such-flag", "p"], "").0, 64);
    assert_eq!(run(&[], "").0, 64);
    assert_eq!(run(&["--help"], "").0, 0);
    assert_eq!(run(&["prove", "p |- p"], "").0, 0);
    assert_eq!(run(&["prove", "|- p"], "").0, 1);
    assert_eq!(run(&["validity", "p -> p"], "").0, 0);
    assert_eq!(run(&["validity", "p |- ~p"], "").0, 1);
    assert_eq!(run(&["prove", "--fo", "~(forall x. P(x)) |- exists x. ~P(x)"], "").0, 2);
    assert_eq!(run(&["prove", "--fo", "P('c) |-"], "").0, 64);
    assert_eq!(run(&["countermodel", "o p |- o q"], "").0, 1);
}

#[test]
fn atom_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ciore")).args(["prove", "p, q |- r"]).env("CIORE_ATOM_CAP", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(64));
    assert_eq!(run(&["prove", "--atom-cap", "3", "p, q |- r"], "").0, 1);
}

#[test]
fn check_proof_reads_standard_input() {
    let (code, out, _) = run(&["prove", "--json", "~(p & q) |- ~p | ~q"], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let proof = v["proof"].to_string();
    let (code, out, _) = run(&["check-proof"], &proof);
    assert_eq!((code, out.trim()), (0, "pass (GCiore')"));

    let mut bad = proof_from_json(&v["proof"]).unwrap();
    bad.premises[0].sequent = parse_sequent("p |- q").unwrap();
    let (code, out, _) = run(&["check-proof", "--json", "-"], &proof_to_json(&bad).to_string());
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["path"].as_array().unwrap().len() <= 1);

    assert_eq!(run(&["check-proof"], "not json").0, 65);
    assert_eq!(run(&["check-proof", "--calculus", "nope"], &proof).0, 64);
}

#[test]
fn structure_file_mode() {
    let st = r#"{"domain": ["m0", "m1"], "predicates": {"P": {"plus": [["m0"]], "minus": [], "circ": [["m1"]]}}}"#;
    let path = temp_file("structure.json", st);
    let file = path.to_str().unwrap();
    assert_eq!(run(&["validity", "--fo", "--structure", file, "|- forall x. P(x)"], "").0, 0);
    assert_eq!(run(&["validity", "--fo", "--structure", file, "|- o P(a1)"], "").0, 1);
    let (code, out, _) = run(&["countermodel", "--fo", "--structure", file, "|- o P(a1)"], "");
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), serde_json::json!({"a1": "m1"}));
    assert_eq!(run(&["validity", "--fo", "--structure", file, "|- Q(a1)"], "").0, 65);
    let broken = temp_file("broken.json", r#"{"domain": ["m0"], "predicates": {"P": {"plus": [], "minus": [], "circ": []}}}"#);
    assert_eq!(run(&["validity", "--fo", "--structure", broken.to_str().unwrap(), "|- P(a1)"], "").0, 65);
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(broken);
}

#[test]
fn reduction_tree_exit_status() {
    let (code, out, _) = run(&["reduction-tree", "--fo", "|- P(a1) -> exists x. P(x)"], "");
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains("|- P(a1) -> exists x. P(x)"));
    assert_eq!(run(&["reduction-tree", "--fo", "exists x. P(x) |- forall x. P(x)"], "").0, 1);
    assert_eq!(run(&["reduction-tree", "--fo", "--nodes", "2", "|- (forall x. P(x)) | ~(forall x. P(x))"], "").0, 2);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest", "--json"], "");
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 4);
}
