use std::path::PathBuf;
use std::process::{Command, Output};

fn mdial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdial")).args(args).output().expect("runs")
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", &format!("{name}.proof")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn typecheck_summarizes_a_file() {
    let o = mdial(&["typecheck", &corpus("s4")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 proofs, system M"), "{}", stdout(&o));
}

#[test]
fn check_exits_one_on_a_violation() {
    let o = mdial(&["check", &corpus("s5_attempt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("BoxIntroViolation"));
    let o = mdial(&["check", &corpus("chainq"), "--proof", "chain"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports_the_bound() {
    let o = mdial(&["verify", &corpus("introot"), "--proof", "introot", "--nat-bound", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nat bound 5"), "{}", stdout(&o));
}

#[test]
fn translate_accepts_an_expression() {
    let o = mdial(&["translate", "--expr", "(box (all x nat (ex y nat (atom (le x y)))))"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("challenges (none)"), "{}", stdout(&o));
}

#[test]
fn bad_input_exits_three() {
    let o = mdial(&["typecheck", "/nonexistent/file.proof"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mdial(&["translate", "--expr", "(imp (atom true)"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mdial(&["check", &corpus("s4"), "--proof", "nope"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn mutate_reports_caught_mutants() {
    let o = mdial(&["mutate", &corpus("s4"), "--proof", "axt", "--count", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("axt: 4/4 mutants caught"), "{}", stdout(&o));
}

#[test]
fn corpus_run_matches_goldens() {
    let o = mdial(&["corpus-run", "--only", "chainq_light"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("matches golden"));
}
