use super::*;
use crate::formulas::DecidableRegistry;
use crate::kernel::Type;
use crate::syntax::{proof_from_str, term_from_str};

fn params() -> Vec<Var> {
    vec![
        Var::new("R", Type::curried([&Type::Nat, &Type::Nat], Type::Bool)),
        Var::new("P", Type::arrow(Type::Nat, Type::Bool)),
    ]
}

fn extract_src(src: &str, system: System) -> Result<ExtractionResult, ExtractError> {
    let p = proof_from_str(src, &params()).expect("proof parses");
    extract_in(&p, system, &DecidableRegistry::new())
}

fn term(src: &str) -> Term {
    term_from_str(src, &params()).expect("term parses")
}

const A: &str = "(all x nat (ex y nat (atom (R x y))))";

#[test]
fn truth_axiom_realizer_is_the_identity() {
    let e = extract_src(&format!("(axt {A})"), System::M).unwrap();
    assert_eq!(e.realizers().len(), 1);
    assert!(e.realizers()[0].alpha_eq(&term("(lam (f (-> nat nat)) f)")));
    assert!(e.fvc.ok());
}

#[test]
fn implication_intro_passes_the_hypothesis_through() {
    let e = extract_src(&format!("(impi u {A} (assume u {A}))"), System::M).unwrap();
    let back = term("(lam (f (-> nat nat)) (x nat) x)");
    let forth = term("(lam (f (-> nat nat)) f)");
    assert!(e.realizers()[0].alpha_eq(&back), "{}", e.render());
    assert!(e.realizers()[1].alpha_eq(&forth), "{}", e.render());
    assert_eq!(e.obligation.goal.challenges.len(), 2);
}

#[test]
fn box_intro_needs_a_boxed_context() {
    let src = "(boxi (assume u (all x nat (atom (P x)))))";
    let err = extract_src(src, System::M).unwrap_err();
    assert_eq!(err.restriction(), Some(Restriction::BoxIntro));
    let ok = "(boxi (assume u (box (all x nat (atom (P x))))))";
    assert!(extract_src(ok, System::M).is_ok());
}

#[test]
fn repeated_relevant_assumption_needs_contraction() {
    let h = "(all x nat (atom (P x)))";
    let body = format!("(andi (assume u {h}) (assume u {h}))");
    let err = extract_src(&format!("(impi u {h} {body})"), System::M).unwrap_err();
    assert_eq!(err.restriction(), Some(Restriction::Multiplicity));
    let e = extract_src(&format!("(impi u {h} (contract u {body}))"), System::M).unwrap();
    assert!(e.fvc.ok());
}

#[test]
fn induction_rules_share_witnesses_but_not_recursion() {
    let f = crate::corpus::corpus_file("indcompare").unwrap().parse().unwrap();
    let run = |name: &str| extract_in(f.proof(name).unwrap(), f.system(), &f.registry()).unwrap();
    let (plain, modal) = (run("plain_open"), run("modal_open"));
    assert!(plain.realizers()[0].mentions_rec());
    assert!(plain.realizers().iter().zip(modal.realizers()).all(|(a, b)| a.alpha_eq(b)));
    let rec = |e: &ExtractionResult| e.obligation.hypotheses.iter().flat_map(|h| h.challengers.iter()).any(Term::mentions_rec);
    assert!(rec(&plain));
    assert!(!rec(&modal));
}

#[test]
fn free_variable_condition_rejects_goal_challenges_in_realizers() {
    let e = extract_src(&format!("(axt {A})"), System::M).unwrap();
    let mut ob = e.obligation.clone();
    let c = ob.goal.challenges[0].term();
    ob.realizers = vec![Term::lam(Var::new("k", Type::Nat), c)];
    assert!(!check_fvc(&ob).ok());
}
