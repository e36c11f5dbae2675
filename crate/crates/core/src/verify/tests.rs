use super::*;
use crate::calculus::Proof;
use crate::dialectica::Flavor;
use crate::extraction::extract;
use crate::formulas::QuantFlavor;
use crate::kernel::Type;

fn g() -> Var {
    Var::new("g", Type::arrow(Type::Nat, Type::Bool))
}

fn g_of(x: &Var) -> Formula {
    Formula::atom(Term::app(g().term(), x.term()))
}

fn small() -> Domain {
    Domain::with_nat_bound(3)
}

#[test]
fn axiom_t_obligation_passes() {
    let x = Var::new("x", Type::Nat);
    let y = Var::new("y", Type::Nat);
    let a = Formula::all(x.clone(), Formula::exists(QuantFlavor::Full, y.clone(), Formula::imp(g_of(&x), g_of(&y))));
    let r = extract(&Proof::AxT(a), Flavor::Modal).unwrap();
    let rep = check_obligation(&r.obligation, &small()).unwrap();
    assert!(rep.passed, "{rep}");
}

#[test]
fn corrupted_realizer_is_caught() {
    let x = Var::new("x", Type::Nat);
    let y = Var::new("y", Type::Nat);
    let a = Formula::all(x.clone(), Formula::exists(QuantFlavor::Full, y.clone(), g_of(&y)));
    let r = extract(&Proof::AxT(a), Flavor::Modal).unwrap();
    let bad = r.obligation.with_realizers(
        r.obligation
            .realizers
            .iter()
            .map(|t| mutator("perturb").unwrap().mutate(t, &t.type_of().unwrap(), &mut rand_chacha::ChaCha8Rng::seed_from_u64(0)).unwrap())
            .collect(),
    );
    let rep = check_obligation(&bad, &small()).unwrap();
    assert!(!rep.passed);
    assert!(rep.counterexample.is_some());
}

#[test]
fn s5_is_refuted_for_every_candidate() {
    let n = Var::new("n", Type::Nat);
    let out = refute_s5(&Formula::all(n.clone(), g_of(&n)), &small()).unwrap();
    assert_eq!(out.refutations.len(), 4);
    assert!(out.all_refuted(), "{out}");
}

#[test]
fn s5_on_atom_is_vacuous() {
    let b = Var::new("b", Type::Bool);
    let e = refute_s5(&Formula::atom(b.term()), &small()).unwrap_err();
    assert!(matches!(e, VerifyError::NotRefutationRelevant(_)));
}

#[test]
fn s5_on_trivial_formula_has_no_counterexample() {
    let n = Var::new("n", Type::Nat);
    let out = refute_s5(&Formula::all(n, Formula::verum()), &small()).unwrap();
    assert_eq!(out.refuted(), 0);
    assert!(out.to_string().starts_with("no counterexample for necessary formula"));
}

#[test]
fn necessary_formulas() {
    let n = Var::new("n", Type::Nat);
    let m = Var::new("m", Type::Nat);
    let d = small();
    let ex = Formula::exists(QuantFlavor::Full, m.clone(), g_of(&m));
    assert!(ex.refutation_irrelevant());
    assert!(necessary_formula_check(&ex, &d).unwrap());
    assert!(necessary_formula_check(&Formula::all(n.clone(), Formula::falsum()), &d).unwrap());
    assert!(necessary_formula_check(&Formula::all(n.clone(), Formula::verum()), &d).unwrap());
    assert!(!necessary_formula_check(&Formula::all(n.clone(), g_of(&n)), &d).unwrap());
}

#[test]
fn mutants_are_deterministic() {
    let x = Var::new("x", Type::Nat);
    let y = Var::new("y", Type::Nat);
    let a = Formula::all(x.clone(), Formula::exists(QuantFlavor::Full, y.clone(), g_of(&y)));
    let r = extract(&Proof::AxT(a), Flavor::Modal).unwrap();
    let render = |ms: Vec<Mutant>| ms.iter().map(|m| format!("{} {:?}", m.mutator, m.obligation.realizers)).collect::<Vec<_>>();
    let a1 = render(mutate_obligation(&r.obligation, 7, 10));
    let a2 = render(mutate_obligation(&r.obligation, 7, 10));
    assert_eq!(a1.len(), 10);
    assert_eq!(a1, a2);
}
