use super::*;
use crate::calculus::{derive_efq, derive_s4_theorems, derive_stab};
use crate::formulas::QuantFlavor;
use crate::kernel::Type;

fn p_var() -> Var {
    Var::new("P", Type::arrow(Type::Nat, Type::Bool))
}

#[test]
fn terms_round_trip() {
    let params = [p_var()];
    for src in [
        "0",
        "7",
        "(app P 3)",
        "(lam (x nat) (y nat) (app plus x y))",
        "(app (rec nat) 3 0 (lam (n nat) (m nat) (app succ m)))",
        "(app (if bool) (app P 0) true false)",
    ] {
        let t = term_from_str(src, &params).unwrap();
        let again = term_from_str(&t.to_string(), &params).unwrap();
        assert_eq!(t, again, "{src}");
    }
}

#[test]
fn formulas_round_trip_with_sugar() {
    let params = [p_var()];
    let a = formula_from_str("(ex+ n nat (and (atom (P n)) (dia (box (atom (P (succ n)))))))", &params).unwrap();
    let b = formula_from_str(&a.to_string(), &params).unwrap();
    assert_eq!(a, b);
    let n = Var::new("n", Type::Nat);
    let body = Formula::atom(Term::app(p_var().term(), n.term()));
    let c = formula_from_str("(ex n nat (atom (P n)))", &params).unwrap();
    assert_eq!(c, Formula::exists(QuantFlavor::Full, n, body));
}

#[test]
fn derived_proofs_round_trip() {
    let x = Var::new("x", Type::Nat);
    let a = Formula::all(x.clone(), Formula::atom(Term::app(p_var().term(), x.term())));
    let b = Formula::boxed(a.clone());
    let mut proofs: Vec<Proof> = derive_s4_theorems(&a, &b).into_iter().map(|(_, p)| p).collect();
    proofs.push(derive_efq(&a));
    proofs.push(derive_stab(&Formula::and(a.clone(), b)));
    for p in proofs {
        let text = print_proof(&p);
        let q = proof_from_str(&text, &[p_var()]).unwrap();
        assert_eq!(print_proof(&q), text);
    }
}

#[test]
fn files_round_trip() {
    let src = "\
(system M)
(nat-bound 4)
(param P (-> nat bool))
(param m nat)
(define two (app succ 1))
(decidable evens ((x nat)) (all y nat (atom (P x))) (app P x))
(formula goal (ex n nat (atom (P n))))
(proof triv (impi u goal (assume u goal)))
(expect triv ok)
(sample (P (lam (y nat) true)) (m two))
";
    let f = parse_file(src).unwrap();
    assert_eq!(f.params.len(), 2);
    let printed = f.to_string();
    let g = parse_file(&printed).unwrap();
    assert_eq!(g.to_string(), printed);
}

#[test]
fn errors_carry_positions() {
    let e = parse_file("(system M)\n(frobnicate 1)").unwrap_err();
    assert_eq!(e.pos, Pos { line: 2, col: 1 });
    assert!(e.message.contains("unknown directive"));
    let e = parse_file("(param x nat)\n(formula f (atom x))").unwrap_err();
    assert_eq!(e.pos.line, 2);
    let e = parse_file("(proof p (assume u (atom zz)))").unwrap_err();
    assert!(e.message.contains("unknown identifier zz"), "{e}");
}
