//! Proof builders for standard derived principles.

use std::cell::Cell;

use super::{AVar, Proof};
use crate::formulas::{Formula, QuantFlavor};
use crate::kernel::{fresh_var, Type};

struct Names(Cell<usize>);

impl Names {
    fn next(&self, stem: &str) -> String {
        let i = self.0.get();
        self.0.set(i + 1);
        format!("{stem}{i}")
    }
}

/// Derivations of `4`, `Tc`, `4c` and `K` from `T` and box introduction,
/// keyed by axiom name.
pub fn derive_s4_theorems(a: &Formula, b: &Formula) -> Vec<(&'static str, Proof)> {
    let boxed_a = Formula::boxed(a.clone());
    let not_a = Formula::not(a.clone());
    let box_not_a = Formula::boxed(not_a.clone());

    let four = Proof::imp_i("a", boxed_a.clone(), Proof::box_i(Proof::assume("a", boxed_a.clone())));

    let tc = Proof::imp_i(
        "a",
        a.clone(),
        Proof::imp_i(
            "k",
            box_not_a.clone(),
            Proof::imp_e(
                Proof::assume("a", a.clone()),
                Proof::imp_e(Proof::assume("k", box_not_a.clone()), Proof::AxT(not_a.clone())),
            ),
        ),
    );

    let dia = Formula::weak_diamond(a.clone());
    let not_box_not_a = Formula::not(box_not_a.clone());
    let dd = Formula::weak_diamond(dia.clone());
    let inner = Proof::box_i(Proof::imp_i(
        "m",
        not_box_not_a.clone(),
        Proof::imp_e(Proof::assume("k", box_not_a.clone()), Proof::assume("m", not_box_not_a)),
    ));
    let four_c = Proof::imp_i(
        "d",
        dd.clone(),
        Proof::imp_i("k", box_not_a, Proof::imp_e(inner, Proof::assume("d", dd))),
    );

    let ab = Formula::imp(a.clone(), b.clone());
    let hyp = Formula::and(Formula::boxed(ab.clone()), boxed_a.clone());
    let h = || Proof::assume("h", hyp.clone());
    let k = Proof::imp_i(
        "h",
        hyp.clone(),
        Proof::box_i(Proof::imp_e(
            Proof::imp_e(Proof::and_r(h()), Proof::AxT(a.clone())),
            Proof::imp_e(Proof::and_l(h()), Proof::AxT(ab)),
        )),
    );
    vec![("4", four), ("Tc", tc), ("4c", four_c), ("K", k)]
}

/// A proof of `⊥ → A`.
pub fn derive_efq(a: &Formula) -> Proof {
    efq(a, &Names(Cell::new(0)))
}

fn efq(a: &Formula, names: &Names) -> Proof {
    let bot = Formula::falsum();
    let u = names.next("u");
    let from_bot = |target: &Formula| Proof::imp_e(Proof::assume(&u, bot.clone()), efq(target, names));
    match a {
        Formula::Atom(t) => {
            let b = fresh_var("b", Type::Bool);
            let shape = Formula::imp(bot.clone(), Formula::atom(b.term()));
            let v = names.next("u");
            let case_t = Proof::imp_i(&v, bot.clone(), Proof::AxTrue);
            let case_f = Proof::imp_i(&v, bot.clone(), Proof::assume(&v, bot.clone()));
            let ind = Proof::IndBool {
                var: b.clone(),
                formula: shape,
                on_true: case_t.into(),
                on_false: case_f.into(),
            };
            Proof::all_e(Proof::all_i(QuantFlavor::Full, b, ind), t.clone())
        }
        Formula::And(l, r) => Proof::imp_i(&u, bot.clone(), Proof::and_i(from_bot(l), from_bot(r))),
        Formula::Imp(l, r) => {
            let w = names.next("a");
            Proof::imp_i(&u, bot.clone(), Proof::imp_i(&w, (**l).clone(), from_bot(r)))
        }
        Formula::Forall(q, z, body) => Proof::imp_i(&u, bot.clone(), Proof::all_i(*q, z.clone(), from_bot(body))),
        Formula::Box(inner) => Proof::imp_i(&u, bot.clone(), Proof::box_i(from_bot(inner))),
    }
}

/// A proof of `¬¬A → A`. Conjunctions contract the double negation.
pub fn derive_stab(a: &Formula) -> Proof {
    stab(a, &Names(Cell::new(0)))
}

/// `¬¬A → A` applied to `λk. dn_body`.
fn apply_stab(a: &Formula, k: &str, dn_body: Proof, names: &Names) -> Proof {
    let nna = Proof::imp_i(k, Formula::not(a.clone()), dn_body);
    Proof::imp_e(nna, stab(a, names))
}

fn stab(a: &Formula, names: &Names) -> Proof {
    let bot = Formula::falsum();
    let nn = |f: &Formula| Formula::not(Formula::not(f.clone()));
    let u = names.next("u");
    let uu = nn(a);
    let use_u = |k: &str, from: AVar, conclude: Proof, target: &Formula| {
        // u (λfrom. k conclude) : ⊥
        Proof::imp_e(
            Proof::ImpI(
                from,
                Proof::imp_e(conclude, Proof::assume(k, Formula::not(target.clone()))).into(),
            ),
            Proof::assume(&u, uu.clone()),
        )
    };
    match a {
        Formula::Atom(t) => {
            let b = fresh_var("b", Type::Bool);
            let atom_b = Formula::atom(b.term());
            let shape = Formula::imp(nn(&atom_b), atom_b);
            let v = names.next("u");
            let w = names.next("e");
            let case_t = Proof::imp_i(&v, nn(&Formula::verum()), Proof::AxTrue);
            let id = Proof::imp_i(&w, bot.clone(), Proof::assume(&w, bot.clone()));
            let v2 = names.next("u");
            let case_f = Proof::imp_i(&v2, nn(&bot), Proof::imp_e(id, Proof::assume(&v2, nn(&bot))));
            let ind = Proof::IndBool {
                var: b.clone(),
                formula: shape,
                on_true: case_t.into(),
                on_false: case_f.into(),
            };
            Proof::all_e(Proof::all_i(QuantFlavor::Full, b, ind), t.clone())
        }
        Formula::Imp(l, r) => {
            let x = names.next("a");
            let k = names.next("k");
            let f = names.next("f");
            let conclude = Proof::imp_e(Proof::assume(&x, (**l).clone()), Proof::assume(&f, a.clone()));
            let body = use_u(&k, AVar::new(&f, a.clone()), conclude, r);
            Proof::imp_i(&u, uu.clone(), Proof::imp_i(&x, (**l).clone(), apply_stab(r, &k, body, names)))
        }
        Formula::Forall(q, z, body_f) => {
            let k = names.next("k");
            let f = names.next("f");
            let conclude = Proof::all_e(Proof::assume(&f, a.clone()), z.term());
            let body = use_u(&k, AVar::new(&f, a.clone()), conclude, body_f);
            Proof::imp_i(&u, uu.clone(), Proof::all_i(*q, z.clone(), apply_stab(body_f, &k, body, names)))
        }
        Formula::And(l, r) => {
            let kl = names.next("k");
            let kr = names.next("k");
            let pl = names.next("p");
            let pr = names.next("p");
            let left = use_u(&kl, AVar::new(&pl, a.clone()), Proof::and_l(Proof::assume(&pl, a.clone())), l);
            let right = use_u(&kr, AVar::new(&pr, a.clone()), Proof::and_r(Proof::assume(&pr, a.clone())), r);
            let both = Proof::and_i(apply_stab(l, &kl, left, names), apply_stab(r, &kr, right, names));
            let both = if uu.refutation_irrelevant() { both } else { Proof::contract(&u, both) };
            Proof::imp_i(&u, uu.clone(), both)
        }
        Formula::Box(inner) => {
            let k = names.next("k");
            let bx = names.next("b");
            let conclude = Proof::imp_e(Proof::assume(&bx, a.clone()), Proof::AxT((**inner).clone()));
            let body = use_u(&k, AVar::new(&bx, a.clone()), conclude, inner);
            Proof::imp_i(&u, uu.clone(), Proof::box_i(apply_stab(inner, &k, body, names)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof, System};
    use crate::kernel::{Term, Var};

    fn p(x: &Var) -> Formula {
        let pv = Var::new("P", Type::arrow(Type::Nat, Type::Bool));
        Formula::atom(Term::app(pv.term(), x.term()))
    }

    #[test]
    fn s4_theorems_check_in_m() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let a = Formula::all(x.clone(), Formula::exists(QuantFlavor::Full, y.clone(), p(&y)));
        let b = Formula::all(y.clone(), p(&y));
        for (name, proof) in derive_s4_theorems(&a, &b) {
            let r = check_proof(&proof, System::M);
            assert!(r.ok, "{name}: {:?}", r.violations);
        }
    }

    #[test]
    fn efq_and_stab_check() {
        let x = Var::new("x", Type::Nat);
        let fs = [
            p(&x),
            Formula::imp(p(&x), p(&x)),
            Formula::all(x.clone(), p(&x)),
            Formula::and(p(&x), Formula::all(x.clone(), p(&x))),
            Formula::boxed(Formula::all(x.clone(), p(&x))),
        ];
        for f in &fs {
            let e = check_proof(&derive_efq(f), System::M);
            assert!(e.ok, "efq {f}: {:?}", e.violations);
            assert!(e.sequent.unwrap().goal.alpha_eq(&Formula::imp(Formula::falsum(), f.clone())));
            let s = check_proof(&derive_stab(f), System::M);
            assert!(s.ok, "stab {f}: {:?}", s.violations);
            let want = Formula::imp(Formula::not(Formula::not(f.clone())), f.clone());
            assert!(s.sequent.unwrap().goal.alpha_eq(&want));
        }
    }
}
