//! Named closed terms available to the surface syntax.

use super::{eq_bool, eq_nat, Term, Type, Var};

fn nat(n: &str) -> Var {
    Var::new(n, Type::Nat)
}

fn boolean(n: &str) -> Var {
    Var::new(n, Type::Bool)
}

fn iff(c: Term, a: Term, b: Term) -> Term {
    Term::if_then(Type::Bool, c, a, b)
}

fn notb() -> Term {
    let x = boolean("x");
    Term::lam(x.clone(), iff(x.term(), Term::False, Term::True))
}

fn andb() -> Term {
    let (x, y) = (boolean("x"), boolean("y"));
    Term::lams(&[x.clone(), y.clone()], iff(x.term(), y.term(), Term::False))
}

fn orb() -> Term {
    let (x, y) = (boolean("x"), boolean("y"));
    Term::lams(&[x.clone(), y.clone()], iff(x.term(), Term::True, y.term()))
}

fn impb() -> Term {
    let (x, y) = (boolean("x"), boolean("y"));
    Term::lams(&[x.clone(), y.clone()], iff(x.term(), y.term(), Term::True))
}

fn pred() -> Term {
    let (x, n, p) = (nat("x"), nat("n"), nat("p"));
    Term::lam(
        x.clone(),
        Term::rec(Type::Nat, x.term(), Term::Zero, Term::lams(&[n.clone(), p], n.term())),
    )
}

fn iszero() -> Term {
    let (x, n, p) = (nat("x"), nat("n"), boolean("p"));
    Term::lam(
        x.clone(),
        Term::rec(Type::Bool, x.term(), Term::True, Term::lams(&[n, p], Term::False)),
    )
}

fn plus() -> Term {
    let (x, y, n, p) = (nat("x"), nat("y"), nat("n"), nat("p"));
    Term::lams(
        &[x.clone(), y.clone()],
        Term::rec(Type::Nat, x.term(), y.term(), Term::lams(&[n, p.clone()], Term::succ(p.term()))),
    )
}

/// Truncated subtraction, by recursion on the second argument.
fn minus() -> Term {
    let (x, y, n, p) = (nat("x"), nat("y"), nat("n"), nat("p"));
    Term::lams(
        &[x.clone(), y.clone()],
        Term::rec(
            Type::Nat,
            y.term(),
            x.term(),
            Term::lams(&[n, p.clone()], Term::app(pred(), p.term())),
        ),
    )
}

fn times() -> Term {
    let (x, y, n, p) = (nat("x"), nat("y"), nat("n"), nat("p"));
    Term::lams(
        &[x.clone(), y.clone()],
        Term::rec(
            Type::Nat,
            x.term(),
            Term::Zero,
            Term::lams(&[n, p.clone()], Term::apps(plus(), [y.term(), p.term()])),
        ),
    )
}

fn le() -> Term {
    let (x, y) = (nat("x"), nat("y"));
    Term::lams(
        &[x.clone(), y.clone()],
        Term::app(iszero(), Term::apps(minus(), [x.term(), y.term()])),
    )
}

fn lt() -> Term {
    let (x, y) = (nat("x"), nat("y"));
    Term::lams(
        &[x.clone(), y.clone()],
        Term::app(notb(), Term::apps(le(), [y.term(), x.term()])),
    )
}

pub const NAMES: &[&str] = &[
    "eqnat", "eqbool", "notb", "andb", "orb", "impb", "pred", "iszero", "plus", "minus", "times",
    "le", "lt",
];

/// The closed term bound to a prelude name.
pub fn lookup(name: &str) -> Option<Term> {
    Some(match name {
        "eqnat" => eq_nat(),
        "eqbool" => eq_bool(),
        "notb" => notb(),
        "andb" => andb(),
        "orb" => orb(),
        "impb" => impb(),
        "pred" => pred(),
        "iszero" => iszero(),
        "plus" => plus(),
        "minus" => minus(),
        "times" => times(),
        "le" => le(),
        "lt" => lt(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{eval_ground, Ground};

    fn call(name: &str, args: &[u64]) -> Ground {
        let t = Term::apps(lookup(name).unwrap(), args.iter().map(|&n| Term::numeral(n)));
        eval_ground(&t).unwrap()
    }

    #[test]
    fn all_names_are_closed_and_typed() {
        for n in NAMES {
            let t = lookup(n).unwrap();
            assert!(t.is_closed(), "{n}");
            t.type_of().unwrap();
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(call("plus", &[3, 4]), Ground::Nat(7));
        assert_eq!(call("minus", &[3, 5]), Ground::Nat(0));
        assert_eq!(call("minus", &[5, 3]), Ground::Nat(2));
        assert_eq!(call("times", &[3, 4]), Ground::Nat(12));
        assert_eq!(call("pred", &[0]), Ground::Nat(0));
        assert_eq!(call("le", &[3, 3]), Ground::Bool(true));
        assert_eq!(call("le", &[4, 3]), Ground::Bool(false));
        assert_eq!(call("lt", &[3, 3]), Ground::Bool(false));
        assert_eq!(call("lt", &[2, 3]), Ground::Bool(true));
    }
}
