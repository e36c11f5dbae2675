use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{normalize, stem_of, KernelError, Term, Type, Var};

/// Value of a closed ground term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ground {
    Nat(u64),
    Bool(bool),
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ground::Nat(n) => write!(f, "{n}"),
            Ground::Bool(b) => write!(f, "{b}"),
        }
    }
}

pub fn eval_ground(t: &Term) -> Result<Ground, KernelError> {
    let fv = t.free_vars();
    if !fv.is_empty() {
        let names: Vec<_> = fv.iter().map(|v| v.name.to_string()).collect();
        return Err(KernelError::NotClosed(names.join(", ")));
    }
    let ty = t.type_of()?;
    if !ty.is_base() {
        return Err(KernelError::NotGround(ty));
    }
    let nf = normalize(t)?;
    match nf {
        Term::True => Ok(Ground::Bool(true)),
        Term::False => Ok(Ground::Bool(false)),
        other => other
            .as_numeral()
            .map(Ground::Nat)
            .ok_or(KernelError::NotGround(ty)),
    }
}

/// `EqBool = λx. If x (λy.y) (λy. If y false true)`
pub fn eq_bool() -> Term {
    let bb = Type::arrow(Type::Bool, Type::Bool);
    let x = Var::new("x", Type::Bool);
    let y = Var::new("y", Type::Bool);
    let id = Term::lam(y.clone(), y.term());
    let neg = Term::lam(
        y.clone(),
        Term::if_then(Type::Bool, y.term(), Term::False, Term::True),
    );
    Term::lam(x.clone(), Term::if_then(bb, x.term(), id, neg))
}

/// `EqNatt = λx. Rec x (λy. Rec y true (λn q. false)) (λm p y. Rec y false (λn q. p n))`
pub fn eq_nat() -> Term {
    let nb = Type::arrow(Type::Nat, Type::Bool);
    let x = Var::new("x", Type::Nat);
    let y = Var::new("y", Type::Nat);
    let n = Var::new("n", Type::Nat);
    let q = Var::new("q", Type::Bool);
    let m = Var::new("m", Type::Nat);
    let p = Var::new("p", nb.clone());
    let base = Term::lam(
        y.clone(),
        Term::rec(
            Type::Bool,
            y.term(),
            Term::True,
            Term::lams(&[n.clone(), q.clone()], Term::False),
        ),
    );
    let step = Term::lams(
        &[m, p.clone(), y.clone()],
        Term::rec(
            Type::Bool,
            y.term(),
            Term::False,
            Term::lams(&[n.clone(), q], Term::app(p.term(), n.term())),
        ),
    );
    Term::lam(x.clone(), Term::rec(nb, x.term(), base, step))
}

pub fn make_equality(ty: &Type) -> Result<Term, KernelError> {
    match ty {
        Type::Nat => Ok(eq_nat()),
        Type::Bool => Ok(eq_bool()),
        other => Err(KernelError::NotBaseType(other.clone())),
    }
}

/// `0`, `false`, or the constant function into the codomain's inhabitant.
pub fn canonical_inhabitant(ty: &Type) -> Term {
    match ty {
        Type::Nat => Term::Zero,
        Type::Bool => Term::False,
        Type::Arrow(d, c) => Term::lam(Var::new("x", (**d).clone()), canonical_inhabitant(c)),
    }
}

pub(crate) fn base_stem(name: &str) -> &str {
    let s = stem_of(name);
    let t = s.trim_end_matches(|c: char| c.is_ascii_digit());
    if t.is_empty() {
        "v"
    } else {
        t
    }
}

pub(crate) fn is_generated(name: &str) -> bool {
    stem_of(name).len() != name.len()
}

/// Renames bound variables and generated free variables of a tuple of terms
/// deterministically, so that printed output does not depend on the global
/// fresh-name counter. User-named free variables are kept.
pub fn canonical_names(ts: &[Term]) -> Vec<Term> {
    let mut taken: BTreeSet<Arc<str>> = BTreeSet::new();
    for t in ts {
        for v in t.free_vars() {
            if !is_generated(&v.name) {
                taken.insert(v.name.clone());
            }
        }
    }
    let mut st = Canon {
        taken,
        free: HashMap::new(),
        counter: 0,
    };
    ts.iter().map(|t| st.go(t, &mut Vec::new())).collect()
}

struct Canon {
    taken: BTreeSet<Arc<str>>,
    free: HashMap<Var, Var>,
    counter: usize,
}

impl Canon {
    fn next_name(&mut self, stem: &str, ty: &Type, sep: &str) -> Var {
        loop {
            let name: Arc<str> = format!("{stem}{sep}{}", self.counter).into();
            self.counter += 1;
            if !self.taken.contains(&name) {
                self.taken.insert(name.clone());
                return Var::new(name, ty.clone());
            }
        }
    }

    fn go(&mut self, t: &Term, bound: &mut Vec<(Var, Var)>) -> Term {
        match t {
            Term::Var(v) => {
                if let Some((_, w)) = bound.iter().rev().find(|(b, _)| b == v) {
                    return w.term();
                }
                if !is_generated(&v.name) {
                    return t.clone();
                }
                if let Some(w) = self.free.get(v) {
                    return w.term();
                }
                let w = self.next_name(base_stem(&v.name), &v.ty, "_");
                self.free.insert(v.clone(), w.clone());
                w.term()
            }
            Term::Lam(x, b) => {
                let w = self.next_name(base_stem(&x.name), &x.ty, "");
                bound.push((x.clone(), w.clone()));
                let body = self.go(b, bound);
                bound.pop();
                Term::lam(w, body)
            }
            Term::App(f, a) => {
                let f = self.go(f, bound);
                let a = self.go(a, bound);
                Term::app(f, a)
            }
            _ => t.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeral_evaluates() {
        assert_eq!(eval_ground(&Term::numeral(2)).unwrap(), Ground::Nat(2));
    }

    #[test]
    fn equality_terms_have_expected_types() {
        let bbb = Type::curried([&Type::Bool, &Type::Bool], Type::Bool);
        let nnb = Type::curried([&Type::Nat, &Type::Nat], Type::Bool);
        assert_eq!(eq_bool().type_of().unwrap(), bbb);
        assert_eq!(eq_nat().type_of().unwrap(), nnb);
    }

    #[test]
    fn higher_equality_is_rejected() {
        let nn = Type::arrow(Type::Nat, Type::Nat);
        assert!(matches!(make_equality(&nn), Err(KernelError::NotBaseType(_))));
    }

    #[test]
    fn open_and_higher_terms_do_not_evaluate() {
        assert!(matches!(
            eval_ground(&Term::var("x", Type::Nat)),
            Err(KernelError::NotClosed(_))
        ));
        assert!(matches!(eval_ground(&Term::Succ), Err(KernelError::NotGround(_))));
    }

    #[test]
    fn inhabitants() {
        assert_eq!(canonical_inhabitant(&Type::Nat), Term::Zero);
        assert_eq!(canonical_inhabitant(&Type::Bool), Term::False);
        let nn = Type::arrow(Type::Nat, Type::Nat);
        let c = canonical_inhabitant(&nn);
        assert_eq!(c.type_of().unwrap(), nn);
        assert!(c.alpha_eq(&Term::lam(Var::new("y", Type::Nat), Term::Zero)));
    }

    #[test]
    fn canonical_names_are_stable() {
        let a = crate::kernel::fresh_var("x", Type::Nat);
        let b = crate::kernel::fresh_var("x", Type::Nat);
        let t1 = Term::lam(a.clone(), a.term());
        let t2 = Term::lam(b.clone(), b.term());
        assert_eq!(canonical_names(&[t1]), canonical_names(&[t2]));
    }
}
