use std::collections::BTreeSet;
use std::sync::Arc;

use super::{fresh_var, KernelError, Term, Var};

/// A simultaneous substitution `[x1 ↦ s1, ..., xn ↦ sn]`.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    pairs: Vec<(Var, Term)>,
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    pub fn single(x: Var, s: Term) -> Subst {
        Subst { pairs: vec![(x, s)] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, Term)>>(it: I) -> Subst {
        let mut s = Subst::new();
        for (x, t) in it {
            s.insert(x, t);
        }
        s
    }

    /// Renaming `xs[i] ↦ ys[i]`.
    pub fn renaming(xs: &[Var], ys: &[Var]) -> Subst {
        Subst::from_pairs(xs.iter().cloned().zip(ys.iter().map(Var::term)))
    }

    pub fn insert(&mut self, x: Var, t: Term) {
        if let Some(p) = self.pairs.iter_mut().find(|(y, _)| *y == x) {
            p.1 = t;
        } else {
            self.pairs.push((x, t));
        }
    }

    /// Both substitutions at once; entries of `other` win on overlap.
    pub fn union(mut self, other: Subst) -> Subst {
        for (x, t) in other.pairs {
            self.insert(x, t);
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, x: &Var) -> Option<&Term> {
        self.pairs.iter().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.pairs.iter().map(|(x, _)| x)
    }

    pub fn without(&self, x: &Var) -> Subst {
        Subst {
            pairs: self.pairs.iter().filter(|(y, _)| y != x).cloned().collect(),
        }
    }

    /// Free variables of the range terms.
    pub fn range_free_vars(&self) -> BTreeSet<Var> {
        self.pairs
            .iter()
            .flat_map(|(_, t)| t.free_vars())
            .collect()
    }

    /// Checks that each replacement has the type of its variable.
    pub fn check_types(&self) -> Result<(), KernelError> {
        for (x, t) in &self.pairs {
            let ty = t.type_of()?;
            if ty != x.ty {
                return Err(KernelError::TypeMismatch {
                    expected: x.ty.clone(),
                    found: ty,
                    context: format!("substitution for {}", x.name),
                });
            }
        }
        Ok(())
    }

    /// Capture-avoiding application to a term. No normalization.
    pub fn apply(&self, t: &Term) -> Term {
        if self.is_empty() {
            return t.clone();
        }
        let avoid = self.range_free_vars();
        self.go(t, &avoid)
    }

    fn go(&self, t: &Term, avoid: &BTreeSet<Var>) -> Term {
        match t {
            Term::Var(v) => self.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, a) => Term::App(Arc::new(self.go(f, avoid)), Arc::new(self.go(a, avoid))),
            Term::Lam(x, body) => {
                let inner = self.without(x);
                if inner.is_empty() {
                    return t.clone();
                }
                // Only variables of the substitution that actually occur below matter.
                let relevant = inner.pairs.iter().any(|(y, _)| body.has_free(y));
                if !relevant {
                    return t.clone();
                }
                if avoid.contains(x) {
                    let x2 = fresh_var(x.stem(), x.ty.clone());
                    let mut renamed = inner.clone();
                    renamed.insert(x.clone(), x2.term());
                    let mut avoid2 = avoid.clone();
                    avoid2.insert(x2.clone());
                    Term::Lam(x2, Arc::new(renamed.go(body, &avoid2)))
                } else {
                    Term::Lam(x.clone(), Arc::new(inner.go(body, avoid)))
                }
            }
            _ => t.clone(),
        }
    }
}

/// `t[x ↦ s]`, capture-avoiding. Fails if `s` does not have the type of `x`.
pub fn substitute(t: &Term, x: &Var, s: &Term) -> Result<Term, KernelError> {
    let sub = Subst::single(x.clone(), s.clone());
    sub.check_types()?;
    Ok(sub.apply(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Type;

    #[test]
    fn replaces_free_occurrence() {
        let x = Var::new("x", Type::Nat);
        assert_eq!(substitute(&x.term(), &x, &Term::Zero).unwrap(), Term::Zero);
        let t = Term::succ(x.term());
        assert_eq!(
            substitute(&t, &x, &Term::numeral(1)).unwrap(),
            Term::numeral(2)
        );
    }

    #[test]
    fn renames_binder_to_avoid_capture() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let t = Term::lam(y.clone(), x.term());
        let r = substitute(&t, &x, &y.term()).unwrap();
        match &r {
            Term::Lam(b, body) => {
                assert_ne!(*b, y);
                assert_eq!(b.stem(), "y");
                assert_eq!(**body, y.term());
            }
            other => panic!("expected lambda, got {other:?}"),
        }
        assert_eq!(r.free_vars().into_iter().collect::<Vec<_>>(), vec![y]);
    }

    #[test]
    fn bound_variable_is_not_replaced() {
        let x = Var::new("x", Type::Nat);
        let t = Term::lam(x.clone(), x.term());
        assert_eq!(substitute(&t, &x, &Term::Zero).unwrap(), t);
    }

    #[test]
    fn type_mismatch_is_rejected() {
        let x = Var::new("x", Type::Nat);
        assert!(substitute(&x.term(), &x, &Term::True).is_err());
    }

    #[test]
    fn simultaneous_swap() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let t = Term::apps(Term::var("f", Type::curried([&Type::Nat, &Type::Nat], Type::Nat)), [x.term(), y.term()]);
        let s = Subst::from_pairs([(x.clone(), y.term()), (y.clone(), x.term())]);
        let r = s.apply(&t);
        let (_, args) = r.spine();
        assert_eq!(*args[0], y.term());
        assert_eq!(*args[1], x.term());
    }
}
