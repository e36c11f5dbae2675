//! First-order matching of formulas against patterns with parameters,
//! modulo renaming of bound variables. Plain α-equality is matching with no
//! parameters.

use std::collections::HashMap;

use super::Formula;
use crate::kernel::{Term, Var};

pub(crate) struct Matcher<'p> {
    params: &'p [Var],
    pub(crate) bindings: HashMap<Var, Term>,
    pairs: Vec<(Var, Var)>,
}

impl<'p> Matcher<'p> {
    pub(crate) fn new(params: &'p [Var]) -> Matcher<'p> {
        Matcher {
            params,
            bindings: HashMap::new(),
            pairs: Vec::new(),
        }
    }

    fn bound_right(&self, v: &Var) -> bool {
        self.pairs.iter().any(|(_, r)| r == v)
    }

    pub(crate) fn term(&mut self, p: &Term, t: &Term) -> bool {
        match (p, t) {
            (Term::Var(x), _) => {
                if let Some((_, r)) = self.pairs.iter().rev().find(|(l, _)| l == x) {
                    let r = r.clone();
                    return match t {
                        Term::Var(y) => {
                            let innermost = self.pairs.iter().rev().find(|(_, rr)| rr == y);
                            *y == r && innermost.map(|(l, _)| l == x).unwrap_or(false)
                        }
                        _ => false,
                    };
                }
                if self.params.contains(x) {
                    if t.free_vars().iter().any(|v| self.bound_right(v)) {
                        return false;
                    }
                    if let Ok(ty) = t.type_of() {
                        if ty != x.ty {
                            return false;
                        }
                    }
                    return match self.bindings.get(x) {
                        Some(prev) => prev.alpha_eq(t),
                        None => {
                            self.bindings.insert(x.clone(), t.clone());
                            true
                        }
                    };
                }
                matches!(t, Term::Var(y) if y == x && !self.bound_right(y))
            }
            (Term::Lam(x, bx), Term::Lam(y, by)) => {
                if x.ty != y.ty {
                    return false;
                }
                self.pairs.push((x.clone(), y.clone()));
                let r = self.term(bx, by);
                self.pairs.pop();
                r
            }
            (Term::App(f, a), Term::App(g, b)) => self.term(f, g) && self.term(a, b),
            _ => p == t,
        }
    }

    pub(crate) fn formula(&mut self, p: &Formula, a: &Formula) -> bool {
        match (p, a) {
            (Formula::Atom(s), Formula::Atom(t)) => self.term(s, t),
            (Formula::Imp(p1, p2), Formula::Imp(a1, a2))
            | (Formula::And(p1, p2), Formula::And(a1, a2)) => {
                self.formula(p1, a1) && self.formula(p2, a2)
            }
            (Formula::Box(p1), Formula::Box(a1)) => self.formula(p1, a1),
            (Formula::Forall(q, x, pb), Formula::Forall(r, y, ab)) => {
                if q != r || x.ty != y.ty {
                    return false;
                }
                self.pairs.push((x.clone(), y.clone()));
                let ok = self.formula(pb, ab);
                self.pairs.pop();
                ok
            }
            _ => false,
        }
    }
}
