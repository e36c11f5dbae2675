use crate::kernel::{Subst, Term, Var};

use super::{Formula, Matcher};

/// A user-declared decidable formula scheme, optionally with a boolean
/// decider term over the same parameters.
#[derive(Clone, Debug)]
pub struct DecidableEntry {
    pub name: String,
    pub params: Vec<Var>,
    pub formula: Formula,
    pub decider: Option<Term>,
}

#[derive(Clone, Debug, Default)]
pub struct DecidableRegistry {
    entries: Vec<DecidableEntry>,
}

impl DecidableRegistry {
    pub fn new() -> DecidableRegistry {
        DecidableRegistry::default()
    }

    pub fn register(&mut self, e: DecidableEntry) {
        self.entries.push(e);
    }

    pub fn entries(&self) -> &[DecidableEntry] {
        &self.entries
    }

    fn find(&self, a: &Formula) -> Option<(&DecidableEntry, Subst)> {
        self.entries.iter().find_map(|e| {
            let mut m = Matcher::new(&e.params);
            if m.formula(&e.formula, a) {
                return Some((e, Subst::from_pairs(m.bindings)));
            }
            instantiate_by_search(e, a).map(|s| (e, s))
        })
    }

    pub fn is_registered(&self, a: &Formula) -> bool {
        self.find(a).is_some()
    }

    /// Instance of the decider matching `a`, if any.
    pub fn decider_for(&self, a: &Formula) -> Option<Term> {
        let (e, s) = self.find(a)?;
        e.decider.as_ref().map(|d| s.apply(d))
    }

    /// Atoms, boolean combinations, and registered quantified subformulas.
    pub fn is_decidable(&self, a: &Formula) -> bool {
        match a {
            Formula::Atom(_) => true,
            Formula::And(l, r) | Formula::Imp(l, r) => self.is_decidable(l) && self.is_decidable(r),
            Formula::Forall(..) | Formula::Box(_) => self.is_registered(a),
        }
    }
}

const SEARCH_LIMIT: usize = 4096;
const NUMERAL_CANDIDATES: u64 = 16;

/// Atoms are kept in normal form, so an instance may no longer match the
/// pattern syntactically once a parameter is replaced by a constructor term.
/// Falls back to trying subterms of `a` as parameter values.
fn instantiate_by_search(e: &DecidableEntry, a: &Formula) -> Option<Subst> {
    let fv = a.free_vars();
    let mut pool: Vec<Term> = Vec::new();
    a.visit_atoms(&mut |t| collect_subterms(t, &mut pool));
    pool.retain(|t| t.free_vars().is_subset(&fv));
    for v in &fv {
        pool.push(v.term());
        if v.ty == crate::kernel::Type::Nat {
            pool.push(Term::succ(v.term()));
        }
    }
    pool.extend((0..=NUMERAL_CANDIDATES).map(Term::numeral));
    pool.extend([Term::True, Term::False]);
    let mut per_param: Vec<Vec<Term>> = Vec::new();
    for p in &e.params {
        let c: Vec<Term> = pool
            .iter()
            .filter(|t| t.type_of().map(|ty| ty == p.ty).unwrap_or(false))
            .cloned()
            .collect();
        if c.is_empty() {
            return None;
        }
        per_param.push(c);
    }
    let total = per_param.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()))?;
    if total > SEARCH_LIMIT {
        return None;
    }
    for k in 0..total {
        let mut rest = k;
        let mut s = Subst::new();
        for (p, c) in e.params.iter().zip(&per_param) {
            s.insert(p.clone(), c[rest % c.len()].clone());
            rest /= c.len();
        }
        if let Ok(inst) = e.formula.subst(&s) {
            if inst.alpha_eq(a) {
                return Some(s);
            }
        }
    }
    None
}

fn collect_subterms(t: &Term, out: &mut Vec<Term>) {
    if !out.contains(t) {
        out.push(t.clone());
    }
    match t {
        Term::App(f, x) => {
            collect_subterms(f, out);
            collect_subterms(x, out);
        }
        Term::Lam(_, b) => collect_subterms(b, out),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::compile_with;
    use crate::kernel::{eval_ground, prelude, Ground, Type};

    /// `odd x :≡ ∀y ¬(x = 2y)`, decided by a parity recursion.
    fn odd_entry() -> DecidableEntry {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let two_y = Term::apps(prelude::lookup("times").unwrap(), [Term::numeral(2), y.term()]);
        let eq = Formula::atom_nf(&Term::apps(prelude::lookup("eqnat").unwrap(), [x.term(), two_y])).unwrap();
        let formula = Formula::all(y, Formula::not(eq));
        let n = Var::new("n", Type::Nat);
        let p = Var::new("p", Type::Bool);
        let parity = Term::rec(
            Type::Bool,
            x.term(),
            Term::False,
            Term::lams(&[n, p.clone()], Term::app(prelude::lookup("notb").unwrap(), p.term())),
        );
        DecidableEntry {
            name: "odd".into(),
            params: vec![x],
            formula,
            decider: Some(parity),
        }
    }

    #[test]
    fn registered_instance_is_decidable_and_compiles() {
        let mut reg = DecidableRegistry::new();
        let e = odd_entry();
        reg.register(e.clone());
        let inst = e.formula.subst1(&e.params[0], &Term::numeral(3)).unwrap();
        assert!(reg.is_decidable(&inst));
        let t = compile_with(&inst, &reg).unwrap();
        assert_eq!(eval_ground(&t).unwrap(), Ground::Bool(true));
        let other = e.formula.subst1(&e.params[0], &Term::numeral(4)).unwrap();
        let t = compile_with(&other, &reg).unwrap();
        assert_eq!(eval_ground(&t).unwrap(), Ground::Bool(false));
    }

    #[test]
    fn unregistered_quantifier_is_not_decidable() {
        let reg = DecidableRegistry::new();
        let e = odd_entry();
        assert!(!reg.is_decidable(&e.formula));
    }
}
