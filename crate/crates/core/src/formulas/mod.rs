//! Formulas of the pseudo-modal arithmetics: atoms are boolean terms, and
//! derived connectives are stored in unfolded form.

mod decidable;
mod matching;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use decidable::{DecidableEntry, DecidableRegistry};
pub(crate) use matching::Matcher;

use crate::kernel::ops::{base_stem, is_generated};
use crate::kernel::{fresh_var, make_equality, normalize, KernelError, Subst, Term, Type, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum QuantFlavor {
    Full,
    Plus,
    Minus,
    NonComp,
}

impl QuantFlavor {
    pub const ALL: [QuantFlavor; 4] = [
        QuantFlavor::Full,
        QuantFlavor::Plus,
        QuantFlavor::Minus,
        QuantFlavor::NonComp,
    ];

    pub fn from_keyword(s: &str) -> Option<QuantFlavor> {
        QuantFlavor::ALL.into_iter().find(|q| q.keyword() == s)
    }

    /// Whether the quantified variable is visible to realizers.
    pub fn computational_for_witnesses(self) -> bool {
        matches!(self, QuantFlavor::Full | QuantFlavor::Plus)
    }

    /// Whether the quantified variable becomes a challenge.
    pub fn computational_for_challenges(self) -> bool {
        matches!(self, QuantFlavor::Full | QuantFlavor::Minus)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Atom(Term),
    Imp(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Forall(QuantFlavor, Var, Arc<Formula>),
    Box(Arc<Formula>),
}

/// The four formula languages.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LanguageTag {
    /// Plain arithmetic: full quantifiers, no box.
    V,
    /// Modal: full quantifiers and box.
    M,
    /// Light modal: all quantifier flavors and box.
    ML,
    /// Light: all quantifier flavors, no box.
    L,
}

impl LanguageTag {
    pub fn allows_box(self) -> bool {
        matches!(self, LanguageTag::M | LanguageTag::ML)
    }

    pub fn allows_flavor(self, q: QuantFlavor) -> bool {
        q == QuantFlavor::Full || matches!(self, LanguageTag::ML | LanguageTag::L)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("language violation: {0}")]
    LanguageViolation(String),
    #[error("not quantifier free: {0}")]
    NotQuantifierFree(String),
    #[error("unknown connective {0}")]
    UnknownConnective(String),
    #[error("connective {name} expects {expected} arguments")]
    Arity { name: String, expected: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Syntactic irrelevance flags.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Irrelevance {
    /// Witness tuple is empty.
    pub realization: bool,
    /// Challenge tuple is empty.
    pub refutation: bool,
}

impl Formula {
    /// Atom over a boolean term, taken as is.
    pub fn atom(t: Term) -> Formula {
        Formula::Atom(t)
    }

    /// Atom over the normal form of `t`.
    pub fn atom_nf(t: &Term) -> Result<Formula, KernelError> {
        Ok(Formula::Atom(normalize(t)?))
    }

    pub fn falsum() -> Formula {
        Formula::Atom(Term::False)
    }

    pub fn verum() -> Formula {
        Formula::Atom(Term::True)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn forall(q: QuantFlavor, x: Var, body: Formula) -> Formula {
        Formula::Forall(q, x, Arc::new(body))
    }

    pub fn all(x: Var, body: Formula) -> Formula {
        Formula::forall(QuantFlavor::Full, x, body)
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    /// `¬A :≡ A → ⊥`
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::falsum())
    }

    /// `∃⋄x A :≡ ¬∀⋄x ¬A`
    pub fn exists(q: QuantFlavor, x: Var, a: Formula) -> Formula {
        Formula::not(Formula::forall(q, x, Formula::not(a)))
    }

    /// Weak possibility `◇̃A :≡ ¬□¬A`.
    pub fn weak_diamond(a: Formula) -> Formula {
        Formula::not(Formula::boxed(Formula::not(a)))
    }

    /// Kreisel implication `A →_k B :≡ □A → B`.
    pub fn kreisel_imp(a: Formula, b: Formula) -> Formula {
        Formula::imp(Formula::boxed(a), b)
    }

    /// Extensional equality at type `ty`, by pointwise quantification at arrows.
    pub fn equality(ty: &Type, s: Term, t: Term) -> Result<Formula, KernelError> {
        match ty {
            Type::Arrow(d, c) => {
                let x = fresh_var("e", (**d).clone());
                let body = Formula::equality(c, Term::app(s, x.term()), Term::app(t, x.term()))?;
                Ok(Formula::all(x, body))
            }
            base => Formula::atom_nf(&Term::apps(make_equality(base)?, [s, t])),
        }
    }

    pub fn is_falsum(&self) -> bool {
        matches!(self, Formula::Atom(Term::False))
    }

    /// `Some(A)` if this is `A → ⊥`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if b.is_falsum() => Some(a),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(t) => {
                for v in t.free_vars() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Imp(a, b) | Formula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(_, x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Formula::Box(a) => a.collect_free(bound, out),
        }
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self {
            Formula::Atom(t) => t.has_free(v),
            Formula::Imp(a, b) | Formula::And(a, b) => a.has_free(v) || b.has_free(v),
            Formula::Forall(_, x, b) => x != v && b.has_free(v),
            Formula::Box(a) => a.has_free(v),
        }
    }

    /// Capture-avoiding simultaneous substitution; atoms are renormalized.
    pub fn subst(&self, s: &Subst) -> Result<Formula, KernelError> {
        if s.is_empty() {
            return Ok(self.clone());
        }
        let avoid = s.range_free_vars();
        self.subst_go(s, &avoid, true)
    }

    /// Substitution that leaves atoms unnormalized. Meant for renamings.
    pub fn rename(&self, s: &Subst) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        let avoid = s.range_free_vars();
        self.subst_go(s, &avoid, false)
            .expect("renaming does not normalize")
    }

    fn subst_go(&self, s: &Subst, avoid: &BTreeSet<Var>, nf: bool) -> Result<Formula, KernelError> {
        Ok(match self {
            Formula::Atom(t) => {
                if !s.domain().any(|x| t.has_free(x)) {
                    return Ok(self.clone());
                }
                let r = s.apply(t);
                Formula::Atom(if nf { normalize(&r)? } else { r })
            }
            Formula::Imp(a, b) => Formula::imp(a.subst_go(s, avoid, nf)?, b.subst_go(s, avoid, nf)?),
            Formula::And(a, b) => Formula::and(a.subst_go(s, avoid, nf)?, b.subst_go(s, avoid, nf)?),
            Formula::Box(a) => Formula::boxed(a.subst_go(s, avoid, nf)?),
            Formula::Forall(q, x, b) => {
                let inner = s.without(x);
                if inner.is_empty() || !inner.domain().any(|y| b.has_free(y)) {
                    return Ok(self.clone());
                }
                if avoid.contains(x) {
                    let x2 = fresh_var(x.stem(), x.ty.clone());
                    let mut renamed = inner;
                    renamed.insert(x.clone(), x2.term());
                    let mut avoid2 = avoid.clone();
                    avoid2.insert(x2.clone());
                    Formula::forall(*q, x2, b.subst_go(&renamed, &avoid2, nf)?)
                } else {
                    Formula::forall(*q, x.clone(), b.subst_go(&inner, avoid, nf)?)
                }
            }
        })
    }

    /// `A[x ↦ t]`; fails if `t` does not have the type of `x`.
    pub fn subst1(&self, x: &Var, t: &Term) -> Result<Formula, KernelError> {
        let s = Subst::single(x.clone(), t.clone());
        s.check_types()?;
        self.subst(&s)
    }

    /// Renames generated bound variables (quantifier and lambda binders)
    /// deterministically, so that printing does not depend on the global
    /// fresh-name counter.
    pub fn canonical_bound(&self) -> Formula {
        let mut taken: BTreeSet<Arc<str>> = BTreeSet::new();
        self.collect_names(&mut taken);
        let mut c = BoundCanon { taken, counter: 0 };
        c.formula(self, &Subst::new())
    }

    fn collect_names(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(t) => {
                for v in t.free_vars() {
                    out.insert(v.name);
                }
            }
            Formula::Imp(a, b) | Formula::And(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Forall(_, x, b) => {
                out.insert(x.name.clone());
                b.collect_names(out);
            }
            Formula::Box(a) => a.collect_names(out),
        }
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        Matcher::new(&[]).formula(self, other)
    }

    /// Every atom in normal form. Atoms whose normalization fails are kept.
    pub fn normal_form(&self) -> Formula {
        match self {
            Formula::Atom(t) => Formula::atom_nf(t).unwrap_or_else(|_| self.clone()),
            Formula::Imp(a, b) => Formula::imp(a.normal_form(), b.normal_form()),
            Formula::And(a, b) => Formula::and(a.normal_form(), b.normal_form()),
            Formula::Forall(q, x, b) => Formula::forall(*q, x.clone(), b.normal_form()),
            Formula::Box(a) => Formula::boxed(a.normal_form()),
        }
    }

    /// α-equality up to normalization of atoms.
    pub fn equiv(&self, other: &Formula) -> bool {
        self.alpha_eq(other) || self.normal_form().alpha_eq(&other.normal_form())
    }

    pub fn contains_box(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Imp(a, b) | Formula::And(a, b) => a.contains_box() || b.contains_box(),
            Formula::Forall(_, _, b) => b.contains_box(),
            Formula::Box(_) => true,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Imp(a, b) | Formula::And(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Forall(..) | Formula::Box(_) => false,
        }
    }

    /// True if some quantifier of one of the given flavors occurs.
    pub fn mentions_flavor(&self, qs: &[QuantFlavor]) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Imp(a, b) | Formula::And(a, b) => a.mentions_flavor(qs) || b.mentions_flavor(qs),
            Formula::Forall(q, _, b) => qs.contains(q) || b.mentions_flavor(qs),
            Formula::Box(a) => a.mentions_flavor(qs),
        }
    }

    /// Checks membership in a language and that every atom is a boolean term.
    pub fn check_language(&self, lang: LanguageTag) -> Result<(), FormulaError> {
        match self {
            Formula::Atom(t) => {
                let ty = t.type_of()?;
                if ty != Type::Bool {
                    return Err(KernelError::TypeMismatch {
                        expected: Type::Bool,
                        found: ty,
                        context: format!("atom {t}"),
                    }
                    .into());
                }
                Ok(())
            }
            Formula::Imp(a, b) | Formula::And(a, b) => {
                a.check_language(lang)?;
                b.check_language(lang)
            }
            Formula::Forall(q, _, b) => {
                if !lang.allows_flavor(*q) {
                    return Err(FormulaError::LanguageViolation(format!(
                        "quantifier {} not allowed in {lang:?}",
                        q.keyword()
                    )));
                }
                b.check_language(lang)
            }
            Formula::Box(a) => {
                if !lang.allows_box() {
                    return Err(FormulaError::LanguageViolation(format!(
                        "box not allowed in {lang:?}"
                    )));
                }
                a.check_language(lang)
            }
        }
    }

    pub fn belongs_to(&self, lang: LanguageTag) -> bool {
        self.check_language(lang).is_ok()
    }

    pub fn irrelevance(&self) -> Irrelevance {
        Irrelevance {
            realization: self.realization_irrelevant(),
            refutation: self.refutation_irrelevant(),
        }
    }

    pub fn realization_irrelevant(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::And(a, b) => a.realization_irrelevant() && b.realization_irrelevant(),
            Formula::Imp(a, b) => a.refutation_irrelevant() && b.realization_irrelevant(),
            Formula::Forall(_, _, b) => b.realization_irrelevant(),
            Formula::Box(a) => a.realization_irrelevant(),
        }
    }

    pub fn refutation_irrelevant(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::And(a, b) => a.refutation_irrelevant() && b.refutation_irrelevant(),
            Formula::Imp(a, b) => a.realization_irrelevant() && b.refutation_irrelevant(),
            Formula::Forall(q, _, b) => {
                !q.computational_for_challenges() && b.refutation_irrelevant()
            }
            Formula::Box(_) => true,
        }
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::Atom(t) => f(t),
            Formula::Imp(a, b) | Formula::And(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Forall(_, _, b) => b.visit_atoms(f),
            Formula::Box(a) => a.visit_atoms(f),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Imp(a, b) | Formula::And(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, _, b) => 1 + b.size(),
            Formula::Box(a) => 1 + a.size(),
        }
    }
}

/// Unfolds a named connective in the given language.
pub fn desugar(name: &str, args: &[Formula], binder: Option<Var>, lang: LanguageTag) -> Result<Formula, FormulaError> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(FormulaError::Arity {
                name: name.to_string(),
                expected: n,
            })
        }
    };
    let out = match name {
        "not" => {
            arity(1)?;
            Formula::not(args[0].clone())
        }
        "notnot" => {
            arity(1)?;
            Formula::not(Formula::not(args[0].clone()))
        }
        "exists" | "exists+" | "exists-" | "existsnc" => {
            arity(1)?;
            let q = match name {
                "exists" => QuantFlavor::Full,
                "exists+" => QuantFlavor::Plus,
                "exists-" => QuantFlavor::Minus,
                _ => QuantFlavor::NonComp,
            };
            let x = binder.ok_or_else(|| FormulaError::Arity {
                name: name.to_string(),
                expected: 1,
            })?;
            Formula::exists(q, x, args[0].clone())
        }
        "weak-diamond" => {
            arity(1)?;
            Formula::weak_diamond(args[0].clone())
        }
        "kreisel-imp" => {
            arity(2)?;
            Formula::kreisel_imp(args[0].clone(), args[1].clone())
        }
        other => return Err(FormulaError::UnknownConnective(other.to_string())),
    };
    out.check_language(lang)?;
    Ok(out)
}

/// Compiles a quantifier-free formula to a boolean term with the same truth
/// value under every ground instantiation.
pub fn compile_qf_to_bool(a: &Formula) -> Result<Term, FormulaError> {
    compile_with(a, &DecidableRegistry::default())
}

/// As [`compile_qf_to_bool`], additionally replacing quantified subformulas
/// that match a registered decider.
pub fn compile_with(a: &Formula, reg: &DecidableRegistry) -> Result<Term, FormulaError> {
    match a {
        Formula::Atom(t) => Ok(t.clone()),
        Formula::And(l, r) => Ok(Term::if_then(
            Type::Bool,
            compile_with(l, reg)?,
            compile_with(r, reg)?,
            Term::False,
        )),
        Formula::Imp(l, r) => Ok(Term::if_then(
            Type::Bool,
            compile_with(l, reg)?,
            compile_with(r, reg)?,
            Term::True,
        )),
        Formula::Forall(..) | Formula::Box(_) => match reg.decider_for(a) {
            Some(d) => Ok(d),
            None => Err(FormulaError::NotQuantifierFree(a.to_string())),
        },
    }
}

struct BoundCanon {
    taken: BTreeSet<Arc<str>>,
    counter: usize,
}

impl BoundCanon {
    fn rename(&mut self, x: &Var) -> Option<Var> {
        if !is_generated(&x.name) {
            return None;
        }
        loop {
            let name: Arc<str> = format!("{}{}", base_stem(&x.name), self.counter).into();
            self.counter += 1;
            if self.taken.insert(name.clone()) {
                return Some(Var::new(name, x.ty.clone()));
            }
        }
    }

    fn formula(&mut self, a: &Formula, s: &Subst) -> Formula {
        match a {
            Formula::Atom(t) => Formula::Atom(self.term(&s.apply(t))),
            Formula::Imp(l, r) => Formula::imp(self.formula(l, s), self.formula(r, s)),
            Formula::And(l, r) => Formula::and(self.formula(l, s), self.formula(r, s)),
            Formula::Box(b) => Formula::boxed(self.formula(b, s)),
            Formula::Forall(q, x, b) => match self.rename(x) {
                Some(y) => {
                    let mut s2 = s.clone();
                    s2.insert(x.clone(), y.term());
                    Formula::forall(*q, y, self.formula(b, &s2))
                }
                None => Formula::forall(*q, x.clone(), self.formula(b, &s.without(x))),
            },
        }
    }

    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Lam(x, b) => match self.rename(x) {
                Some(y) => {
                    let body = Subst::single(x.clone(), y.term()).apply(b);
                    Term::lam(y, self.term(&body))
                }
                None => Term::lam(x.clone(), self.term(b)),
            },
            Term::App(f, a) => Term::app(self.term(f), self.term(a)),
            _ => t.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{eq_nat, eval_ground, Ground};

    fn p() -> Var {
        Var::new("P", Type::arrow(Type::Nat, Type::Bool))
    }

    fn px(x: &Var) -> Formula {
        Formula::atom(Term::app(p().term(), x.term()))
    }

    #[test]
    fn negation_unfolds_to_falsum() {
        let t = Formula::atom(Term::var("b", Type::Bool));
        assert_eq!(
            desugar("not", std::slice::from_ref(&t), None, LanguageTag::V).unwrap(),
            Formula::imp(t, Formula::falsum())
        );
    }

    #[test]
    fn diamond_rejected_in_plain_language() {
        let t = Formula::verum();
        assert!(matches!(
            desugar("weak-diamond", &[t], None, LanguageTag::V),
            Err(FormulaError::LanguageViolation(_))
        ));
    }

    #[test]
    fn kreisel_implication_boxes_premise() {
        let a = Formula::verum();
        let b = Formula::falsum();
        let k = desugar("kreisel-imp", &[a.clone(), b.clone()], None, LanguageTag::M).unwrap();
        assert_eq!(k, Formula::imp(Formula::boxed(a), b));
    }

    #[test]
    fn free_variables() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let eq = Formula::atom(Term::apps(eq_nat(), [x.term(), y.term()]));
        assert_eq!(eq.free_vars(), [x.clone(), y.clone()].into_iter().collect());
        let all = Formula::all(x.clone(), eq);
        assert_eq!(all.free_vars(), [y].into_iter().collect());
        let bx = Formula::boxed(Formula::all(x.clone(), px(&x)));
        assert_eq!(bx.free_vars(), [p()].into_iter().collect());
    }

    #[test]
    fn substitution_normalizes_and_respects_binders() {
        let x = Var::new("x", Type::Nat);
        let a = px(&x);
        let r = a.subst1(&x, &Term::succ(Term::Zero)).unwrap();
        assert_eq!(r, Formula::atom(Term::app(p().term(), Term::numeral(1))));
        let bound = Formula::all(x.clone(), px(&x));
        assert_eq!(bound.subst1(&x, &Term::Zero).unwrap(), bound);
        assert!(a.subst1(&x, &Term::True).is_err());
    }

    #[test]
    fn substitution_avoids_capture() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let r = Var::new("R", Type::curried([&Type::Nat, &Type::Nat], Type::Bool));
        let body = Formula::atom(Term::apps(r.term(), [x.term(), y.term()]));
        let a = Formula::all(y.clone(), body);
        let out = a.subst1(&x, &y.term()).unwrap();
        assert!(out.has_free(&y));
        match out {
            Formula::Forall(_, b, _) => assert_ne!(b, y),
            _ => panic!(),
        }
    }

    #[test]
    fn irrelevance_examples() {
        let x = Var::new("x", Type::Nat);
        assert_eq!(
            Formula::verum().irrelevance(),
            Irrelevance { realization: true, refutation: true }
        );
        let all = Formula::all(x.clone(), px(&x));
        assert!(Formula::boxed(all.clone()).refutation_irrelevant());
        assert_eq!(all.irrelevance(), Irrelevance { realization: true, refutation: false });
        let nc = Formula::forall(QuantFlavor::NonComp, x.clone(), px(&x));
        assert!(nc.refutation_irrelevant());
        let minus = Formula::forall(QuantFlavor::Minus, x.clone(), px(&x));
        assert!(!minus.refutation_irrelevant());
    }

    #[test]
    fn conjunction_compiles_to_truth_table() {
        let a = Var::new("a", Type::Bool);
        let b = Var::new("b", Type::Bool);
        let f = Formula::and(Formula::atom(a.term()), Formula::atom(b.term()));
        let t = compile_qf_to_bool(&f).unwrap();
        assert_eq!(t.free_vars(), f.free_vars());
        for va in [false, true] {
            for vb in [false, true] {
                let s = Subst::from_pairs([
                    (a.clone(), Term::bool_const(va)),
                    (b.clone(), Term::bool_const(vb)),
                ]);
                assert_eq!(eval_ground(&s.apply(&t)).unwrap(), Ground::Bool(va && vb));
            }
        }
    }

    #[test]
    fn quantified_formula_does_not_compile() {
        let x = Var::new("x", Type::Nat);
        assert!(matches!(
            compile_qf_to_bool(&Formula::all(x.clone(), px(&x))),
            Err(FormulaError::NotQuantifierFree(_))
        ));
    }

    #[test]
    fn language_membership() {
        let x = Var::new("x", Type::Nat);
        let plus = Formula::forall(QuantFlavor::Plus, x.clone(), px(&x));
        assert!(plus.belongs_to(LanguageTag::ML));
        assert!(plus.belongs_to(LanguageTag::L));
        assert!(!plus.belongs_to(LanguageTag::M));
        let bx = Formula::boxed(px(&x));
        assert!(bx.belongs_to(LanguageTag::M));
        assert!(!bx.belongs_to(LanguageTag::L));
        assert!(!bx.belongs_to(LanguageTag::V));
    }

    #[test]
    fn alpha_equality_of_formulas() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        assert!(Formula::all(x.clone(), px(&x)).alpha_eq(&Formula::all(y.clone(), px(&y))));
        assert!(!Formula::all(x.clone(), px(&y)).alpha_eq(&Formula::all(y.clone(), px(&y))));
    }
}
