//! Searches over tabulated candidate realizers.

use std::fmt;
use std::rc::Rc;

use super::eval::{Env, Value};
use super::{search, Counterexample, Domain, Query, Space, VerifyError};
use crate::dialectica::{translate, Flavor, Translation};
use crate::formulas::{Formula, LanguageTag};
use crate::kernel::{fresh_var, Term, Type, Var};

/// One candidate realizer and the assignment that defeats it, if found.
#[derive(Clone, Debug)]
pub struct Refutation {
    pub candidate: Vec<(Var, Value)>,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct S5Outcome {
    pub formula: Formula,
    pub refutations: Vec<Refutation>,
}

impl S5Outcome {
    pub fn all_refuted(&self) -> bool {
        self.refutations.iter().all(|r| r.counterexample.is_some())
    }

    pub fn refuted(&self) -> usize {
        self.refutations.iter().filter(|r| r.counterexample.is_some()).count()
    }
}

impl fmt::Display for S5Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.refuted() == 0 {
            return write!(f, "no counterexample for necessary formula over {} candidates", self.refutations.len());
        }
        write!(f, "{}/{} candidates refuted", self.refuted(), self.refutations.len())?;
        for r in &self.refutations {
            let cand = render(&r.candidate);
            match &r.counterexample {
                Some(c) => write!(f, "\n  {cand}: {c}")?,
                None => write!(f, "\n  {cand}: survives")?,
            }
        }
        Ok(())
    }
}

fn render(xs: &[(Var, Value)]) -> String {
    xs.iter()
        .map(|(v, x)| format!("{} = {x}", v.name))
        .collect::<Vec<_>>()
        .join(", ")
}

fn flavor_for(a: &Formula) -> Flavor {
    if a.belongs_to(LanguageTag::M) {
        Flavor::Modal
    } else {
        Flavor::LightModal
    }
}

fn params_of(a: &Formula) -> Vec<Var> {
    a.free_vars().into_iter().collect()
}

/// Every tuple of assignable values for the given variables, in order.
fn tuples(space: &Space, vars: &[Var]) -> Vec<Vec<Value>> {
    let ranges: Vec<Rc<Vec<Value>>> = vars.iter().map(|v| space.assignable(&v.ty)).collect();
    let mut out = vec![vec![]];
    for r in &ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                r.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn fixed_env(vars: &[Var], vals: &[Value]) -> Env {
    Env::from_pairs(vars.iter().zip(vals))
}

/// Tries to defeat every tabulated realizer of `◇̃A → □◇̃A`. The translation
/// has shape `B(Ȳ₀) → ∀Ȳ B(Ȳ)` with `Ȳ` the challenges of `◇̃A`, so a
/// candidate is a value for `Ȳ₀` and a refutation an assignment making
/// `B(Ȳ₀)` true and some `B(Ȳ)` false.
pub fn refute_s5(a: &Formula, dom: &Domain) -> Result<S5Outcome, VerifyError> {
    let d = Formula::weak_diamond(a.clone());
    let tr = translate(&d, flavor_for(&d))?;
    if tr.challenges.is_empty() {
        return Err(VerifyError::NotRefutationRelevant(a.to_string()));
    }
    let space = Space::new(dom.clone());
    let cand: Vec<Var> = tr.challenges.iter().map(|y| fresh_var("k", y.ty.clone())).collect();
    let other: Vec<Var> = tr.challenges.iter().map(|y| fresh_var(y.stem(), y.ty.clone())).collect();
    let at = |vs: &[Var]| -> Result<Formula, VerifyError> {
        let ts: Vec<Term> = vs.iter().map(Var::term).collect();
        Ok(tr.instantiate(&[], &ts)?)
    };
    let hyp = [at(&cand)?];
    let goal = at(&other)?;
    let mut universals = params_of(&d);
    universals.extend(other.iter().cloned());
    let mut refutations = Vec::new();
    for vals in tuples(&space, &cand) {
        let report = search(
            &Query {
                fixed: fixed_env(&cand, &vals),
                universals: &universals,
                hypotheses: &hyp,
                goal: &goal,
            },
            &space,
        )?;
        refutations.push(Refutation {
            candidate: cand.iter().cloned().zip(vals).collect(),
            counterexample: report.counterexample,
        });
    }
    Ok(S5Outcome { formula: a.clone(), refutations })
}

/// Approximates `⊢ A → □A`. Refutation irrelevant formulas are necessary.
/// Otherwise `A → □A` is taken as realized when some tabulated challenger
/// `ḡ` makes `|A|^x̄_{ḡx̄} → |A|^x̄_ȳ` hold over the domain, with the
/// identity on witnesses.
pub fn necessary_formula_check(a: &Formula, dom: &Domain) -> Result<bool, VerifyError> {
    if a.refutation_irrelevant() {
        return Ok(true);
    }
    let tr: Translation = translate(a, flavor_for(a))?;
    let space = Space::new(dom.clone());
    let x_tys: Vec<Type> = tr.witness_types();
    let gs: Vec<Var> = tr
        .challenges
        .iter()
        .map(|y| fresh_var("g", Type::curried(x_tys.iter(), y.ty.clone())))
        .collect();
    let ys: Vec<Var> = tr.challenges.iter().map(|y| fresh_var(y.stem(), y.ty.clone())).collect();
    let xs: Vec<Term> = tr.witnesses.iter().map(Var::term).collect();
    let applied: Vec<Term> = gs.iter().map(|g| Term::apps(g.term(), xs.iter().cloned())).collect();
    let hyp = [tr.instantiate(&xs, &applied)?];
    let goal = tr.instantiate(&xs, &ys.iter().map(Var::term).collect::<Vec<_>>())?;
    let mut universals = params_of(a);
    universals.extend(tr.witnesses.iter().cloned());
    universals.extend(ys.iter().cloned());
    for vals in tuples(&space, &gs) {
        let report = search(
            &Query {
                fixed: fixed_env(&gs, &vals),
                universals: &universals,
                hypotheses: &hyp,
                goal: &goal,
            },
            &space,
        )?;
        if report.passed {
            return Ok(true);
        }
    }
    Ok(false)
}
