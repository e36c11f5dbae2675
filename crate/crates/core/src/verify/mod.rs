//! Bounded semantic checking of extraction obligations.
//!
//! Quantifiers range over a finite [`Domain`]: naturals up to a bound,
//! both booleans, and tabulated or sampled functions. A failed check is a
//! concrete assignment; a passed one is evidence, not proof.

mod candidates;
mod eval;
mod mutate;
mod space;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use candidates::{necessary_formula_check, refute_s5, Refutation, S5Outcome};
pub use eval::{apply, eval, holds, Budget, Env, EvalError, Fun, Universe, Value, DEFAULT_BUDGET};
pub use mutate::{mutate_obligation, mutator, mutators, Mutant, Mutator};
pub use space::Space;

use crate::extraction::Obligation;
use crate::formulas::{Formula, FormulaError};
use crate::kernel::{KernelError, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    /// Naturals range over `0..=nat_bound`.
    pub nat_bound: u64,
    pub seed: u64,
    /// Assignments drawn when the full product is too large; also the
    /// largest product of structured values tried first.
    pub samples: usize,
    /// Largest function space enumerated exhaustively.
    pub table_limit: usize,
    /// Tables are defined on `0..table_domain`; larger arguments read the last cell.
    pub table_domain: u64,
    /// Random tables drawn when a function space exceeds `table_limit`.
    pub random_tables: usize,
    /// Largest assignment product enumerated exhaustively.
    pub assignment_limit: usize,
    /// Function values offered to quantifiers inside formulas.
    pub inner_functions: usize,
    pub budget: u64,
}

impl Default for Domain {
    fn default() -> Domain {
        Domain {
            nat_bound: 5,
            seed: 0,
            samples: 4096,
            table_limit: 4096,
            table_domain: 4,
            random_tables: 256,
            assignment_limit: 200_000,
            inner_functions: 64,
            budget: 200_000,
        }
    }
}

impl Domain {
    pub fn with_nat_bound(nat_bound: u64) -> Domain {
        Domain {
            nat_bound,
            ..Domain::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("formula has no challenge tuple to refute: {0}")]
    NotRefutationRelevant(String),
}

/// A falsifying assignment.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub assignment: Vec<(Var, Value)>,
}

impl Counterexample {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.assignment.iter().find(|(v, _)| &*v.name == name).map(|(_, x)| x)
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.assignment.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} = {x}", v.name)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub passed: bool,
    /// Assignments evaluated.
    pub checked: usize,
    pub exhaustive: bool,
    pub nat_bound: u64,
    pub counterexample: Option<Counterexample>,
    pub warnings: Vec<String>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.exhaustive { "exhaustive" } else { "sampled" };
        if self.passed {
            write!(f, "pass ({} assignments, {mode}, nat bound {})", self.checked, self.nat_bound)?;
        } else {
            write!(f, "counterexample after {} assignments", self.checked)?;
            if let Some(c) = &self.counterexample {
                write!(f, ": {c}")?;
            }
        }
        for w in &self.warnings {
            write!(f, "\nwarning: {w}")?;
        }
        Ok(())
    }
}

/// `hypotheses → goal` over the universals.
pub(crate) struct Query<'a> {
    /// Bindings shared by every assignment.
    pub fixed: Env,
    pub universals: &'a [Var],
    pub hypotheses: &'a [Formula],
    pub goal: &'a Formula,
}

/// Searches for an assignment making every hypothesis true and the goal
/// false. Small products are walked in order with the first universal most
/// significant; larger ones are sampled with the domain seed.
pub(crate) fn search(q: &Query<'_>, space: &Space) -> Result<VerifyReport, VerifyError> {
    let dom = space.domain();
    let ranges: Vec<_> = q.universals.iter().map(|v| space.assignable(&v.ty)).collect();
    let total = ranges.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.len()));
    let exhaustive = matches!(total, Some(n) if n <= dom.assignment_limit);
    let mut report = VerifyReport {
        passed: true,
        checked: 0,
        exhaustive,
        nat_bound: dom.nat_bound,
        counterexample: None,
        warnings: space.warnings(),
    };
    if ranges.iter().any(|r| r.is_empty()) {
        return Ok(report);
    }
    let mut fuel_skips = 0usize;
    let mut visit = |idx: &[usize], report: &mut VerifyReport| -> Result<bool, VerifyError> {
        let env = q
            .universals
            .iter()
            .zip(idx.iter().zip(&ranges))
            .fold(q.fixed.clone(), |e, (v, (&i, r))| e.bind(v.clone(), r[i].clone()));
        report.checked += 1;
        match refutes(q, &env, space, dom.budget) {
            Ok(false) => Ok(false),
            Ok(true) => {
                report.passed = false;
                report.counterexample = Some(Counterexample {
                    assignment: q
                        .universals
                        .iter()
                        .zip(idx)
                        .zip(&ranges)
                        .map(|((v, &i), r)| (v.clone(), r[i].clone()))
                        .collect(),
                });
                Ok(true)
            }
            Err(EvalError::Fuel(_)) => {
                fuel_skips += 1;
                Ok(false)
            }
            Err(e) => Err(e.into()),
        }
    };
    let mut idx = vec![0usize; ranges.len()];
    if exhaustive {
        loop {
            if visit(&idx, &mut report)? {
                break;
            }
            if !advance(&mut idx, &ranges) {
                break;
            }
        }
    } else {
        // Structured values first, then seeded samples of the whole space.
        let core: Vec<usize> = q.universals.iter().map(|v| space.core_len(&v.ty).max(1)).collect();
        let core_total = core.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
        let mut found = false;
        if matches!(core_total, Some(n) if n <= dom.samples) {
            loop {
                if visit(&idx, &mut report)? {
                    found = true;
                    break;
                }
                if !advance_within(&mut idx, &core) {
                    break;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(dom.seed);
        for _ in 0..dom.samples {
            if found {
                break;
            }
            for (i, r) in idx.iter_mut().zip(&ranges) {
                *i = rng.gen_range(0..r.len());
            }
            found = visit(&idx, &mut report)?;
        }
    }
    if fuel_skips > 0 {
        report.warnings.push(format!("{fuel_skips} assignments skipped: evaluation budget exhausted"));
    }
    Ok(report)
}

/// Odometer step over `0..lens[k]` in every position.
fn advance_within(idx: &mut [usize], lens: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < lens[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn advance(idx: &mut [usize], ranges: &[std::rc::Rc<Vec<Value>>]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < ranges[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn refutes(q: &Query<'_>, env: &Env, space: &Space, budget: u64) -> Result<bool, EvalError> {
    let mut b = Budget::new(budget);
    for h in q.hypotheses {
        if !holds(h, env, space, &mut b)? {
            return Ok(false);
        }
    }
    Ok(!holds(q.goal, env, space, &mut b)?)
}

/// Checks `hypotheses ⊢ goal` of an obligation over the domain.
pub fn check_obligation(ob: &Obligation, dom: &Domain) -> Result<VerifyReport, VerifyError> {
    let hypotheses = ob.hypothesis_instances()?;
    let goal = ob.goal_instance()?;
    let universals = ob.universals();
    let space = Space::new(dom.clone());
    search(
        &Query {
            fixed: Env::default(),
            universals: &universals,
            hypotheses: &hypotheses,
            goal: &goal,
        },
        &space,
    )
}

/// Value of a term under an assignment of its free variables.
pub fn evaluate(t: &Term, bindings: &[(Var, Value)]) -> Result<Value, EvalError> {
    let env = Env::from_pairs(bindings.iter().map(|(v, x)| (v, x)));
    eval(t, &env, &mut Budget::new(DEFAULT_BUDGET))
}

#[cfg(test)]
mod tests;
