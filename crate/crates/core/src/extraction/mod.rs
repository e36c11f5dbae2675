//! Program extraction. Checking and extraction share one traversal: each node
//! yields its sequent and, in the input systems, the realizers `t̄₀` of the
//! goal together with the challengers `t̄ᵢ` of every context avar.

mod engine;
mod induction;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub(crate) use engine::run;
pub use induction::{iterate_witnesses, merge_challengers};

use crate::calculus::{Proof, Restriction, Sequent, System, Violation};
use crate::dialectica::{Flavor, Translation};
use crate::formulas::{DecidableRegistry, Formula};
use crate::kernel::{KernelError, Subst, Term, Var};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("{0}")]
    Violation(Violation),
    #[error("proof is not well formed")]
    Malformed,
}

impl ExtractError {
    pub fn restriction(&self) -> Option<Restriction> {
        match self {
            ExtractError::Violation(v) => Some(v.restriction),
            ExtractError::Malformed => None,
        }
    }
}

/// Context avar `aᵢ : |Aᵢ|^{x̄ᵢ}_{t̄ᵢ}` of the translated sequent.
#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub avar: Arc<str>,
    pub formula: Formula,
    /// Translation of `Aᵢ` with witness variables `x̄ᵢ`.
    pub translation: Translation,
    pub challengers: Vec<Term>,
}

impl Hypothesis {
    pub fn instance(&self) -> Result<Formula, KernelError> {
        let ws: Vec<Term> = self.translation.witnesses.iter().map(Var::term).collect();
        self.translation.instantiate(&ws, &self.challengers)
    }
}

/// The translated sequent to be verified in V:
/// `aᵢ : |Aᵢ|^{x̄ᵢ}_{t̄ᵢ} ⊢ |A₀|^{t̄₀}_{x̄₀}`.
#[derive(Clone, Debug)]
pub struct Obligation {
    /// Free variables `w̄` of the sequent.
    pub params: Vec<Var>,
    pub hypotheses: Vec<Hypothesis>,
    /// Translation of `A₀`; its challenges are `x̄₀`.
    pub goal: Translation,
    pub realizers: Vec<Term>,
}

impl Obligation {
    pub fn goal_instance(&self) -> Result<Formula, KernelError> {
        let cs: Vec<Term> = self.goal.challenges.iter().map(Var::term).collect();
        self.goal.instantiate(&self.realizers, &cs)
    }

    pub fn hypothesis_instances(&self) -> Result<Vec<Formula>, KernelError> {
        self.hypotheses.iter().map(Hypothesis::instance).collect()
    }

    pub fn with_realizers(&self, realizers: Vec<Term>) -> Obligation {
        Obligation {
            realizers,
            ..self.clone()
        }
    }

    /// Variables quantified over by the obligation: `w̄`, every `x̄ᵢ`, then `x̄₀`.
    pub fn universals(&self) -> Vec<Var> {
        let mut out = self.params.clone();
        for h in &self.hypotheses {
            for w in &h.translation.witnesses {
                if !out.contains(w) {
                    out.push(w.clone());
                }
            }
        }
        for c in &self.goal.challenges {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.hypotheses {
            match h.instance() {
                Ok(a) => writeln!(f, "{}: {a}", h.avar)?,
                Err(e) => writeln!(f, "{}: <{e}>", h.avar)?,
            }
        }
        match self.goal_instance() {
            Ok(a) => write!(f, "|- {a}"),
            Err(e) => write!(f, "|- <{e}>"),
        }
    }
}

/// Outcome of the free-variable condition check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FvcReport {
    pub problems: Vec<String>,
}

impl FvcReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub system: System,
    pub sequent: Sequent,
    pub obligation: Obligation,
    pub fvc: FvcReport,
}

impl ExtractionResult {
    pub fn realizers(&self) -> &[Term] {
        &self.obligation.realizers
    }

    pub fn challengers(&self, avar: &str) -> Option<&[Term]> {
        self.obligation
            .hypotheses
            .iter()
            .find(|h| &*h.avar == avar)
            .map(|h| h.challengers.as_slice())
    }

    /// Plain-text rendering used by the golden files.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("sequent {}\n", self.sequent));
        let tr = &self.obligation.goal;
        for (w, t) in tr.witnesses.iter().zip(&self.obligation.realizers) {
            out.push_str(&format!("realizer {} {} := {t}\n", w.name, w.ty));
        }
        for h in &self.obligation.hypotheses {
            for (i, t) in h.challengers.iter().enumerate() {
                out.push_str(&format!("challenger {} {i} := {t}\n", h.avar));
            }
        }
        out.push_str(&format!(
            "challenges {}\n",
            tr.challenges
                .iter()
                .map(|c| format!("{} {}", c.name, c.ty))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!("fvc {}\n", if self.fvc.ok() { "ok" } else { "failed" }));
        out
    }
}

pub fn extract(p: &Proof, flavor: Flavor) -> Result<ExtractionResult, ExtractError> {
    extract_with(p, flavor, &DecidableRegistry::default())
}

pub fn extract_with(p: &Proof, flavor: Flavor, reg: &DecidableRegistry) -> Result<ExtractionResult, ExtractError> {
    extract_in(p, System::of_flavor(flavor), reg)
}

/// Extraction in a given input system. Fails on the first violation.
pub fn extract_in(p: &Proof, system: System, reg: &DecidableRegistry) -> Result<ExtractionResult, ExtractError> {
    let mut r = run(p, system, reg);
    if let Some(v) = r.violations.drain(..).next() {
        return Err(ExtractError::Violation(v));
    }
    r.result.ok_or(ExtractError::Malformed)
}

/// Checks `FV(t̄ᵢ) ⊆ w̄ ∪ x̄₀ ∪ … ∪ x̄ₙ` and `x̄₀ ∉ FV(t̄₀)`.
pub fn check_fvc(ob: &Obligation) -> FvcReport {
    let goal_ch: BTreeSet<&Var> = ob.goal.challenges.iter().collect();
    let mut allowed: BTreeSet<&Var> = ob.params.iter().collect();
    for h in &ob.hypotheses {
        allowed.extend(h.translation.witnesses.iter());
    }
    let mut problems = Vec::new();
    for (i, t) in ob.realizers.iter().enumerate() {
        for v in t.free_vars() {
            if goal_ch.contains(&v) {
                problems.push(format!("realizer {i} mentions goal challenge {}", v.name));
            } else if !allowed.contains(&v) {
                problems.push(format!("realizer {i} mentions stray variable {}", v.name));
            }
        }
    }
    for h in &ob.hypotheses {
        for (i, t) in h.challengers.iter().enumerate() {
            for v in t.free_vars() {
                if !allowed.contains(&v) && !goal_ch.contains(&v) {
                    problems.push(format!("challenger {i} of {} mentions stray variable {}", h.avar, v.name));
                }
            }
        }
    }
    FvcReport { problems }
}

/// Deterministic names for the final result: goal tuples become `w0…`/`c0…`,
/// witness variables of avar `a` become `a0, a1, …`.
pub(crate) fn finalize(system: System, sequent: Sequent, mut ob: Obligation) -> ExtractionResult {
    let mut taken: BTreeSet<Arc<str>> = ob.params.iter().map(|v| v.name.clone()).collect();
    let mut pick = |prefix: &str, v: &Var| -> Var {
        let mut i = 0;
        loop {
            let name: Arc<str> = format!("{prefix}{i}").into();
            if !taken.contains(&name) {
                taken.insert(name.clone());
                return Var::new(name, v.ty.clone());
            }
            i += 1;
        }
    };
    let ws: Vec<Var> = ob.goal.witnesses.iter().map(|v| pick("w", v)).collect();
    let cs: Vec<Var> = ob.goal.challenges.iter().map(|v| pick("c", v)).collect();
    let goal_renaming = Subst::renaming(&ob.goal.witnesses, &ws).union(Subst::renaming(&ob.goal.challenges, &cs));
    let mut avar_renaming = Subst::new();
    let mut seen: HashMap<Arc<str>, ()> = HashMap::new();
    for h in &ob.hypotheses {
        if seen.insert(h.avar.clone(), ()).is_some() {
            continue;
        }
        let prefix: String = h.avar.chars().filter(|c| *c != '_').collect();
        for w in &h.translation.witnesses {
            avar_renaming.insert(w.clone(), pick(&prefix, w).term());
        }
    }
    let all = goal_renaming.clone().union(avar_renaming.clone());
    ob.goal = Translation {
        matrix: ob.goal.matrix.rename(&goal_renaming).canonical_bound(),
        witnesses: ws,
        challenges: cs,
    };
    let mut terms: Vec<Term> = ob.realizers.iter().map(|t| all.apply(t)).collect();
    let nr = terms.len();
    for h in &ob.hypotheses {
        terms.extend(h.challengers.iter().map(|t| all.apply(t)));
    }
    let canon = crate::kernel::canonical_names(&terms);
    ob.realizers = canon[..nr].to_vec();
    let mut at = nr;
    for h in &mut ob.hypotheses {
        let k = h.challengers.len();
        h.challengers = canon[at..at + k].to_vec();
        at += k;
        let new_ws: Vec<Var> = h
            .translation
            .witnesses
            .iter()
            .map(|w| match avar_renaming.get(w) {
                Some(Term::Var(v)) => v.clone(),
                _ => w.clone(),
            })
            .collect();
        let s = Subst::renaming(&h.translation.witnesses, &new_ws);
        h.translation = Translation {
            matrix: h.translation.matrix.rename(&s),
            witnesses: new_ws,
            challenges: h.translation.challenges.clone(),
        };
    }
    let fvc = check_fvc(&ob);
    ExtractionResult {
        system,
        sequent,
        obligation: ob,
        fvc,
    }
}

#[cfg(test)]
mod tests;
