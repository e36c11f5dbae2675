//! S-expression surface syntax for types, terms, formulas, proofs and proof
//! files, with a printer that the parser reads back unchanged.

mod parse;
mod print;
mod sexp;

use std::fmt;

pub use parse::{formula_from_str, parse_file, proof_from_str, term_from_str, type_from_str};
pub use print::print_proof;
pub use sexp::Pos;

use crate::calculus::{Proof, Restriction, System};
use crate::dialectica::Flavor;
use crate::formulas::{DecidableEntry, DecidableRegistry, Formula};
use crate::kernel::{Term, Var};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

/// Intended outcome of checking a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Ok,
    Violation(Restriction),
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Ok => write!(f, "ok"),
            Expectation::Violation(r) => write!(f, "{}", r.name()),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ProofFile {
    pub system: Option<System>,
    pub flavor: Option<Flavor>,
    pub nat_bound: Option<u64>,
    pub params: Vec<Var>,
    pub defines: Vec<(String, Term)>,
    pub decidables: Vec<DecidableEntry>,
    pub formulas: Vec<(String, Formula)>,
    pub proofs: Vec<(String, Proof)>,
    pub expects: Vec<(String, Expectation)>,
    /// Closed values for parameters, used to run realizers.
    pub samples: Vec<Vec<(Var, Term)>>,
}

impl ProofFile {
    pub fn registry(&self) -> DecidableRegistry {
        let mut r = DecidableRegistry::new();
        for d in &self.decidables {
            r.register(d.clone());
        }
        r
    }

    pub fn proof(&self, name: &str) -> Option<&Proof> {
        self.proofs.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn expectation(&self, name: &str) -> Expectation {
        self.expects
            .iter()
            .find(|(n, _)| n == name)
            .map_or(Expectation::Ok, |(_, e)| *e)
    }

    /// The system a proof is checked in: the directive, else the one
    /// matching the flavor, else M.
    pub fn system(&self) -> System {
        self.system
            .or(self.flavor.map(System::of_flavor))
            .unwrap_or(System::M)
    }
}

#[cfg(test)]
mod tests;
