//! The bundled example proofs, and a driver that checks, extracts and
//! verifies one proof of a file.

use std::fmt;

use crate::calculus::{check_proof_with, Violation};
use crate::extraction::{extract_in, ExtractionResult};
use crate::syntax::{parse_file, Expectation, ParseError, ProofFile};
use crate::verify::{check_obligation, evaluate, Domain, Value, VerifyError, VerifyReport};

#[derive(Clone, Copy, Debug)]
pub struct CorpusFile {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(CorpusFile { name: $name, source: include_str!(concat!("../corpus/", $name, ".proof")) }),*]
    };
}

static CORPUS: &[CorpusFile] = bundle!(
    "s4",
    "s5_attempt",
    "compatm",
    "remark4",
    "chainq",
    "chainq_light",
    "apart",
    "indcompare",
    "introot",
);

pub fn corpus() -> &'static [CorpusFile] {
    CORPUS
}

pub fn corpus_file(name: &str) -> Option<&'static CorpusFile> {
    CORPUS.iter().find(|f| f.name == name)
}

impl CorpusFile {
    pub fn parse(&self) -> Result<ProofFile, ParseError> {
        parse_file(self.source)
    }
}

/// Everything learned about one proof.
#[derive(Debug)]
pub struct ProofRun {
    pub name: String,
    pub expected: Expectation,
    pub violations: Vec<Violation>,
    pub extraction: Option<ExtractionResult>,
    pub verification: Option<Result<VerifyReport, VerifyError>>,
    /// Realizer values under each sample of the file.
    pub samples: Vec<Result<Vec<Value>, String>>,
}

impl ProofRun {
    /// Whether the outcome matches the file's expectation, and a passing
    /// proof is also verified.
    pub fn as_expected(&self) -> bool {
        match self.expected {
            Expectation::Ok => {
                self.violations.is_empty()
                    && self.extraction.as_ref().is_some_and(|e| e.fvc.ok())
                    && self
                        .verification
                        .as_ref()
                        .is_none_or(|v| v.as_ref().is_ok_and(|r| r.passed))
            }
            Expectation::Violation(r) => self.violations.iter().any(|v| v.restriction == r),
        }
    }
}

impl fmt::Display for ProofRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.as_expected() { "as expected" } else { "UNEXPECTED" };
        writeln!(f, "{}: {status} (expected {})", self.name, self.expected)?;
        for v in &self.violations {
            writeln!(f, "  violation {v}")?;
        }
        if let Some(e) = &self.extraction {
            for line in e.render().lines() {
                writeln!(f, "  {line}")?;
            }
        }
        match &self.verification {
            Some(Ok(r)) => writeln!(f, "  verify {r}")?,
            Some(Err(e)) => writeln!(f, "  verify error: {e}")?,
            None => {}
        }
        for (i, s) in self.samples.iter().enumerate() {
            match s {
                Ok(vs) => {
                    let shown: Vec<String> = vs.iter().map(Value::to_string).collect();
                    writeln!(f, "  sample {i}: {}", shown.join(", "))?;
                }
                Err(e) => writeln!(f, "  sample {i}: {e}")?,
            }
        }
        Ok(())
    }
}

/// Checks, extracts and, when `dom` is given, verifies the named proof.
pub fn run_proof(file: &ProofFile, name: &str, dom: Option<&Domain>) -> Option<ProofRun> {
    let proof = file.proof(name)?;
    let system = file.system();
    let reg = file.registry();
    let report = check_proof_with(proof, system, &reg);
    let extraction = if report.ok {
        extract_in(proof, system, &reg).ok()
    } else {
        None
    };
    let verification = match (&extraction, dom) {
        (Some(e), Some(d)) => Some(check_obligation(&e.obligation, d)),
        _ => None,
    };
    let samples = match &extraction {
        Some(e) => file
            .samples
            .iter()
            .map(|s| sample_values(e, s))
            .collect(),
        None => Vec::new(),
    };
    Some(ProofRun {
        name: name.to_string(),
        expected: file.expectation(name),
        violations: report.violations,
        extraction,
        verification,
        samples,
    })
}

fn sample_values(e: &ExtractionResult, sample: &[(crate::kernel::Var, crate::kernel::Term)]) -> Result<Vec<Value>, String> {
    let mut bindings = Vec::new();
    for (v, t) in sample {
        let x = evaluate(t, &bindings).map_err(|err| format!("{}: {err}", v.name))?;
        bindings.push((v.clone(), x));
    }
    e.realizers()
        .iter()
        .map(|t| evaluate(t, &bindings).map_err(|err| err.to_string()))
        .collect()
}

/// Runs every proof of the file.
pub fn run_file(file: &ProofFile, dom: Option<&Domain>) -> Vec<ProofRun> {
    file.proofs
        .iter()
        .filter_map(|(n, _)| run_proof(file, n, dom))
        .collect()
}

/// The verification domain a file asks for.
pub fn file_domain(file: &ProofFile, base: &Domain) -> Domain {
    match file.nat_bound {
        Some(n) => Domain { nat_bound: n, ..base.clone() },
        None => base.clone(),
    }
}

/// Where the expected extraction outputs live.
pub const GOLDEN_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/golden");

/// Golden text for a file: the extraction of each proof, or the
/// restrictions it breaks.
pub fn golden_text(runs: &[ProofRun]) -> String {
    let mut out = String::new();
    for r in runs {
        out.push_str(&format!("== {}\n", r.name));
        match &r.extraction {
            Some(e) => out.push_str(&e.render()),
            None => {
                let names: Vec<&str> = r.violations.iter().map(|v| v.restriction.name()).collect();
                out.push_str(&format!("violations {}\n", names.join(", ")));
            }
        }
    }
    out
}
