//! Natural-deduction proofs over sequents `Γ ⊢ A` for the four systems, and
//! their restriction checks.

mod derived;

use std::fmt;
use std::sync::Arc;

pub use derived::{derive_efq, derive_s4_theorems, derive_stab};

use crate::dialectica::{translate_raw, Flavor};
use crate::formulas::{DecidableRegistry, Formula, LanguageTag, QuantFlavor};
use crate::kernel::{KernelError, Term, Type, Var};

/// The verifying system and the three input systems.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum System {
    /// Verifying arithmetic. Check only; nothing is extracted.
    V,
    /// Light input system.
    I,
    /// Modal input system.
    M,
    /// Light modal input system.
    ML,
}

impl System {
    pub const ALL: [System; 4] = [System::V, System::I, System::M, System::ML];

    pub fn language(self) -> LanguageTag {
        match self {
            System::V => LanguageTag::V,
            System::I => LanguageTag::L,
            System::M => LanguageTag::M,
            System::ML => LanguageTag::ML,
        }
    }

    pub fn flavor(self) -> Option<Flavor> {
        match self {
            System::V => None,
            System::I => Some(Flavor::Light),
            System::M => Some(Flavor::Modal),
            System::ML => Some(Flavor::LightModal),
        }
    }

    pub fn of_flavor(f: Flavor) -> System {
        match f {
            Flavor::Light => System::I,
            Flavor::Modal => System::M,
            Flavor::LightModal => System::ML,
        }
    }

    pub fn is_light(self) -> bool {
        matches!(self, System::I | System::ML)
    }

    pub fn name(self) -> &'static str {
        match self {
            System::V => "V",
            System::I => "I",
            System::M => "M",
            System::ML => "ML",
        }
    }

    pub fn from_name(s: &str) -> Option<System> {
        System::ALL.into_iter().find(|x| x.name().eq_ignore_ascii_case(s))
    }
}

/// Assumption variable `a:A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AVar {
    pub name: Arc<str>,
    pub formula: Formula,
}

impl AVar {
    pub fn new(name: &str, formula: Formula) -> AVar {
        AVar {
            name: name.into(),
            formula,
        }
    }
}

/// Parameters of a compatibility instance `s =_ρ r ⇒ B(s) → B(r)`, with
/// `B(z)` given by `var` and `body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compat {
    pub ty: Type,
    pub lhs: Term,
    pub rhs: Term,
    pub var: Var,
    pub body: Formula,
}

impl Compat {
    pub fn equation(&self) -> Result<Formula, KernelError> {
        Formula::equality(&self.ty, self.lhs.clone(), self.rhs.clone())
    }

    /// `B(s) → B(r)`
    pub fn transport(&self) -> Result<Formula, KernelError> {
        Ok(Formula::imp(
            self.body.subst1(&self.var, &self.lhs)?,
            self.body.subst1(&self.var, &self.rhs)?,
        ))
    }
}

/// A proof tree. Each node's conclusion is computed by the checker.
#[derive(Clone, Debug)]
pub enum Proof {
    Assume(AVar),
    ImpI(AVar, Arc<Proof>),
    /// Minor premise `Γ ⊢ A`, major premise `Δ ⊢ A → B`.
    ImpE(Arc<Proof>, Arc<Proof>),
    AndI(Arc<Proof>, Arc<Proof>),
    AndL(Arc<Proof>),
    AndR(Arc<Proof>),
    ForallI(QuantFlavor, Var, Arc<Proof>),
    ForallE(Arc<Proof>, Term),
    BoxI(Arc<Proof>),
    /// Merges all occurrences of the named avar.
    Contract(Arc<str>, Arc<Proof>),
    AxTrue,
    AxT(Formula),
    AxTc(Formula),
    Ax4(Formula),
    Ax4c(Formula),
    AxK(Formula, Formula),
    AxCompatM(Compat),
    AxCompat(Compat),
    CompatRule(Compat, Arc<Proof>),
    IndBool {
        var: Var,
        formula: Formula,
        on_true: Arc<Proof>,
        on_false: Arc<Proof>,
    },
    IndNat {
        var: Var,
        formula: Formula,
        base: Arc<Proof>,
        step: Arc<Proof>,
    },
    IndNatM {
        var: Var,
        formula: Formula,
        base: Arc<Proof>,
        step: Arc<Proof>,
    },
}

impl Proof {
    pub fn assume(name: &str, a: Formula) -> Proof {
        Proof::Assume(AVar::new(name, a))
    }

    pub fn imp_i(name: &str, a: Formula, p: Proof) -> Proof {
        Proof::ImpI(AVar::new(name, a), Arc::new(p))
    }

    pub fn imp_e(minor: Proof, major: Proof) -> Proof {
        Proof::ImpE(Arc::new(minor), Arc::new(major))
    }

    pub fn and_i(l: Proof, r: Proof) -> Proof {
        Proof::AndI(Arc::new(l), Arc::new(r))
    }

    pub fn and_l(p: Proof) -> Proof {
        Proof::AndL(Arc::new(p))
    }

    pub fn and_r(p: Proof) -> Proof {
        Proof::AndR(Arc::new(p))
    }

    pub fn all_i(q: QuantFlavor, z: Var, p: Proof) -> Proof {
        Proof::ForallI(q, z, Arc::new(p))
    }

    pub fn all_e(p: Proof, t: Term) -> Proof {
        Proof::ForallE(Arc::new(p), t)
    }

    pub fn box_i(p: Proof) -> Proof {
        Proof::BoxI(Arc::new(p))
    }

    pub fn contract(name: &str, p: Proof) -> Proof {
        Proof::Contract(name.into(), Arc::new(p))
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Proof::Assume(_) => "assume",
            Proof::ImpI(..) => "impi",
            Proof::ImpE(..) => "impe",
            Proof::AndI(..) => "andi",
            Proof::AndL(_) => "andl",
            Proof::AndR(_) => "andr",
            Proof::ForallI(QuantFlavor::Full, ..) => "alli",
            Proof::ForallI(QuantFlavor::Plus, ..) => "alli+",
            Proof::ForallI(QuantFlavor::Minus, ..) => "alli-",
            Proof::ForallI(QuantFlavor::NonComp, ..) => "allinc",
            Proof::ForallE(..) => "alle",
            Proof::BoxI(_) => "boxi",
            Proof::Contract(..) => "contract",
            Proof::AxTrue => "axtrue",
            Proof::AxT(_) => "axt",
            Proof::AxTc(_) => "axtc",
            Proof::Ax4(_) => "ax4",
            Proof::Ax4c(_) => "ax4c",
            Proof::AxK(..) => "axk",
            Proof::AxCompatM(_) => "axcompatm",
            Proof::AxCompat(_) => "axcompat",
            Proof::CompatRule(..) => "compat",
            Proof::IndBool { .. } => "indbool",
            Proof::IndNat { .. } => "indnat",
            Proof::IndNatM { .. } => "indnatm",
        }
    }

    pub fn premises(&self) -> Vec<&Proof> {
        match self {
            Proof::ImpI(_, p)
            | Proof::AndL(p)
            | Proof::AndR(p)
            | Proof::ForallI(_, _, p)
            | Proof::ForallE(p, _)
            | Proof::BoxI(p)
            | Proof::Contract(_, p)
            | Proof::CompatRule(_, p) => vec![p],
            Proof::ImpE(a, b) | Proof::AndI(a, b) => vec![a, b],
            Proof::IndBool { on_true, on_false, .. } => vec![on_true, on_false],
            Proof::IndNat { base, step, .. } | Proof::IndNatM { base, step, .. } => vec![base, step],
            _ => vec![],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises().iter().map(|p| p.size()).sum::<usize>()
    }
}

/// `Γ ⊢ A` with `Γ` a multiset of avars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub context: Vec<AVar>,
    pub goal: Formula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.context.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", a.name, a.formula)?;
        }
        write!(f, " |- {}", self.goal)
    }
}

/// The restriction a violation refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Restriction {
    /// Premise conclusions do not fit the rule.
    Shape,
    /// A formula or rule outside the system's language.
    Language,
    /// Ill-typed term or formula.
    Typing,
    /// Same avar name with different formulas.
    AvarClash,
    /// `z ∉ FV(Γ)` at universal introduction.
    Eigenvariable,
    /// Duplicate refutation-relevant avar in a premise sequent.
    Multiplicity,
    BoxIntro,
    Plus,
    Minus,
    NonComp,
    /// Contraction on a formula whose translation is not decidable.
    ContractionUndecidable,
    ContextNotRefutationIrrelevant,
    InductionVariable,
    StepContextNotBoxed,
}

impl Restriction {
    pub const ALL: [Restriction; 14] = [
        Restriction::Shape,
        Restriction::Language,
        Restriction::Typing,
        Restriction::AvarClash,
        Restriction::Eigenvariable,
        Restriction::Multiplicity,
        Restriction::BoxIntro,
        Restriction::Plus,
        Restriction::Minus,
        Restriction::NonComp,
        Restriction::ContractionUndecidable,
        Restriction::ContextNotRefutationIrrelevant,
        Restriction::InductionVariable,
        Restriction::StepContextNotBoxed,
    ];

    pub fn from_name(s: &str) -> Option<Restriction> {
        Restriction::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Restriction::Shape => "Shape",
            Restriction::Language => "LanguageViolation",
            Restriction::Typing => "TypeError",
            Restriction::AvarClash => "AvarClash",
            Restriction::Eigenvariable => "Eigenvariable",
            Restriction::Multiplicity => "Multiplicity",
            Restriction::BoxIntro => "BoxIntroViolation",
            Restriction::Plus => "PlusRestriction",
            Restriction::Minus => "MinusRestriction",
            Restriction::NonComp => "NcRestriction",
            Restriction::ContractionUndecidable => "ContractionUndecidable",
            Restriction::ContextNotRefutationIrrelevant => "ContextNotRefutationIrrelevant",
            Restriction::InductionVariable => "InductionVariable",
            Restriction::StepContextNotBoxed => "StepContextNotBoxed",
        }
    }
}

/// Location of a node: child indices from the root.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: NodePath,
    pub rule: &'static str,
    pub restriction: Restriction,
    pub explanation: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {} ({}): {}",
            self.restriction.name(),
            self.path,
            self.rule,
            self.explanation
        )
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Conclusion sequent, when the tree is well shaped.
    pub sequent: Option<Sequent>,
}

/// Checks a proof in a system. Extraction-dependent restrictions are
/// evaluated by running the extraction alongside.
pub fn check_proof(p: &Proof, system: System) -> CheckReport {
    check_proof_with(p, system, &DecidableRegistry::default())
}

pub fn check_proof_with(p: &Proof, system: System, reg: &DecidableRegistry) -> CheckReport {
    let run = crate::extraction::run(p, system, reg);
    CheckReport {
        ok: run.violations.is_empty(),
        violations: run.violations,
        sequent: run.sequent,
    }
}

/// Outcome of the contraction admissibility test, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CresVerdict {
    pub admissible: bool,
    pub reason: String,
}

/// Whether `A` may be contracted in the modal system.
pub fn cres_admissible(a: &Formula, reg: &DecidableRegistry) -> bool {
    cres_verdict(a, System::M, reg).admissible
}

pub fn cres_verdict(a: &Formula, system: System, reg: &DecidableRegistry) -> CresVerdict {
    if a.refutation_irrelevant() {
        return CresVerdict {
            admissible: true,
            reason: "refutation irrelevant".into(),
        };
    }
    if system.is_light() && a.mentions_flavor(&[QuantFlavor::Plus, QuantFlavor::NonComp]) {
        return CresVerdict {
            admissible: false,
            reason: "refutation relevant and contains all+ or allnc".into(),
        };
    }
    let matrix = translate_raw(a).matrix;
    if matrix.is_quantifier_free() {
        return CresVerdict {
            admissible: true,
            reason: "translation is quantifier free".into(),
        };
    }
    if reg.is_decidable(&matrix) {
        return CresVerdict {
            admissible: true,
            reason: "every quantified part of the translation is registered decidable".into(),
        };
    }
    let culprit = first_undecidable(&matrix, reg)
        .map(|f| f.to_string())
        .unwrap_or_default();
    CresVerdict {
        admissible: false,
        reason: format!("translation contains the quantified formula {culprit}, which is not registered decidable"),
    }
}

fn first_undecidable<'a>(m: &'a Formula, reg: &DecidableRegistry) -> Option<&'a Formula> {
    match m {
        Formula::Atom(_) => None,
        Formula::And(l, r) | Formula::Imp(l, r) => {
            first_undecidable(l, reg).or_else(|| first_undecidable(r, reg))
        }
        _ if reg.is_registered(m) => None,
        _ => Some(m),
    }
}
