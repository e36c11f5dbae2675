use std::fmt;

use crate::formulas::{Formula, QuantFlavor};
use crate::kernel::Term;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            Term::Var(v) => write!(f, "{}", v.name),
            Term::True => write!(f, "true"),
            Term::False => write!(f, "false"),
            Term::Zero => write!(f, "0"),
            Term::Succ => write!(f, "succ"),
            Term::If(r) => write!(f, "(if {r})"),
            Term::Rec(r) => write!(f, "(rec {r})"),
            Term::Lam(..) => {
                write!(f, "(lam")?;
                let mut cur = self;
                while let Term::Lam(x, b) = cur {
                    write!(f, " ({} {})", x.name, x.ty)?;
                    cur = b;
                }
                write!(f, " {cur})")
            }
            Term::App(..) => {
                let (h, args) = self.spine();
                write!(f, "(app {h}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl QuantFlavor {
    pub fn keyword(self) -> &'static str {
        match self {
            QuantFlavor::Full => "all",
            QuantFlavor::Plus => "all+",
            QuantFlavor::Minus => "all-",
            QuantFlavor::NonComp => "allnc",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(t) => write!(f, "(atom {t})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Forall(q, x, b) => write!(f, "({} {} {} {b})", q.keyword(), x.name, x.ty),
            Formula::Box(a) => write!(f, "(box {a})"),
        }
    }
}

use crate::calculus::{Compat, Proof};

fn compat_args(c: &Compat) -> String {
    format!("{} {} {} {} {}", c.ty, c.lhs, c.rhs, c.var.name, c.body)
}

/// Multi-line rendering: one rule per line, premises indented.
pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    write_proof(p, 0, &mut out);
    out
}

fn write_proof(p: &Proof, depth: usize, out: &mut String) {
    let head = match p {
        Proof::AxTrue => {
            out.push_str("axtrue");
            return;
        }
        Proof::Assume(a) => format!("(assume {} {}", a.name, a.formula),
        Proof::ImpI(a, _) => format!("(impi {} {}", a.name, a.formula),
        Proof::ForallI(q, z, _) => format!("(alli{} {} {}", &q.keyword()[3..], z.name, z.ty),
        Proof::ForallE(q, t) => {
            // The premise comes before the instantiating term.
            let pad = "  ".repeat(depth + 1);
            out.push_str("(alle\n");
            out.push_str(&pad);
            write_proof(q, depth + 1, out);
            out.push_str(&format!("\n{pad}{t})"));
            return;
        }
        Proof::Contract(u, _) => format!("(contract {u}"),
        Proof::AxT(a) | Proof::AxTc(a) | Proof::Ax4(a) | Proof::Ax4c(a) => format!("({} {a}", p.rule_name()),
        Proof::AxK(a, b) => format!("(axk {a} {b}"),
        Proof::AxCompatM(c) | Proof::AxCompat(c) | Proof::CompatRule(c, _) => {
            format!("({} {}", p.rule_name(), compat_args(c))
        }
        Proof::IndBool { var, formula, .. } | Proof::IndNat { var, formula, .. } | Proof::IndNatM { var, formula, .. } => {
            format!("({} {} {formula}", p.rule_name(), var.name)
        }
        Proof::ImpE(..) | Proof::AndI(..) | Proof::AndL(_) | Proof::AndR(_) | Proof::BoxI(_) => format!("({}", p.rule_name()),
    };
    out.push_str(&head);
    for q in p.premises() {
        out.push('\n');
        out.push_str(&"  ".repeat(depth + 1));
        write_proof(q, depth + 1, out);
    }
    out.push(')');
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_proof(self))
    }
}

impl fmt::Display for super::ProofFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.system {
            writeln!(f, "(system {})", s.name())?;
        }
        if let Some(fl) = self.flavor {
            writeln!(f, "(flavor {})", fl.name())?;
        }
        if let Some(n) = self.nat_bound {
            writeln!(f, "(nat-bound {n})")?;
        }
        for p in &self.params {
            writeln!(f, "(param {} {})", p.name, p.ty)?;
        }
        for (n, t) in &self.defines {
            writeln!(f, "(define {n} {t})")?;
        }
        for d in &self.decidables {
            write!(f, "(decidable {} (", d.name)?;
            for (i, v) in d.params.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "({} {})", v.name, v.ty)?;
            }
            write!(f, ") {}", d.formula)?;
            if let Some(t) = &d.decider {
                write!(f, " {t}")?;
            }
            writeln!(f, ")")?;
        }
        for (n, a) in &self.formulas {
            writeln!(f, "(formula {n} {a})")?;
        }
        for (n, p) in &self.proofs {
            writeln!(f, "(proof {n}\n  {})", print_proof(p).replace('\n', "\n  "))?;
        }
        for (n, e) in &self.expects {
            writeln!(f, "(expect {n} {e})")?;
        }
        for row in &self.samples {
            write!(f, "(sample")?;
            for (v, t) in row {
                write!(f, " ({} {t})", v.name)?;
            }
            writeln!(f, ")")?;
        }
        Ok(())
    }
}
