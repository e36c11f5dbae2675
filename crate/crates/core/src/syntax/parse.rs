use std::sync::Arc;

use super::sexp::{read_all, Sexp};
use super::{Expectation, ParseError, ProofFile};
use crate::calculus::{AVar, Compat, Proof, Restriction, System};
use crate::dialectica::Flavor;
use crate::formulas::{desugar, DecidableEntry, Formula, LanguageTag, QuantFlavor};
use crate::kernel::{prelude, Term, Type, Var};

type Res<T> = Result<T, ParseError>;

fn err<T>(e: &Sexp, msg: impl Into<String>) -> Res<T> {
    Err(ParseError::new(e.pos(), msg))
}

fn list<'a>(e: &'a Sexp, what: &str) -> Res<&'a [Sexp]> {
    match e {
        Sexp::List(xs, _) => Ok(xs),
        Sexp::Atom(..) => err(e, format!("expected {what}")),
    }
}

fn ident<'a>(e: &'a Sexp, what: &str) -> Res<&'a str> {
    match e.atom() {
        Some(s) if !s.is_empty() => Ok(s),
        _ => err(e, format!("expected {what}")),
    }
}

fn args<'a>(e: &Sexp, xs: &'a [Sexp], n: usize, head: &str) -> Res<&'a [Sexp]> {
    if xs.len() != n + 1 {
        return err(e, format!("{head} expects {n} arguments, got {}", xs.len().saturating_sub(1)));
    }
    Ok(&xs[1..])
}

const RESERVED: &[&str] = &["true", "false", "succ", "lam", "app", "if", "rec", "bot", "top"];

/// Name resolution for one file.
#[derive(Default)]
pub(crate) struct Scope {
    bound: Vec<Var>,
    params: Vec<Var>,
    defines: Vec<(String, Term)>,
    formulas: Vec<(String, Formula)>,
}

impl Scope {
    fn lookup_term(&self, name: &str) -> Option<Term> {
        if let Some(v) = self.bound.iter().rev().find(|v| &*v.name == name) {
            return Some(v.term());
        }
        if let Some(v) = self.params.iter().find(|v| &*v.name == name) {
            return Some(v.term());
        }
        if let Some((_, t)) = self.defines.iter().rev().find(|(n, _)| n == name) {
            return Some(t.clone());
        }
        prelude::lookup(name)
    }

    fn with<T>(&mut self, v: Var, f: impl FnOnce(&mut Scope) -> Res<T>) -> Res<T> {
        self.bound.push(v);
        let r = f(self);
        self.bound.pop();
        r
    }

    fn binder(&self, name: &Sexp, ty: &Sexp) -> Res<Var> {
        let n = ident(name, "variable name")?;
        if RESERVED.contains(&n) || n.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return err(name, format!("{n} cannot be bound"));
        }
        Ok(Var::new(n, parse_type(ty)?))
    }

    pub(crate) fn term(&mut self, e: &Sexp) -> Res<Term> {
        match e {
            Sexp::Atom(s, _) => {
                if let Ok(n) = s.parse::<u64>() {
                    return Ok(Term::numeral(n));
                }
                match s.as_str() {
                    "true" => Ok(Term::True),
                    "false" => Ok(Term::False),
                    "succ" => Ok(Term::Succ),
                    _ => self
                        .lookup_term(s)
                        .map_or_else(|| err(e, format!("unknown identifier {s}")), Ok),
                }
            }
            Sexp::List(xs, _) => {
                let Some(head) = xs.first() else {
                    return err(e, "empty term");
                };
                match head.atom() {
                    Some("if") => Ok(Term::If(parse_type(&args(e, xs, 1, "if")?[0])?)),
                    Some("rec") => Ok(Term::Rec(parse_type(&args(e, xs, 1, "rec")?[0])?)),
                    Some("lam") => {
                        if xs.len() < 3 {
                            return err(e, "lam expects binders and a body");
                        }
                        self.lam(&xs[1..xs.len() - 1], &xs[xs.len() - 1])
                    }
                    Some("app") => {
                        if xs.len() < 2 {
                            return err(e, "app expects a head");
                        }
                        self.apply(&xs[1], &xs[2..])
                    }
                    _ => self.apply(head, &xs[1..]),
                }
            }
        }
    }

    fn lam(&mut self, binders: &[Sexp], body: &Sexp) -> Res<Term> {
        let Some((b, rest)) = binders.split_first() else {
            return self.term(body);
        };
        let bx = list(b, "binder (name type)")?;
        if bx.len() != 2 {
            return err(b, "binder must be (name type)");
        }
        let x = self.binder(&bx[0], &bx[1])?;
        let inner = self.with(x.clone(), |s| s.lam(rest, body))?;
        Ok(Term::lam(x, inner))
    }

    fn apply(&mut self, head: &Sexp, rest: &[Sexp]) -> Res<Term> {
        let mut t = self.term(head)?;
        for a in rest {
            let at = self.term(a)?;
            t = Term::app(t, at);
        }
        if let Err(k) = t.type_of() {
            return err(head, format!("ill-typed application: {k}"));
        }
        Ok(t)
    }

    pub(crate) fn formula(&mut self, e: &Sexp) -> Res<Formula> {
        let xs = match e {
            Sexp::Atom(s, _) => {
                return match s.as_str() {
                    "bot" => Ok(Formula::falsum()),
                    "top" => Ok(Formula::verum()),
                    _ => match self.formulas.iter().rev().find(|(n, _)| n == s) {
                        Some((_, a)) => Ok(a.clone()),
                        None => err(e, format!("unknown formula {s}")),
                    },
                }
            }
            Sexp::List(xs, _) => xs,
        };
        let head = match xs.first().and_then(Sexp::atom) {
            Some(h) => h,
            None => return err(e, "expected a connective"),
        };
        if let Some(q) = QuantFlavor::from_keyword(head) {
            let a = args(e, xs, 3, head)?;
            let x = self.binder(&a[0], &a[1])?;
            let body = self.with(x.clone(), |s| s.formula(&a[2]))?;
            return Ok(Formula::forall(q, x, body));
        }
        if let Some(q) = head.strip_prefix("ex").and_then(|f| QuantFlavor::from_keyword(&format!("all{f}"))) {
            let a = args(e, xs, 3, head)?;
            let x = self.binder(&a[0], &a[1])?;
            let body = self.with(x.clone(), |s| s.formula(&a[2]))?;
            return Ok(Formula::exists(q, x, body));
        }
        match head {
            "atom" => {
                let a = args(e, xs, 1, head)?;
                let t = self.term(&a[0])?;
                match t.type_of() {
                    Ok(Type::Bool) => Ok(Formula::atom(t)),
                    Ok(ty) => err(&a[0], format!("atom has type {ty}, expected bool")),
                    Err(k) => err(&a[0], k.to_string()),
                }
            }
            "imp" | "and" | "kimp" => {
                let a = args(e, xs, 2, head)?;
                let l = self.formula(&a[0])?;
                let r = self.formula(&a[1])?;
                Ok(match head {
                    "imp" => Formula::imp(l, r),
                    "and" => Formula::and(l, r),
                    _ => Formula::kreisel_imp(l, r),
                })
            }
            "box" | "not" | "dia" => {
                let a = self.formula(&args(e, xs, 1, head)?[0])?;
                Ok(match head {
                    "box" => Formula::boxed(a),
                    "not" => Formula::not(a),
                    _ => Formula::weak_diamond(a),
                })
            }
            "eq" => {
                let a = args(e, xs, 3, head)?;
                let ty = parse_type(&a[0])?;
                let (s, t) = (self.term(&a[1])?, self.term(&a[2])?);
                Formula::equality(&ty, s, t).or_else(|k| err(e, k.to_string()))
            }
            other => {
                let parts: Res<Vec<Formula>> = xs[1..].iter().map(|x| self.formula(x)).collect();
                desugar(other, &parts?, None, LanguageTag::ML).or_else(|k| err(e, k.to_string()))
            }
        }
    }

    fn avar(&mut self, name: &Sexp, a: &Sexp) -> Res<AVar> {
        Ok(AVar::new(ident(name, "assumption name")?, self.formula(a)?))
    }

    fn compat(&mut self, a: &[Sexp]) -> Res<Compat> {
        let ty = parse_type(&a[0])?;
        let lhs = self.term(&a[1])?;
        let rhs = self.term(&a[2])?;
        let var = self.binder(&a[3], &a[0])?;
        let body = self.with(var.clone(), |s| s.formula(&a[4]))?;
        Ok(Compat { ty, lhs, rhs, var, body })
    }

    pub(crate) fn proof(&mut self, e: &Sexp) -> Res<Proof> {
        if e.atom() == Some("axtrue") {
            return Ok(Proof::AxTrue);
        }
        let xs = list(e, "a proof")?;
        let head = match xs.first().and_then(Sexp::atom) {
            Some(h) => h,
            None => return err(e, "expected a rule name"),
        };
        let sub = |s: &mut Scope, x: &Sexp| s.proof(x).map(Arc::new);
        Ok(match head {
            "assume" => {
                let a = args(e, xs, 2, head)?;
                Proof::Assume(self.avar(&a[0], &a[1])?)
            }
            "impi" => {
                let a = args(e, xs, 3, head)?;
                Proof::ImpI(self.avar(&a[0], &a[1])?, sub(self, &a[2])?)
            }
            "impe" | "andi" => {
                let a = args(e, xs, 2, head)?;
                let (l, r) = (sub(self, &a[0])?, sub(self, &a[1])?);
                if head == "impe" {
                    Proof::ImpE(l, r)
                } else {
                    Proof::AndI(l, r)
                }
            }
            "andl" => Proof::AndL(sub(self, &args(e, xs, 1, head)?[0])?),
            "andr" => Proof::AndR(sub(self, &args(e, xs, 1, head)?[0])?),
            "boxi" => Proof::BoxI(sub(self, &args(e, xs, 1, head)?[0])?),
            "alle" => {
                let a = args(e, xs, 2, head)?;
                Proof::ForallE(sub(self, &a[0])?, self.term(&a[1])?)
            }
            "contract" => {
                let a = args(e, xs, 2, head)?;
                Proof::Contract(ident(&a[0], "assumption name")?.into(), sub(self, &a[1])?)
            }
            "axt" | "axtc" | "ax4" | "ax4c" => {
                let a = self.formula(&args(e, xs, 1, head)?[0])?;
                match head {
                    "axt" => Proof::AxT(a),
                    "axtc" => Proof::AxTc(a),
                    "ax4" => Proof::Ax4(a),
                    _ => Proof::Ax4c(a),
                }
            }
            "axk" => {
                let a = args(e, xs, 2, head)?;
                Proof::AxK(self.formula(&a[0])?, self.formula(&a[1])?)
            }
            "axcompatm" => Proof::AxCompatM(self.compat(args(e, xs, 5, head)?)?),
            "axcompat" => Proof::AxCompat(self.compat(args(e, xs, 5, head)?)?),
            "compat" => {
                let a = args(e, xs, 6, head)?;
                Proof::CompatRule(self.compat(&a[..5])?, sub(self, &a[5])?)
            }
            "indbool" | "indnat" | "indnatm" => {
                let a = args(e, xs, 4, head)?;
                let ty = if head == "indbool" { Type::Bool } else { Type::Nat };
                let n = ident(&a[0], "induction variable")?;
                let var = Var::new(n, ty);
                let (formula, p0, p1) = self.with(var.clone(), |s| {
                    Ok((s.formula(&a[1])?, sub(s, &a[2])?, sub(s, &a[3])?))
                })?;
                match head {
                    "indbool" => Proof::IndBool {
                        var,
                        formula,
                        on_true: p0,
                        on_false: p1,
                    },
                    "indnat" => Proof::IndNat {
                        var,
                        formula,
                        base: p0,
                        step: p1,
                    },
                    _ => Proof::IndNatM {
                        var,
                        formula,
                        base: p0,
                        step: p1,
                    },
                }
            }
            other => match other.strip_prefix("alli").map(|f| QuantFlavor::from_keyword(&format!("all{f}"))) {
                Some(Some(q)) => {
                    let a = args(e, xs, 3, head)?;
                    let z = self.binder(&a[0], &a[1])?;
                    let p = self.with(z.clone(), |s| sub(s, &a[2]))?;
                    Proof::ForallI(q, z, p)
                }
                _ => return err(e, format!("unknown rule {other}")),
            },
        })
    }
}

pub fn parse_type(e: &Sexp) -> Res<Type> {
    match e {
        Sexp::Atom(s, _) => match s.as_str() {
            "nat" => Ok(Type::Nat),
            "bool" => Ok(Type::Bool),
            _ => err(e, format!("unknown type {s}")),
        },
        Sexp::List(xs, _) => {
            if xs.len() < 3 || xs[0].atom() != Some("->") {
                return err(e, "expected (-> type ... type)");
            }
            let tys: Res<Vec<Type>> = xs[1..].iter().map(parse_type).collect();
            let mut tys = tys?;
            let res = tys.pop().expect("nonempty");
            Ok(Type::curried(tys.iter(), res))
        }
    }
}

fn one(src: &str) -> Res<Sexp> {
    let mut xs = read_all(src)?;
    match xs.len() {
        1 => Ok(xs.pop().expect("one")),
        0 => Err(ParseError::new(super::sexp::Pos { line: 1, col: 1 }, "empty input")),
        _ => err(&xs[1], "trailing input"),
    }
}

/// Parses a type such as `(-> nat bool)`.
pub fn type_from_str(src: &str) -> Res<Type> {
    parse_type(&one(src)?)
}

/// Parses a term whose free variables are the given parameters.
pub fn term_from_str(src: &str, params: &[Var]) -> Res<Term> {
    let mut s = Scope {
        params: params.to_vec(),
        ..Scope::default()
    };
    s.term(&one(src)?)
}

pub fn formula_from_str(src: &str, params: &[Var]) -> Res<Formula> {
    let mut s = Scope {
        params: params.to_vec(),
        ..Scope::default()
    };
    s.formula(&one(src)?)
}

pub fn proof_from_str(src: &str, params: &[Var]) -> Res<Proof> {
    let mut s = Scope {
        params: params.to_vec(),
        ..Scope::default()
    };
    s.proof(&one(src)?)
}

fn parse_u64(e: &Sexp) -> Res<u64> {
    match e.atom().and_then(|s| s.parse().ok()) {
        Some(n) => Ok(n),
        None => err(e, "expected a number"),
    }
}

pub fn parse_file(src: &str) -> Res<ProofFile> {
    let mut f = ProofFile::default();
    let mut s = Scope::default();
    for d in read_all(src)? {
        let xs = list(&d, "a directive")?;
        let head = match xs.first().and_then(Sexp::atom) {
            Some(h) => h,
            None => return err(&d, "expected a directive name"),
        };
        match head {
            "system" => {
                let a = args(&d, xs, 1, head)?;
                let name = ident(&a[0], "system name")?;
                f.system = Some(System::from_name(name).map_or_else(|| err(&a[0], format!("unknown system {name}")), Ok)?);
            }
            "flavor" => {
                let a = args(&d, xs, 1, head)?;
                let name = ident(&a[0], "flavor name")?;
                f.flavor = Some(Flavor::from_name(name).map_or_else(|| err(&a[0], format!("unknown flavor {name}")), Ok)?);
            }
            "nat-bound" => f.nat_bound = Some(parse_u64(&args(&d, xs, 1, head)?[0])?),
            "param" => {
                let a = args(&d, xs, 2, head)?;
                let v = s.binder(&a[0], &a[1])?;
                if s.params.iter().any(|p| p.name == v.name) {
                    return err(&a[0], format!("parameter {} declared twice", v.name));
                }
                s.params.push(v.clone());
                f.params.push(v);
            }
            "define" => {
                let a = args(&d, xs, 2, head)?;
                let name = ident(&a[0], "definition name")?.to_string();
                let t = s.term(&a[1])?;
                s.defines.push((name.clone(), t.clone()));
                f.defines.push((name, t));
            }
            "formula" => {
                let a = args(&d, xs, 2, head)?;
                let name = ident(&a[0], "formula name")?.to_string();
                let a1 = s.formula(&a[1])?;
                s.formulas.push((name.clone(), a1.clone()));
                f.formulas.push((name, a1));
            }
            "decidable" => {
                if xs.len() != 4 && xs.len() != 5 {
                    return err(&d, "decidable expects a name, parameters, a formula and an optional decider");
                }
                let name = ident(&xs[1], "scheme name")?.to_string();
                let mut params = Vec::new();
                for b in list(&xs[2], "parameter list")? {
                    let bx = list(b, "binder (name type)")?;
                    if bx.len() != 2 {
                        return err(b, "binder must be (name type)");
                    }
                    params.push(s.binder(&bx[0], &bx[1])?);
                }
                let depth = s.bound.len();
                s.bound.extend(params.iter().cloned());
                let formula = s.formula(&xs[3]);
                let decider = xs.get(4).map(|x| s.term(x)).transpose();
                s.bound.truncate(depth);
                f.decidables.push(DecidableEntry {
                    name,
                    params,
                    formula: formula?,
                    decider: decider?,
                });
            }
            "proof" => {
                let a = args(&d, xs, 2, head)?;
                let name = ident(&a[0], "proof name")?.to_string();
                if f.proofs.iter().any(|(n, _)| *n == name) {
                    return err(&a[0], format!("proof {name} defined twice"));
                }
                f.proofs.push((name, s.proof(&a[1])?));
            }
            "expect" => {
                let a = args(&d, xs, 2, head)?;
                let name = ident(&a[0], "proof name")?.to_string();
                let status = ident(&a[1], "expected status")?;
                let e = if status == "ok" {
                    Expectation::Ok
                } else {
                    Expectation::Violation(Restriction::from_name(status).map_or_else(|| err(&a[1], format!("unknown status {status}")), Ok)?)
                };
                f.expects.push((name, e));
            }
            "sample" => {
                let mut row = Vec::new();
                for b in &xs[1..] {
                    let bx = list(b, "binding (param term)")?;
                    if bx.len() != 2 {
                        return err(b, "binding must be (param term)");
                    }
                    let name = ident(&bx[0], "name")?;
                    let t = s.term(&bx[1])?;
                    if !t.is_closed() {
                        return err(&bx[1], format!("sample for {name} must be a closed term"));
                    }
                    // Names other than parameters stand for witnesses of open assumptions.
                    let p = match s.params.iter().find(|p| &*p.name == name) {
                        Some(p) if t.type_of().ok().as_ref() != Some(&p.ty) => {
                            return err(&bx[1], format!("sample for {name} must have type {}", p.ty));
                        }
                        Some(p) => p.clone(),
                        None => match t.type_of() {
                            Ok(ty) => Var::new(name, ty),
                            Err(e) => return err(&bx[1], e.to_string()),
                        },
                    };
                    row.push((p, t));
                }
                f.samples.push(row);
            }
            other => return err(&d, format!("unknown directive {other}")),
        }
    }
    for (name, _) in &f.expects {
        if !f.proofs.iter().any(|(n, _)| n == name) {
            return Err(ParseError::new(super::sexp::Pos { line: 1, col: 1 }, format!("expectation for unknown proof {name}")));
        }
    }
    Ok(f)
}
