use std::collections::HashMap;
use std::sync::Arc;

use super::induction::{self, StepParts};
use super::{finalize, ExtractionResult, Hypothesis, Obligation};
use crate::calculus::{cres_verdict, AVar, Compat, NodePath, Proof, Restriction, Sequent, System, Violation};
use crate::dialectica::{translate_raw, Translation};
use crate::formulas::{compile_with, DecidableRegistry, Formula, QuantFlavor};
use crate::kernel::{canonical_inhabitant, fresh_var, normalize, Subst, Term, Type, Var};

pub(crate) struct Run {
    pub violations: Vec<Violation>,
    pub sequent: Option<Sequent>,
    pub result: Option<ExtractionResult>,
}

pub(crate) fn run(p: &Proof, system: System, reg: &DecidableRegistry) -> Run {
    let mut e = Engine {
        system,
        reg,
        extracting: system != System::V,
        avars: HashMap::new(),
        violations: Vec::new(),
        path: Vec::new(),
    };
    let node = e.go(p);
    let sequent = node.as_ref().map(|n| n.seq.clone());
    let result = match node {
        Some(Node { seq, ext: Some(x) }) if e.violations.is_empty() => {
            let mut params: Vec<Var> = Vec::new();
            for f in seq.context.iter().map(|a| &a.formula).chain([&seq.goal]) {
                for v in f.free_vars() {
                    if !params.contains(&v) {
                        params.push(v);
                    }
                }
            }
            let hypotheses = seq
                .context
                .iter()
                .zip(&x.challengers)
                .map(|(a, ch)| Hypothesis {
                    avar: a.name.clone(),
                    formula: a.formula.clone(),
                    translation: e.avars[&a.name].tr.clone(),
                    challengers: ch.clone(),
                })
                .collect();
            let ob = Obligation {
                params,
                hypotheses,
                goal: x.goal,
                realizers: x.realizers,
            };
            Some(finalize(system, seq.clone(), ob))
        }
        _ => None,
    };
    Run {
        violations: e.violations,
        sequent,
        result,
    }
}

#[derive(Clone)]
pub(super) struct AvarInfo {
    pub formula: Formula,
    pub tr: Translation,
}

#[derive(Clone)]
pub(super) struct Node {
    pub seq: Sequent,
    pub ext: Option<Ext>,
}

/// Extracted data of a node. `challengers` runs parallel to the context.
#[derive(Clone)]
pub(super) struct Ext {
    pub goal: Translation,
    pub realizers: Vec<Term>,
    pub challengers: Vec<Vec<Term>>,
}

pub(super) struct Engine<'r> {
    pub system: System,
    pub reg: &'r DecidableRegistry,
    extracting: bool,
    pub avars: HashMap<Arc<str>, AvarInfo>,
    violations: Vec<Violation>,
    path: Vec<usize>,
}

pub(super) fn terms(vs: &[Var]) -> Vec<Term> {
    vs.iter().map(Var::term).collect()
}

fn zeros(vs: &[Var]) -> Vec<Term> {
    vs.iter().map(|v| canonical_inhabitant(&v.ty)).collect()
}

fn names_free(ctx: &[AVar], z: &Var) -> Option<Arc<str>> {
    ctx.iter().find(|a| a.formula.has_free(z)).map(|a| a.name.clone())
}

impl<'r> Engine<'r> {
    pub fn fail(&mut self, rule: &'static str, restriction: Restriction, explanation: impl Into<String>) {
        self.violations.push(Violation {
            path: NodePath(self.path.clone()),
            rule,
            restriction,
            explanation: explanation.into(),
        });
    }

    fn child(&mut self, i: usize, p: &Proof) -> Option<Node> {
        self.path.push(i);
        let r = self.go(p);
        self.path.pop();
        r
    }

    fn lang(&mut self, rule: &'static str, a: &Formula) -> bool {
        match a.check_language(self.system.language()) {
            Ok(()) => true,
            Err(crate::formulas::FormulaError::Kernel(e)) => {
                self.fail(rule, Restriction::Typing, e.to_string());
                false
            }
            Err(e) => {
                self.fail(rule, Restriction::Language, e.to_string());
                false
            }
        }
    }

    fn avar(&mut self, rule: &'static str, a: &AVar) -> Option<AvarInfo> {
        if let Some(info) = self.avars.get(&a.name) {
            if info.formula.equiv(&a.formula) {
                return Some(info.clone());
            }
            let prev = info.formula.clone();
            self.fail(
                rule,
                Restriction::AvarClash,
                format!("avar {} used with {} and {}", a.name, prev, a.formula),
            );
            return None;
        }
        let info = AvarInfo {
            formula: a.formula.clone(),
            tr: translate_raw(&a.formula),
        };
        self.avars.insert(a.name.clone(), info.clone());
        Some(info)
    }

    /// In the input systems no premise may hold two copies of a
    /// refutation-relevant avar.
    fn multiplicity(&mut self, rule: &'static str, n: &Node, except: Option<&str>) {
        if self.system == System::V {
            return;
        }
        let mut seen: Vec<&str> = Vec::new();
        let mut dup: Option<String> = None;
        for a in &n.seq.context {
            if Some(&*a.name) == except || a.formula.refutation_irrelevant() {
                continue;
            }
            if seen.contains(&&*a.name) {
                dup = Some(a.name.to_string());
                break;
            }
            seen.push(&a.name);
        }
        if let Some(d) = dup {
            self.fail(
                rule,
                Restriction::Multiplicity,
                format!("premise holds avar {d} more than once and its formula is refutation relevant"),
            );
        }
    }

    pub fn nf(&mut self, t: Term) -> Term {
        match normalize(&t) {
            Ok(r) => r,
            Err(e) => {
                self.fail("normalize", Restriction::Typing, e.to_string());
                t
            }
        }
    }

    pub fn sub(&mut self, s: &Subst, ts: &[Term]) -> Vec<Term> {
        ts.iter().map(|t| self.nf(s.apply(t))).collect()
    }

    fn sub_all(&mut self, s: &Subst, chs: &[Vec<Term>]) -> Vec<Vec<Term>> {
        chs.iter().map(|c| self.sub(s, c)).collect()
    }

    fn ext<'n>(&self, ns: &[&'n Node]) -> Option<Vec<&'n Ext>> {
        if !self.extracting {
            return None;
        }
        ns.iter().map(|n| n.ext.as_ref()).collect()
    }

    fn go(&mut self, p: &Proof) -> Option<Node> {
        let rule = p.rule_name();
        match p {
            Proof::Assume(a) => {
                if !self.lang(rule, &a.formula) {
                    return None;
                }
                let info = self.avar(rule, a)?;
                let seq = Sequent {
                    context: vec![a.clone()],
                    goal: a.formula.clone(),
                };
                let ext = self.extracting.then(|| {
                    let goal = translate_raw(&a.formula);
                    Ext {
                        realizers: terms(&info.tr.witnesses),
                        challengers: vec![terms(&goal.challenges)],
                        goal,
                    }
                });
                Some(Node { seq, ext })
            }
            Proof::ImpI(a, q) => self.imp_i(rule, a, q),
            Proof::ImpE(minor, major) => self.imp_e(rule, minor, major),
            Proof::AndI(l, r) => {
                let nl = self.child(0, l);
                let nr = self.child(1, r);
                let (nl, nr) = (nl?, nr?);
                self.multiplicity(rule, &nl, None);
                self.multiplicity(rule, &nr, None);
                let goal = Formula::and(nl.seq.goal.clone(), nr.seq.goal.clone());
                let context = [nl.seq.context.clone(), nr.seq.context.clone()].concat();
                let ext = self.ext(&[&nl, &nr]).map(|es| {
                    let tr = translate_raw(&goal);
                    let (cl, cr) = tr.challenges.split_at(es[0].goal.challenges.len());
                    let sl = Subst::renaming(&es[0].goal.challenges, cl);
                    let sr = Subst::renaming(&es[1].goal.challenges, cr);
                    let mut challengers = self.sub_all(&sl, &es[0].challengers);
                    challengers.extend(self.sub_all(&sr, &es[1].challengers));
                    Ext {
                        realizers: [es[0].realizers.clone(), es[1].realizers.clone()].concat(),
                        challengers,
                        goal: tr,
                    }
                });
                Some(Node {
                    seq: Sequent { context, goal },
                    ext,
                })
            }
            Proof::AndL(q) | Proof::AndR(q) => {
                let left = matches!(p, Proof::AndL(_));
                let n = self.child(0, q)?;
                self.multiplicity(rule, &n, None);
                let Formula::And(a, b) = &n.seq.goal else {
                    self.fail(rule, Restriction::Shape, format!("premise {} is not a conjunction", n.seq.goal));
                    return None;
                };
                let na = translate_raw(a);
                let goal = if left { (**a).clone() } else { (**b).clone() };
                let ext = self.ext(&[&n]).map(|es| {
                    let e = es[0];
                    let tr = translate_raw(&goal);
                    let (xa, ya) = (na.witnesses.len(), na.challenges.len());
                    let (yl, yr) = e.goal.challenges.split_at(ya);
                    let (realizers, s) = if left {
                        let s = Subst::renaming(yl, &tr.challenges)
                            .union(Subst::from_pairs(yr.iter().cloned().zip(zeros(yr))));
                        (e.realizers[..xa].to_vec(), s)
                    } else {
                        let s = Subst::renaming(yr, &tr.challenges)
                            .union(Subst::from_pairs(yl.iter().cloned().zip(zeros(yl))));
                        (e.realizers[xa..].to_vec(), s)
                    };
                    Ext {
                        realizers,
                        challengers: self.sub_all(&s, &e.challengers),
                        goal: tr,
                    }
                });
                Some(Node {
                    seq: Sequent {
                        context: n.seq.context.clone(),
                        goal,
                    },
                    ext,
                })
            }
            Proof::ForallI(q, z, body) => self.forall_i(rule, *q, z, body),
            Proof::ForallE(q, t) => self.forall_e(rule, q, t),
            Proof::BoxI(q) => {
                let n = self.child(0, q)?;
                self.multiplicity(rule, &n, None);
                if !self.system.language().allows_box() {
                    self.fail(rule, Restriction::Language, format!("box introduction is not available in {}", self.system.name()));
                    return None;
                }
                let goal = Formula::boxed(n.seq.goal.clone());
                let ext = self.ext(&[&n]).map(|es| {
                    let e = es[0];
                    for (a, ch) in n.seq.context.iter().zip(&e.challengers) {
                        if let Some(c) = e.goal.challenges.iter().find(|c| ch.iter().any(|t| t.has_free(c))) {
                            let msg = format!(
                                "challenger of {} depends on the goal challenge {} that the box closes",
                                a.name, c.name
                            );
                            self.fail(rule, Restriction::BoxIntro, msg);
                            break;
                        }
                    }
                    Ext {
                        realizers: e.realizers.clone(),
                        challengers: e.challengers.clone(),
                        goal: translate_raw(&goal),
                    }
                });
                Some(Node {
                    seq: Sequent {
                        context: n.seq.context.clone(),
                        goal,
                    },
                    ext,
                })
            }
            Proof::Contract(name, q) => self.contract(rule, name, q),
            Proof::AxTrue => Some(self.axiom(Formula::verum(), vec![])),
            Proof::AxT(a) | Proof::Ax4(a) => {
                if !self.lang(rule, a) {
                    return None;
                }
                let b = Formula::boxed(a.clone());
                let f = match p {
                    Proof::AxT(_) => Formula::imp(b, a.clone()),
                    _ => Formula::imp(b.clone(), Formula::boxed(b)),
                };
                let xs = translate_raw(a).witness_types();
                let rs = (0..xs.len()).map(|k| projection(&xs, k)).collect();
                Some(self.axiom(f, rs))
            }
            Proof::AxTc(a) => {
                if !self.lang(rule, a) {
                    return None;
                }
                let ta = translate_raw(a);
                let f = Formula::imp(a.clone(), Formula::weak_diamond(a.clone()));
                let x_ty = ta.witness_types();
                let xs: Vec<Var> = x_ty.iter().map(|t| fresh_var("x", t.clone())).collect();
                let hs: Vec<Var> = ta
                    .challenges
                    .iter()
                    .map(|y| fresh_var("h", Type::curried(x_ty.iter(), y.ty.clone())))
                    .collect();
                let binders = [xs.clone(), hs.clone()].concat();
                let rs = hs
                    .iter()
                    .map(|h| Term::lams(&binders, Term::apps(h.term(), terms(&xs))))
                    .collect();
                Some(self.axiom(f, rs))
            }
            Proof::Ax4c(a) => {
                if !self.lang(rule, a) {
                    return None;
                }
                let d = Formula::weak_diamond(a.clone());
                let f = Formula::imp(Formula::weak_diamond(d.clone()), d.clone());
                let hs_ty = translate_raw(&d).challenge_types();
                let rs = (0..hs_ty.len()).map(|k| projection(&hs_ty, k)).collect();
                Some(self.axiom(f, rs))
            }
            Proof::AxK(a, b) => {
                if !self.lang(rule, a) || !self.lang(rule, b) {
                    return None;
                }
                let f = Formula::imp(
                    Formula::and(Formula::boxed(Formula::imp(a.clone(), b.clone())), Formula::boxed(a.clone())),
                    Formula::boxed(b.clone()),
                );
                let tab = translate_raw(&Formula::imp(a.clone(), b.clone()));
                let nf = tab.witnesses.len() - translate_raw(b).witnesses.len();
                let fs: Vec<Var> = tab.witnesses.iter().map(|w| fresh_var(w.stem(), w.ty.clone())).collect();
                let xs: Vec<Var> = translate_raw(a).witnesses.iter().map(|w| fresh_var("x", w.ty.clone())).collect();
                let binders = [fs.clone(), xs.clone()].concat();
                let rs = fs[nf..]
                    .iter()
                    .map(|g| Term::lams(&binders, Term::apps(g.term(), terms(&xs))))
                    .collect();
                Some(self.axiom(f, rs))
            }
            Proof::AxCompatM(c) => {
                let eq = self.compat_parts(rule, c)?;
                let (tf, rs) = compat_realizers(c)?;
                let f = Formula::imp(Formula::boxed(eq), tf);
                if !self.lang(rule, &f) {
                    return None;
                }
                Some(self.axiom(f, rs))
            }
            Proof::AxCompat(c) => {
                let eq = self.compat_parts(rule, c)?;
                if self.system != System::V {
                    self.fail(rule, Restriction::Language, "the compatibility axiom is available only in V; use the compatibility rule");
                    return None;
                }
                let f = Formula::imp(eq, c.transport().ok()?);
                Some(Node {
                    seq: Sequent { context: vec![], goal: f },
                    ext: None,
                })
            }
            Proof::CompatRule(c, q) => {
                let eq = self.compat_parts(rule, c);
                let n = self.child(0, q)?;
                let eq = eq?;
                self.multiplicity(rule, &n, None);
                if !n.seq.goal.equiv(&eq) {
                    self.fail(rule, Restriction::Shape, format!("premise proves {} but the rule needs {eq}", n.seq.goal));
                    return None;
                }
                if let Some(a) = n.seq.context.iter().find(|a| !a.formula.refutation_irrelevant()) {
                    let msg = format!("context formula {} of {} is refutation relevant", a.formula, a.name);
                    self.fail(rule, Restriction::ContextNotRefutationIrrelevant, msg);
                }
                let (goal, rs) = compat_realizers(c)?;
                let ext = self.ext(&[&n]).map(|es| Ext {
                    goal: translate_raw(&goal),
                    realizers: rs,
                    challengers: es[0].challengers.clone(),
                });
                Some(Node {
                    seq: Sequent {
                        context: n.seq.context.clone(),
                        goal,
                    },
                    ext,
                })
            }
            Proof::IndBool {
                var,
                formula,
                on_true,
                on_false,
            } => self.ind_bool(rule, var, formula, on_true, on_false),
            Proof::IndNat {
                var,
                formula,
                base,
                step,
            } => self.ind_nat(rule, var, formula, base, step, false),
            Proof::IndNatM {
                var,
                formula,
                base,
                step,
            } => self.ind_nat(rule, var, formula, base, step, true),
        }
    }

    fn axiom(&mut self, f: Formula, realizers: Vec<Term>) -> Node {
        let ext = self.extracting.then(|| {
            let goal = translate_raw(&f);
            let realizers = realizers.into_iter().map(|t| self.nf(t)).collect();
            Ext {
                goal,
                realizers,
                challengers: vec![],
            }
        });
        Node {
            seq: Sequent {
                context: vec![],
                goal: f,
            },
            ext,
        }
    }

    fn compat_parts(&mut self, rule: &'static str, c: &Compat) -> Option<Formula> {
        for (what, t) in [("left side", &c.lhs), ("right side", &c.rhs)] {
            match t.type_of() {
                Ok(ty) if ty == c.ty => {}
                Ok(ty) => {
                    self.fail(rule, Restriction::Typing, format!("{what} {t} has type {ty}, expected {}", c.ty));
                    return None;
                }
                Err(e) => {
                    self.fail(rule, Restriction::Typing, e.to_string());
                    return None;
                }
            }
        }
        if c.var.ty != c.ty {
            self.fail(rule, Restriction::Typing, format!("variable {} does not have type {}", c.var, c.ty));
            return None;
        }
        if !self.lang(rule, &c.body) {
            return None;
        }
        match c.equation() {
            Ok(eq) => Some(eq),
            Err(e) => {
                self.fail(rule, Restriction::Typing, e.to_string());
                None
            }
        }
    }

    fn imp_i(&mut self, rule: &'static str, a: &AVar, q: &Proof) -> Option<Node> {
        let lang_ok = self.lang(rule, &a.formula);
        let info = if lang_ok { self.avar(rule, a) } else { None };
        let n = self.child(0, q)?;
        self.multiplicity(rule, &n, None);
        let info = info?;
        let mine: Vec<usize> = (0..n.seq.context.len())
            .filter(|&i| n.seq.context[i].name == a.name)
            .collect();
        let rest: Vec<usize> = (0..n.seq.context.len()).filter(|i| !mine.contains(i)).collect();
        let goal = Formula::imp(a.formula.clone(), n.seq.goal.clone());
        let context = rest.iter().map(|&i| n.seq.context[i].clone()).collect();
        let ext = self.ext(&[&n]).map(|es| {
            let e = es[0];
            let tr = translate_raw(&goal);
            let xa = &info.tr.witnesses;
            let (xs2, vs2) = tr.challenges.split_at(xa.len());
            let sigma = Subst::renaming(xa, xs2).union(Subst::renaming(&e.goal.challenges, vs2));
            let tau = match mine.first() {
                Some(&i) => e.challengers[i].clone(),
                None => zeros(&info.tr.challenges),
            };
            let binders = [xa.clone(), e.goal.challenges.clone()].concat();
            let mut realizers = Vec::new();
            for t in tau {
                realizers.push(self.nf(Term::lams(&binders, t)));
            }
            for t in &e.realizers {
                realizers.push(self.nf(Term::lams(xa, t.clone())));
            }
            let challengers = rest.iter().map(|&i| self.sub(&sigma, &e.challengers[i])).collect();
            Ext {
                goal: tr,
                realizers,
                challengers,
            }
        });
        Some(Node {
            seq: Sequent { context, goal },
            ext,
        })
    }

    fn imp_e(&mut self, rule: &'static str, minor: &Proof, major: &Proof) -> Option<Node> {
        let m = self.child(0, minor);
        let j = self.child(1, major);
        let (m, j) = (m?, j?);
        self.multiplicity(rule, &m, None);
        self.multiplicity(rule, &j, None);
        let Formula::Imp(a, b) = &j.seq.goal else {
            self.fail(rule, Restriction::Shape, format!("major premise {} is not an implication", j.seq.goal));
            return None;
        };
        if !a.equiv(&m.seq.goal) {
            self.fail(
                rule,
                Restriction::Shape,
                format!("minor premise proves {} but the major premise needs {a}", m.seq.goal),
            );
            return None;
        }
        let goal = (**b).clone();
        let context = [m.seq.context.clone(), j.seq.context.clone()].concat();
        let ext = self.ext(&[&m, &j]).map(|es| {
            let (em, ej) = (es[0], es[1]);
            let tr = translate_raw(&goal);
            let ta = &em.realizers;
            let (fs, gs) = ej.realizers.split_at(em.goal.challenges.len());
            let vs = terms(&tr.challenges);
            let mut realizers = Vec::new();
            for g in gs {
                realizers.push(self.nf(Term::apps(g.clone(), ta.iter().cloned())));
            }
            let sm = Subst::from_pairs(
                em.goal
                    .challenges
                    .iter()
                    .cloned()
                    .zip(fs.iter().map(|f| Term::apps(f.clone(), ta.iter().chain(&vs).cloned()))),
            );
            let sj = Subst::from_pairs(ej.goal.challenges.iter().cloned().zip(ta.iter().chain(&vs).cloned()));
            let mut challengers = self.sub_all(&sm, &em.challengers);
            challengers.extend(self.sub_all(&sj, &ej.challengers));
            Ext {
                goal: tr,
                realizers,
                challengers,
            }
        });
        Some(Node {
            seq: Sequent { context, goal },
            ext,
        })
    }

    fn forall_i(&mut self, rule: &'static str, q: QuantFlavor, z: &Var, body: &Proof) -> Option<Node> {
        let n = self.child(0, body)?;
        self.multiplicity(rule, &n, None);
        if !self.system.language().allows_flavor(q) {
            self.fail(rule, Restriction::Language, format!("{} is not available in {}", q.keyword(), self.system.name()));
            return None;
        }
        if let Some(a) = names_free(&n.seq.context, z) {
            self.fail(rule, Restriction::Eigenvariable, format!("{} is free in the context formula of {a}", z.name));
        }
        let goal = Formula::forall(q, z.clone(), n.seq.goal.clone());
        let ext = self.ext(&[&n]).map(|es| {
            let e = es[0];
            let tr = translate_raw(&goal);
            let in_challengers = e.challengers.iter().flatten().any(|t| t.has_free(z));
            let in_realizers = e.realizers.iter().any(|t| t.has_free(z));
            let binds_z = q.computational_for_witnesses();
            let separate = q.computational_for_challenges();
            if !binds_z && in_realizers {
                let r = if q == QuantFlavor::Minus { Restriction::Minus } else { Restriction::NonComp };
                self.fail(rule, r, format!("{} is free in the extracted witnesses", z.name));
            }
            if !separate && in_challengers {
                let r = if q == QuantFlavor::Plus { Restriction::Plus } else { Restriction::NonComp };
                self.fail(rule, r, format!("{} is free in a context challenger", z.name));
            }
            let mut realizers = Vec::new();
            for t in &e.realizers {
                let t = if binds_z { Term::lam(z.clone(), t.clone()) } else { t.clone() };
                realizers.push(self.nf(t));
            }
            let s = if separate {
                let mut s = Subst::renaming(&e.goal.challenges, &tr.challenges[1..]);
                s.insert(z.clone(), tr.challenges[0].term());
                s
            } else {
                Subst::renaming(&e.goal.challenges, &tr.challenges)
            };
            Ext {
                realizers,
                challengers: self.sub_all(&s, &e.challengers),
                goal: tr,
            }
        });
        Some(Node {
            seq: Sequent {
                context: n.seq.context.clone(),
                goal,
            },
            ext,
        })
    }

    fn forall_e(&mut self, rule: &'static str, q: &Proof, t: &Term) -> Option<Node> {
        let n = self.child(0, q)?;
        self.multiplicity(rule, &n, None);
        let Formula::Forall(flavor, z, body) = &n.seq.goal else {
            self.fail(rule, Restriction::Shape, format!("premise {} is not universal", n.seq.goal));
            return None;
        };
        let goal = match body.subst1(z, t) {
            Ok(g) => g,
            Err(e) => {
                self.fail(rule, Restriction::Typing, e.to_string());
                return None;
            }
        };
        let ext = self.ext(&[&n]).map(|es| {
            let e = es[0];
            let tr = translate_raw(&goal);
            let mut realizers = Vec::new();
            for r in &e.realizers {
                let r = if flavor.computational_for_witnesses() {
                    Term::app(r.clone(), t.clone())
                } else {
                    r.clone()
                };
                realizers.push(self.nf(r));
            }
            let s = if flavor.computational_for_challenges() {
                let mut s = Subst::renaming(&e.goal.challenges[1..], &tr.challenges);
                s.insert(e.goal.challenges[0].clone(), t.clone());
                s
            } else {
                Subst::renaming(&e.goal.challenges, &tr.challenges)
            };
            Ext {
                realizers,
                challengers: self.sub_all(&s, &e.challengers),
                goal: tr,
            }
        });
        Some(Node {
            seq: Sequent {
                context: n.seq.context.clone(),
                goal,
            },
            ext,
        })
    }

    fn contract(&mut self, rule: &'static str, name: &Arc<str>, q: &Proof) -> Option<Node> {
        let n = self.child(0, q)?;
        self.multiplicity(rule, &n, Some(name));
        let idx: Vec<usize> = (0..n.seq.context.len())
            .filter(|&i| n.seq.context[i].name == *name)
            .collect();
        if idx.len() < 2 {
            self.fail(rule, Restriction::Shape, format!("premise holds {} fewer than two times", name));
            return None;
        }
        let a = n.seq.context[idx[0]].formula.clone();
        let relevant = !a.refutation_irrelevant();
        if relevant && self.system != System::V {
            let v = cres_verdict(&a, self.system, self.reg);
            if !v.admissible {
                self.fail(rule, Restriction::ContractionUndecidable, format!("cannot contract {name}: {}", v.reason));
            }
        }
        let keep: Vec<usize> = (0..n.seq.context.len())
            .filter(|i| !idx[1..].contains(i))
            .collect();
        let context = keep.iter().map(|&i| n.seq.context[i].clone()).collect();
        let ext = match self.ext(&[&n]) {
            Some(es) => {
                let e = es[0];
                let merged = if relevant {
                    let tr = self.avars[name].tr.clone();
                    let mut acc = Some(e.challengers[idx[0]].clone());
                    for &i in &idx[1..] {
                        acc = match acc {
                            Some(left) => merge_or_fail(self, rule, &tr, left, e.challengers[i].clone()),
                            None => None,
                        };
                    }
                    acc
                } else {
                    Some(vec![])
                };
                merged.map(|m| {
                    let challengers = keep
                        .iter()
                        .map(|&i| if i == idx[0] { m.clone() } else { e.challengers[i].clone() })
                        .collect();
                    Ext {
                        goal: e.goal.clone(),
                        realizers: e.realizers.clone(),
                        challengers,
                    }
                })
            }
            None => None,
        };
        Some(Node {
            seq: Sequent {
                context,
                goal: n.seq.goal.clone(),
            },
            ext,
        })
    }

    fn induction_var(&mut self, rule: &'static str, v: &Var, ty: Type, a: &Formula, ctxs: &[&[AVar]]) -> bool {
        if v.ty != ty {
            self.fail(rule, Restriction::Typing, format!("induction variable {} must have type {ty}", v.name));
            return false;
        }
        if !a.has_free(v) {
            self.fail(rule, Restriction::InductionVariable, format!("{} does not occur in {a}", v.name));
        }
        for ctx in ctxs {
            if let Some(b) = names_free(ctx, v) {
                self.fail(rule, Restriction::InductionVariable, format!("{} is free in the context formula of {b}", v.name));
            }
        }
        true
    }

    fn expect_goal(&mut self, rule: &'static str, n: &Node, want: &Formula, which: &str) -> bool {
        if n.seq.goal.equiv(want) {
            return true;
        }
        self.fail(
            rule,
            Restriction::Shape,
            format!("{which} proves {} but the rule needs {want}", n.seq.goal),
        );
        false
    }

    fn instance(&mut self, rule: &'static str, a: &Formula, v: &Var, t: Term) -> Option<Formula> {
        match a.subst1(v, &t) {
            Ok(f) => Some(f),
            Err(e) => {
                self.fail(rule, Restriction::Typing, e.to_string());
                None
            }
        }
    }

    fn ind_bool(&mut self, rule: &'static str, b: &Var, a: &Formula, pt: &Proof, pf: &Proof) -> Option<Node> {
        let nt = self.child(0, pt);
        let nf_ = self.child(1, pf);
        let (nt, nf_) = (nt?, nf_?);
        if !self.lang(rule, a) {
            return None;
        }
        self.multiplicity(rule, &nt, None);
        self.multiplicity(rule, &nf_, None);
        if !self.induction_var(rule, b, Type::Bool, a, &[&nt.seq.context, &nf_.seq.context]) {
            return None;
        }
        let at = self.instance(rule, a, b, Term::True)?;
        let af = self.instance(rule, a, b, Term::False)?;
        let ok = self.expect_goal(rule, &nt, &at, "true case") & self.expect_goal(rule, &nf_, &af, "false case");
        if !ok {
            return None;
        }
        let (context, from_right) = union_by_name(&nt.seq.context, &nf_.seq.context);
        let ext = self.ext(&[&nt, &nf_]).map(|es| {
            let (et, ef) = (es[0], es[1]);
            let tr = translate_raw(a);
            let mut realizers = Vec::new();
            for ((w, l), r) in tr.witnesses.iter().zip(&et.realizers).zip(&ef.realizers) {
                realizers.push(Term::if_then(w.ty.clone(), b.term(), l.clone(), r.clone()));
            }
            let st = Subst::renaming(&et.goal.challenges, &tr.challenges);
            let sf = Subst::renaming(&ef.goal.challenges, &tr.challenges);
            let left = self.sub_all(&st, &et.challengers);
            let right = self.sub_all(&sf, &ef.challengers);
            let mut challengers = Vec::new();
            for (i, a) in context.iter().enumerate() {
                let ch = if i < nt.seq.context.len() {
                    match nf_.seq.context.iter().position(|x| x.name == a.name) {
                        Some(j) if !left[i].is_empty() => left[i]
                            .iter()
                            .zip(&right[j])
                            .map(|(l, r)| {
                                let ty = l.type_of().unwrap_or(Type::Nat);
                                Term::if_then(ty, b.term(), l.clone(), r.clone())
                            })
                            .collect(),
                        _ => left[i].clone(),
                    }
                } else {
                    right[from_right[i - nt.seq.context.len()]].clone()
                };
                challengers.push(ch);
            }
            let realizers = realizers.into_iter().map(|t| self.nf(t)).collect();
            let challengers = challengers
                .into_iter()
                .map(|c| c.into_iter().map(|t| self.nf(t)).collect())
                .collect();
            Ext {
                goal: tr,
                realizers,
                challengers,
            }
        });
        Some(Node {
            seq: Sequent {
                context,
                goal: a.clone(),
            },
            ext,
        })
    }

    fn ind_nat(
        &mut self,
        rule: &'static str,
        n: &Var,
        a: &Formula,
        base: &Proof,
        step: &Proof,
        modal: bool,
    ) -> Option<Node> {
        let nb = self.child(0, base);
        let ns = self.child(1, step);
        let (nb, ns) = (nb?, ns?);
        if !self.lang(rule, a) {
            return None;
        }
        if modal && !self.system.language().allows_box() {
            self.fail(rule, Restriction::Language, format!("modal induction is not available in {}", self.system.name()));
            return None;
        }
        self.multiplicity(rule, &nb, None);
        self.multiplicity(rule, &ns, None);
        if !self.induction_var(rule, n, Type::Nat, a, &[&nb.seq.context, &ns.seq.context]) {
            return None;
        }
        let a0 = self.instance(rule, a, n, Term::Zero)?;
        let asn = self.instance(rule, a, n, Term::succ(n.term()))?;
        let wrap = |f: Formula| if modal { Formula::boxed(f) } else { f };
        let want_base = wrap(a0);
        let want_step = Formula::imp(wrap(a.clone()), asn);
        let ok = self.expect_goal(rule, &nb, &want_base, "base case") & self.expect_goal(rule, &ns, &want_step, "step case");
        if !ok {
            return None;
        }
        if modal {
            if let Some(d) = ns.seq.context.iter().find(|d| !matches!(d.formula, Formula::Box(_))) {
                let msg = format!("step context formula {} of {} is not boxed", d.formula, d.name);
                self.fail(rule, Restriction::StepContextNotBoxed, msg);
            }
        } else if self.system != System::V {
            for d in &ns.seq.context {
                if d.formula.refutation_irrelevant() {
                    continue;
                }
                let v = cres_verdict(&d.formula, self.system, self.reg);
                if !v.admissible {
                    self.fail(
                        rule,
                        Restriction::ContractionUndecidable,
                        format!("step avar {} cannot be contracted: {}", d.name, v.reason),
                    );
                }
            }
        }
        let (context, from_step) = union_by_name(&nb.seq.context, &ns.seq.context);
        let goal = wrap(a.clone());
        let ext = self.ext(&[&nb, &ns]).and_then(|es| {
            let parts = StepParts {
                var: n,
                formula: a,
                base_ctx: &nb.seq.context,
                step_ctx: &ns.seq.context,
                base: es[0],
                step: es[1],
                context: &context,
                from_step: &from_step,
            };
            if modal {
                induction::ind_nat_m(self, rule, &parts)
            } else {
                induction::ind_nat(self, rule, &parts)
            }
        });
        Some(Node {
            seq: Sequent { context, goal },
            ext,
        })
    }
}

/// `Γ` followed by the avars of `Δ` whose names do not occur in `Γ`; the
/// second component maps those appended entries back to indices of `Δ`.
fn union_by_name(g: &[AVar], d: &[AVar]) -> (Vec<AVar>, Vec<usize>) {
    let mut out = g.to_vec();
    let mut back = Vec::new();
    for (j, a) in d.iter().enumerate() {
        if !g.iter().any(|x| x.name == a.name) && !out[g.len()..].iter().any(|x| x.name == a.name) {
            out.push(a.clone());
            back.push(j);
        }
    }
    (out, back)
}

fn merge_or_fail(e: &mut Engine<'_>, rule: &'static str, tr: &Translation, left: Vec<Term>, right: Vec<Term>) -> Option<Vec<Term>> {
    match super::induction::merge_challengers(tr, &left, &right, e.reg) {
        Ok(m) => Some(m.into_iter().map(|t| e.nf(t)).collect()),
        Err(msg) => {
            e.fail(rule, Restriction::ContractionUndecidable, msg);
            None
        }
    }
}

/// `λx̄. x_k`
fn projection(tys: &[Type], k: usize) -> Term {
    let xs: Vec<Var> = tys.iter().map(|t| fresh_var("x", t.clone())).collect();
    Term::lams(&xs, xs[k].term())
}

/// `B(s) → B(r)` and its closed realizers `λū v̄. v_j`, `λū. u_k`.
fn compat_realizers(c: &Compat) -> Option<(Formula, Vec<Term>)> {
    let f = c.transport().ok()?;
    let tb = translate_raw(&c.body);
    let us: Vec<Var> = tb.witnesses.iter().map(|w| fresh_var("u", w.ty.clone())).collect();
    let vs: Vec<Var> = tb.challenges.iter().map(|w| fresh_var("v", w.ty.clone())).collect();
    let both = [us.clone(), vs.clone()].concat();
    let mut rs: Vec<Term> = vs.iter().map(|v| Term::lams(&both, v.term())).collect();
    rs.extend(us.iter().map(|u| Term::lams(&us, u.term())));
    Some((f, rs))
}

pub(super) fn compile_matrix(tr: &Translation, reg: &DecidableRegistry) -> Result<Term, String> {
    compile_with(&tr.matrix, reg).map_err(|e| format!("translation is not decidable: {e}"))
}
