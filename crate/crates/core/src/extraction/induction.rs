//! Realizers for induction and contraction.

use super::engine::{compile_matrix, terms, Engine, Ext};
use crate::calculus::AVar;
use crate::dialectica::{translate_raw, Translation};
use crate::formulas::{DecidableRegistry, Formula};
use crate::kernel::{canonical_inhabitant, fresh_var, Subst, Term, Type, Var};

pub(super) struct StepParts<'a> {
    pub var: &'a Var,
    pub formula: &'a Formula,
    pub base_ctx: &'a [AVar],
    pub step_ctx: &'a [AVar],
    pub base: &'a Ext,
    pub step: &'a Ext,
    /// Conclusion context: the base context, then step avars not in it.
    pub context: &'a [AVar],
    pub from_step: &'a [usize],
}

/// Merges two challenger tuples for one avar: when `|A|` holds at the right
/// tuple the left one is kept, otherwise the right one.
pub fn merge_challengers(
    tr: &Translation,
    left: &[Term],
    right: &[Term],
    reg: &DecidableRegistry,
) -> Result<Vec<Term>, String> {
    let b = compile_matrix(tr, reg)?;
    let cond = Subst::from_pairs(tr.challenges.iter().cloned().zip(right.iter().cloned())).apply(&b);
    Ok(tr
        .challenges
        .iter()
        .zip(left.iter().zip(right))
        .map(|(y, (l, r))| Term::if_then(y.ty.clone(), cond.clone(), l.clone(), r.clone()))
        .collect())
}

/// The witnesses `t̄'[m]` with `t̄'[0] = r̄` and `t̄'[S m] = s̄ t̄'[m]`. The step
/// terms may mention the induction variable `n`. Tuples longer than one are
/// iterated in continuation-passing style, one recursion per component.
pub fn iterate_witnesses(m: &Term, r: &[Term], s: &[Term], n: &Var, tys: &[Type]) -> Vec<Term> {
    let n2 = fresh_var(n.stem(), Type::Nat);
    let rn = Subst::single(n.clone(), n2.term());
    match tys.len() {
        0 => vec![],
        1 => {
            let step = Term::lam(n2, rn.apply(&s[0]));
            vec![Term::rec(tys[0].clone(), m.clone(), r[0].clone(), step)]
        }
        _ => (0..tys.len())
            .map(|i| {
                let rho = &tys[i];
                let cont_ty = Type::curried(tys.iter(), rho.clone());
                let kappa = Type::arrow(cont_ty.clone(), rho.clone());
                let c = fresh_var("c", cont_ty.clone());
                let p = fresh_var("p", kappa.clone());
                let xs: Vec<Var> = tys.iter().map(|t| fresh_var("x", t.clone())).collect();
                let base = Term::lam(c.clone(), Term::apps(c.term(), r.iter().cloned()));
                let advanced = s
                    .iter()
                    .map(|sj| Term::apps(rn.apply(sj), terms(&xs)));
                let cont = Term::lams(&xs, Term::apps(c.term(), advanced));
                let step = Term::lams(&[n2.clone(), p.clone(), c], Term::app(p.term(), cont));
                let select = Term::lams(&xs, xs[i].term());
                Term::app(Term::rec(kappa, m.clone(), base, step), select)
            })
            .collect(),
    }
}

pub(super) fn ind_nat(e: &mut Engine<'_>, rule: &'static str, sp: &StepParts<'_>) -> Option<Ext> {
    let tr = translate_raw(sp.formula);
    let tys = tr.witness_types();
    let ny = tr.challenges.len();
    let (tf, sg) = sp.step.realizers.split_at(ny);
    let (xs_step, vs_step) = sp.step.goal.challenges.split_at(tys.len());
    let realizers: Vec<Term> = iterate_witnesses(&sp.var.term(), &sp.base.realizers, sg, sp.var, &tys)
        .into_iter()
        .map(|t| e.nf(t))
        .collect();

    let n2 = fresh_var(sp.var.stem(), Type::Nat);
    let vs: Vec<Var> = tr.challenges.iter().map(|y| fresh_var("v", y.ty.clone())).collect();
    let t_n2 = iterate_witnesses(&n2.term(), &sp.base.realizers, sg, sp.var, &tys);
    let rn = Subst::single(sp.var.clone(), n2.term());
    let ttv: Vec<Term> = tf
        .iter()
        .map(|f| Term::apps(rn.apply(f), t_n2.iter().cloned().chain(terms(&vs))))
        .collect();
    let mut at_step = rn.clone();
    for (x, t) in xs_step.iter().zip(&t_n2) {
        at_step.insert(x.clone(), t.clone());
    }
    for (v, w) in vs_step.iter().zip(&vs) {
        at_step.insert(v.clone(), w.term());
    }
    let to_v = Subst::renaming(&sp.base.goal.challenges, &vs);
    let y_terms = terms(&tr.challenges);
    let v_tys: Vec<Type> = vs.iter().map(|v| v.ty.clone()).collect();

    let mut challengers = Vec::new();
    for (i, a) in sp.context.iter().enumerate() {
        let avar_tr = e.avars[&a.name].tr.clone();
        if avar_tr.challenges.is_empty() {
            challengers.push(vec![]);
            continue;
        }
        let (gamma, in_step) = if i < sp.base_ctx.len() {
            let j = sp.step_ctx.iter().position(|d| d.name == a.name);
            (Some(&sp.base.challengers[i]), j)
        } else {
            (None, Some(sp.from_step[i - sp.base_ctx.len()]))
        };
        let delta: Option<Vec<Term>> = in_step.map(|j| sp.step.challengers[j].iter().map(|t| at_step.apply(t)).collect());
        let cond = match &delta {
            Some(d) => match compile_matrix(&avar_tr, e.reg) {
                Ok(b) => Some(Subst::from_pairs(avar_tr.challenges.iter().cloned().zip(d.iter().cloned())).apply(&b)),
                Err(msg) => {
                    e.fail(rule, crate::calculus::Restriction::ContractionUndecidable, format!("{}: {msg}", a.name));
                    return None;
                }
            },
            None => None,
        };
        let mut out = Vec::new();
        for (c, y) in avar_tr.challenges.iter().enumerate() {
            let sigma = &y.ty;
            let start = match gamma {
                Some(g) => to_v.apply(&g[c]),
                None => canonical_inhabitant(sigma),
            };
            let fn_ty = Type::curried(v_tys.iter(), sigma.clone());
            let p = fresh_var("p", fn_ty.clone());
            let recurse = Term::apps(p.term(), ttv.iter().cloned());
            let body = match (&delta, &cond) {
                (Some(d), Some(b)) => Term::if_then(sigma.clone(), b.clone(), recurse, d[c].clone()),
                _ => recurse,
            };
            let step = Term::lams(&[n2.clone(), p], Term::lams(&vs, body));
            let r = Term::rec(fn_ty, sp.var.term(), Term::lams(&vs, start), step);
            out.push(e.nf(Term::apps(r, y_terms.iter().cloned())));
        }
        challengers.push(out);
    }
    Some(Ext {
        goal: tr,
        realizers,
        challengers,
    })
}

pub(super) fn ind_nat_m(e: &mut Engine<'_>, _rule: &'static str, sp: &StepParts<'_>) -> Option<Ext> {
    let tr = translate_raw(&Formula::boxed(sp.formula.clone()));
    let tys = tr.witness_types();
    let realizers = iterate_witnesses(&sp.var.term(), &sp.base.realizers, &sp.step.realizers, sp.var, &tys)
        .into_iter()
        .map(|t| e.nf(t))
        .collect();
    let mut challengers: Vec<Vec<Term>> = sp.base.challengers.clone();
    for &j in sp.from_step {
        challengers.push(sp.step.challengers[j].clone());
    }
    Some(Ext {
        goal: tr,
        realizers,
        challengers,
    })
}
