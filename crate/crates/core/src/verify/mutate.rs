//! Seeded corruptions of realizers, used to check that verification is not
//! vacuous.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extraction::Obligation;
use crate::kernel::{canonical_inhabitant, Term, Type, Var};

/// A term corruption, selected by name.
pub trait Mutator: Send + Sync {
    fn name(&self) -> &'static str;
    fn mutate(&self, t: &Term, ty: &Type, rng: &mut ChaCha8Rng) -> Option<Term>;
}

/// `λx̄. S (t x̄)`, or boolean negation.
struct Perturb;
/// `λx̄. c` for a random constant.
struct Constant;
/// Swaps the branches of one conditional.
struct SwapIf;
/// Replaces one natural-number variable occurrence `x` by `S x`.
struct ShiftVar;
/// The canonical inhabitant of the type.
struct Zero;

/// Binders for every argument of `ty`, named apart from the free variables of `t`.
fn spread(t: &Term, ty: &Type) -> (Vec<Var>, Type) {
    let (args, res) = ty.uncurry();
    let taken = t.free_vars();
    let mut i = 0;
    let mut xs = Vec::new();
    for a in args {
        loop {
            let v = Var::new(format!("m{i}"), a.clone());
            i += 1;
            if !taken.iter().any(|w| w.name == v.name) {
                xs.push(v);
                break;
            }
        }
    }
    (xs, res)
}

impl Mutator for Perturb {
    fn name(&self) -> &'static str {
        "perturb"
    }

    fn mutate(&self, t: &Term, ty: &Type, _rng: &mut ChaCha8Rng) -> Option<Term> {
        let (xs, res) = spread(t, ty);
        let body = Term::apps(t.clone(), xs.iter().map(Var::term));
        let bumped = match res {
            Type::Bool => Term::if_then(Type::Bool, body, Term::False, Term::True),
            _ => Term::succ(body),
        };
        Some(Term::lams(&xs, bumped))
    }
}

impl Mutator for Constant {
    fn name(&self) -> &'static str {
        "constant"
    }

    fn mutate(&self, t: &Term, ty: &Type, rng: &mut ChaCha8Rng) -> Option<Term> {
        let (xs, res) = spread(t, ty);
        let c = match res {
            Type::Bool => Term::bool_const(rng.gen()),
            _ => Term::numeral(rng.gen_range(0..4)),
        };
        Some(Term::lams(&xs, c))
    }
}

impl Mutator for SwapIf {
    fn name(&self) -> &'static str {
        "swap-if"
    }

    fn mutate(&self, t: &Term, _ty: &Type, rng: &mut ChaCha8Rng) -> Option<Term> {
        let site = |s: &Term| {
            let (h, args) = s.spine();
            match (h, args.as_slice()) {
                (Term::If(_), [c, a, b]) => Some(Term::apps(h.clone(), [(*c).clone(), (*b).clone(), (*a).clone()])),
                _ => None,
            }
        };
        rewrite_random(t, &site, rng)
    }
}

impl Mutator for ShiftVar {
    fn name(&self) -> &'static str {
        "shift-var"
    }

    fn mutate(&self, t: &Term, _ty: &Type, rng: &mut ChaCha8Rng) -> Option<Term> {
        let site = |s: &Term| match s {
            Term::Var(x) if x.ty == Type::Nat => Some(Term::succ(s.clone())),
            _ => None,
        };
        rewrite_random(t, &site, rng)
    }
}

impl Mutator for Zero {
    fn name(&self) -> &'static str {
        "zero"
    }

    fn mutate(&self, _t: &Term, ty: &Type, _rng: &mut ChaCha8Rng) -> Option<Term> {
        Some(canonical_inhabitant(ty))
    }
}

static MUTATORS: [&dyn Mutator; 5] = [&Perturb, &Constant, &SwapIf, &ShiftVar, &Zero];

pub fn mutators() -> &'static [&'static dyn Mutator] {
    &MUTATORS
}

pub fn mutator(name: &str) -> Option<&'static dyn Mutator> {
    MUTATORS.iter().copied().find(|m| m.name() == name)
}

type Site<'a> = dyn Fn(&Term) -> Option<Term> + 'a;

fn count_sites(t: &Term, site: &Site<'_>) -> usize {
    let here = usize::from(site(t).is_some());
    here + match t {
        Term::App(f, a) => count_sites(f, site) + count_sites(a, site),
        Term::Lam(_, b) => count_sites(b, site),
        _ => 0,
    }
}

/// Rewrites the `n`-th site in preorder.
fn rewrite_nth(t: &Term, n: &mut usize, site: &Site<'_>) -> Term {
    if let Some(r) = site(t) {
        if *n == 0 {
            *n = usize::MAX;
            return r;
        }
        *n -= 1;
    }
    match t {
        Term::App(f, a) => {
            let f2 = rewrite_nth(f, n, site);
            let a2 = rewrite_nth(a, n, site);
            Term::App(Arc::new(f2), Arc::new(a2))
        }
        Term::Lam(x, b) => Term::Lam(x.clone(), Arc::new(rewrite_nth(b, n, site))),
        _ => t.clone(),
    }
}

fn rewrite_random(t: &Term, site: &Site<'_>, rng: &mut ChaCha8Rng) -> Option<Term> {
    let k = count_sites(t, site);
    if k == 0 {
        return None;
    }
    let mut n = rng.gen_range(0..k);
    Some(rewrite_nth(t, &mut n, site))
}

#[derive(Clone, Debug)]
pub struct Mutant {
    pub mutator: &'static str,
    /// `realizer i` or `challenger a i`.
    pub target: String,
    pub obligation: Obligation,
}

/// Up to `count` seeded mutants of the obligation. Realizers are corrupted
/// when there are any, challengers otherwise.
pub fn mutate_obligation(ob: &Obligation, seed: u64, count: usize) -> Vec<Mutant> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<(String, Type, Term)> = ob
        .goal
        .witnesses
        .iter()
        .zip(&ob.realizers)
        .enumerate()
        .map(|(i, (w, t))| (format!("realizer {i}"), w.ty.clone(), t.clone()))
        .collect();
    if targets.is_empty() {
        for h in &ob.hypotheses {
            for (i, (y, t)) in h.translation.challenges.iter().zip(&h.challengers).enumerate() {
                targets.push((format!("challenger {} {i}", h.avar), y.ty.clone(), t.clone()));
            }
        }
    }
    let mut out = Vec::new();
    if targets.is_empty() {
        return out;
    }
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let m = *MUTATORS.choose(&mut rng).expect("nonempty");
        let ti = rng.gen_range(0..targets.len());
        let (label, ty, t) = &targets[ti];
        let Some(t2) = m.mutate(t, ty, &mut rng) else { continue };
        if t2.alpha_eq(t) {
            continue;
        }
        let mut ob2 = ob.clone();
        if label.starts_with("realizer") {
            ob2.realizers[ti] = t2;
        } else {
            let mut k = ti;
            for h in &mut ob2.hypotheses {
                if k < h.challengers.len() {
                    h.challengers[k] = t2;
                    break;
                }
                k -= h.challengers.len();
            }
        }
        out.push(Mutant {
            mutator: m.name(),
            target: label.clone(),
            obligation: ob2,
        });
    }
    out
}
