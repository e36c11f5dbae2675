//! Normalization by the rewrite rules of Gödel's T:
//!
//! ```text
//! (λx.t) s        ⊳ t[x ↦ s]
//! If true s t     ⊳ s            Rec 0 s t      ⊳ s
//! If false s t    ⊳ t            Rec (S n) s t  ⊳ t n (Rec n s t)
//! ```
//!
//! The system is confluent and strongly normalizing, so every strategy reaches
//! the same normal form. Strategies are registered by name; the fuel bound only
//! guards against implementation bugs.

use std::sync::Arc;

use super::{KernelError, Subst, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Step budget shared by one normalization run.
#[derive(Debug)]
pub struct Fuel {
    left: u64,
    limit: u64,
}

impl Fuel {
    pub fn new(limit: u64) -> Fuel {
        Fuel { left: limit, limit }
    }

    fn tick(&mut self) -> Result<(), KernelError> {
        if self.left == 0 {
            return Err(KernelError::FuelExhausted(self.limit));
        }
        self.left -= 1;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.limit - self.left
    }
}

pub trait Normalizer: Send + Sync {
    fn name(&self) -> &'static str;
    fn normalize_with(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, KernelError>;

    fn normalize(&self, t: &Term) -> Result<Term, KernelError> {
        self.normalize_with(t, &mut Fuel::new(DEFAULT_FUEL))
    }
}

/// Normal order: always contracts the leftmost-outermost redex first.
pub struct LeftmostOutermost;

/// Applicative order: normalizes all subterms before contracting at the root.
pub struct Innermost;

static LEFTMOST: LeftmostOutermost = LeftmostOutermost;
static INNERMOST: Innermost = Innermost;

/// All registered strategies, default first.
pub fn strategies() -> [&'static dyn Normalizer; 2] {
    [&LEFTMOST, &INNERMOST]
}

pub fn strategy(name: &str) -> Option<&'static dyn Normalizer> {
    strategies().into_iter().find(|s| s.name() == name)
}

/// Normal form under the default strategy.
pub fn normalize(t: &Term) -> Result<Term, KernelError> {
    LEFTMOST.normalize(t)
}

fn rebuild(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
    Term::apps(head, args)
}

fn beta(x: &super::Var, body: &Term, arg: &Term) -> Term {
    Subst::single(x.clone(), arg.clone()).apply(body)
}

impl Normalizer for LeftmostOutermost {
    fn name(&self) -> &'static str {
        "leftmost-outermost"
    }

    fn normalize_with(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, KernelError> {
        nf_lo(t.clone(), fuel)
    }
}

fn nf_lo(mut t: Term, fuel: &mut Fuel) -> Result<Term, KernelError> {
    loop {
        let (head, args) = {
            let (h, a) = t.spine();
            (h.clone(), a.into_iter().cloned().collect::<Vec<_>>())
        };
        match head {
            Term::Lam(ref x, ref body) if !args.is_empty() => {
                fuel.tick()?;
                let r = beta(x, body, &args[0]);
                t = rebuild(r, args.into_iter().skip(1));
            }
            Term::Lam(x, body) => {
                return Ok(Term::Lam(x, Arc::new(nf_lo((*body).clone(), fuel)?)));
            }
            Term::If(ref ty) if args.len() >= 3 => {
                let cond = nf_lo(args[0].clone(), fuel)?;
                match cond {
                    Term::True | Term::False => {
                        fuel.tick()?;
                        let pick = if cond == Term::True { &args[1] } else { &args[2] };
                        t = rebuild(pick.clone(), args.into_iter().skip(3));
                    }
                    _ => {
                        let mut out = vec![cond];
                        for a in args.into_iter().skip(1) {
                            out.push(nf_lo(a, fuel)?);
                        }
                        return Ok(rebuild(Term::If(ty.clone()), out));
                    }
                }
            }
            Term::Rec(ref ty) if args.len() >= 3 => {
                let n = nf_lo(args[0].clone(), fuel)?;
                match &n {
                    Term::Zero => {
                        fuel.tick()?;
                        t = rebuild(args[1].clone(), args.into_iter().skip(3));
                    }
                    Term::App(f, m) if **f == Term::Succ => {
                        fuel.tick()?;
                        let m = (**m).clone();
                        let inner = Term::rec(ty.clone(), m.clone(), args[1].clone(), args[2].clone());
                        let unfolded = Term::apps(args[2].clone(), [m, inner]);
                        t = rebuild(unfolded, args.into_iter().skip(3));
                    }
                    _ => {
                        let mut out = vec![n];
                        for a in args.into_iter().skip(1) {
                            out.push(nf_lo(a, fuel)?);
                        }
                        return Ok(rebuild(Term::Rec(ty.clone()), out));
                    }
                }
            }
            h => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(nf_lo(a, fuel)?);
                }
                return Ok(rebuild(h, out));
            }
        }
    }
}

impl Normalizer for Innermost {
    fn name(&self) -> &'static str {
        "innermost"
    }

    fn normalize_with(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, KernelError> {
        nf_in(t, fuel)
    }
}

fn nf_in(t: &Term, fuel: &mut Fuel) -> Result<Term, KernelError> {
    match t {
        Term::App(f, a) => {
            let f = nf_in(f, fuel)?;
            let a = nf_in(a, fuel)?;
            contract_in(Term::app(f, a), fuel)
        }
        Term::Lam(x, b) => Ok(Term::Lam(x.clone(), Arc::new(nf_in(b, fuel)?))),
        _ => Ok(t.clone()),
    }
}

/// Contracts a root redex of a term whose proper subterms are normal.
fn contract_in(t: Term, fuel: &mut Fuel) -> Result<Term, KernelError> {
    let (head, args) = t.spine();
    match head {
        Term::Lam(x, body) if args.len() == 1 => {
            fuel.tick()?;
            let r = beta(x, body, args[0]);
            nf_in(&r, fuel)
        }
        Term::If(_) if args.len() == 3 => match args[0] {
            Term::True => {
                fuel.tick()?;
                Ok(args[1].clone())
            }
            Term::False => {
                fuel.tick()?;
                Ok(args[2].clone())
            }
            _ => Ok(t.clone()),
        },
        Term::Rec(ty) if args.len() == 3 => match args[0] {
            Term::Zero => {
                fuel.tick()?;
                Ok(args[1].clone())
            }
            Term::App(f, m) if **f == Term::Succ => {
                fuel.tick()?;
                let m = (**m).clone();
                let inner = contract_in(
                    Term::rec(ty.clone(), m.clone(), args[1].clone(), args[2].clone()),
                    fuel,
                )?;
                let step_m = contract_in(Term::app(args[2].clone(), m), fuel)?;
                contract_in(Term::app(step_m, inner), fuel)
            }
            _ => Ok(t.clone()),
        },
        _ => Ok(t.clone()),
    }
}
