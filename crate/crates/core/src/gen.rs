//! Seeded generators of well-typed terms and of formulas in a given
//! language. Used by the property tests and the translation suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formulas::{Formula, LanguageTag, QuantFlavor};
use crate::kernel::{prelude, Term, Type, Var};

pub struct Gen {
    rng: ChaCha8Rng,
    next: usize,
}

fn nat_to_nat() -> Type {
    Type::arrow(Type::Nat, Type::Nat)
}

fn nat_pred() -> Type {
    Type::arrow(Type::Nat, Type::Bool)
}

fn prim(name: &str, args: impl IntoIterator<Item = Term>) -> Term {
    Term::apps(prelude::lookup(name).expect("prelude name"), args)
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next: 0,
        }
    }

    fn fresh(&mut self, stem: &str, ty: Type) -> Var {
        self.next += 1;
        Var::new(format!("{stem}{}", self.next), ty)
    }

    /// Free variables the generated terms may mention.
    pub fn term_params() -> Vec<Var> {
        vec![
            Var::new("a", Type::Nat),
            Var::new("b", Type::Bool),
            Var::new("g", nat_to_nat()),
        ]
    }

    /// Base types, or an arrow of at most `depth` levels.
    pub fn ty(&mut self, depth: usize) -> Type {
        match self.rng.gen_range(0..if depth == 0 { 2 } else { 4 }) {
            0 => Type::Nat,
            1 => Type::Bool,
            _ => Type::arrow(self.ty(depth - 1), self.ty(depth - 1)),
        }
    }

    /// A term of type `ty` over the variables in `ctx`.
    pub fn term(&mut self, ty: &Type, ctx: &[Var], depth: usize) -> Term {
        let vars: Vec<&Var> = ctx.iter().filter(|v| &v.ty == ty).collect();
        if depth == 0 || self.rng.gen_bool(0.2) {
            if !vars.is_empty() && self.rng.gen_bool(0.6) {
                return vars.choose(&mut self.rng).expect("nonempty").term();
            }
            return self.leaf(ty, ctx);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..5) {
            0 => {
                let c = self.term(&Type::Bool, ctx, d);
                Term::if_then(ty.clone(), c, self.term(ty, ctx, d), self.term(ty, ctx, d))
            }
            1 => {
                let n = if self.rng.gen_bool(0.5) {
                    Term::numeral(self.rng.gen_range(0..4))
                } else {
                    self.term(&Type::Nat, ctx, 0)
                };
                let base = self.term(ty, ctx, d);
                let k = self.fresh("n", Type::Nat);
                let p = self.fresh("p", ty.clone());
                let inner = [ctx, &[k.clone(), p.clone()]].concat();
                let step = Term::lams(&[k, p], self.term(ty, &inner, d));
                Term::rec(ty.clone(), n, base, step)
            }
            2 => {
                let a = self.ty(0);
                let x = self.fresh("x", a.clone());
                let inner = [ctx, std::slice::from_ref(&x)].concat();
                let body = self.term(ty, &inner, d);
                Term::app(Term::lam(x, body), self.term(&a, ctx, d))
            }
            _ => self.shaped(ty, ctx, d),
        }
    }

    fn leaf(&mut self, ty: &Type, ctx: &[Var]) -> Term {
        match ty {
            Type::Nat => Term::numeral(self.rng.gen_range(0..4)),
            Type::Bool => Term::bool_const(self.rng.gen()),
            Type::Arrow(a, b) => {
                let x = self.fresh("x", (**a).clone());
                let inner = [ctx, std::slice::from_ref(&x)].concat();
                let body = self.term(b, &inner, 0);
                Term::lam(x, body)
            }
        }
    }

    /// A term built from the constructors of the type itself.
    fn shaped(&mut self, ty: &Type, ctx: &[Var], d: usize) -> Term {
        match ty {
            Type::Nat => {
                let fs: Vec<&Var> = ctx.iter().filter(|v| v.ty == nat_to_nat()).collect();
                match self.rng.gen_range(0..4) {
                    0 => Term::succ(self.term(ty, ctx, d)),
                    1 => prim("plus", [self.term(ty, ctx, d), self.term(ty, ctx, d)]),
                    2 if self.rng.gen_bool(0.5) => prim("pred", [self.term(ty, ctx, d)]),
                    2 => prim("minus", [self.term(ty, ctx, d), self.term(ty, ctx, d)]),
                    _ => match fs.choose(&mut self.rng) {
                        Some(f) => Term::app(f.term(), self.term(ty, ctx, d)),
                        None => Term::succ(self.term(ty, ctx, d)),
                    },
                }
            }
            Type::Bool => {
                let name = *["le", "eqnat", "notb", "andb", "orb"].choose(&mut self.rng).expect("nonempty");
                match name {
                    "notb" => prim(name, [self.term(ty, ctx, d)]),
                    "andb" | "orb" => prim(name, [self.term(ty, ctx, d), self.term(ty, ctx, d)]),
                    _ => prim(name, [self.term(&Type::Nat, ctx, d), self.term(&Type::Nat, ctx, d)]),
                }
            }
            Type::Arrow(a, b) => {
                let x = self.fresh("x", (**a).clone());
                let inner = [ctx, std::slice::from_ref(&x)].concat();
                let body = self.term(b, &inner, d);
                Term::lam(x, body)
            }
        }
    }

    /// A formula of the language with at most `depth` connectives nested.
    /// Atoms mention the predicate parameters `P, Q : nat -> bool`.
    pub fn formula(&mut self, lang: LanguageTag, depth: usize) -> Formula {
        self.formula_in(lang, depth, &[])
    }

    fn formula_in(&mut self, lang: LanguageTag, depth: usize, bound: &[Var]) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.15) {
            return self.atom(bound);
        }
        let d = depth - 1;
        let modal = lang.allows_box();
        loop {
            let f = match self.rng.gen_range(0..9) {
                0 => Formula::imp(self.formula_in(lang, d, bound), self.formula_in(lang, d, bound)),
                1 => Formula::and(self.formula_in(lang, d, bound), self.formula_in(lang, d, bound)),
                2 | 3 => {
                    let q = self.flavor(lang);
                    let ty = if self.rng.gen_bool(0.2) { nat_to_nat() } else { Type::Nat };
                    let x = self.fresh("z", ty);
                    let inner = [bound, std::slice::from_ref(&x)].concat();
                    let body = self.formula_in(lang, d, &inner);
                    if self.rng.gen_bool(0.5) {
                        Formula::forall(q, x, body)
                    } else {
                        Formula::exists(q, x, body)
                    }
                }
                4 if modal => Formula::boxed(self.formula_in(lang, d, bound)),
                5 if modal => Formula::weak_diamond(self.formula_in(lang, d, bound)),
                6 if modal => Formula::kreisel_imp(self.formula_in(lang, d, bound), self.formula_in(lang, d, bound)),
                7 => Formula::not(self.formula_in(lang, d, bound)),
                8 => Formula::not(Formula::not(self.formula_in(lang, d, bound))),
                _ => continue,
            };
            return f;
        }
    }

    fn flavor(&mut self, lang: LanguageTag) -> QuantFlavor {
        let allowed: Vec<QuantFlavor> = QuantFlavor::ALL.into_iter().filter(|q| lang.allows_flavor(*q)).collect();
        *allowed.choose(&mut self.rng).expect("full is always allowed")
    }

    fn atom(&mut self, bound: &[Var]) -> Formula {
        let p = Var::new(if self.rng.gen_bool(0.5) { "P" } else { "Q" }, nat_pred());
        let arg = match bound.choose(&mut self.rng) {
            Some(v) if v.ty == Type::Nat => v.term(),
            Some(v) => Term::app(v.term(), Term::numeral(self.rng.gen_range(0..3))),
            None => Term::numeral(self.rng.gen_range(0..3)),
        };
        match self.rng.gen_range(0..8) {
            0 => Formula::atom(prim("le", [arg, Term::numeral(self.rng.gen_range(0..3))])),
            _ => Formula::atom(Term::app(p.term(), arg)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terms_have_the_requested_type() {
        let mut g = Gen::new(7);
        let params = Gen::term_params();
        for _ in 0..200 {
            let ty = g.ty(2);
            let t = g.term(&ty, &params, 4);
            let env = params.iter().map(|v| (v.name.clone(), v.ty.clone())).collect();
            assert_eq!(t.infer_type(&env).unwrap(), ty, "{t}");
        }
    }

    #[test]
    fn generated_formulas_stay_in_their_language() {
        let mut g = Gen::new(3);
        for lang in [LanguageTag::V, LanguageTag::M, LanguageTag::ML, LanguageTag::L] {
            for _ in 0..100 {
                let a = g.formula(lang, 5);
                assert!(a.belongs_to(lang), "{a}");
            }
        }
    }
}
