//! The light, modal and light modal Dialectica translations.
//!
//! ```text
//! |A ∧ B|^{x̄,ū}_{ȳ,v̄}  := |A|^x̄_ȳ ∧ |B|^ū_v̄
//! |A → B|^{f̄,ḡ}_{x̄,v̄}  := |A|^x̄_{f̄x̄v̄} → |B|^{ḡx̄}_v̄
//! |∀z A|^{f̄}_{z,ȳ}     := |A(z)|^{f̄z}_ȳ
//! |∀+z A|^{f̄}_ȳ        := ∀z |A(z)|^{f̄z}_ȳ
//! |∀−z A|^{x̄}_{z,ȳ}    := |A(z)|^x̄_ȳ
//! |∀nc z A|^{x̄}_ȳ      := ∀z |A(z)|^x̄_ȳ
//! |□A|^x̄               := ∀ȳ |A|^x̄_ȳ
//! ```

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::formulas::{Formula, FormulaError, LanguageTag, QuantFlavor};
use crate::kernel::{fresh_var, KernelError, Subst, Term, Type, Var};

/// Which translation to run. Each accepts one formula language.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Flavor {
    Light,
    Modal,
    LightModal,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Modal, Flavor::LightModal, Flavor::Light];

    pub fn language(self) -> LanguageTag {
        match self {
            Flavor::Light => LanguageTag::L,
            Flavor::Modal => LanguageTag::M,
            Flavor::LightModal => LanguageTag::ML,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Light => "light",
            Flavor::Modal => "modal",
            Flavor::LightModal => "lightmodal",
        }
    }

    pub fn from_name(s: &str) -> Option<Flavor> {
        Flavor::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn interpretation(self) -> &'static dyn Interpretation {
        match self {
            Flavor::Light => &LIGHT,
            Flavor::Modal => &MODAL,
            Flavor::LightModal => &LIGHT_MODAL,
        }
    }
}

/// `|A|^x̄_ȳ`: witness tuple, challenge tuple and matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub witnesses: Vec<Var>,
    pub challenges: Vec<Var>,
    pub matrix: Formula,
}

impl Translation {
    pub fn witness_types(&self) -> Vec<Type> {
        self.witnesses.iter().map(|v| v.ty.clone()).collect()
    }

    pub fn challenge_types(&self) -> Vec<Type> {
        self.challenges.iter().map(|v| v.ty.clone()).collect()
    }

    /// `|A|^{t̄}_{s̄}` with atoms renormalized.
    pub fn instantiate(&self, ts: &[Term], ss: &[Term]) -> Result<Formula, KernelError> {
        let s = Subst::from_pairs(
            self.witnesses
                .iter()
                .cloned()
                .zip(ts.iter().cloned())
                .chain(self.challenges.iter().cloned().zip(ss.iter().cloned())),
        );
        self.matrix.subst(&s)
    }

    /// Same variables under fresh names, so that several copies can coexist.
    pub fn freshen(&self) -> Translation {
        let ws: Vec<Var> = self.witnesses.iter().map(|v| fresh_var(v.stem(), v.ty.clone())).collect();
        let cs: Vec<Var> = self.challenges.iter().map(|v| fresh_var(v.stem(), v.ty.clone())).collect();
        let s = Subst::renaming(&self.witnesses, &ws).union(Subst::renaming(&self.challenges, &cs));
        Translation {
            matrix: self.matrix.rename(&s),
            witnesses: ws,
            challenges: cs,
        }
    }

    /// Equality up to renaming of tuple variables and bound variables.
    pub fn equivalent(&self, other: &Translation) -> bool {
        if self.witness_types() != other.witness_types() || self.challenge_types() != other.challenge_types() {
            return false;
        }
        let s = Subst::renaming(&other.witnesses, &self.witnesses)
            .union(Subst::renaming(&other.challenges, &self.challenges));
        self.matrix.alpha_eq(&other.matrix.rename(&s))
    }
}

/// A Dialectica interpretation, selected by name.
pub trait Interpretation: Send + Sync {
    fn name(&self) -> &'static str;
    fn flavor(&self) -> Flavor;

    fn language(&self) -> LanguageTag {
        self.flavor().language()
    }

    fn translate(&self, a: &Formula) -> Result<Translation, FormulaError> {
        a.check_language(self.language())?;
        let raw = translate_raw(a);
        Ok(positional(a, raw))
    }
}

pub struct ModalInterpretation;
pub struct LightModalInterpretation;
pub struct LightInterpretation;

static MODAL: ModalInterpretation = ModalInterpretation;
static LIGHT_MODAL: LightModalInterpretation = LightModalInterpretation;
static LIGHT: LightInterpretation = LightInterpretation;

impl Interpretation for ModalInterpretation {
    fn name(&self) -> &'static str {
        "modal"
    }
    fn flavor(&self) -> Flavor {
        Flavor::Modal
    }
}

impl Interpretation for LightModalInterpretation {
    fn name(&self) -> &'static str {
        "lightmodal"
    }
    fn flavor(&self) -> Flavor {
        Flavor::LightModal
    }
}

impl Interpretation for LightInterpretation {
    fn name(&self) -> &'static str {
        "light"
    }
    fn flavor(&self) -> Flavor {
        Flavor::Light
    }
}

/// All registered interpretations.
pub fn interpretations() -> [&'static dyn Interpretation; 3] {
    [&MODAL, &LIGHT_MODAL, &LIGHT]
}

pub fn interpretation(name: &str) -> Option<&'static dyn Interpretation> {
    interpretations().into_iter().find(|i| i.name() == name)
}

pub fn translate(a: &Formula, flavor: Flavor) -> Result<Translation, FormulaError> {
    flavor.interpretation().translate(a)
}

pub fn witness_types(a: &Formula, flavor: Flavor) -> Result<Vec<Type>, FormulaError> {
    Ok(translate(a, flavor)?.witness_types())
}

pub fn challenge_types(a: &Formula, flavor: Flavor) -> Result<Vec<Type>, FormulaError> {
    Ok(translate(a, flavor)?.challenge_types())
}

/// `¬X`, collapsing `¬¬¬Y` to `¬Y`.
pub fn neg(x: Formula) -> Formula {
    if let Some(inner) = x.as_negation() {
        if inner.as_negation().is_some() {
            return inner.clone();
        }
    }
    Formula::not(x)
}

/// Implication in a matrix, routing `X → ⊥` through [`neg`].
pub fn imp_matrix(a: Formula, b: Formula) -> Formula {
    if b.is_falsum() {
        neg(a)
    } else {
        Formula::imp(a, b)
    }
}

/// `∀ȳ M`, outermost variable first.
pub fn close_all(vars: &[Var], m: Formula) -> Formula {
    vars.iter()
        .rev()
        .fold(m, |acc, v| Formula::all(v.clone(), acc))
}

fn apps_vars(f: &Var, args: &[&[Var]]) -> Term {
    Term::apps(f.term(), args.iter().flat_map(|a| a.iter().map(Var::term)))
}

fn fun_type(args: &[&[Var]], result: &Type) -> Type {
    let tys: Vec<Type> = args.iter().flat_map(|a| a.iter().map(|v| v.ty.clone())).collect();
    Type::curried(tys.iter(), result.clone())
}

pub(crate) fn translate_raw(a: &Formula) -> Translation {
    match a {
        Formula::Atom(_) => Translation {
            witnesses: vec![],
            challenges: vec![],
            matrix: a.clone(),
        },
        Formula::And(l, r) => {
            let tl = translate_raw(l);
            let tr = translate_raw(r);
            Translation {
                witnesses: [tl.witnesses, tr.witnesses].concat(),
                challenges: [tl.challenges, tr.challenges].concat(),
                matrix: Formula::and(tl.matrix, tr.matrix),
            }
        }
        Formula::Imp(l, r) => {
            let ta = translate_raw(l);
            let tb = translate_raw(r);
            let (xs, ys, us, vs) = (&ta.witnesses, &ta.challenges, &tb.witnesses, &tb.challenges);
            let fs: Vec<Var> = ys
                .iter()
                .map(|y| fresh_var("f", fun_type(&[xs, vs], &y.ty)))
                .collect();
            let gs: Vec<Var> = us
                .iter()
                .map(|u| fresh_var("g", fun_type(&[xs], &u.ty)))
                .collect();
            let sa = Subst::from_pairs(ys.iter().cloned().zip(fs.iter().map(|f| apps_vars(f, &[xs, vs]))));
            let sb = Subst::from_pairs(us.iter().cloned().zip(gs.iter().map(|g| apps_vars(g, &[xs]))));
            Translation {
                matrix: imp_matrix(ta.matrix.rename(&sa), tb.matrix.rename(&sb)),
                witnesses: [fs, gs].concat(),
                challenges: [xs.clone(), vs.clone()].concat(),
            }
        }
        Formula::Forall(q, z, body) => {
            let t = translate_raw(body);
            match q {
                QuantFlavor::Full => {
                    let z2 = fresh_var(z.stem(), z.ty.clone());
                    let fs: Vec<Var> = t
                        .witnesses
                        .iter()
                        .map(|x| fresh_var("f", Type::arrow(z.ty.clone(), x.ty.clone())))
                        .collect();
                    let mut s = Subst::from_pairs(
                        t.witnesses
                            .iter()
                            .cloned()
                            .zip(fs.iter().map(|f| Term::app(f.term(), z2.term()))),
                    );
                    s.insert(z.clone(), z2.term());
                    Translation {
                        matrix: t.matrix.rename(&s),
                        witnesses: fs,
                        challenges: [vec![z2], t.challenges].concat(),
                    }
                }
                QuantFlavor::Plus => {
                    let fs: Vec<Var> = t
                        .witnesses
                        .iter()
                        .map(|x| fresh_var("f", Type::arrow(z.ty.clone(), x.ty.clone())))
                        .collect();
                    let s = Subst::from_pairs(
                        t.witnesses
                            .iter()
                            .cloned()
                            .zip(fs.iter().map(|f| Term::app(f.term(), z.term()))),
                    );
                    Translation {
                        matrix: Formula::all(z.clone(), t.matrix.rename(&s)),
                        witnesses: fs,
                        challenges: t.challenges,
                    }
                }
                QuantFlavor::Minus => {
                    let z2 = fresh_var(z.stem(), z.ty.clone());
                    let s = Subst::single(z.clone(), z2.term());
                    Translation {
                        matrix: t.matrix.rename(&s),
                        witnesses: t.witnesses,
                        challenges: [vec![z2], t.challenges].concat(),
                    }
                }
                QuantFlavor::NonComp => Translation {
                    matrix: Formula::all(z.clone(), t.matrix),
                    witnesses: t.witnesses,
                    challenges: t.challenges,
                },
            }
        }
        Formula::Box(inner) => {
            let t = translate_raw(inner);
            Translation {
                matrix: close_all(&t.challenges, t.matrix),
                witnesses: t.witnesses,
                challenges: vec![],
            }
        }
    }
}

/// Renames tuple variables to `w0, w1, ...` and `c0, c1, ...`, skipping
/// names already used in `a`.
fn positional(a: &Formula, t: Translation) -> Translation {
    let mut taken: BTreeSet<Arc<str>> = a.free_vars().into_iter().map(|v| v.name).collect();
    let mut pick = |prefix: &str, v: &Var| -> Var {
        let mut i = 0;
        loop {
            let name: Arc<str> = format!("{prefix}{i}").into();
            if !taken.contains(&name) {
                taken.insert(name.clone());
                return Var::new(name, v.ty.clone());
            }
            i += 1;
        }
    };
    let ws: Vec<Var> = t.witnesses.iter().map(|v| pick("w", v)).collect();
    let cs: Vec<Var> = t.challenges.iter().map(|v| pick("c", v)).collect();
    let s = Subst::renaming(&t.witnesses, &ws).union(Subst::renaming(&t.challenges, &cs));
    Translation {
        matrix: t.matrix.rename(&s).canonical_bound(),
        witnesses: ws,
        challenges: cs,
    }
}

/// The displayed consequences of the clauses for derived
/// connectives, computed directly from the translation of the operands.
pub fn derived_clause_check(
    name: &str,
    args: &[Formula],
    binder: Option<Var>,
    flavor: Flavor,
) -> Result<Translation, FormulaError> {
    let sugared = crate::formulas::desugar(name, args, binder.clone(), flavor.language())?;
    let ta = translate_raw(&args[0]);
    let (xs, ys, m) = (&ta.witnesses, &ta.challenges, &ta.matrix);
    let direct = match name {
        "not" => {
            // |¬A|^{f̄}_{x̄} ≡ ¬|A|^x̄_{f̄x̄}
            let fs: Vec<Var> = ys.iter().map(|y| fresh_var("f", fun_type(&[xs], &y.ty))).collect();
            let s = Subst::from_pairs(ys.iter().cloned().zip(fs.iter().map(|f| apps_vars(f, &[xs]))));
            Translation {
                matrix: neg(m.rename(&s)),
                witnesses: fs,
                challenges: xs.clone(),
            }
        }
        "notnot" => {
            // |¬¬A|^{F̄}_{f̄} ≡ ¬¬|A|^{F̄f̄}_{f̄(F̄f̄)}
            let fs: Vec<Var> = ys.iter().map(|y| fresh_var("f", fun_type(&[xs], &y.ty))).collect();
            let big: Vec<Var> = xs.iter().map(|x| fresh_var("F", fun_type(&[&fs], &x.ty))).collect();
            let big_f: Vec<Term> = big.iter().map(|b| apps_vars(b, &[&fs])).collect();
            let mut s = Subst::from_pairs(xs.iter().cloned().zip(big_f.iter().cloned()));
            for (y, f) in ys.iter().zip(&fs) {
                s.insert(y.clone(), Term::apps(f.term(), big_f.iter().cloned()));
            }
            Translation {
                matrix: neg(neg(m.rename(&s))),
                witnesses: big,
                challenges: fs,
            }
        }
        "weak-diamond" => {
            // |◇̃A|_{f̄} ≡ ∃x̄ |A|^x̄_{f̄x̄}
            let fs: Vec<Var> = ys.iter().map(|y| fresh_var("f", fun_type(&[xs], &y.ty))).collect();
            let s = Subst::from_pairs(ys.iter().cloned().zip(fs.iter().map(|f| apps_vars(f, &[xs]))));
            Translation {
                matrix: neg(close_all(xs, neg(m.rename(&s)))),
                witnesses: vec![],
                challenges: fs,
            }
        }
        "kreisel-imp" => {
            // |A →_k B|^{ḡ}_{x̄,v̄} ≡ ∀ȳ|A|^x̄_ȳ → |B|^{ḡx̄}_v̄
            let tb = translate_raw(&args[1]);
            let gs: Vec<Var> = tb.witnesses.iter().map(|u| fresh_var("g", fun_type(&[xs], &u.ty))).collect();
            let s = Subst::from_pairs(tb.witnesses.iter().cloned().zip(gs.iter().map(|g| apps_vars(g, &[xs]))));
            Translation {
                matrix: imp_matrix(close_all(ys, m.clone()), tb.matrix.rename(&s)),
                witnesses: gs,
                challenges: [xs.clone(), tb.challenges.clone()].concat(),
            }
        }
        "exists" => {
            // |∃z A|^{Z,ū}_{F̄} ≡ ¬¬|A(ZF̄)|^{ūF̄}_{F̄(ZF̄)(ūF̄)}
            let z = binder.clone().expect("binder checked by desugar");
            let fs: Vec<Var> = ys
                .iter()
                .map(|y| fresh_var("F", fun_type(&[std::slice::from_ref(&z), xs], &y.ty)))
                .collect();
            let zf = fresh_var("Z", fun_type(&[&fs], &z.ty));
            let us: Vec<Var> = xs.iter().map(|x| fresh_var("u", fun_type(&[&fs], &x.ty))).collect();
            let z_app = apps_vars(&zf, &[&fs]);
            let u_apps: Vec<Term> = us.iter().map(|u| apps_vars(u, &[&fs])).collect();
            let mut s = Subst::single(z.clone(), z_app.clone());
            for (x, u) in xs.iter().zip(&u_apps) {
                s.insert(x.clone(), u.clone());
            }
            for (y, f) in ys.iter().zip(&fs) {
                let t = Term::apps(Term::app(f.term(), z_app.clone()), u_apps.iter().cloned());
                s.insert(y.clone(), t);
            }
            Translation {
                matrix: neg(neg(m.rename(&s))),
                witnesses: [vec![zf], us].concat(),
                challenges: fs,
            }
        }
        "existsnc" => {
            // |∃nc z A|^{ū}_{f̄} ≡ ∃z |A(z)|^{ūf̄}_{f̄(ūf̄)}
            let z = binder.clone().expect("binder checked by desugar");
            let fs: Vec<Var> = ys.iter().map(|y| fresh_var("f", fun_type(&[xs], &y.ty))).collect();
            let us: Vec<Var> = xs.iter().map(|x| fresh_var("u", fun_type(&[&fs], &x.ty))).collect();
            let u_apps: Vec<Term> = us.iter().map(|u| apps_vars(u, &[&fs])).collect();
            let mut s = Subst::from_pairs(xs.iter().cloned().zip(u_apps.iter().cloned()));
            for (y, f) in ys.iter().zip(&fs) {
                s.insert(y.clone(), Term::apps(f.term(), u_apps.iter().cloned()));
            }
            Translation {
                matrix: neg(Formula::all(z, neg(m.rename(&s)))),
                witnesses: us,
                challenges: fs,
            }
        }
        other => return Err(FormulaError::UnknownConnective(other.to_string())),
    };
    Ok(positional(&sugared, direct))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pred(name: &str) -> Var {
        Var::new(name, Type::arrow(Type::Nat, Type::Bool))
    }

    fn app_atom(p: &Var, x: &Var) -> Formula {
        Formula::atom(Term::app(p.term(), x.term()))
    }

    fn all_p() -> Formula {
        let x = Var::new("x", Type::Nat);
        Formula::all(x.clone(), app_atom(&pred("P"), &x))
    }

    #[test]
    fn atoms_are_unchanged() {
        let a = Formula::atom(Term::var("b", Type::Bool));
        for fl in Flavor::ALL {
            let t = translate(&a, fl).unwrap();
            assert!(t.witnesses.is_empty() && t.challenges.is_empty());
            assert_eq!(t.matrix, a);
        }
    }

    #[test]
    fn boxed_universal_has_empty_tuples() {
        let t = translate(&Formula::boxed(all_p()), Flavor::Modal).unwrap();
        assert!(t.witnesses.is_empty() && t.challenges.is_empty());
        let z = Var::new("z", Type::Nat);
        assert!(t.matrix.alpha_eq(&Formula::all(z.clone(), app_atom(&pred("P"), &z))));
    }

    #[test]
    fn plus_quantifier_keeps_matrix_quantifier() {
        let z = Var::new("z", Type::Nat);
        let a = Formula::forall(QuantFlavor::Plus, z.clone(), app_atom(&pred("P"), &z));
        let t = translate(&a, Flavor::LightModal).unwrap();
        assert!(t.witnesses.is_empty() && t.challenges.is_empty());
        assert!(t.matrix.alpha_eq(&Formula::all(z.clone(), app_atom(&pred("P"), &z))));
        assert!(translate(&a, Flavor::Modal).is_err());
    }

    #[test]
    fn tuple_types() {
        let nn = Type::arrow(Type::Nat, Type::Nat);
        assert_eq!(witness_types(&all_p(), Flavor::Modal).unwrap(), vec![]);
        assert_eq!(challenge_types(&all_p(), Flavor::Modal).unwrap(), vec![Type::Nat]);
        let y = Var::new("y", Type::Nat);
        let q = Formula::all(y.clone(), app_atom(&pred("Q"), &y));
        let imp = Formula::imp(all_p(), q);
        assert_eq!(witness_types(&imp, Flavor::Modal).unwrap(), vec![nn]);
        assert_eq!(challenge_types(&imp, Flavor::Modal).unwrap(), vec![Type::Nat]);
    }

    #[test]
    fn box_empties_challenges() {
        let y = Var::new("y", Type::Nat);
        let ex = Formula::exists(QuantFlavor::Full, y.clone(), app_atom(&pred("Q"), &y));
        let a = Formula::imp(all_p(), ex);
        let t = translate(&a, Flavor::Modal).unwrap();
        let b = translate(&Formula::boxed(a), Flavor::Modal).unwrap();
        assert!(b.challenges.is_empty());
        assert_eq!(b.witness_types(), t.witness_types());
    }

    #[test]
    fn light_rejects_box() {
        assert!(matches!(
            translate(&Formula::boxed(all_p()), Flavor::Light),
            Err(FormulaError::LanguageViolation(_))
        ));
    }

    #[test]
    fn names_are_positional_and_avoid_free_variables() {
        let w0 = Var::new("w0", Type::Nat);
        let x = Var::new("x", Type::Nat);
        let r = Var::new("R", Type::curried([&Type::Nat, &Type::Nat], Type::Bool));
        let body = Formula::atom(Term::apps(r.term(), [x.term(), w0.term()]));
        let t = translate(&Formula::all(x, body), Flavor::Modal).unwrap();
        assert_eq!(&*t.challenges[0].name, "c0");
        assert!(t.matrix.has_free(&w0));
    }

    #[test]
    fn derived_clauses_match_unfolding() {
        let y = Var::new("y", Type::Nat);
        let q = Formula::exists(QuantFlavor::Full, y.clone(), app_atom(&pred("Q"), &y));
        let a = Formula::imp(all_p(), q);
        let z = Var::new("z", Type::Nat);
        let cases: Vec<(&str, Vec<Formula>, Option<Var>)> = vec![
            ("not", vec![a.clone()], None),
            ("notnot", vec![a.clone()], None),
            ("weak-diamond", vec![a.clone()], None),
            ("kreisel-imp", vec![a.clone(), all_p()], None),
            ("exists", vec![a.clone()], Some(z.clone())),
            ("existsnc", vec![a.clone()], Some(z.clone())),
        ];
        for (name, args, binder) in cases {
            let direct = derived_clause_check(name, &args, binder.clone(), Flavor::LightModal).unwrap();
            let sugared = crate::formulas::desugar(name, &args, binder, LanguageTag::ML).unwrap();
            let via = translate(&sugared, Flavor::LightModal).unwrap();
            assert!(direct.equivalent(&via), "{name}: {} vs {}", direct.matrix, via.matrix);
        }
    }

    #[test]
    fn weak_diamond_over_relevant_formula() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let r = Var::new("R", Type::curried([&Type::Nat, &Type::Nat], Type::Bool));
        let rxy = Formula::atom(Term::apps(r.term(), [x.term(), y.term()]));
        let a = Formula::all(x, Formula::exists(QuantFlavor::Full, y, rxy));
        let t = translate(&Formula::weak_diamond(a), Flavor::Modal).unwrap();
        assert!(t.witnesses.is_empty());
        assert_eq!(t.challenge_types(), vec![Type::arrow(Type::arrow(Type::Nat, Type::Nat), Type::Nat)]);
    }

    #[test]
    fn notnot_atom_keeps_double_negation() {
        let a = Formula::atom(Term::var("b", Type::Bool));
        let t = translate(&Formula::not(Formula::not(a.clone())), Flavor::Modal).unwrap();
        assert!(t.witnesses.is_empty() && t.challenges.is_empty());
        assert_eq!(t.matrix, Formula::not(Formula::not(a)));
    }

    #[test]
    fn diamond_is_idempotent() {
        let y = Var::new("y", Type::Nat);
        let ex = Formula::exists(QuantFlavor::Full, y.clone(), app_atom(&pred("Q"), &y));
        let a = Formula::imp(all_p(), ex);
        let once = translate(&Formula::weak_diamond(a.clone()), Flavor::Modal).unwrap();
        let twice = translate(&Formula::weak_diamond(Formula::weak_diamond(a)), Flavor::Modal).unwrap();
        assert!(once.equivalent(&twice));
    }
}
