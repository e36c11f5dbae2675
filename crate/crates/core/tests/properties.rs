use proptest::prelude::*;

use modal_dialectica::dialectica::{translate, Flavor};
use modal_dialectica::formulas::{Formula, LanguageTag};
use modal_dialectica::gen::Gen;
use modal_dialectica::kernel::{normalize, strategies, substitute, Term, Type, Var};
use modal_dialectica::syntax::{formula_from_str, term_from_str};
use modal_dialectica::verify::{evaluate, Value};

fn params() -> Vec<Var> {
    Gen::term_params()
}

fn formula_params() -> Vec<Var> {
    let p = Type::arrow(Type::Nat, Type::Bool);
    vec![Var::new("P", p.clone()), Var::new("Q", p)]
}

fn env() -> std::collections::HashMap<std::sync::Arc<str>, Type> {
    params().iter().map(|v| (v.name.clone(), v.ty.clone())).collect()
}

fn languages() -> impl Strategy<Value = (LanguageTag, Flavor)> {
    prop_oneof![
        Just((LanguageTag::M, Flavor::Modal)),
        Just((LanguageTag::ML, Flavor::LightModal)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_agree(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ty = g.ty(1);
        let t = g.term(&ty, &params(), 4);
        let [lo, inner] = strategies();
        let a = lo.normalize(&t).unwrap();
        let b = inner.normalize(&t).unwrap();
        prop_assert!(a.alpha_eq(&b), "{} vs {}", a, b);
    }

    #[test]
    fn reduction_preserves_types(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ty = g.ty(2);
        let t = g.term(&ty, &params(), 4);
        let nf = normalize(&t).unwrap();
        prop_assert_eq!(nf.infer_type(&env()).unwrap(), ty);
    }

    #[test]
    fn normal_forms_are_fixed_points(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ty = g.ty(1);
        let nf = normalize(&g.term(&ty, &params(), 4)).unwrap();
        prop_assert!(normalize(&nf).unwrap().alpha_eq(&nf));
    }

    #[test]
    fn beta_agrees_with_substitution(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = Var::new("fresh_x", Type::Nat);
        let ctx = [params(), vec![x.clone()]].concat();
        let body = g.term(&Type::Nat, &ctx, 3);
        let arg = g.term(&Type::Nat, &params(), 2);
        let redex = Term::app(Term::lam(x.clone(), body.clone()), arg.clone());
        let direct = substitute(&body, &x, &arg).unwrap();
        prop_assert!(normalize(&redex).unwrap().alpha_eq(&normalize(&direct).unwrap()));
    }

    #[test]
    fn closed_nat_terms_evaluate_to_their_normal_form(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let t = g.term(&Type::Nat, &[], 4);
        let n = match normalize(&t).unwrap().as_numeral() {
            Some(n) => n,
            None => return Err(TestCaseError::fail(format!("{t} has no numeral normal form"))),
        };
        prop_assert!(matches!(evaluate(&t, &[]).unwrap(), Value::Nat(m) if m == n));
    }

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let ty = g.ty(2);
        let t = g.term(&ty, &params(), 4);
        let back = term_from_str(&t.to_string(), &params()).unwrap();
        prop_assert!(back.alpha_eq(&t), "{} vs {}", t, back);
    }

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), (lang, _) in languages()) {
        let a = Gen::new(seed).formula(lang, 4);
        let back = formula_from_str(&a.to_string(), &formula_params()).unwrap();
        prop_assert!(back.equiv(&a), "{} vs {}", a, back);
    }

    #[test]
    fn boxing_twice_is_boxing_once(seed in any::<u64>(), (lang, flavor) in languages()) {
        let a = Gen::new(seed).formula(lang, 4);
        let once = translate(&Formula::boxed(a.clone()), flavor).unwrap();
        let twice = translate(&Formula::boxed(Formula::boxed(a)), flavor).unwrap();
        prop_assert!(once.challenges.is_empty());
        prop_assert!(once.equivalent(&twice));
    }

    #[test]
    fn irrelevant_formulas_have_empty_tuples(seed in any::<u64>(), (lang, flavor) in languages()) {
        let a = Gen::new(seed).formula(lang, 4);
        let t = translate(&a, flavor).unwrap();
        if a.refutation_irrelevant() {
            prop_assert!(t.challenges.is_empty(), "{}", a);
        }
        if a.realization_irrelevant() {
            prop_assert!(t.witnesses.is_empty(), "{}", a);
        }
    }

    #[test]
    fn translations_stay_in_the_verifying_language(seed in any::<u64>(), (lang, flavor) in languages()) {
        let a = Gen::new(seed).formula(lang, 4);
        let t = translate(&a, flavor).unwrap();
        prop_assert!(t.matrix.belongs_to(LanguageTag::V), "{}", t.matrix);
    }
}
