use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use super::{KernelError, Type};

/// A typed variable `x^ρ`. Two variables are the same iff name and type agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Arc<str>,
    pub ty: Type,
}

impl Var {
    pub fn new(name: impl Into<Arc<str>>, ty: Type) -> Var {
        Var {
            name: name.into(),
            ty,
        }
    }

    /// The user-facing stem of the name, with any generated `_N` suffix removed.
    pub fn stem(&self) -> &str {
        stem_of(&self.name)
    }

    pub fn term(&self) -> Term {
        Term::Var(self.clone())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

pub(crate) fn stem_of(name: &str) -> &str {
    match name.rfind('_') {
        Some(i) if i > 0 && name[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < name.len() => {
            &name[..i]
        }
        _ => name,
    }
}

/// A globally fresh variable with the given stem.
pub fn fresh_var(stem: &str, ty: Type) -> Var {
    let n = FRESH.fetch_add(1, Ordering::Relaxed);
    Var::new(format!("{}_{}", stem_of(stem), n), ty)
}

/// Terms of Gödel's T.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Var),
    True,
    False,
    Zero,
    Succ,
    /// `If^ρ : bool -> ρ -> ρ -> ρ`
    If(Type),
    /// `Rec^ρ : nat -> ρ -> (nat -> ρ -> ρ) -> ρ`
    Rec(Type),
    Lam(Var, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str, ty: Type) -> Term {
        Term::Var(Var::new(name, ty))
    }

    pub fn lam(x: Var, body: Term) -> Term {
        Term::Lam(x, Arc::new(body))
    }

    /// `λx1 ... xn. body`; the identity on `body` when `xs` is empty.
    pub fn lams(xs: &[Var], body: Term) -> Term {
        xs.iter()
            .rev()
            .fold(body, |acc, x| Term::lam(x.clone(), acc))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn succ(t: Term) -> Term {
        Term::app(Term::Succ, t)
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |acc, _| Term::succ(acc))
    }

    pub fn bool_const(b: bool) -> Term {
        if b {
            Term::True
        } else {
            Term::False
        }
    }

    pub fn if_then(ty: Type, c: Term, a: Term, b: Term) -> Term {
        Term::apps(Term::If(ty), [c, a, b])
    }

    pub fn rec(ty: Type, n: Term, base: Term, step: Term) -> Term {
        Term::apps(Term::Rec(ty), [n, base, step])
    }

    /// Decodes `S^k 0` as `k`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut k = 0;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(k),
                Term::App(f, a) if **f == Term::Succ => {
                    k += 1;
                    cur = a;
                }
                _ => return None,
            }
        }
    }

    /// Head and argument list of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Var>, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(&v) {
                    out.insert(v.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x);
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            _ => {}
        }
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::Lam(x, b) => x != v && b.has_free(v),
            Term::App(f, a) => f.has_free(v) || a.has_free(v),
            _ => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// True if a `Rec` constant occurs anywhere in the term.
    pub fn mentions_rec(&self) -> bool {
        match self {
            Term::Rec(_) => true,
            Term::Lam(_, b) => b.mentions_rec(),
            Term::App(f, a) => f.mentions_rec() || a.mentions_rec(),
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            _ => 1,
        }
    }

    /// Type synthesis. Free variables carry their own types; `env` is consulted
    /// only to reject variables that are not in scope when `strict` scoping is wanted.
    pub fn infer_type(&self, env: &HashMap<Arc<str>, Type>) -> Result<Type, KernelError> {
        self.infer(env, &mut Vec::new())
    }

    fn infer<'a>(
        &'a self,
        env: &HashMap<Arc<str>, Type>,
        bound: &mut Vec<&'a Var>,
    ) -> Result<Type, KernelError> {
        match self {
            Term::Var(v) => {
                if bound.iter().rev().any(|b| b.name == v.name) {
                    let b = bound.iter().rev().find(|b| b.name == v.name).unwrap();
                    if b.ty != v.ty {
                        return Err(KernelError::TypeMismatch {
                            expected: b.ty.clone(),
                            found: v.ty.clone(),
                            context: format!("variable {}", v.name),
                        });
                    }
                    return Ok(v.ty.clone());
                }
                match env.get(&v.name) {
                    Some(t) if *t == v.ty => Ok(v.ty.clone()),
                    Some(t) => Err(KernelError::TypeMismatch {
                        expected: t.clone(),
                        found: v.ty.clone(),
                        context: format!("variable {}", v.name),
                    }),
                    None => Err(KernelError::UnboundVariable(v.name.to_string())),
                }
            }
            Term::True | Term::False => Ok(Type::Bool),
            Term::Zero => Ok(Type::Nat),
            Term::Succ => Ok(Type::arrow(Type::Nat, Type::Nat)),
            Term::If(r) => Ok(Type::if_type(r)),
            Term::Rec(r) => Ok(Type::rec_type(r)),
            Term::Lam(x, b) => {
                bound.push(x);
                let bt = b.infer(env, bound);
                bound.pop();
                Ok(Type::arrow(x.ty.clone(), bt?))
            }
            Term::App(f, a) => {
                let ft = f.infer(env, bound)?;
                let at = a.infer(env, bound)?;
                match ft {
                    Type::Arrow(d, c) if *d == at => Ok((*c).clone()),
                    Type::Arrow(d, _) => Err(KernelError::TypeMismatch {
                        expected: (*d).clone(),
                        found: at,
                        context: "argument of application".into(),
                    }),
                    other => Err(KernelError::NotAFunction(other)),
                }
            }
        }
    }

    /// Type of a term whose free variables are read off their annotations.
    pub fn type_of(&self) -> Result<Type, KernelError> {
        let env = self
            .free_vars()
            .into_iter()
            .map(|v| (v.name.clone(), v.ty))
            .collect::<HashMap<_, _>>();
        self.infer_type(&env)
    }

    /// α-equivalence.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha(self, other, &mut Vec::new())
    }
}

fn alpha<'a>(a: &'a Term, b: &'a Term, pairs: &mut Vec<(&'a Var, &'a Var)>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            for (l, r) in pairs.iter().rev() {
                if *l == x || *r == y {
                    return *l == x && *r == y;
                }
            }
            x == y
        }
        (Term::Lam(x, bx), Term::Lam(y, by)) => {
            if x.ty != y.ty {
                return false;
            }
            pairs.push((x, y));
            let r = alpha(bx, by, pairs);
            pairs.pop();
            r
        }
        (Term::App(f, x), Term::App(g, y)) => alpha(f, g, pairs) && alpha(x, y, pairs),
        _ => a == b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_arrow_type() {
        let x = Var::new("x", Type::Nat);
        let id = Term::lam(x.clone(), x.term());
        assert_eq!(id.type_of().unwrap(), Type::arrow(Type::Nat, Type::Nat));
    }

    #[test]
    fn rec_constant_signature() {
        let t = Term::Rec(Type::Nat);
        let expected = Type::curried(
            [
                &Type::Nat,
                &Type::Nat,
                &Type::curried([&Type::Nat, &Type::Nat], Type::Nat),
            ],
            Type::Nat,
        );
        assert_eq!(t.type_of().unwrap(), expected);
    }

    #[test]
    fn succ_of_true_is_ill_typed() {
        let t = Term::app(Term::Succ, Term::True);
        assert!(matches!(t.type_of(), Err(KernelError::TypeMismatch { .. })));
    }

    #[test]
    fn unbound_variable_reported() {
        let t = Term::var("y", Type::Nat);
        assert!(matches!(
            t.infer_type(&HashMap::new()),
            Err(KernelError::UnboundVariable(_))
        ));
    }

    #[test]
    fn alpha_equivalence_respects_binding() {
        let x = Var::new("x", Type::Nat);
        let y = Var::new("y", Type::Nat);
        let a = Term::lam(x.clone(), x.term());
        let b = Term::lam(y.clone(), y.term());
        assert!(a.alpha_eq(&b));
        let c = Term::lam(x.clone(), y.term());
        assert!(!a.alpha_eq(&c));
        let d = Term::lam(y.clone(), x.term());
        assert!(!c.alpha_eq(&d));
    }

    #[test]
    fn stems_drop_generated_suffix() {
        assert_eq!(stem_of("x_12"), "x");
        assert_eq!(stem_of("x_"), "x_");
        assert_eq!(stem_of("foo"), "foo");
        let v = fresh_var("z_3", Type::Nat);
        assert!(v.name.starts_with("z_"));
    }
}
