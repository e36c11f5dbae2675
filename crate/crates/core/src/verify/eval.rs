//! Call-by-value evaluation of T terms and bounded evaluation of formulas.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::formulas::Formula;
use crate::kernel::{Term, Type, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("ill-typed evaluation: {0}")]
    Stuck(String),
    #[error("evaluation budget of {0} steps exhausted")]
    Fuel(u64),
    #[error("natural number overflow")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prim {
    Succ,
    If,
    Rec,
}

impl Prim {
    fn arity(self) -> usize {
        match self {
            Prim::Succ => 1,
            Prim::If | Prim::Rec => 3,
        }
    }
}

pub enum Fun {
    Closure { param: Var, body: Term, env: Env },
    /// Finite table; natural arguments past the end read the last entry.
    Table(Vec<Value>),
    Prim(Prim, Vec<Value>),
}

#[derive(Clone)]
pub enum Value {
    Nat(u64),
    Bool(bool),
    Fun(Rc<Fun>),
}

impl Value {
    pub fn table(entries: Vec<Value>) -> Value {
        Value::Fun(Rc::new(Fun::Table(entries)))
    }

    /// Value of a closed term.
    pub fn of_closed(t: &Term) -> Result<Value, EvalError> {
        eval(t, &Env::default(), &mut Budget::new(DEFAULT_BUDGET))
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Value::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Fun(fun) => match &**fun {
                Fun::Closure { param, body, .. } => {
                    write!(f, "{}", Term::lam(param.clone(), body.clone()))
                }
                Fun::Table(es) => {
                    write!(f, "[")?;
                    for (i, e) in es.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{e}")?;
                    }
                    write!(f, "]")
                }
                Fun::Prim(p, args) => write!(f, "<{p:?}/{}>", args.len()),
            },
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Default)]
pub struct Env(Option<Rc<(Var, Value, Env)>>);

impl Env {
    pub fn bind(&self, x: Var, v: Value) -> Env {
        Env(Some(Rc::new((x, v, self.clone()))))
    }

    pub fn from_pairs<'a>(it: impl IntoIterator<Item = (&'a Var, &'a Value)>) -> Env {
        it.into_iter().fold(Env::default(), |e, (x, v)| e.bind(x.clone(), v.clone()))
    }

    fn lookup(&self, x: &Var) -> Option<&Value> {
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if node.0 == *x {
                return Some(&node.1);
            }
            cur = &node.2;
        }
        None
    }
}

pub const DEFAULT_BUDGET: u64 = 5_000_000;

pub struct Budget {
    left: u64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { left: limit, limit }
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        if self.left == 0 {
            return Err(EvalError::Fuel(self.limit));
        }
        self.left -= 1;
        Ok(())
    }
}

pub fn eval(t: &Term, env: &Env, b: &mut Budget) -> Result<Value, EvalError> {
    match t {
        Term::Var(x) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(x.name.to_string())),
        Term::True => Ok(Value::Bool(true)),
        Term::False => Ok(Value::Bool(false)),
        Term::Zero => Ok(Value::Nat(0)),
        Term::Succ => Ok(Value::Fun(Rc::new(Fun::Prim(Prim::Succ, vec![])))),
        Term::If(_) => Ok(Value::Fun(Rc::new(Fun::Prim(Prim::If, vec![])))),
        Term::Rec(_) => Ok(Value::Fun(Rc::new(Fun::Prim(Prim::Rec, vec![])))),
        Term::Lam(x, body) => Ok(Value::Fun(Rc::new(Fun::Closure {
            param: x.clone(),
            body: (**body).clone(),
            env: env.clone(),
        }))),
        Term::App(..) => {
            if let Some(n) = t.as_numeral() {
                return Ok(Value::Nat(n));
            }
            let (h, args) = t.spine();
            let mut f = eval(h, env, b)?;
            for a in args {
                let v = eval(a, env, b)?;
                f = apply(&f, v, b)?;
            }
            Ok(f)
        }
    }
}

pub fn apply(f: &Value, a: Value, b: &mut Budget) -> Result<Value, EvalError> {
    b.tick()?;
    let Value::Fun(fun) = f else {
        return Err(EvalError::Stuck(format!("applying non-function {f}")));
    };
    match &**fun {
        Fun::Closure { param, body, env } => eval(body, &env.bind(param.clone(), a), b),
        Fun::Table(es) => {
            let i = match a {
                Value::Nat(n) => (n as usize).min(es.len().saturating_sub(1)),
                Value::Bool(x) => x as usize,
                Value::Fun(_) => 0,
            };
            es.get(i)
                .cloned()
                .ok_or_else(|| EvalError::Stuck("empty table".into()))
        }
        Fun::Prim(p, args) => {
            let mut args = args.clone();
            args.push(a);
            if args.len() < p.arity() {
                return Ok(Value::Fun(Rc::new(Fun::Prim(*p, args))));
            }
            match p {
                Prim::Succ => match args[0] {
                    Value::Nat(n) => n.checked_add(1).map(Value::Nat).ok_or(EvalError::Overflow),
                    _ => Err(EvalError::Stuck("succ of non-number".into())),
                },
                Prim::If => match args[0] {
                    Value::Bool(true) => Ok(args[1].clone()),
                    Value::Bool(false) => Ok(args[2].clone()),
                    _ => Err(EvalError::Stuck("if on non-boolean".into())),
                },
                Prim::Rec => {
                    let Value::Nat(n) = args[0] else {
                        return Err(EvalError::Stuck("rec on non-number".into()));
                    };
                    let mut acc = args[1].clone();
                    for i in 0..n {
                        let g = apply(&args[2], Value::Nat(i), b)?;
                        acc = apply(&g, acc, b)?;
                    }
                    Ok(acc)
                }
            }
        }
    }
}

/// Supplies the values a bounded quantifier ranges over.
pub trait Universe {
    fn values(&self, ty: &Type) -> Rc<Vec<Value>>;
}

/// Truth of a formula with every `∀` read over the universe.
pub fn holds(a: &Formula, env: &Env, u: &dyn Universe, b: &mut Budget) -> Result<bool, EvalError> {
    match a {
        Formula::Atom(t) => match eval(t, env, b)? {
            Value::Bool(x) => Ok(x),
            v => Err(EvalError::Stuck(format!("atom evaluated to {v}"))),
        },
        Formula::Imp(l, r) => Ok(!holds(l, env, u, b)? || holds(r, env, u, b)?),
        Formula::And(l, r) => Ok(holds(l, env, u, b)? && holds(r, env, u, b)?),
        Formula::Box(inner) => holds(inner, env, u, b),
        Formula::Forall(_, x, body) => {
            let vals = u.values(&x.ty);
            for v in vals.iter() {
                if !holds(body, &env.bind(x.clone(), v.clone()), u, b)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{eq_nat, prelude};

    #[test]
    fn arithmetic_matches_prelude() {
        let times = prelude::lookup("times").unwrap();
        let t = Term::apps(times, [Term::numeral(3), Term::numeral(4)]);
        assert_eq!(Value::of_closed(&t).unwrap().as_nat(), Some(12));
        let e = Term::apps(eq_nat(), [Term::numeral(2), Term::numeral(2)]);
        assert_eq!(Value::of_closed(&e).unwrap().as_bool(), Some(true));
    }

    #[test]
    fn tables_clamp_past_the_end() {
        let f = Value::table(vec![Value::Nat(1), Value::Nat(5)]);
        let mut b = Budget::new(10);
        assert_eq!(apply(&f, Value::Nat(9), &mut b).unwrap().as_nat(), Some(5));
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let t = Term::var("q", Type::Nat);
        assert_eq!(Value::of_closed(&t).unwrap_err(), EvalError::Unbound("q".into()));
    }
}
