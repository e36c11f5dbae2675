use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{Universe, Value};
use super::Domain;
use crate::kernel::{canonical_inhabitant, prelude, Term, Type, Var};

/// Values of each finite type under a [`Domain`], built lazily and cached.
pub struct Space {
    dom: Domain,
    full: RefCell<HashMap<Type, Rc<Vec<Value>>>>,
    /// How many leading values of each full space are structured.
    core: RefCell<HashMap<Type, usize>>,
    inner: RefCell<HashMap<Type, Rc<Vec<Value>>>>,
    warnings: RefCell<Vec<String>>,
}

impl Space {
    pub fn new(dom: Domain) -> Space {
        Space {
            dom,
            full: RefCell::default(),
            core: RefCell::default(),
            inner: RefCell::default(),
            warnings: RefCell::default(),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.dom
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.borrow().clone()
    }

    /// Values tried for a universally quantified variable of the obligation.
    pub fn assignable(&self, ty: &Type) -> Rc<Vec<Value>> {
        if let Some(v) = self.full.borrow().get(ty) {
            return v.clone();
        }
        let (vals, core) = self.build(ty);
        let vals = Rc::new(vals);
        self.full.borrow_mut().insert(ty.clone(), vals.clone());
        self.core.borrow_mut().insert(ty.clone(), core);
        vals
    }

    /// Length of the prefix of [`Space::assignable`] worth trying first:
    /// everything for small types, the structured functions otherwise.
    pub fn core_len(&self, ty: &Type) -> usize {
        let n = self.assignable(ty).len();
        self.core.borrow().get(ty).copied().unwrap_or(n)
    }

    fn build(&self, ty: &Type) -> (Vec<Value>, usize) {
        match ty {
            Type::Nat => {
                let v: Vec<Value> = (0..=self.dom.nat_bound).map(Value::Nat).collect();
                let n = v.len();
                (v, n)
            }
            Type::Bool => (vec![Value::Bool(false), Value::Bool(true)], 2),
            Type::Arrow(..) => {
                let (args, res) = ty.uncurry();
                let sampled = !args.iter().all(Type::is_base) || self.table_count(&args, &res).is_none();
                let mut out: Vec<Value> = self
                    .structured(&args, &res, sampled)
                    .iter()
                    .filter_map(|t| Value::of_closed(t).ok())
                    .collect();
                let structured = out.len();
                if args.iter().all(Type::is_base) {
                    out.extend(self.tables(ty, &args, &res));
                }
                let core = if out.len() <= self.dom.inner_functions { out.len() } else { structured };
                (out, core)
            }
        }
    }

    fn base_size(&self, ty: &Type) -> usize {
        match ty {
            Type::Bool => 2,
            _ => self.dom.nat_bound as usize + 1,
        }
    }

    fn arg_size(&self, ty: &Type) -> usize {
        match ty {
            Type::Bool => 2,
            _ => self.dom.table_domain.max(1) as usize,
        }
    }

    fn base_value(&self, ty: &Type, i: usize) -> Value {
        match ty {
            Type::Bool => Value::Bool(i == 1),
            _ => Value::Nat(i as u64),
        }
    }

    /// Number of tables when every one of them fits under the limit.
    fn table_count(&self, args: &[Type], res: &Type) -> Option<usize> {
        let cells: usize = args.iter().map(|a| self.arg_size(a)).product();
        u32::try_from(cells)
            .ok()
            .and_then(|c| self.base_size(res).checked_pow(c))
            .filter(|&n| n <= self.dom.table_limit)
    }

    /// Every table when the space is small, otherwise seeded random ones.
    fn tables(&self, ty: &Type, args: &[Type], res: &Type) -> Vec<Value> {
        let cells: usize = args.iter().map(|a| self.arg_size(a)).product();
        let cod = self.base_size(res);
        let count = self.table_count(args, res);
        let flat: Vec<Vec<usize>> = match count {
            Some(n) => (0..n)
                .map(|mut k| {
                    let mut digits = vec![0; cells];
                    for d in digits.iter_mut().rev() {
                        *d = k % cod;
                        k /= cod;
                    }
                    digits
                })
                .collect(),
            None => {
                self.warnings.borrow_mut().push(format!(
                    "UnsampleableType: {ty} exceeds {} tables; using {} random tables",
                    self.dom.table_limit, self.dom.random_tables
                ));
                let mut rng = ChaCha8Rng::seed_from_u64(self.dom.seed ^ type_hash(ty));
                (0..self.dom.random_tables)
                    .map(|_| (0..cells).map(|_| rng.gen_range(0..cod)).collect())
                    .collect()
            }
        };
        flat.iter().map(|cells| self.nest(args, res, cells)).collect()
    }

    fn nest(&self, args: &[Type], res: &Type, cells: &[usize]) -> Value {
        match args.split_first() {
            None => self.base_value(res, cells[0]),
            Some((a, rest)) => {
                let n = self.arg_size(a);
                let chunk = cells.len() / n;
                Value::table((0..n).map(|i| self.nest(rest, res, &cells[i * chunk..(i + 1) * chunk])).collect())
            }
        }
    }

    /// Constants, projections and a few arithmetic shapes, as closed terms.
    fn structured(&self, args: &[Type], res: &Type, sampled: bool) -> Vec<Term> {
        let xs: Vec<Var> = args.iter().enumerate().map(|(i, t)| Var::new(format!("a{i}"), t.clone())).collect();
        let mut bodies = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            if x.ty == *res {
                bodies.push(x.term());
                if *res == Type::Nat && i == 0 {
                    bodies.push(Term::succ(x.term()));
                    bodies.push(Term::apps(prelude::lookup("plus").expect("prelude"), [x.term(), x.term()]));
                }
            } else if !x.ty.is_base() {
                let (inner_args, inner_res) = x.ty.uncurry();
                if inner_res == *res {
                    for pick in [canonical_inhabitant, one] {
                        bodies.push(Term::apps(x.term(), inner_args.iter().map(pick)));
                    }
                }
            }
        }
        if sampled && *res == Type::Bool {
            bodies.extend(relations(&xs));
        }
        if *res == Type::Nat {
            if let Some(x) = xs.iter().find(|x| x.ty == Type::Nat) {
                bodies.push(next_with_parity(x.term(), true));
                bodies.push(next_with_parity(x.term(), false));
            }
        }
        if *res == Type::Bool {
            if let Some(x) = xs.iter().find(|x| x.ty == Type::Nat) {
                bodies.push(even(x.term()));
                bodies.push(Term::apps(prelude::lookup("notb").expect("prelude"), [even(x.term())]));
            }
        }
        bodies.push(canonical_inhabitant(res));
        bodies.push(one(res));
        bodies.into_iter().map(|b| Term::lams(&xs, b)).collect()
    }
}

impl Universe for Space {
    /// Inner quantifiers see every base value but only a spread of functions.
    fn values(&self, ty: &Type) -> Rc<Vec<Value>> {
        if ty.is_base() {
            return self.assignable(ty);
        }
        if let Some(v) = self.inner.borrow().get(ty) {
            return v.clone();
        }
        let all = self.assignable(ty);
        let k = self.dom.inner_functions.max(1);
        let vals: Vec<Value> = if all.len() <= k {
            all.to_vec()
        } else {
            (0..k).map(|i| all[i * all.len() / k].clone()).collect()
        };
        let vals = Rc::new(vals);
        self.inner.borrow_mut().insert(ty.clone(), vals.clone());
        vals
    }
}

/// Thresholds on one natural argument and comparisons between two.
fn relations(xs: &[Var]) -> Vec<Term> {
    let prim = |name: &str, a: Term, b: Term| Term::apps(prelude::lookup(name).expect("prelude"), [a, b]);
    let nats: Vec<&Var> = xs.iter().filter(|x| x.ty == Type::Nat).collect();
    let mut out = Vec::new();
    for x in &nats {
        for c in 0..3 {
            out.push(prim("eqnat", x.term(), Term::numeral(c)));
            out.push(prim("le", Term::numeral(c + 1), x.term()));
        }
    }
    for (i, x) in nats.iter().enumerate() {
        for y in &nats[i + 1..] {
            out.push(prim("le", x.term(), y.term()));
            out.push(prim("le", y.term(), x.term()));
            out.push(prim("eqnat", x.term(), y.term()));
        }
    }
    out
}

fn even(n: Term) -> Term {
    let (k, p) = (Var::new("k", Type::Nat), Var::new("p", Type::Bool));
    Term::rec(Type::Bool, n, Term::True, Term::lams(&[k, p.clone()], Term::apps(prelude::lookup("notb").expect("prelude"), [p.term()])))
}

/// Least number above `n` that is even (or odd).
fn next_with_parity(n: Term, want_even: bool) -> Term {
    let (a, b) = if want_even { (1, 0) } else { (0, 1) };
    let bump = Term::if_then(Type::Nat, even(n.clone()), Term::numeral(a), Term::numeral(b));
    Term::succ(Term::apps(prelude::lookup("plus").expect("prelude"), [n, bump]))
}

fn one(ty: &Type) -> Term {
    match ty {
        Type::Nat => Term::numeral(1),
        Type::Bool => Term::True,
        Type::Arrow(d, c) => Term::lam(Var::new("x", (**d).clone()), one(c)),
    }
}

fn type_hash(ty: &Type) -> u64 {
    ty.to_string()
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_function_spaces_are_exhaustive() {
        let s = Space::new(Domain::default());
        let nb = Type::arrow(Type::Nat, Type::Bool);
        assert_eq!(s.assignable(&nb).len(), 4 + 16);
        let nn = Type::arrow(Type::Nat, Type::Nat);
        assert_eq!(s.assignable(&nn).len(), 7 + 6usize.pow(4));
        assert!(s.warnings().is_empty());
    }

    #[test]
    fn large_spaces_are_sampled_deterministically() {
        let ty = Type::curried([Type::Nat, Type::Nat].iter(), Type::Nat);
        let a = Space::new(Domain::default());
        let b = Space::new(Domain::default());
        let (va, vb) = (a.assignable(&ty), b.assignable(&ty));
        assert_eq!(va.len(), vb.len());
        let render = |v: &Rc<Vec<Value>>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(render(&va), render(&vb));
        assert_eq!(a.warnings().len(), 1);
    }
}
