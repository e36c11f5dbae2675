use std::fmt;
use std::sync::Arc;

/// Finite types of Gödel's T: `nat`, `bool` and arrows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Type {
    Nat,
    Bool,
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// `a1 -> a2 -> ... -> result`, right associated.
    pub fn curried<'a, I>(args: I, result: Type) -> Type
    where
        I: IntoIterator<Item = &'a Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| Type::arrow(a.clone(), acc))
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Type::Nat | Type::Bool)
    }

    /// Splits `a1 -> ... -> an -> r` into `([a1..an], r)` with `r` a base type.
    pub fn uncurry(&self) -> (Vec<Type>, Type) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Type::Arrow(d, c) = cur {
            args.push((**d).clone());
            cur = c;
        }
        (args, cur.clone())
    }

    pub fn domain(&self) -> Option<&Type> {
        match self {
            Type::Arrow(d, _) => Some(d),
            _ => None,
        }
    }

    pub fn codomain(&self) -> Option<&Type> {
        match self {
            Type::Arrow(_, c) => Some(c),
            _ => None,
        }
    }

    pub fn if_type(rho: &Type) -> Type {
        Type::curried([&Type::Bool, rho, rho], rho.clone())
    }

    pub fn rec_type(rho: &Type) -> Type {
        let step = Type::curried([&Type::Nat, rho], rho.clone());
        Type::curried([&Type::Nat, rho, &step], rho.clone())
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Nat => write!(f, "nat"),
            Type::Bool => write!(f, "bool"),
            Type::Arrow(..) => {
                let (args, res) = self.uncurry();
                write!(f, "(->")?;
                for a in &args {
                    write!(f, " {a}")?;
                }
                write!(f, " {res})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_print_right_associated() {
        let t = Type::curried([&Type::Nat, &Type::Nat], Type::Bool);
        assert_eq!(t.to_string(), "(-> nat nat bool)");
        let h = Type::arrow(Type::arrow(Type::Nat, Type::Nat), Type::Nat);
        assert_eq!(h.to_string(), "(-> (-> nat nat) nat)");
    }

    #[test]
    fn rec_signature() {
        let r = Type::rec_type(&Type::Nat);
        let (args, res) = r.uncurry();
        assert_eq!(args.len(), 3);
        assert_eq!(res, Type::Nat);
        assert_eq!(r.to_string(), "(-> nat nat (-> nat nat nat) nat)");
    }
}
