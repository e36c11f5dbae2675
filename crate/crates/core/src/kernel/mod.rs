//! Gödel's T: finite types, terms, substitution and normalization.

mod normalize;
pub(crate) mod ops;
pub mod prelude;
mod subst;
mod term;
mod types;

pub use normalize::{normalize, strategies, strategy, Fuel, Innermost, LeftmostOutermost, Normalizer, DEFAULT_FUEL};
pub use ops::{canonical_inhabitant, canonical_names, eq_bool, eq_nat, eval_ground, make_equality, Ground};
pub use subst::{substitute, Subst};
pub use term::{fresh_var, Term, Var};
pub(crate) use term::stem_of;
pub use types::Type;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    TypeMismatch {
        expected: Type,
        found: Type,
        context: String,
    },
    #[error("not a function: {0}")]
    NotAFunction(Type),
    #[error("term is not of ground type: {0}")]
    NotGround(Type),
    #[error("term has free variables: {0}")]
    NotClosed(String),
    #[error("not a base type: {0}")]
    NotBaseType(Type),
    #[error("normalization fuel exhausted after {0} steps")]
    FuelExhausted(u64),
}
