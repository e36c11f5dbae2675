pub mod calculus;
pub mod corpus;
pub mod dialectica;
pub mod extraction;
pub mod formulas;
pub mod gen;
pub mod kernel;
pub mod syntax;
pub mod verify;
