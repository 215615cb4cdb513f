//! Exact rational scalars, dense univariate polynomials, reduced rational
//! functions and partial-fraction decomposition over rational roots.

mod partial;
mod polynomial;
mod ratfunc;
mod rational;

pub use partial::{partial_fractions, PartialFractions, PoleTerm};
pub use polynomial::{poly_arith, Degree, Parity, PolyOp, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
