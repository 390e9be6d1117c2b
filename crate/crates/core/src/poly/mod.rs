//! Sparse multivariate polynomials over [`Field`](crate::field::Field) in the
//! indeterminates a_{i,j}, with exact division, GCD and rational functions.

pub mod bracket;
pub mod gcd;
mod monomial;
mod ratfunc;
mod sparse;
pub mod sqrt;
mod text;

pub use bracket::Bracket;
pub use monomial::{Monomial, VarId};
pub use ratfunc::{eval_poly, lcm_factors, Factor, RatFunc};
pub use sparse::SparsePoly;
