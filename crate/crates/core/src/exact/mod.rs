//! Exact arithmetic: Gaussian rationals, Laurent polynomials with declared
//! denominators, and dense/sparse exact linear algebra.

pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use matrix::{Echelon, ExactMatrix};
pub use poly::{Exponents, LaurentPoly, Ring, Terms, VarKind};
pub use field::Field;
pub use scalar::{rat, Rational, Scalar};
pub use sparse::{SparseEchelon, SparseRow};
