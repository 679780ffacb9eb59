//! Exact verification engine for c-projective structures.
#![allow(clippy::needless_range_loop)]

pub mod battery;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod metric;
pub mod prolong;
pub mod report;
pub mod slpair;
pub mod structlie;
pub mod symsolve;
pub mod tensorcalc;

pub use error::{Error, Result};
pub use exact::{rat, ExactMatrix, Field, LaurentPoly, Rational, Ring, Scalar, SparseEchelon, VarKind};
pub use tensorcalc::{AlmostComplex, Chart, Connection, PolyTensor, VectorField};
