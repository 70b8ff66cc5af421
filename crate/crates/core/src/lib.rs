//! Exact arithmetic for class field theory over cyclotomic fields.
//!
//! The crate predicts subgroups of relative minus class groups of abelian CM
//! fields, computes minus class numbers with two independent exact oracles
//! (generalized Bernoulli numbers and Maillet determinants), and checks the
//! underlying ray class group computations over imaginary quadratic fields.

pub mod algebra;
pub mod cli;
pub mod decimal;
pub mod error;
pub mod fields;
pub mod hminus;
pub mod predict;
pub mod rayclass;
pub mod report;

pub use error::{Error, Result};
