// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod kernel;
pub mod lab;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result, Warned, Warning};
