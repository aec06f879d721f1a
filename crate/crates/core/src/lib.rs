#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod schmidt;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Result};
