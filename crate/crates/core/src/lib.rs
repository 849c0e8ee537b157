//! Exact computations in half-integer graded Lie algebras given by
//! polynomial structure constants.

pub mod algebra;
pub mod arith;
pub mod automorphisms;
pub mod cli;
pub mod derivations;
pub mod error;
pub mod oracle;
pub mod spec;
pub mod structure;

pub use error::{Error, Result};
