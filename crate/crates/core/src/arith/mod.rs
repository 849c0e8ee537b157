//! Exact arithmetic: rationals, half-integers, polynomials and linear algebra.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{QMatrix, RowReducer, SparseVec};
pub use poly::{Assignment, Poly, Var};
pub use rational::{fmt_rational, int, is_square_witness, parse_rational, pow_int, ratio, HalfInt, Rational};
