//! Exact rational linear algebra.

mod affine;
mod matrix;
mod rational;

pub use affine::{AffineSystem, Constraint, SolutionSpace, Term};
pub use matrix::{Mat, MatDoc, Rref};
pub use rational::{ParseRationalError, Rational};
