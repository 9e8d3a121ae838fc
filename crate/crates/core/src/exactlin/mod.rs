//! Exact rational linear algebra: scalars, vectors, matrices, minors and
//! Fourier–Motzkin feasibility.

mod fm;
mod matrix;
mod minors;
mod rational;
mod vector;

pub use fm::{
    fm_feasible, fm_feasible_with, Certificate, Constraint, Feasibility, FmConfig, LinearSystem,
};
pub use matrix::{coordinates, independent, RMatrix};
pub use minors::{
    is_totally_unimodular, is_totally_unimodular_with, max_abs_minor, max_abs_minor_with, MinorCaps,
};
pub use rational::{q, qi, ParseRationalError, Rational};
pub use vector::RVector;
