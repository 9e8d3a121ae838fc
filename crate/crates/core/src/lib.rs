//! Exact rational geometry of finite-dimensional polyhedral normed spaces.

pub mod auerbach;
pub mod error;
pub mod exactlin;
pub mod mvse;
pub mod polytope;
pub mod projections;
pub mod spaces;

pub use error::{Error, Result};
