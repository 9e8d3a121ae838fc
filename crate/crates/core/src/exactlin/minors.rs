//! Exhaustive minor enumeration.

use itertools::Itertools;

use super::{RMatrix, Rational};
use crate::error::{Error, Result};

/// Size limits for exhaustive minor enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorCaps {
    pub max_rows: usize,
    pub max_cols: usize,
}

impl Default for MinorCaps {
    fn default() -> Self {
        MinorCaps {
            max_rows: 32,
            max_cols: 8,
        }
    }
}

fn check_caps(m: &RMatrix, caps: MinorCaps) -> Result<()> {
    // Minors are transpose-invariant, so the cap applies to the short side.
    let (long, short) = if m.rows() >= m.cols() {
        (m.rows(), m.cols())
    } else {
        (m.cols(), m.rows())
    };
    if long > caps.max_rows {
        return Err(Error::Capacity {
            what: "matrix rows for minor enumeration",
            count: long as u128,
            cap: caps.max_rows as u128,
        });
    }
    if short > caps.max_cols {
        return Err(Error::Capacity {
            what: "matrix columns for minor enumeration",
            count: short as u128,
            cap: caps.max_cols as u128,
        });
    }
    Ok(())
}

/// Visits every square minor; stops early when `visit` returns false.
fn for_each_minor(m: &RMatrix, mut visit: impl FnMut(Rational) -> bool) {
    let k_max = m.rows().min(m.cols());
    for k in 1..=k_max {
        for rows in (0..m.rows()).combinations(k) {
            for cols in (0..m.cols()).combinations(k) {
                let d = m.submatrix(&rows, &cols).det().expect("square submatrix");
                if !visit(d) {
                    return;
                }
            }
        }
    }
}

/// Largest `|det S|` over all square submatrices `S`.
pub fn max_abs_minor(m: &RMatrix) -> Result<Rational> {
    max_abs_minor_with(m, MinorCaps::default())
}

pub fn max_abs_minor_with(m: &RMatrix, caps: MinorCaps) -> Result<Rational> {
    check_caps(m, caps)?;
    let mut best = Rational::zero();
    for_each_minor(m, |d| {
        let a = d.abs();
        if a > best {
            best = a;
        }
        true
    });
    Ok(best)
}

/// Every minor lies in {-1, 0, 1}.
pub fn is_totally_unimodular(m: &RMatrix) -> Result<bool> {
    is_totally_unimodular_with(m, MinorCaps::default())
}

pub fn is_totally_unimodular_with(m: &RMatrix, caps: MinorCaps) -> Result<bool> {
    check_caps(m, caps)?;
    let mut ok = true;
    for_each_minor(m, |d| {
        ok = d.is_zero() || d.abs().is_one();
        ok
    });
    Ok(ok)
}
