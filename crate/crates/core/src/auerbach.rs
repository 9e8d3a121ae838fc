//! Auerbach bases: bases of unit vectors whose biorthogonal functionals are
//! unit functionals too.
//!
//! Upper bases maximize `|det|` over `n`-tuples of unit vectors; the search
//! runs over tuples of vertices only, since `|det|` is convex in each column
//! and so peaks at extreme points. Lower bases are read off the upper bases
//! of the dual space.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{RMatrix, RVector, Rational};
use crate::polytope::SymPolytope;

pub const DEFAULT_TUPLE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuerbachConfig {
    /// Largest number of vertex `n`-tuples the enumeration visits.
    pub tuple_cap: u128,
}

impl Default for AuerbachConfig {
    fn default() -> Self {
        AuerbachConfig {
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }
}

/// Basis vectors (columns of `vectors`) with their biorthogonal functionals
/// (rows of `biorthogonal`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Basis {
    pub vectors: RMatrix,
    pub biorthogonal: RMatrix,
}

impl Basis {
    pub fn from_matrix(vectors: RMatrix) -> Result<Self> {
        if !vectors.is_square() {
            return Err(Error::Dimension("basis matrix must be square".into()));
        }
        let biorthogonal = vectors.inverse()?;
        Ok(Basis {
            vectors,
            biorthogonal,
        })
    }

    pub fn from_columns(cols: &[RVector]) -> Result<Self> {
        Self::from_matrix(RMatrix::from_cols(cols)?)
    }

    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn columns(&self) -> Vec<RVector> {
        self.vectors.col_vectors()
    }

    pub fn column(&self, i: usize) -> RVector {
        self.vectors.col(i)
    }

    pub fn functionals(&self) -> Vec<RVector> {
        self.biorthogonal.row_vectors()
    }

    pub fn abs_det(&self) -> Rational {
        self.vectors.abs_det().expect("square")
    }

    /// Columns sign-normalized (first nonzero entry positive), then sorted
    /// in decreasing lexicographic order, so the identity is canonical.
    pub fn canonical(&self) -> Basis {
        let mut cols: Vec<RVector> = self.columns().iter().map(|c| c.sign_canonical()).collect();
        cols.sort_by(|a, b| b.cmp(a));
        Basis::from_columns(&cols).expect("still a basis")
    }

    /// Columns in the order given by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Basis> {
        let cols = self.columns();
        let picked: Vec<RVector> = perm.iter().map(|&i| cols[i].clone()).collect();
        Basis::from_columns(&picked)
    }

    /// Coordinates of `x` in this basis.
    pub fn coords(&self, x: &RVector) -> Result<RVector> {
        self.biorthogonal.mul_vec(x)
    }

    pub fn equivalent(&self, other: &Basis) -> bool {
        self.canonical() == other.canonical()
    }
}

pub fn biorthogonal(vectors: RMatrix) -> Result<Basis> {
    Basis::from_matrix(vectors)
}

/// Unit basis vectors whose Minkowski box contains the ball, i.e. whose
/// functionals are bounded by one on every vertex.
pub fn is_auerbach(ball: &SymPolytope, basis: &Basis) -> Result<bool> {
    if basis.dim() != ball.dim() {
        return Err(Error::Dimension("basis and ball dimensions differ".into()));
    }
    for x in basis.columns() {
        if !ball.gauge_norm(&x)?.is_one() {
            return Ok(false);
        }
    }
    for f in basis.functionals() {
        if ball.dual_norm(&f)? > Rational::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Upper,
    Lower,
}

/// All maximizing classes, one canonical basis each, in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuerbachFamily {
    pub kind: FamilyKind,
    pub bases: Vec<Basis>,
    /// `|det|` shared by every member.
    pub extremal_value: Rational,
    pub ties_flag: bool,
}

impl AuerbachFamily {
    pub fn contains(&self, b: &Basis) -> bool {
        self.bases.binary_search(&b.canonical()).is_ok()
    }

    pub fn first(&self) -> &Basis {
        &self.bases[0]
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Tuple count the enumeration would visit for this ball.
pub fn tuple_count(ball: &SymPolytope) -> Result<u128> {
    Ok(binomial(ball.vertices()?.len(), ball.dim()))
}

pub fn upper_auerbach_bases(ball: &SymPolytope) -> Result<AuerbachFamily> {
    upper_auerbach_bases_with(ball, AuerbachConfig::default())
}

pub fn upper_auerbach_bases_with(
    ball: &SymPolytope,
    config: AuerbachConfig,
) -> Result<AuerbachFamily> {
    let n = ball.dim();
    let vs = ball.vertices()?;
    let count = binomial(vs.len(), n);
    if count > config.tuple_cap {
        return Err(Error::Capacity {
            what: "vertex tuples for Auerbach enumeration",
            count,
            cap: config.tuple_cap,
        });
    }

    // Reduce to (max |det|, tuples attaining it); the tuple set is ordered,
    // so the result does not depend on how rayon splits the work.
    type Best = (Rational, BTreeSet<Vec<usize>>);
    let merge = |a: Best, b: Best| -> Best {
        match a.0.cmp(&b.0) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => {
                let mut s = a.1;
                s.extend(b.1);
                (a.0, s)
            }
        }
    };
    let (best, tuples) = (0..vs.len())
        .combinations(n)
        .par_bridge()
        .map(|idx| {
            let cols: Vec<RVector> = idx.iter().map(|&i| vs[i].clone()).collect();
            let d = RMatrix::from_cols(&cols)
                .and_then(|m| m.abs_det())
                .expect("square");
            (d, BTreeSet::from([idx]))
        })
        .reduce(|| (Rational::zero(), BTreeSet::new()), merge);

    if best.is_zero() {
        return Err(Error::Degenerate("vertices do not span the space".into()));
    }
    let mut classes = BTreeSet::new();
    for idx in tuples {
        let cols: Vec<RVector> = idx.iter().map(|&i| vs[i].clone()).collect();
        let b = Basis::from_columns(&cols)?.canonical();
        if !is_auerbach(ball, &b)? {
            return Err(Error::Construction(format!(
                "maximal-volume tuple {:?} is not an Auerbach basis",
                b.vectors
            )));
        }
        classes.insert(b);
    }
    let bases: Vec<Basis> = classes.into_iter().collect();
    Ok(AuerbachFamily {
        kind: FamilyKind::Upper,
        ties_flag: bases.len() > 1,
        bases,
        extremal_value: best,
    })
}

pub fn lower_auerbach_bases(ball: &SymPolytope) -> Result<AuerbachFamily> {
    lower_auerbach_bases_with(ball, AuerbachConfig::default())
}

/// Biorthogonal systems of the upper bases of the dual ball.
pub fn lower_auerbach_bases_with(
    ball: &SymPolytope,
    config: AuerbachConfig,
) -> Result<AuerbachFamily> {
    let upper = upper_auerbach_bases_with(&ball.polar_dual(), config)?;
    let mut classes = BTreeSet::new();
    for f in &upper.bases {
        // Columns of f are the functionals; the primal basis is (fᵀ)⁻¹.
        let b = Basis::from_matrix(f.vectors.transpose().inverse()?)?.canonical();
        if !is_auerbach(ball, &b)? {
            return Err(Error::Construction(format!(
                "dual of an upper basis is not Auerbach: {:?}",
                b.vectors
            )));
        }
        classes.insert(b);
    }
    let bases: Vec<Basis> = classes.into_iter().collect();
    Ok(AuerbachFamily {
        kind: FamilyKind::Lower,
        ties_flag: bases.len() > 1,
        bases,
        extremal_value: upper.extremal_value.recip(),
    })
}

/// A smallest parallelepiped `M({x_i})` containing the ball and its volume
/// `2ⁿ·|det|`.
pub fn min_parallelepiped(ball: &SymPolytope) -> Result<(Basis, Rational)> {
    min_parallelepiped_with(ball, AuerbachConfig::default())
}

pub fn min_parallelepiped_with(
    ball: &SymPolytope,
    config: AuerbachConfig,
) -> Result<(Basis, Rational)> {
    let lower = lower_auerbach_bases_with(ball, config)?;
    let vol = Rational::pow2(ball.dim()) * &lower.extremal_value;
    Ok((lower.bases[0].clone(), vol))
}
