use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::SymPolytope;
use crate::error::{Error, Result};
use crate::exactlin::{RMatrix, RVector, Rational};

/// Minkowski sum of the segments `[-g, g]` over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Zonotope {
    pub dim: usize,
    pub generators: Vec<RVector>,
}

impl Zonotope {
    /// Zero generators are dropped.
    pub fn new(dim: usize, generators: Vec<RVector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::Dimension(format!(
                "generator of length {} in dimension {dim}",
                g.dim()
            )));
        }
        Ok(Zonotope {
            dim,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// `2^dim · Σ |det S|` over `dim`-subsets `S` of generators.
    pub fn volume(&self) -> Rational {
        let total: Rational = self
            .generators
            .iter()
            .combinations(self.dim)
            .map(|s| {
                let cols: Vec<RVector> = s.into_iter().cloned().collect();
                RMatrix::from_cols(&cols)
                    .and_then(|m| m.abs_det())
                    .expect("square")
            })
            .sum();
        Rational::pow2(self.dim) * total
    }

    /// Parallel generators merged into one segment each (lengths add).
    pub fn merged_generators(&self) -> Vec<RVector> {
        let mut groups: Vec<(RVector, Rational)> = Vec::new();
        for g in &self.generators {
            let g = g.sign_canonical();
            match groups.iter_mut().find(|(d, _)| d.is_parallel(&g)) {
                Some((d, len)) => {
                    let i = d.iter().position(|x| !x.is_zero()).expect("nonzero");
                    *len += (&g[i] / &d[i]).abs();
                }
                None => groups.push((g, Rational::one())),
            }
        }
        groups.into_iter().map(|(d, len)| d.scale(&len)).collect()
    }

    /// After merging parallel generators, exactly `dim` independent ones
    /// remain.
    pub fn is_parallelepiped(&self) -> bool {
        let merged = self.merged_generators();
        merged.len() == self.dim && RMatrix::from_rows(&merged).is_ok_and(|m| m.rank() == self.dim)
    }

    pub fn spans(&self) -> bool {
        !self.generators.is_empty()
            && RMatrix::from_rows(&self.generators).is_ok_and(|m| m.rank() == self.dim)
    }

    /// Facet functionals. Each facet is parallel to a hyperplane spanned by
    /// `dim - 1` generators; its normal `c` is the generalized cross product
    /// and the support value is `Σ |c·g|`.
    pub fn facets(&self) -> Result<Vec<RVector>> {
        if !self.spans() {
            return Err(Error::Degenerate("zonotope is not full-dimensional".into()));
        }
        let n = self.dim;
        let mut found = BTreeSet::new();
        for s in self.generators.iter().combinations(n - 1) {
            let Some(c) = normal_of(n, &s) else {
                continue;
            };
            let h: Rational = self.generators.iter().map(|g| c.dot(g).abs()).sum();
            found.insert(c.scale(&h.recip()).sign_canonical());
        }
        Ok(found.into_iter().collect())
    }

    /// As a symmetric polytope, H-representation first.
    pub fn to_polytope(&self) -> Result<SymPolytope> {
        Ok(SymPolytope::from_parts(
            self.dim,
            None,
            Some(self.facets()?),
        ))
    }

    /// The zonotope's own norm, `max |f·x|` over facets.
    pub fn gauge(&self, x: &RVector) -> Result<Rational> {
        self.to_polytope()?.gauge_norm(x)
    }

    /// Generator matrix, one generator per column.
    pub fn generator_matrix(&self) -> RMatrix {
        if self.generators.is_empty() {
            return RMatrix::zeros(self.dim, 0);
        }
        RMatrix::from_cols(&self.generators).expect("uniform length")
    }
}

/// Normal to `dim - 1` vectors, `None` if they are dependent.
fn normal_of(n: usize, vs: &[&RVector]) -> Option<RVector> {
    let rows: Vec<RVector> = vs.iter().map(|&v| v.clone()).collect();
    let m = if rows.is_empty() {
        RMatrix::zeros(0, n)
    } else {
        RMatrix::from_rows(&rows).ok()?
    };
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let c: RVector = (0..n)
        .map(|i| {
            let cols: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let d = m.submatrix(&all_rows, &cols).det().expect("square");
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    (!c.is_zero()).then_some(c)
}
