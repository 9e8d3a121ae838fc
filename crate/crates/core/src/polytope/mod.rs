//! Origin-symmetric convex polytopes.
//!
//! A [`SymPolytope`] is stored by one representative of every `±` pair, in
//! V-representation (vertices), H-representation (facet functionals `f`
//! with facets `f·x = ±1`), or both. The missing representation is computed
//! on first use and published once; after that the value behaves as
//! immutable and can be shared across threads.
//!
//! Conversions are brute force: a facet of the symmetric hull of `±V` passes
//! through `dim` linearly independent points of `±V`, so it is found by
//! solving one small system per `dim`-subset and sign pattern. By polarity the
//! same routine turns facets into vertices.

mod plane;
mod zonotope;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactlin::{fm_feasible, Feasibility, LinearSystem, RMatrix, RVector, Rational};

pub use plane::{angle_cmp, cross2, section2, SectionPolygon};
pub use zonotope::Zonotope;

/// Largest ambient dimension the brute-force conversions accept.
pub const MAX_DIM: usize = 6;
/// Largest number of `±` pairs the brute-force conversions accept.
pub const MAX_PAIRS: usize = 64;

#[derive(Clone)]
pub struct SymPolytope {
    dim: usize,
    vertices: OnceLock<Vec<RVector>>,
    facets: OnceLock<Vec<RVector>>,
}

impl SymPolytope {
    /// Symmetric convex hull of `±points`. Non-extreme points, zeros and
    /// duplicates up to sign are discarded.
    pub fn from_vertices(dim: usize, points: &[RVector]) -> Result<Self> {
        let reps = canonical_set(dim, points)?;
        if rank_of(&reps) < dim {
            return Err(Error::Degenerate(format!(
                "vertices span less than {dim} dimensions"
            )));
        }
        let reps = extreme_points(reps)?;
        Ok(Self::from_parts(dim, Some(reps), None))
    }

    /// `{x : |f·x| ≤ 1 for every f}`. Redundant functionals are discarded.
    pub fn from_facets(dim: usize, functionals: &[RVector]) -> Result<Self> {
        let reps = canonical_set(dim, functionals)?;
        if rank_of(&reps) < dim {
            return Err(Error::Unbounded);
        }
        let reps = extreme_points(reps)?;
        Ok(Self::from_parts(dim, None, Some(reps)))
    }

    /// Trusted constructor: lists must already be canonical, sorted and
    /// irredundant.
    pub(crate) fn from_parts(
        dim: usize,
        vertices: Option<Vec<RVector>>,
        facets: Option<Vec<RVector>>,
    ) -> Self {
        assert!(vertices.is_some() || facets.is_some());
        let p = SymPolytope {
            dim,
            vertices: OnceLock::new(),
            facets: OnceLock::new(),
        };
        if let Some(v) = vertices {
            let _ = p.vertices.set(v);
        }
        if let Some(f) = facets {
            let _ = p.facets.set(f);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertex representatives (first nonzero coordinate positive), sorted.
    pub fn vertices(&self) -> Result<&[RVector]> {
        if let Some(v) = self.vertices.get() {
            return Ok(v);
        }
        let facets = self.facets.get().expect("one representation present");
        let v = supporting_functionals(self.dim, facets)?;
        Ok(self.vertices.get_or_init(|| v))
    }

    /// Facet functional representatives, sorted.
    pub fn facets(&self) -> Result<&[RVector]> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        let vertices = self.vertices.get().expect("one representation present");
        let f = supporting_functionals(self.dim, vertices)?;
        Ok(self.facets.get_or_init(|| f))
    }

    pub fn has_vertices(&self) -> bool {
        self.vertices.get().is_some()
    }

    pub fn has_facets(&self) -> bool {
        self.facets.get().is_some()
    }

    /// Forces both representations.
    pub fn with_both(self) -> Result<Self> {
        self.vertices()?;
        self.facets()?;
        Ok(self)
    }

    /// `{f : |f·x| ≤ 1 on the body}`; vertices and facets trade places.
    pub fn polar_dual(&self) -> SymPolytope {
        SymPolytope {
            dim: self.dim,
            vertices: self.facets.clone(),
            facets: self.vertices.clone(),
        }
    }

    /// The norm whose unit ball is this body: `max |f·x|` over facets.
    pub fn gauge_norm(&self, x: &RVector) -> Result<Rational> {
        if x.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in a {}-dimensional body",
                x.dim(),
                self.dim
            )));
        }
        Ok(self
            .facets()?
            .iter()
            .map(|f| f.dot(x).abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    /// Support function `max |f·v|` over vertices: the dual norm of `f`.
    pub fn dual_norm(&self, f: &RVector) -> Result<Rational> {
        if f.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "functional of length {} on a {}-dimensional body",
                f.dim(),
                self.dim
            )));
        }
        Ok(self
            .vertices()?
            .iter()
            .map(|v| f.dot(v).abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    pub fn contains(&self, x: &RVector) -> Result<bool> {
        Ok(self.gauge_norm(x)? <= Rational::one())
    }

    /// Same point set.
    pub fn same_set(&self, other: &SymPolytope) -> Result<bool> {
        Ok(self.dim == other.dim && self.vertices()? == other.vertices()?)
    }

    /// Image under the invertible linear map `t`.
    pub fn map_linear(&self, t: &RMatrix) -> Result<SymPolytope> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::Dimension(
                "map must be square of the body's dimension".into(),
            ));
        }
        let t_inv = t.inverse()?;
        let vertices = match self.vertices.get() {
            Some(vs) => Some(sorted_canonical(
                vs.iter().map(|v| t.mul_vec(v)).collect::<Result<_>>()?,
            )),
            None => None,
        };
        // f·x = 1 on the body becomes (f·t⁻¹)·y = 1 on its image.
        let facets = match self.facets.get() {
            Some(fs) => Some(sorted_canonical(
                fs.iter().map(|f| t_inv.vec_mul(f)).collect::<Result<_>>()?,
            )),
            None => None,
        };
        Ok(SymPolytope::from_parts(self.dim, vertices, facets))
    }
}

impl fmt::Debug for SymPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymPolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices.get())
            .field("facets", &self.facets.get())
            .finish()
    }
}

pub(crate) fn sorted_canonical(vs: Vec<RVector>) -> Vec<RVector> {
    let set: BTreeSet<RVector> = vs.into_iter().map(|v| v.sign_canonical()).collect();
    set.into_iter().collect()
}

fn canonical_set(dim: usize, points: &[RVector]) -> Result<Vec<RVector>> {
    if dim == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::Dimension(format!(
            "point of length {} in dimension {dim}",
            p.dim()
        )));
    }
    Ok(sorted_canonical(
        points.iter().filter(|p| !p.is_zero()).cloned().collect(),
    ))
}

fn rank_of(vs: &[RVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    RMatrix::from_rows(vs).map_or(0, |m| m.rank())
}

/// Whether `v` lies in the symmetric convex hull of `others`, decided by
/// asking for a functional bounded by one on `±others` that exceeds one at
/// `v`.
pub fn in_symmetric_hull(v: &RVector, others: &[RVector]) -> Result<bool> {
    let mut sys = LinearSystem::new(v.dim());
    for w in others {
        sys.abs_le(w.clone(), Rational::one())?;
    }
    sys.lt(v.neg(), -Rational::one())?;
    Ok(!matches!(fm_feasible(&sys)?, Feasibility::Feasible(_)))
}

/// Keeps the points that are extreme in the symmetric hull of the list.
pub(crate) fn extreme_points(mut pts: Vec<RVector>) -> Result<Vec<RVector>> {
    let mut i = 0;
    while i < pts.len() {
        let others: Vec<RVector> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if in_symmetric_hull(&pts[i], &others)? {
            pts.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(pts)
}

/// All `f` with `|f·p| ≤ 1` on `points` and equality on `dim` linearly
/// independent points of `±points`: the facets of the symmetric hull, or by
/// polarity the vertices of `{x : |p·x| ≤ 1}`.
fn supporting_functionals(dim: usize, points: &[RVector]) -> Result<Vec<RVector>> {
    if dim > MAX_DIM {
        return Err(Error::Capacity {
            what: "dimension for representation conversion",
            count: dim as u128,
            cap: MAX_DIM as u128,
        });
    }
    if points.len() > MAX_PAIRS {
        return Err(Error::Capacity {
            what: "point pairs for representation conversion",
            count: points.len() as u128,
            cap: MAX_PAIRS as u128,
        });
    }
    let sign_patterns: Vec<RVector> = (0..1usize << (dim - 1))
        .map(|mask| {
            (0..dim)
                .map(|i| {
                    if i > 0 && mask & (1 << (i - 1)) != 0 {
                        -Rational::one()
                    } else {
                        Rational::one()
                    }
                })
                .collect()
        })
        .collect();

    let mut found = BTreeSet::new();
    for subset in (0..points.len()).combinations(dim) {
        let rows: Vec<RVector> = subset.iter().map(|&i| points[i].clone()).collect();
        let Ok(inv) = RMatrix::from_rows(&rows)?.inverse() else {
            continue;
        };
        for signs in &sign_patterns {
            // rows · f = signs
            let f = inv.mul_vec(signs)?;
            if points.iter().all(|p| f.dot(p).abs() <= Rational::one()) {
                found.insert(f.sign_canonical());
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Parallelepiped `M({x_i}) = Σ [-x_i, x_i]` for independent `xs`. Its facet
/// functionals are the biorthogonal functionals of `xs`.
pub fn minkowski_box(xs: &[RVector]) -> Result<SymPolytope> {
    let n = xs.len();
    if n == 0 || xs.iter().any(|x| x.dim() != n) {
        return Err(Error::Dimension(
            "a Minkowski box needs n vectors in n dimensions".into(),
        ));
    }
    let k = RMatrix::from_cols(xs)?;
    let biorth = k
        .inverse()
        .map_err(|_| Error::Degenerate("box edges are linearly dependent".into()))?;
    let facets = sorted_canonical(biorth.row_vectors());
    let vertices = sorted_canonical(
        (0..1usize << (n - 1))
            .map(|mask| {
                xs.iter()
                    .enumerate()
                    .fold(RVector::zeros(n), |acc, (i, x)| {
                        if i > 0 && mask & (1 << (i - 1)) != 0 {
                            acc.sub(x)
                        } else {
                            acc.add(x)
                        }
                    })
            })
            .collect(),
    );
    Ok(SymPolytope::from_parts(n, Some(vertices), Some(facets)))
}

/// `vol M({x_i}) = 2ⁿ·|det|`.
pub fn parallelepiped_volume(xs: &[RVector]) -> Result<Rational> {
    let k = RMatrix::from_cols(xs)?;
    Ok(Rational::pow2(xs.len()) * k.abs_det()?)
}
