//! Exact planar geometry for two-dimensional central sections.

use std::cmp::Ordering;

use serde::Serialize;

use super::SymPolytope;
use crate::error::{Error, Result};
use crate::exactlin::{independent, RMatrix, RVector, Rational};

pub fn cross2(a: &RVector, b: &RVector) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn upper_half(a: &RVector) -> bool {
    a[1].is_positive() || (a[1].is_zero() && a[0].is_positive())
}

/// Counter-clockwise angular order starting at the positive x axis, decided
/// by half-plane then cross product. Parallel vectors compare equal.
pub fn angle_cmp(a: &RVector, b: &RVector) -> Ordering {
    match (upper_half(a), upper_half(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let c = cross2(a, b);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// Strictly convex hull (collinear points dropped), counter-clockwise.
fn convex_hull(points: &[RVector]) -> Vec<RVector> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &RVector, a: &RVector, b: &RVector| cross2(&a.sub(o), &b.sub(o));
    let mut hull: Vec<RVector> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &RVector>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && !turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive()
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

/// Convex hull of `±points`, counter-clockwise from the positive x axis.
fn symmetric_hull(points: &[RVector]) -> Vec<RVector> {
    let all: Vec<RVector> = points.iter().flat_map(|p| [p.clone(), p.neg()]).collect();
    let mut hull = convex_hull(&all);
    hull.sort_by(angle_cmp);
    hull
}

/// A centrally symmetric convex polygon in the coordinates of a plane
/// `span{x1, x2}`: the point `(a, b)` stands for `a·x1 + b·x2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionPolygon {
    pub x1: RVector,
    pub x2: RVector,
    /// All vertices, counter-clockwise, starting at the first one met from
    /// the positive x axis; the second half is the negation of the first.
    pub vertices: Vec<RVector>,
}

impl SectionPolygon {
    /// The polygon `{α : |g·α| ≤ 1 for every g}` with the plane's basis
    /// attached. The functionals must span the plane.
    pub fn from_functionals(x1: RVector, x2: RVector, functionals: &[RVector]) -> Result<Self> {
        let gs: Vec<RVector> = functionals
            .iter()
            .filter(|g| !g.is_zero())
            .cloned()
            .collect();
        if !spans_plane(&gs) {
            return Err(Error::Unbounded);
        }
        // Vertices of the polygon are the polars of edges of the hull of ±g.
        let hull = symmetric_hull(&gs);
        let k = hull.len();
        let mut vertices = Vec::with_capacity(k);
        for i in 0..k {
            let a = &hull[i];
            let b = &hull[(i + 1) % k];
            let m = RMatrix::from_rows(&[a.clone(), b.clone()])?;
            vertices.push(m.solve(&RVector::new(vec![Rational::one(), Rational::one()]))?);
        }
        vertices.sort_by(angle_cmp);
        Ok(SectionPolygon { x1, x2, vertices })
    }

    /// Convex hull of `±points` in the standard plane.
    pub fn from_points(points: &[RVector]) -> Result<Self> {
        if points.iter().any(|p| p.dim() != 2) {
            return Err(Error::Dimension("planar points expected".into()));
        }
        if !spans_plane(points) {
            return Err(Error::Degenerate("points do not span the plane".into()));
        }
        Ok(SectionPolygon {
            x1: RVector::unit(2, 0),
            x2: RVector::unit(2, 1),
            vertices: symmetric_hull(points),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The first half of the vertex cycle: one vertex of each `±` pair.
    pub fn half(&self) -> &[RVector] {
        &self.vertices[..self.vertices.len() / 2]
    }

    /// Ambient point for plane coordinates `alpha`.
    pub fn lift(&self, alpha: &RVector) -> RVector {
        self.x1.scale(&alpha[0]).add(&self.x2.scale(&alpha[1]))
    }

    /// Symmetric, even, strictly convex in cyclic order.
    pub fn is_well_formed(&self) -> bool {
        let k = self.vertices.len();
        if k < 4 || !k.is_multiple_of(2) {
            return false;
        }
        let symmetric = (0..k / 2).all(|i| self.vertices[i + k / 2] == self.vertices[i].neg());
        let convex = (0..k).all(|i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % k];
            let c = &self.vertices[(i + 2) % k];
            cross2(&b.sub(a), &c.sub(b)).is_positive()
        });
        symmetric && convex
    }
}

fn spans_plane(vs: &[RVector]) -> bool {
    !vs.is_empty() && RMatrix::from_rows(vs).is_ok_and(|m| m.rank() == 2)
}

/// Central section of `p` by the plane `span{x1, x2}`, in plane
/// coordinates.
pub fn section2(p: &SymPolytope, x1: &RVector, x2: &RVector) -> Result<SectionPolygon> {
    if x1.dim() != p.dim() || x2.dim() != p.dim() {
        return Err(Error::Dimension(
            "plane vectors must live in the body's space".into(),
        ));
    }
    if !independent(&[x1.clone(), x2.clone()]) {
        return Err(Error::Degenerate(
            "section plane vectors are dependent".into(),
        ));
    }
    let gs: Vec<RVector> = p
        .facets()?
        .iter()
        .map(|f| RVector::new(vec![f.dot(x1), f.dot(x2)]))
        .collect();
    SectionPolygon::from_functionals(x1.clone(), x2.clone(), &gs)
}
