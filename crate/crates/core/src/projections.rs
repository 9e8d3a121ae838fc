//! Projections in polyhedral spaces and an exact decision of whether a
//! subspace is the range of a projection of norm one.
//!
//! Fix a complement `U` of `H`. A projection onto `H` is determined by the
//! images `P(u_j) ∈ H`, and `P(v)` is affine in those images. The bound
//! `‖P‖ ≤ 1` is `|f(P v)| ≤ 1` for every vertex `v` and facet functional
//! `f`, a finite linear system in the coordinates of the images.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{fm_feasible_with, Certificate, Feasibility, FmConfig, LinearSystem};
use crate::exactlin::{RMatrix, RVector, Rational};
use crate::mvse::hexagon_regular_equiv;
use crate::polytope::{section2, SymPolytope};
use crate::spaces::PolyhedralSpace;

/// A projection `P` with range `span(subspace_basis)`, given by the images
/// of a complement basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionSpec {
    pub subspace_basis: Vec<RVector>,
    pub complement_basis: Vec<RVector>,
    /// `images[j] = P(complement_basis[j])`, each in the subspace.
    pub images: Vec<RVector>,
}

impl ProjectionSpec {
    pub fn new(
        subspace_basis: Vec<RVector>,
        complement_basis: Vec<RVector>,
        images: Vec<RVector>,
    ) -> Result<Self> {
        let spec = ProjectionSpec {
            subspace_basis,
            complement_basis,
            images,
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.subspace_basis.len() + self.complement_basis.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.dim();
        let all: Vec<&RVector> = self
            .subspace_basis
            .iter()
            .chain(&self.complement_basis)
            .chain(&self.images)
            .collect();
        if all.iter().any(|v| v.dim() != n) {
            return Err(Error::Dimension("projection data of mixed lengths".into()));
        }
        if self.images.len() != self.complement_basis.len() {
            return Err(Error::Invalid(
                "one image per complement vector required".into(),
            ));
        }
        if self.subspace_basis.is_empty() {
            return Err(Error::Invalid("subspace must be nonzero".into()));
        }
        if RMatrix::from_cols(&self.joint_basis())?.rank() != n {
            return Err(Error::Invalid(
                "subspace and complement bases do not form a basis".into(),
            ));
        }
        let k = self.subspace_basis.len();
        for img in &self.images {
            let mut cols = self.subspace_basis.clone();
            cols.push(img.clone());
            if RMatrix::from_cols(&cols)?.rank() != k {
                return Err(Error::Invalid("an image lies outside the subspace".into()));
            }
        }
        Ok(())
    }

    fn joint_basis(&self) -> Vec<RVector> {
        self.subspace_basis
            .iter()
            .chain(&self.complement_basis)
            .cloned()
            .collect()
    }

    /// `P` as a matrix: `[H | images] · [H | U]⁻¹`.
    pub fn matrix(&self) -> Result<RMatrix> {
        let mut targets = self.subspace_basis.clone();
        targets.extend(self.images.iter().cloned());
        RMatrix::from_cols(&targets)?.mul(&RMatrix::from_cols(&self.joint_basis())?.inverse()?)
    }

    pub fn apply(&self, x: &RVector) -> Result<RVector> {
        self.matrix()?.mul_vec(x)
    }
}

/// `‖P‖ = max ‖P v‖` over vertices `v` of the ball.
pub fn operator_norm(ball: &SymPolytope, p: &ProjectionSpec) -> Result<Rational> {
    if p.dim() != ball.dim() {
        return Err(Error::Dimension(
            "projection and ball dimensions differ".into(),
        ));
    }
    let m = p.matrix()?;
    let mut best = Rational::zero();
    for v in ball.vertices()? {
        let nv = ball.gauge_norm(&m.mul_vec(v)?)?;
        if nv > best {
            best = nv;
        }
    }
    Ok(best)
}

/// Extends `basis` to a basis of the whole space with standard vectors,
/// lowest index first, and returns the added vectors.
pub fn complement_by_extension(basis: &[RVector], n: usize) -> Result<Vec<RVector>> {
    let mut cols = basis.to_vec();
    if !cols.is_empty() && RMatrix::from_cols(&cols)?.rank() != cols.len() {
        return Err(Error::Degenerate("subspace vectors are dependent".into()));
    }
    let mut added = Vec::new();
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let e = RVector::unit(n, i);
        cols.push(e.clone());
        if RMatrix::from_cols(&cols)?.rank() == cols.len() {
            added.push(e);
        } else {
            cols.pop();
        }
    }
    Ok(added)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Complementedness {
    NormOneExists,
    NotOneComplemented,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementednessReport {
    pub answer: Complementedness,
    pub witness: Option<ProjectionSpec>,
    /// Norm of the witness, recomputed vertex by vertex.
    pub witness_norm: Option<Rational>,
    /// Farkas combination of the constraint rows proving infeasibility.
    pub certificate: Option<Certificate>,
    /// Size of the system handed to the solver.
    pub unknowns: usize,
    pub constraints: usize,
}

/// The system `|f(P v)| ≤ 1` over all vertices and facets. Unknown
/// `j·k + i` is the coefficient of `h_i` in `P(u_j)`.
pub fn norm_one_system(
    ball: &SymPolytope,
    subspace: &[RVector],
    complement: &[RVector],
) -> Result<LinearSystem> {
    let k = subspace.len();
    let c = complement.len();
    let joint: Vec<RVector> = subspace.iter().chain(complement).cloned().collect();
    let to_coords = RMatrix::from_cols(&joint)?.inverse()?;
    let facets = ball.facets()?;
    let mut sys = LinearSystem::new(k * c);
    for v in ball.vertices()? {
        let coords = to_coords.mul_vec(v)?;
        for f in facets {
            let fh: Vec<Rational> = subspace.iter().map(|h| f.dot(h)).collect();
            let constant: Rational = (0..k).map(|i| &coords[i] * &fh[i]).sum();
            let mut coeffs = RVector::zeros(k * c);
            for j in 0..c {
                for i in 0..k {
                    coeffs[j * k + i] = &coords[k + j] * &fh[i];
                }
            }
            sys.le(coeffs.clone(), Rational::one() - &constant)?;
            sys.le(coeffs.neg(), Rational::one() + &constant)?;
        }
    }
    Ok(sys)
}

pub fn exists_norm_one_projection(
    ball: &SymPolytope,
    subspace_basis: &[RVector],
) -> Result<ComplementednessReport> {
    exists_norm_one_projection_with(ball, subspace_basis, FmConfig::default())
}

pub fn exists_norm_one_projection_with(
    ball: &SymPolytope,
    subspace_basis: &[RVector],
    config: FmConfig,
) -> Result<ComplementednessReport> {
    let n = ball.dim();
    if subspace_basis.is_empty() || subspace_basis.iter().any(|h| h.dim() != n) {
        return Err(Error::Dimension(format!(
            "subspace needs nonempty basis of vectors of length {n}"
        )));
    }
    let complement = complement_by_extension(subspace_basis, n)?;
    let k = subspace_basis.len();
    let unknowns = k * complement.len();
    if unknowns > config.max_vars {
        return Err(Error::Capacity {
            what: "unknowns in the norm-one projection system",
            count: unknowns as u128,
            cap: config.max_vars as u128,
        });
    }
    let sys = norm_one_system(ball, subspace_basis, &complement)?;
    let constraints = sys.constraints().len();
    match fm_feasible_with(&sys, config)? {
        Feasibility::Feasible(z) => {
            let images = (0..complement.len())
                .map(|j| {
                    subspace_basis
                        .iter()
                        .enumerate()
                        .fold(RVector::zeros(n), |acc, (i, h)| {
                            acc.add(&h.scale(&z[j * k + i]))
                        })
                })
                .collect();
            let spec = ProjectionSpec::new(subspace_basis.to_vec(), complement, images)?;
            let norm = operator_norm(ball, &spec)?;
            if !norm.is_one() {
                return Err(Error::Construction(format!(
                    "solver witness has operator norm {norm}"
                )));
            }
            Ok(ComplementednessReport {
                answer: Complementedness::NormOneExists,
                witness: Some(spec),
                witness_norm: Some(norm),
                certificate: None,
                unknowns,
                constraints,
            })
        }
        Feasibility::Infeasible(cert) => {
            if !cert.verify(&sys) {
                return Err(Error::Construction(
                    "infeasibility certificate does not check".into(),
                ));
            }
            Ok(ComplementednessReport {
                answer: Complementedness::NotOneComplemented,
                witness: None,
                witness_norm: None,
                certificate: Some(cert),
                unknowns,
                constraints,
            })
        }
    }
}

/// Two support-2 vectors of `X ⊂ ℓ∞^m` with overlapping supports whose span
/// cuts a regular-equivalent hexagon out of the ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HexagonalCandidate {
    pub ambient: [RVector; 2],
    /// The same vectors in the coordinates of the space.
    pub coords: [RVector; 2],
}

/// Vectors of `X` supported on exactly two ambient coordinates, one per
/// coordinate pair that admits one, scaled so the entries are `±1` when
/// possible (first entry positive).
pub fn support_two_vectors(space: &PolyhedralSpace) -> Result<Vec<(RVector, RVector)>> {
    let emb = space
        .embedding
        .as_ref()
        .ok_or_else(|| Error::Invalid("space has no ℓ∞ embedding".into()))?;
    let m = emb.ambient_m();
    let n = emb.dim();
    let mut out = Vec::new();
    for (i, j) in (0..m).tuple_combinations() {
        let rest: Vec<usize> = (0..m).filter(|&r| r != i && r != j).collect();
        let sub = if rest.is_empty() {
            RMatrix::zeros(1, n)
        } else {
            emb.matrix.submatrix(&rest, &(0..n).collect::<Vec<_>>())
        };
        let ker = sub.kernel();
        if ker.len() != 1 {
            continue;
        }
        let x = emb.to_ambient(&ker[0])?;
        if x[i].is_zero() || x[j].is_zero() {
            continue;
        }
        let s = x[i].recip();
        out.push((x.scale(&s), ker[0].scale(&s)));
    }
    Ok(out)
}

/// All unordered pairs of support-2 vectors with intersecting supports whose
/// plane section passes the hexagon test.
pub fn hexagonal_subspace_candidates(space: &PolyhedralSpace) -> Result<Vec<HexagonalCandidate>> {
    let vecs = support_two_vectors(space)?;
    let support =
        |x: &RVector| -> Vec<usize> { (0..x.dim()).filter(|&i| !x[i].is_zero()).collect() };
    let mut out = Vec::new();
    for (a, b) in vecs.iter().tuple_combinations() {
        let (sa, sb) = (support(&a.0), support(&b.0));
        if !sa.iter().any(|i| sb.contains(i)) {
            continue;
        }
        let s = section2(&space.ball, &a.1, &b.1)?;
        if hexagon_regular_equiv(&s).is_some() {
            out.push(HexagonalCandidate {
                ambient: [a.0.clone(), b.0.clone()],
                coords: [a.1.clone(), b.1.clone()],
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, qi};
    use crate::spaces::{l1, l1_sum, linf, rational_hexagon, sum_zero};

    fn v(xs: &[i64]) -> RVector {
        RVector::from_ints(xs)
    }

    #[test]
    fn identity_projection() {
        for s in [linf(3).unwrap(), l1(2).unwrap(), sum_zero()] {
            let n = s.dim();
            let basis: Vec<RVector> = (0..n).map(|i| RVector::unit(n, i)).collect();
            let p = ProjectionSpec::new(basis.clone(), vec![], vec![]).unwrap();
            assert_eq!(operator_norm(&s.ball, &p).unwrap(), qi(1));
            let r = exists_norm_one_projection(&s.ball, &basis).unwrap();
            assert_eq!(r.answer, Complementedness::NormOneExists);
            assert_eq!(r.witness.unwrap().matrix().unwrap(), RMatrix::identity(n));
        }
    }

    #[test]
    fn forced_zero_images_give_norm_two() {
        // H spanned by (1,-1,0,0), (0,1,-1,0); kernel (0,0,1,-1).
        let s = sum_zero();
        let e = s.embedding.as_ref().unwrap();
        let h1 = e.to_basis_coords(&v(&[1, -1, 0, 0])).unwrap().unwrap();
        let h2 = e.to_basis_coords(&v(&[0, 1, -1, 0])).unwrap().unwrap();
        let u = e.to_basis_coords(&v(&[0, 0, 1, -1])).unwrap().unwrap();
        let p = ProjectionSpec::new(vec![h1, h2], vec![u], vec![v(&[0, 0, 0])]).unwrap();
        let x = e.to_basis_coords(&v(&[1, 1, -1, -1])).unwrap().unwrap();
        let px = p.apply(&x).unwrap();
        assert_eq!(e.to_ambient(&px).unwrap(), v(&[1, 1, -2, 0]));
        assert_eq!(s.norm(&px).unwrap(), qi(2));
        assert!(operator_norm(&s.ball, &p).unwrap() >= qi(2));
    }

    #[test]
    fn sum_zero_plane_not_one_complemented() {
        let s = sum_zero();
        let e = s.embedding.as_ref().unwrap();
        let h1 = e.to_basis_coords(&v(&[1, -1, 0, 0])).unwrap().unwrap();
        let h2 = e.to_basis_coords(&v(&[0, 1, -1, 0])).unwrap().unwrap();
        let r = exists_norm_one_projection(&s.ball, &[h1.clone(), h2.clone()]).unwrap();
        assert_eq!(r.answer, Complementedness::NotOneComplemented);
        assert_eq!(r.unknowns, 2);

        // Oracle: grid of images over [-4, 4]² with step 1/8.
        let comp = complement_by_extension(&[h1.clone(), h2.clone()], 3).unwrap();
        for a in -32..=32 {
            for b in -32..=32 {
                let img = h1.scale(&q(a, 8)).add(&h2.scale(&q(b, 8)));
                let p = ProjectionSpec::new(vec![h1.clone(), h2.clone()], comp.clone(), vec![img])
                    .unwrap();
                assert!(operator_norm(&s.ball, &p).unwrap() > qi(1));
            }
        }
    }

    #[test]
    fn hexagon_block_is_complemented() {
        let s = l1_sum(&rational_hexagon(), &l1(1).unwrap()).unwrap();
        let block = [v(&[1, 0, 0]), v(&[0, 1, 0])];
        let r = exists_norm_one_projection(&s.ball, &block).unwrap();
        assert_eq!(r.answer, Complementedness::NormOneExists);
        assert_eq!(r.witness_norm, Some(qi(1)));
        let coord =
            ProjectionSpec::new(block.to_vec(), vec![v(&[0, 0, 1])], vec![v(&[0, 0, 0])]).unwrap();
        assert_eq!(operator_norm(&s.ball, &coord).unwrap(), qi(1));
    }

    #[test]
    fn norm_independent_of_complement_scaling() {
        let s = sum_zero();
        let h = [v(&[1, 0, 0]), v(&[0, 1, 0])];
        let u = v(&[0, 0, 1]);
        let img = v(&[1, -1, 0]);
        let base = ProjectionSpec::new(h.to_vec(), vec![u.clone()], vec![img.clone()]).unwrap();
        for c in [q(3, 2), q(-2, 5), qi(7)] {
            let scaled =
                ProjectionSpec::new(h.to_vec(), vec![u.scale(&c)], vec![img.scale(&c)]).unwrap();
            assert_eq!(scaled.matrix().unwrap(), base.matrix().unwrap());
            assert_eq!(
                operator_norm(&s.ball, &scaled).unwrap(),
                operator_norm(&s.ball, &base).unwrap()
            );
        }
    }

    #[test]
    fn invalid_specs() {
        let h = vec![v(&[1, 0])];
        assert!(ProjectionSpec::new(h.clone(), vec![v(&[2, 0])], vec![v(&[0, 0])]).is_err());
        assert!(ProjectionSpec::new(h.clone(), vec![v(&[0, 1])], vec![v(&[0, 1])]).is_err());
        assert!(ProjectionSpec::new(h, vec![v(&[0, 1])], vec![]).is_err());
    }

    #[test]
    fn sum_zero_candidates() {
        let s = sum_zero();
        let vecs = support_two_vectors(&s).unwrap();
        assert_eq!(vecs.len(), 6);
        let c = hexagonal_subspace_candidates(&s).unwrap();
        assert_eq!(c.len(), 12);
        assert!(c
            .iter()
            .any(|h| h.ambient == [v(&[1, -1, 0, 0]), v(&[0, 1, -1, 0])]));
        // Disjoint supports give a parallelogram.
        let e = s.embedding.as_ref().unwrap();
        let a = e.to_basis_coords(&v(&[1, -1, 0, 0])).unwrap().unwrap();
        let b = e.to_basis_coords(&v(&[0, 0, 1, -1])).unwrap().unwrap();
        assert_eq!(section2(&s.ball, &a, &b).unwrap().len(), 4);
        for h in &c {
            let r = exists_norm_one_projection(&s.ball, &h.coords).unwrap();
            assert_eq!(r.answer, Complementedness::NotOneComplemented);
        }
    }

    #[test]
    fn capacity() {
        let s = linf(6).unwrap();
        let h: Vec<RVector> = (0..3).map(|i| RVector::unit(6, i)).collect();
        assert!(matches!(
            exists_norm_one_projection(&s.ball, &h),
            Err(Error::Capacity { count: 9, .. })
        ));
    }
}
