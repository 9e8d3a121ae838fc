//! Deciding whether a polyhedral space has a minimal-volume sufficient
//! enlargement that is not a parallelepiped, and building one when it does.
//!
//! The answer is yes exactly when some lower Auerbach basis has two vectors
//! spanning a plane whose section of the ball is a hexagon linearly
//! equivalent to the regular one. The witness is turned into a zonotope:
//! the image of the `ℓ∞^m` cube under a projection onto `X`, where `X` sits
//! in `ℓ∞^m` through its Auerbach functionals and the extreme points of the
//! dual ball.

use rayon::prelude::*;
use serde::Serialize;

use crate::auerbach::{
    is_auerbach, lower_auerbach_bases_with, min_parallelepiped_with, AuerbachConfig, Basis,
};
use crate::error::{Error, Result};
use crate::exactlin::{is_totally_unimodular, RMatrix, RVector, Rational};
use crate::polytope::{cross2, section2, SectionPolygon, SymPolytope, Zonotope};
use crate::spaces::PolyhedralSpace;

/// Label attached to every report: bases were searched among vertex tuples.
pub const SEARCH_MODE: &str = "vertex-supported";

/// For a hexagon `±p1, ±p2, ±p3` listed in cyclic order, the triple when
/// the three parallelograms spanned by pairs have equal area.
pub fn hexagon_regular_equiv(s: &SectionPolygon) -> Option<[RVector; 3]> {
    if s.len() != 6 || !s.is_well_formed() {
        return None;
    }
    let (p1, p2, p3) = (&s.vertices[0], &s.vertices[1], &s.vertices[2]);
    let a = cross2(p1, p2).abs();
    let b = cross2(p2, p3).abs();
    let c = cross2(p1, p3).abs();
    (!a.is_zero() && a == b && b == c).then(|| [p1.clone(), p2.clone(), p3.clone()])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HexagonWitness {
    pub basis: Basis,
    /// Columns of `basis` spanning the hexagonal plane.
    pub basis_pair: (usize, usize),
    /// Section vertices in the coordinates of the pair.
    pub p1: RVector,
    pub p2: RVector,
    pub p3: RVector,
    pub section: SectionPolygon,
}

impl HexagonWitness {
    /// Recomputes the section and the hexagon test.
    pub fn recheck(&self, ball: &SymPolytope) -> Result<bool> {
        let (i, j) = self.basis_pair;
        let n = self.basis.dim();
        if i >= n || j >= n || i == j {
            return Ok(false);
        }
        let s = section2(ball, &self.basis.column(i), &self.basis.column(j))?;
        Ok(hexagon_regular_equiv(&s)
            .is_some_and(|t| t == [self.p1.clone(), self.p2.clone(), self.p3.clone()]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    ParallelepipedOnly,
    NonParallelepipedal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub space: String,
    pub answer: Answer,
    pub witness: Option<HexagonWitness>,
    /// Lower Auerbach bases inspected up to and including the witness.
    pub lower_families_examined: usize,
    pub lower_bases_total: usize,
    pub min_parallelepiped_volume: Rational,
    pub ties_flag: bool,
    pub search: &'static str,
}

pub fn decide(space: &PolyhedralSpace) -> Result<DecisionReport> {
    decide_with(space, AuerbachConfig::default())
}

/// Tests every pair of every lower Auerbach basis. Candidates are ranked
/// (basis order, then pair order) and the first success in that ranking
/// wins, whatever order the threads finish in.
pub fn decide_with(space: &PolyhedralSpace, config: AuerbachConfig) -> Result<DecisionReport> {
    let ball = &space.ball;
    let n = ball.dim();
    let family = lower_auerbach_bases_with(ball, config)?;
    ball.facets()?;
    let candidates: Vec<(usize, usize, usize)> = family
        .bases
        .iter()
        .enumerate()
        .flat_map(|(b, _)| (0..n).flat_map(move |i| (i + 1..n).map(move |j| (b, i, j))))
        .collect();
    let found = candidates
        .par_iter()
        .map(|&(b, i, j)| -> Result<Option<HexagonWitness>> {
            let basis = &family.bases[b];
            let s = section2(ball, &basis.column(i), &basis.column(j))?;
            Ok(
                hexagon_regular_equiv(&s).map(|[p1, p2, p3]| HexagonWitness {
                    basis: basis.clone(),
                    basis_pair: (i, j),
                    p1,
                    p2,
                    p3,
                    section: s,
                }),
            )
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();

    let examined = match &found {
        Some(w) => family
            .bases
            .iter()
            .position(|b| *b == w.basis)
            .map_or(0, |p| p + 1),
        None => family.bases.len(),
    };
    Ok(DecisionReport {
        space: space.name.clone(),
        answer: if found.is_some() {
            Answer::NonParallelepipedal
        } else {
            Answer::ParallelepipedOnly
        },
        witness: found,
        lower_families_examined: examined,
        lower_bases_total: family.bases.len(),
        min_parallelepiped_volume: Rational::pow2(n) * &family.extremal_value,
        ties_flag: family.ties_flag,
        search: SEARCH_MODE,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CandidateChecks {
    pub contains_ball: bool,
    pub volume_matches: bool,
    pub tu_certified: bool,
    pub not_parallelepiped: bool,
}

impl CandidateChecks {
    pub fn all(&self) -> bool {
        self.contains_ball && self.volume_matches && self.tu_certified && self.not_parallelepiped
    }

    pub fn failed(&self) -> Vec<&'static str> {
        [
            ("contains_ball", self.contains_ball),
            ("volume_matches", self.volume_matches),
            ("tu_certified", self.tu_certified),
            ("not_parallelepiped", self.not_parallelepiped),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvseCandidate {
    pub space: String,
    /// In the coordinates of the space.
    pub zonotope: Zonotope,
    /// Generators as columns.
    pub generator_matrix: RMatrix,
    /// The normalized Auerbach basis the construction ran on.
    pub basis: Basis,
    /// Rows: the functionals embedding `X` into `ℓ∞^m`, on `basis`.
    pub embedding_rows: RMatrix,
    /// Index of the embedding row with `(±1, ±1)` in its first two entries.
    pub pivot_row: usize,
    pub volume: Rational,
    pub checks: CandidateChecks,
}

/// Puts the pair first, then looks for two adjacent hexagon vertices that
/// can replace the pair without changing `|det|` and keep the basis
/// Auerbach.
fn normalize_pair(ball: &SymPolytope, w: &HexagonWitness) -> Result<Basis> {
    let (i, j) = w.basis_pair;
    let n = w.basis.dim();
    let mut order = vec![i, j];
    order.extend((0..n).filter(|&k| k != i && k != j));
    let base = w.basis.permuted(&order)?;
    let (x1, x2) = (base.column(0), base.column(1));
    let rest: Vec<RVector> = (2..n).map(|k| base.column(k)).collect();
    let verts = &w.section.vertices;
    for u in verts {
        for v in verts {
            if cross2(u, v).abs() != Rational::one() {
                continue;
            }
            let y1 = x1.scale(&u[0]).add(&x2.scale(&u[1]));
            let y2 = x1.scale(&v[0]).add(&x2.scale(&v[1]));
            let mut cols = vec![y1, y2];
            cols.extend(rest.iter().cloned());
            let cand = Basis::from_columns(&cols)?;
            if is_auerbach(ball, &cand)? {
                return Ok(cand);
            }
        }
    }
    Err(Error::Construction(
        "no pair of hexagon vertices gives an Auerbach basis of the same volume".into(),
    ))
}

/// Rows: the basis functionals (an identity block), then every extreme
/// point of the dual ball evaluated on the basis, skipping repeats up to
/// sign.
fn embedding_rows(ball: &SymPolytope, basis: &Basis) -> Result<RMatrix> {
    let n = basis.dim();
    let mut rows: Vec<RVector> = (0..n).map(|i| RVector::unit(n, i)).collect();
    for f in ball.facets()? {
        let r = basis.vectors.vec_mul(f)?;
        if !rows.iter().any(|q| *q == r || *q == r.neg()) {
            rows.push(r);
        }
    }
    RMatrix::from_rows(&rows)
}

pub fn construct_nonparallelepipedal(
    space: &PolyhedralSpace,
    witness: &HexagonWitness,
) -> Result<MvseCandidate> {
    construct_nonparallelepipedal_with(space, witness, AuerbachConfig::default())
}

pub fn construct_nonparallelepipedal_with(
    space: &PolyhedralSpace,
    witness: &HexagonWitness,
    config: AuerbachConfig,
) -> Result<MvseCandidate> {
    let ball = &space.ball;
    let n = ball.dim();
    if witness.basis.dim() != n {
        return Err(Error::Invalid(
            "witness basis has the wrong dimension".into(),
        ));
    }
    let (_, min_vol) = min_parallelepiped_with(ball, config)?;
    let witness_vol = Rational::pow2(n) * witness.basis.abs_det();
    if !is_auerbach(ball, &witness.basis)? || witness_vol != min_vol || !witness.recheck(ball)? {
        return Err(Error::Invalid(
            "witness is not a hexagonal pair of a lower Auerbach basis of this space".into(),
        ));
    }

    let basis = normalize_pair(ball, witness)?;
    let b = embedding_rows(ball, &basis)?;
    let pivot = (n..b.rows())
        .find(|&k| b.get(k, 0).abs().is_one() && b.get(k, 1).abs().is_one())
        .ok_or_else(|| Error::Construction("no embedding row with (±1, ±1) on the pair".into()))?;

    // D keeps the identity block and the pivot row's first two entries.
    let m = b.rows();
    let mut d = RMatrix::zeros(m, n);
    for i in 0..n {
        d.set(i, i, Rational::one());
    }
    d.set(pivot, 0, b.get(pivot, 0).clone());
    d.set(pivot, 1, b.get(pivot, 1).clone());

    // Projection onto the column span of B along the orthogonal complement
    // of the column span of D, in basis coordinates: (Dᵀ B)⁻¹ Dᵀ.
    let dt = d.transpose();
    let p = dt.mul(&b)?.inverse()?.mul(&dt)?;
    let generators: Vec<RVector> = p
        .col_vectors()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| basis.vectors.mul_vec(g))
        .collect::<Result<_>>()?;
    let zonotope = Zonotope::new(n, generators)?;
    let checks = validate_mvse_candidate(ball, &zonotope, &min_vol)?;
    if !checks.all() {
        return Err(Error::Construction(format!(
            "constructed zonotope fails: {}",
            checks.failed().join(", ")
        )));
    }
    Ok(MvseCandidate {
        space: space.name.clone(),
        generator_matrix: zonotope.generator_matrix(),
        volume: zonotope.volume(),
        zonotope,
        basis,
        embedding_rows: b,
        pivot_row: pivot,
        checks,
    })
}

/// Runs `decide` and builds the zonotope from its witness.
pub fn construct_for(space: &PolyhedralSpace, config: AuerbachConfig) -> Result<MvseCandidate> {
    let report = decide_with(space, config)?;
    let w = report.witness.ok_or(Error::NoWitness)?;
    construct_nonparallelepipedal_with(space, &w, config)
}

/// Lowest-index generators forming a basis.
fn independent_prefix(gens: &[RVector], n: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut trial: Vec<RVector> = chosen.iter().map(|&k| gens[k].clone()).collect();
        trial.push(g.clone());
        if RMatrix::from_rows(&trial).is_ok_and(|t| t.rank() == trial.len()) {
            chosen.push(i);
            if chosen.len() == n {
                break;
            }
        }
    }
    chosen
}

/// The four necessary conditions checked on a candidate enlargement.
pub fn validate_mvse_candidate(
    ball: &SymPolytope,
    zonotope: &Zonotope,
    min_volume: &Rational,
) -> Result<CandidateChecks> {
    let n = ball.dim();
    if zonotope.dim != n {
        return Err(Error::Dimension(
            "zonotope and ball dimensions differ".into(),
        ));
    }
    if !zonotope.spans() {
        return Ok(CandidateChecks::default());
    }
    let body = zonotope.to_polytope()?;
    let mut contains_ball = true;
    for v in ball.vertices()? {
        if body.gauge_norm(v)? > Rational::one() {
            contains_ball = false;
            break;
        }
    }
    let gens = &zonotope.generators;
    let frame = independent_prefix(gens, n);
    let frame_cols: Vec<RVector> = frame.iter().map(|&k| gens[k].clone()).collect();
    let coords = RMatrix::from_cols(&frame_cols)?
        .inverse()?
        .mul(&zonotope.generator_matrix())?;
    Ok(CandidateChecks {
        contains_ball,
        volume_matches: zonotope.volume() == *min_volume,
        tu_certified: is_totally_unimodular(&coords)?,
        not_parallelepiped: !zonotope.is_parallelepiped(),
    })
}

/// Validation against the space's own minimal parallelepiped volume.
pub fn validate_for_space(space: &PolyhedralSpace, zonotope: &Zonotope) -> Result<CandidateChecks> {
    let (_, min_vol) = min_parallelepiped_with(&space.ball, AuerbachConfig::default())?;
    validate_mvse_candidate(&space.ball, zonotope, &min_vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, qi};
    use crate::spaces::{l1, l1_sum, linf, linf_sum, rational_hexagon, sum_zero};

    fn v(xs: &[i64]) -> RVector {
        RVector::from_ints(xs)
    }

    #[test]
    fn hexagon_test_examples() {
        let hex = SectionPolygon::from_points(&[v(&[1, 0]), v(&[1, 1]), v(&[0, 1])]).unwrap();
        assert_eq!(
            hexagon_regular_equiv(&hex),
            Some([v(&[1, 0]), v(&[1, 1]), v(&[0, 1])])
        );
        let square = SectionPolygon::from_points(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(hexagon_regular_equiv(&square), None);
        let skew = SectionPolygon::from_points(&[v(&[1, 0]), v(&[1, 1]), v(&[0, 2])]).unwrap();
        assert_eq!(skew.len(), 6);
        assert_eq!(hexagon_regular_equiv(&skew), None);
    }

    #[test]
    fn hexagon_test_is_linearly_invariant() {
        let hex = SectionPolygon::from_points(&[v(&[1, 0]), v(&[1, 1]), v(&[0, 1])]).unwrap();
        let skew = SectionPolygon::from_points(&[v(&[1, 0]), v(&[1, 1]), v(&[0, 2])]).unwrap();
        let ts = [
            RMatrix::from_int_rows(&[&[2, 1], &[1, 3]]),
            RMatrix::from_int_rows(&[&[0, -1], &[1, 0]]),
            RMatrix::from_rows(&[
                RVector::new(vec![q(1, 3), qi(2)]),
                RVector::new(vec![qi(-1), q(5, 7)]),
            ])
            .unwrap(),
        ];
        for t in &ts {
            for s in [&hex, &skew] {
                let pts: Vec<RVector> = s.half().iter().map(|p| t.mul_vec(p).unwrap()).collect();
                let image = SectionPolygon::from_points(&pts).unwrap();
                assert_eq!(
                    hexagon_regular_equiv(&image).is_some(),
                    hexagon_regular_equiv(s).is_some()
                );
            }
        }
    }

    #[test]
    fn decisions() {
        let cases = [
            (linf(3).unwrap(), Answer::ParallelepipedOnly),
            (l1(3).unwrap(), Answer::NonParallelepipedal),
            (l1(4).unwrap(), Answer::ParallelepipedOnly),
            (sum_zero(), Answer::NonParallelepipedal),
            (
                l1_sum(&rational_hexagon(), &l1(1).unwrap()).unwrap(),
                Answer::ParallelepipedOnly,
            ),
            (
                linf_sum(&rational_hexagon(), &linf(1).unwrap()).unwrap(),
                Answer::NonParallelepipedal,
            ),
            (rational_hexagon(), Answer::NonParallelepipedal),
            (l1(1).unwrap(), Answer::ParallelepipedOnly),
        ];
        for (space, expect) in cases {
            let r = decide(&space).unwrap();
            assert_eq!(r.answer, expect, "{}", space.name);
            if let Some(w) = &r.witness {
                assert!(w.recheck(&space.ball).unwrap());
            }
        }
    }

    #[test]
    fn l1_3_construction() {
        let space = l1(3).unwrap();
        let c = construct_for(&space, AuerbachConfig::default()).unwrap();
        assert_eq!(c.zonotope.generators.len(), 4);
        assert_eq!(c.volume, qi(2));
        assert!(c.checks.all());
        // Oracle for containment: hull of all sign sums of generators.
        let sums: Vec<RVector> = (0..1usize << 4)
            .map(|mask| {
                c.zonotope
                    .generators
                    .iter()
                    .enumerate()
                    .fold(RVector::zeros(3), |acc, (i, g)| {
                        if mask & (1 << i) != 0 {
                            acc.sub(g)
                        } else {
                            acc.add(g)
                        }
                    })
            })
            .collect();
        let hull = SymPolytope::from_vertices(3, &sums).unwrap();
        for x in space.ball.vertices().unwrap() {
            assert!(hull.contains(x).unwrap());
        }
        assert!(hull.same_set(&c.zonotope.to_polytope().unwrap()).unwrap());
    }

    #[test]
    fn sum_zero_construction() {
        let space = sum_zero();
        let c = construct_for(&space, AuerbachConfig::default()).unwrap();
        assert_eq!(c.zonotope.generators.len(), 4);
        let (_, vol) = crate::auerbach::min_parallelepiped(&space.ball).unwrap();
        assert_eq!(c.volume, vol);
        assert!(c.checks.all());
    }

    #[test]
    fn construction_needs_a_witness() {
        let r = construct_for(&linf(3).unwrap(), AuerbachConfig::default());
        assert_eq!(r.unwrap_err(), Error::NoWitness);
    }

    #[test]
    fn stale_witness_rejected() {
        let w = decide(&l1(3).unwrap()).unwrap().witness.unwrap();
        // Same dimension, different ball.
        assert!(matches!(
            construct_nonparallelepipedal(&linf(3).unwrap(), &w),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn degenerate_candidates() {
        let space = l1(3).unwrap();
        let (b, vol) = crate::auerbach::min_parallelepiped(&space.ball).unwrap();
        let boxed = Zonotope::new(3, b.columns()).unwrap();
        let checks = validate_mvse_candidate(&space.ball, &boxed, &vol).unwrap();
        assert!(checks.contains_ball && checks.volume_matches && checks.tu_certified);
        assert!(!checks.not_parallelepiped);

        let cube = Zonotope::new(3, (0..3).map(|i| RVector::unit(3, i)).collect()).unwrap();
        let checks = validate_mvse_candidate(&space.ball, &cube, &vol).unwrap();
        assert_eq!(cube.volume(), qi(8));
        assert!(!checks.volume_matches);
        assert!(checks.contains_ball);
    }
}
