//! Constructors for polyhedral normed spaces.
//!
//! A space is a unit ball in fixed coordinates. Spaces built as subspaces
//! of `ℓ∞^m` also keep the embedding matrix, whose columns are the basis of
//! the subspace in ambient coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{RMatrix, RVector, Rational};
use crate::polytope::{sorted_canonical, SymPolytope, MAX_DIM};

/// Largest combined dimension accepted by the direct-sum constructors.
pub const MAX_SUM_DIM: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    LpBall,
    LinfSubspace,
    L1Sum,
    LinfSum,
    Hrep,
    Vrep,
    Hexagon,
    SumZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LpExponent {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

/// `X ⊂ ℓ∞^m` given by an `m×n` matrix of rank `n`. A point with basis
/// coordinates `a` sits at `matrix·a` in the ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceEmbedding {
    pub matrix: RMatrix,
}

impl SubspaceEmbedding {
    pub fn new(matrix: RMatrix) -> Result<Self> {
        if matrix.cols() == 0 || matrix.rank() != matrix.cols() {
            return Err(Error::Degenerate(format!(
                "embedding matrix has rank {} but {} columns",
                matrix.rank(),
                matrix.cols()
            )));
        }
        Ok(SubspaceEmbedding { matrix })
    }

    pub fn ambient_m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn to_ambient(&self, a: &RVector) -> Result<RVector> {
        self.matrix.mul_vec(a)
    }

    /// Basis coordinates of an ambient vector, `None` if it is not in `X`.
    pub fn to_basis_coords(&self, x: &RVector) -> Result<Option<RVector>> {
        if x.dim() != self.ambient_m() {
            return Err(Error::Dimension(format!(
                "ambient vector of length {} for m = {}",
                x.dim(),
                self.ambient_m()
            )));
        }
        // Solve on a set of n independent rows, then check the rest.
        let rows = independent_rows(&self.matrix);
        let sub = self
            .matrix
            .submatrix(&rows, &(0..self.dim()).collect::<Vec<_>>());
        let rhs: RVector = rows.iter().map(|&i| x[i].clone()).collect();
        let a = sub.solve(&rhs)?;
        Ok((self.to_ambient(&a)? == *x).then_some(a))
    }
}

/// Lowest-index rows forming a basis of the row space.
fn independent_rows(m: &RMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..m.rows() {
        let mut trial: Vec<RVector> = chosen.iter().map(|&j| m.row(j)).collect();
        trial.push(m.row(i));
        if RMatrix::from_rows(&trial).is_ok_and(|t| t.rank() == trial.len()) {
            chosen.push(i);
        }
        if chosen.len() == m.cols() {
            break;
        }
    }
    chosen
}

#[derive(Debug, Clone)]
pub struct PolyhedralSpace {
    pub name: String,
    pub provenance: Provenance,
    pub ball: SymPolytope,
    pub embedding: Option<SubspaceEmbedding>,
}

impl PolyhedralSpace {
    pub fn new(name: impl Into<String>, provenance: Provenance, ball: SymPolytope) -> Self {
        PolyhedralSpace {
            name: name.into(),
            provenance,
            ball,
            embedding: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.ball.dim()
    }

    pub fn norm(&self, x: &RVector) -> Result<Rational> {
        self.ball.gauge_norm(x)
    }

    /// The dual space, unit ball the polar body.
    pub fn dual(&self) -> PolyhedralSpace {
        let ball = self.ball.polar_dual();
        let provenance = if ball.has_facets() {
            Provenance::Hrep
        } else {
            Provenance::Vrep
        };
        PolyhedralSpace::new(format!("{}*", self.name), provenance, ball)
    }

    /// `T(X)`: the ball is mapped by `t`; an embedding `M` becomes `M·t⁻¹`
    /// so ambient points stay where they were.
    pub fn linear_image(&self, t: &RMatrix) -> Result<PolyhedralSpace> {
        let ball = self.ball.map_linear(t)?;
        let embedding = match &self.embedding {
            Some(e) => Some(SubspaceEmbedding::new(e.matrix.mul(&t.inverse()?)?)?),
            None => None,
        };
        Ok(PolyhedralSpace {
            name: format!("T({})", self.name),
            provenance: self.provenance,
            ball,
            embedding,
        })
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Dimension(format!(
            "dimension {n} outside 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

fn units(n: usize) -> Vec<RVector> {
    (0..n).map(|i| RVector::unit(n, i)).collect()
}

/// Sign vectors with first coordinate `+1`, one per `±` pair.
fn sign_reps(n: usize) -> Vec<RVector> {
    let vs = (0..1usize << (n - 1))
        .map(|mask| {
            (0..n)
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
    sorted_canonical(vs)
}

/// `ℓ₁ⁿ` or `ℓ∞ⁿ`.
pub fn lp_ball(n: usize, p: LpExponent) -> Result<PolyhedralSpace> {
    check_dim(n)?;
    let (vertices, facets, tag) = match p {
        LpExponent::One => (sorted_canonical(units(n)), sign_reps(n), "l1"),
        LpExponent::Infinity => (sign_reps(n), sorted_canonical(units(n)), "linf"),
    };
    Ok(PolyhedralSpace::new(
        format!("{tag}^{n}"),
        Provenance::LpBall,
        SymPolytope::from_parts(n, Some(vertices), Some(facets)),
    ))
}

pub fn l1(n: usize) -> Result<PolyhedralSpace> {
    lp_ball(n, LpExponent::One)
}

pub fn linf(n: usize) -> Result<PolyhedralSpace> {
    lp_ball(n, LpExponent::Infinity)
}

/// The subspace of `ℓ∞^m` spanned by the columns of `matrix`, in the
/// coordinates of those columns. Its ball is `{a : |r·a| ≤ 1}` over rows `r`.
pub fn linf_subspace(name: impl Into<String>, matrix: RMatrix) -> Result<PolyhedralSpace> {
    let embedding = SubspaceEmbedding::new(matrix)?;
    check_dim(embedding.dim())?;
    let ball = SymPolytope::from_facets(embedding.dim(), &embedding.matrix.row_vectors())?;
    Ok(PolyhedralSpace {
        name: name.into(),
        provenance: Provenance::LinfSubspace,
        ball,
        embedding: Some(embedding),
    })
}

/// `{x ∈ ℓ∞⁴ : x₁ + x₂ + x₃ + x₄ = 0}` with basis `e_i - e_4`.
pub fn sum_zero() -> PolyhedralSpace {
    let m = RMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
    let mut s = linf_subspace("sum_zero_linf4", m).expect("valid embedding");
    s.provenance = Provenance::SumZero;
    s
}

/// Unit ball with vertices `±(1,0), ±(1,1), ±(0,1)`: a hexagon linearly
/// equivalent to the regular one.
pub fn rational_hexagon() -> PolyhedralSpace {
    let ball = SymPolytope::from_vertices(
        2,
        &[
            RVector::from_ints(&[1, 0]),
            RVector::from_ints(&[1, 1]),
            RVector::from_ints(&[0, 1]),
        ],
    )
    .expect("hexagon");
    PolyhedralSpace::new("hexagon", Provenance::Hexagon, ball)
}

pub fn hrep(name: impl Into<String>, dim: usize, facets: &[RVector]) -> Result<PolyhedralSpace> {
    check_dim(dim)?;
    Ok(PolyhedralSpace::new(
        name,
        Provenance::Hrep,
        SymPolytope::from_facets(dim, facets)?,
    ))
}

pub fn vrep(name: impl Into<String>, dim: usize, vertices: &[RVector]) -> Result<PolyhedralSpace> {
    check_dim(dim)?;
    Ok(PolyhedralSpace::new(
        name,
        Provenance::Vrep,
        SymPolytope::from_vertices(dim, vertices)?,
    ))
}

fn check_sum(a: &PolyhedralSpace, b: &PolyhedralSpace) -> Result<usize> {
    let n = a.dim() + b.dim();
    if n > MAX_SUM_DIM {
        return Err(Error::Dimension(format!(
            "direct sum of dimension {n} exceeds {MAX_SUM_DIM}"
        )));
    }
    Ok(n)
}

fn pad(v: &RVector, before: usize, after: usize) -> RVector {
    let mut out = vec![Rational::zero(); before];
    out.extend(v.iter().cloned());
    out.extend(std::iter::repeat_n(Rational::zero(), after));
    RVector::new(out)
}

fn block_union(a: &[RVector], da: usize, b: &[RVector], db: usize) -> Vec<RVector> {
    sorted_canonical(
        a.iter()
            .map(|v| pad(v, 0, db))
            .chain(b.iter().map(|w| pad(w, da, 0)))
            .collect(),
    )
}

/// `‖(x, y)‖ = ‖x‖ + ‖y‖`: the ball is the hull of both balls placed in
/// complementary coordinates.
pub fn l1_sum(a: &PolyhedralSpace, b: &PolyhedralSpace) -> Result<PolyhedralSpace> {
    let n = check_sum(a, b)?;
    let vertices = block_union(a.ball.vertices()?, a.dim(), b.ball.vertices()?, b.dim());
    Ok(PolyhedralSpace::new(
        format!("({} +1 {})", a.name, b.name),
        Provenance::L1Sum,
        SymPolytope::from_parts(n, Some(vertices), None),
    ))
}

/// `‖(x, y)‖ = max(‖x‖, ‖y‖)`: the ball is the product.
pub fn linf_sum(a: &PolyhedralSpace, b: &PolyhedralSpace) -> Result<PolyhedralSpace> {
    let n = check_sum(a, b)?;
    let facets = block_union(a.ball.facets()?, a.dim(), b.ball.facets()?, b.dim());
    Ok(PolyhedralSpace::new(
        format!("({} +inf {})", a.name, b.name),
        Provenance::LinfSum,
        SymPolytope::from_parts(n, None, Some(facets)),
    ))
}

/// Sylvester's Hadamard matrix of order 1, 2, 4 or 8.
pub fn hadamard_matrix(n: usize) -> Result<RMatrix> {
    if !matches!(n, 1 | 2 | 4 | 8) {
        return Err(Error::Invalid(format!(
            "Sylvester order must be 1, 2, 4 or 8, got {n}"
        )));
    }
    let mut h: Vec<Vec<i64>> = vec![vec![1]];
    while h.len() < n {
        let k = h.len();
        let mut next = vec![vec![0i64; 2 * k]; 2 * k];
        for i in 0..k {
            for j in 0..k {
                next[i][j] = h[i][j];
                next[i][j + k] = h[i][j];
                next[i + k][j] = h[i][j];
                next[i + k][j + k] = -h[i][j];
            }
        }
        h = next;
    }
    let rows: Vec<&[i64]> = h.iter().map(|r| r.as_slice()).collect();
    Ok(RMatrix::from_int_rows(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, qi};
    use crate::polytope::{section2, SectionPolygon};

    fn v(xs: &[i64]) -> RVector {
        RVector::from_ints(xs)
    }

    #[test]
    fn lp_balls() {
        let cube = linf(3).unwrap();
        assert_eq!(cube.ball.vertices().unwrap().len(), 4);
        assert_eq!(cube.ball.facets().unwrap().len(), 3);
        let cross = l1(3).unwrap();
        assert_eq!(cross.ball.vertices().unwrap().len(), 3);
        assert_eq!(cross.ball.facets().unwrap().len(), 4);
        assert!(lp_ball(0, LpExponent::One).is_err());
        assert!(lp_ball(7, LpExponent::Infinity).is_err());
    }

    #[test]
    fn lp_balls_match_brute_force_conversion() {
        for n in 1..=4 {
            for s in [l1(n).unwrap(), linf(n).unwrap()] {
                let from_v = SymPolytope::from_vertices(n, s.ball.vertices().unwrap()).unwrap();
                assert_eq!(from_v.facets().unwrap(), s.ball.facets().unwrap());
            }
        }
    }

    #[test]
    fn l1_square_is_rotated_cube() {
        // (x, y) -> (x + y, x - y) carries the ℓ₁² ball onto the ℓ∞² ball.
        let rot = RMatrix::from_int_rows(&[&[1, 1], &[1, -1]]);
        let image = l1(2).unwrap().ball.map_linear(&rot).unwrap();
        assert!(image.same_set(&linf(2).unwrap().ball).unwrap());
    }

    #[test]
    fn identity_embedding_is_cube() {
        for n in 1..=4 {
            let s = linf_subspace("id", RMatrix::identity(n)).unwrap();
            let c = linf(n).unwrap();
            assert_eq!(s.ball.facets().unwrap(), c.ball.facets().unwrap());
            assert_eq!(s.ball.vertices().unwrap(), c.ball.vertices().unwrap());
        }
    }

    #[test]
    fn sum_zero_space() {
        let s = sum_zero();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.ball.facets().unwrap().len(), 4);
        let e = s.embedding.as_ref().unwrap();
        assert_eq!(e.ambient_m(), 4);
        let a = e.to_basis_coords(&v(&[1, 1, -1, -1])).unwrap().unwrap();
        assert_eq!(a, v(&[1, 1, -1]));
        assert_eq!(s.norm(&a).unwrap(), qi(1));
        assert_eq!(e.to_basis_coords(&v(&[1, 1, 1, 1])).unwrap(), None);
    }

    #[test]
    fn zero_row_is_redundant() {
        let with_zero =
            linf_subspace("z", RMatrix::from_int_rows(&[&[1, 0], &[0, 0], &[0, 1]])).unwrap();
        assert!(with_zero.ball.same_set(&linf(2).unwrap().ball).unwrap());
        assert_eq!(with_zero.embedding.unwrap().ambient_m(), 3);
        assert!(linf_subspace("r", RMatrix::from_int_rows(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn hexagon_space() {
        let h = rational_hexagon();
        assert_eq!(h.ball.vertices().unwrap().len(), 3);
        assert_eq!(h.norm(&v(&[1, 1])).unwrap(), qi(1));
        assert_eq!(h.norm(&v(&[1, -1])).unwrap(), qi(2));
        let s = section2(&h.ball, &v(&[1, 0]), &v(&[0, 1])).unwrap();
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn direct_sums_of_lp_balls() {
        let a = l1(1).unwrap();
        let s = l1_sum(&a, &a).unwrap();
        assert!(s.ball.same_set(&l1(2).unwrap().ball).unwrap());
        let s = l1_sum(&l1(2).unwrap(), &a).unwrap();
        assert!(s.ball.same_set(&l1(3).unwrap().ball).unwrap());
        let b = linf(1).unwrap();
        let s = linf_sum(&b, &b).unwrap();
        assert!(s.ball.same_set(&linf(2).unwrap().ball).unwrap());
        let s = linf_sum(&linf(2).unwrap(), &b).unwrap();
        assert!(s.ball.same_set(&linf(3).unwrap().ball).unwrap());
        assert!(l1_sum(&linf(3).unwrap(), &linf(3).unwrap()).is_err());
    }

    #[test]
    fn hexagon_plus_line() {
        let h = rational_hexagon();
        let line = l1(1).unwrap();
        let s = l1_sum(&h, &line).unwrap();
        // Oracle: hull computed from scratch by the generic constructor.
        let pts = [v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let hull = SymPolytope::from_vertices(3, &pts).unwrap();
        assert!(s.ball.same_set(&hull).unwrap());
        assert_eq!(s.ball.vertices().unwrap().len(), 4);

        let prism = linf_sum(&h, &line).unwrap();
        assert_eq!(prism.ball.facets().unwrap().len(), 4);
        assert_eq!(prism.ball.vertices().unwrap().len(), 6);
        let top = section2(&prism.ball, &v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap();
        let hex = SectionPolygon::from_points(&[v(&[1, 0]), v(&[1, 1]), v(&[0, 1])]).unwrap();
        assert_eq!(top.vertices, hex.vertices);
    }

    #[test]
    fn duality_between_sums() {
        for (a, b) in [
            (rational_hexagon(), l1(1).unwrap()),
            (l1(2).unwrap(), linf(1).unwrap()),
            (linf(2).unwrap(), rational_hexagon()),
        ] {
            let lhs = l1_sum(&a, &b).unwrap().dual();
            let rhs = linf_sum(&a.dual(), &b.dual()).unwrap();
            assert!(lhs.ball.same_set(&rhs.ball).unwrap());
        }
        for n in 1..=4 {
            assert!(l1(n)
                .unwrap()
                .ball
                .same_set(&linf(n).unwrap().dual().ball)
                .unwrap());
        }
    }

    #[test]
    fn hadamard() {
        assert_eq!(hadamard_matrix(1).unwrap(), RMatrix::from_int_rows(&[&[1]]));
        assert_eq!(
            hadamard_matrix(2).unwrap(),
            RMatrix::from_int_rows(&[&[1, 1], &[1, -1]])
        );
        for n in [1, 2, 4, 8] {
            let h = hadamard_matrix(n).unwrap();
            let hth = h.transpose().mul(&h).unwrap();
            let mut expect = RMatrix::identity(n);
            for i in 0..n {
                expect.set(i, i, qi(n as i64));
            }
            assert_eq!(hth, expect);
        }
        assert_eq!(hadamard_matrix(4).unwrap().abs_det().unwrap(), qi(16));
        assert!(hadamard_matrix(3).is_err());
    }

    #[test]
    fn linear_image_keeps_ambient_points() {
        let s = sum_zero();
        let t = RMatrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let img = s.linear_image(&t).unwrap();
        let a = v(&[1, 1, -1]);
        let ta = t.mul_vec(&a).unwrap();
        assert_eq!(
            img.embedding.as_ref().unwrap().to_ambient(&ta).unwrap(),
            s.embedding.as_ref().unwrap().to_ambient(&a).unwrap()
        );
        assert_eq!(img.norm(&ta).unwrap(), s.norm(&a).unwrap());
        assert_eq!(
            img.norm(&RVector::new(vec![q(1, 2), qi(0), qi(0)]))
                .unwrap(),
            q(1, 2)
        );
    }
}
