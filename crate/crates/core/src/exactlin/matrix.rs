use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{RVector, Rational};
use crate::error::{Error, Result};

/// Row-major dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[RVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.dim());
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[RVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rs: Vec<RVector> = rows.iter().map(|r| RVector::from_ints(r)).collect();
        Self::from_rows(&rs).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RVector {
        self.data[i * self.cols..(i + 1) * self.cols]
            .to_vec()
            .into()
    }

    pub fn col(&self, j: usize) -> RVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<RVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vectors(&self) -> Vec<RVector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &RVector) -> Result<RVector> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    /// `vᵀ · self`, i.e. a row vector times the matrix.
    pub fn vec_mul(&self, v: &RVector) -> Result<RVector> {
        self.transpose().mul_vec(v)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RMatrix {
        let mut m = RMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> RMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (mut ints, scale) = self.integer_rows();
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if ints[k][k].is_zero() {
                match (k + 1..n).find(|&r| !ints[r][k].is_zero()) {
                    Some(r) => {
                        ints.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &ints[i][j] * &ints[k][k] - &ints[i][k] * &ints[k][j];
                    ints[i][j] = v / &prev;
                }
                ints[i][k] = BigInt::zero();
            }
            prev = ints[k][k].clone();
        }
        let det = Rational::from_integer(if sign < 0 { -prev } else { prev });
        Ok(det / scale)
    }

    /// Exact rank, again by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut ints, _) = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !ints[r][c].is_zero()) else {
                continue;
            };
            ints.swap(rank, p);
            for i in rank + 1..rows {
                for j in c + 1..cols {
                    let v = &ints[i][j] * &ints[rank][c] - &ints[i][c] * &ints[rank][j];
                    ints[i][j] = v / &prev;
                }
                ints[i][c] = BigInt::zero();
            }
            prev = ints[rank][c].clone();
            rank += 1;
        }
        rank
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<RMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RMatrix::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a.get(r, c).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pivot = a.get(c, c).recip();
            a.scale_row(c, &pivot);
            inv.scale_row(c, &pivot);
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                a.sub_row_multiple(r, c, &f);
                inv.sub_row_multiple(r, c, &f);
            }
        }
        Ok(inv)
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &RVector) -> Result<RVector> {
        self.inverse()?.mul_vec(b)
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column of the
    /// reduced row echelon form, with a 1 in that column.
    pub fn kernel(&self) -> Vec<RVector> {
        let mut a = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).recip();
            a.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    a.sub_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = RVector::zeros(self.cols);
                x[free] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a.get(row, free).clone();
                }
                x
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Rational) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] *= s;
        }
    }

    /// row[r] -= f * row[src]
    fn sub_row_multiple(&mut self, r: usize, src: usize, f: &Rational) {
        for j in 0..self.cols {
            let v = f * self.get(src, j);
            self.data[r * self.cols + j] -= &v;
        }
    }

    /// Each row scaled to integers by the lcm of its denominators; also
    /// returns the product of the scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Rational) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        (rows, Rational::from_integer(scale))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).into_inner()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn abs_det(&self) -> Result<Rational> {
        Ok(self.det()?.abs())
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<RVector> = Vec::deserialize(deserializer)?;
        RMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Whether `xs` are linearly independent.
pub fn independent(xs: &[RVector]) -> bool {
    match RMatrix::from_rows(xs) {
        Ok(m) => m.rank() == xs.len(),
        Err(_) => false,
    }
}

/// Coordinates of every vector of `vs` in the basis given by the columns of
/// `basis` (square, nonsingular).
pub fn coordinates(basis: &RMatrix, vs: &[RVector]) -> Result<Vec<RVector>> {
    let inv = basis.inverse()?;
    vs.iter().map(|v| inv.mul_vec(v)).collect()
}
