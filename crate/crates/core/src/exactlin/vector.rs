use std::fmt;
use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use super::Rational;

/// A dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RVector(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RVector(xs.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> RVector {
        RVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &RVector) -> RVector {
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVector) -> RVector {
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RVector {
        RVector(self.0.iter().map(|x| -x).collect())
    }

    /// Sign of the first nonzero entry (0 for the zero vector).
    pub fn leading_sign(&self) -> i32 {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .map_or(0, Rational::signum)
    }

    /// Representative of `{v, -v}` whose first nonzero entry is positive.
    pub fn sign_canonical(&self) -> RVector {
        if self.leading_sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Max-abs entry.
    pub fn max_abs(&self) -> Rational {
        self.0
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// True if `other` is a nonzero multiple of `self` (both nonzero).
    pub fn is_parallel(&self, other: &RVector) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let i = self.0.iter().position(|x| !x.is_zero()).unwrap();
        if other.0[i].is_zero() {
            return false;
        }
        let ratio = &other.0[i] / &self.0[i];
        self.0.iter().zip(&other.0).all(|(a, b)| a * &ratio == *b)
    }
}

impl Deref for RVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl DerefMut for RVector {
    fn deref_mut(&mut self) -> &mut [Rational] {
        &mut self.0
    }
}

impl From<Vec<Rational>> for RVector {
    fn from(v: Vec<Rational>) -> Self {
        RVector(v)
    }
}

impl FromIterator<Rational> for RVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RVector(iter.into_iter().collect())
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
