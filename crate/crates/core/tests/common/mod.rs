#![allow(dead_code)]

use mvse_core::exactlin::{RMatrix, RVector, Rational};
use mvse_core::polytope::SymPolytope;
use proptest::prelude::*;
use rand::Rng;

pub fn v(xs: &[i64]) -> RVector {
    RVector::from_ints(xs)
}

/// Integer points in `[-3, 3]^n`; rejected when they fail to span.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, max_pairs: usize) -> SymPolytope {
    loop {
        let k = rng.gen_range(n..=max_pairs);
        let pts: Vec<RVector> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-3i64..=3).into()).collect())
            .collect();
        if let Ok(p) = SymPolytope::from_vertices(n, &pts) {
            return p;
        }
    }
}

/// Product of elementary integer operations: `|det| = 1`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> RMatrix {
    let mut t = RMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=4) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if a != b => {
                let s: i64 = if rng.gen() { 1 } else { -1 };
                for j in 0..n {
                    let x = t.get(a, j) + &(t.get(b, j) * &Rational::from(s));
                    t.set(a, j, x);
                }
            }
            1 => t.swap_rows(a, b),
            _ => {
                for j in 0..n {
                    let x = -t.get(a, j).clone();
                    t.set(a, j, x);
                }
            }
        }
    }
    t
}

pub fn seed_strategy() -> impl Strategy<Value = u64> {
    any::<u64>()
}
