mod common;

use common::random_unimodular;
use mvse_core::auerbach::min_parallelepiped;
use mvse_core::exactlin::{RMatrix, Rational};
use mvse_core::mvse::{construct_for, decide, Answer};
use mvse_core::spaces::{self, PolyhedralSpace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_spaces() -> Vec<(PolyhedralSpace, Answer)> {
    vec![
        (spaces::l1(2).unwrap(), Answer::ParallelepipedOnly),
        (spaces::l1(3).unwrap(), Answer::NonParallelepipedal),
        (spaces::linf(3).unwrap(), Answer::ParallelepipedOnly),
        (spaces::rational_hexagon(), Answer::NonParallelepipedal),
        (spaces::sum_zero(), Answer::NonParallelepipedal),
        (
            spaces::l1_sum(&spaces::rational_hexagon(), &spaces::l1(1).unwrap()).unwrap(),
            Answer::ParallelepipedOnly,
        ),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn answer_is_linearly_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (space, expect) in small_spaces() {
            let t = random_unimodular(&mut rng, space.dim());
            let image = space.linear_image(&t).unwrap();
            prop_assert_eq!(decide(&image).unwrap().answer, expect);
        }
    }

    #[test]
    fn volume_scales_with_det(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (space, _) in small_spaces() {
            let n = space.dim();
            let t = loop {
                let rows: Vec<_> = (0..n)
                    .map(|_| (0..n).map(|_| Rational::from(rng.gen_range(-2i64..=2))).collect())
                    .collect();
                let t = RMatrix::from_rows(&rows).unwrap();
                if !t.det().unwrap().is_zero() {
                    break t;
                }
            };
            let (_, v) = min_parallelepiped(&space.ball).unwrap();
            let (_, vt) = min_parallelepiped(&space.linear_image(&t).unwrap().ball).unwrap();
            prop_assert_eq!(vt, t.abs_det().unwrap() * v);
        }
    }
}

#[test]
fn constructions_survive_linear_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for space in [
        spaces::l1(3).unwrap(),
        spaces::sum_zero(),
        spaces::rational_hexagon(),
    ] {
        for _ in 0..3 {
            let t = random_unimodular(&mut rng, space.dim());
            let image = space.linear_image(&t).unwrap();
            let c = construct_for(&image, Default::default()).unwrap();
            assert!(c.checks.all());
            let (_, vol) = min_parallelepiped(&image.ball).unwrap();
            assert_eq!(c.volume, vol);
            for v in image.ball.vertices().unwrap() {
                assert!(c.zonotope.gauge(v).unwrap() <= Rational::one());
            }
        }
    }
}

#[test]
fn witness_reproduces() {
    for (space, _) in small_spaces() {
        if let Some(w) = decide(&space).unwrap().witness {
            assert!(w.recheck(&space.ball).unwrap());
        }
    }
}
