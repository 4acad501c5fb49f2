mod common;

use approx::assert_abs_diff_eq;
use common::*;
use focusreg::entropy::accumulate_joint_rows;
use focusreg::{
    accumulate_joint, criteria_from_histogram, evaluate_all, evaluate_criterion, shannon_entropy, AffineTransform,
    BinningScheme, Criterion, Error, FocusMap, Image, JointHistogram,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn entropy_hand_values() {
    assert_eq!(shannon_entropy(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
    assert_abs_diff_eq!(shannon_entropy(&[0.5, 0.5]).unwrap(), 2f64.ln(), epsilon = 1e-15);
    assert_abs_diff_eq!(
        shannon_entropy(&[0.5, 0.25, 0.25]).unwrap(),
        1.5 * 2f64.ln(),
        epsilon = 1e-15
    );
}

#[test]
fn entropy_rejects_bad_distributions() {
    assert!(matches!(shannon_entropy(&[0.5, 0.6]), Err(Error::InvalidDistribution(_))));
    assert!(matches!(shannon_entropy(&[1.2, -0.2]), Err(Error::InvalidDistribution(_))));
    assert!(matches!(shannon_entropy(&[f64::NAN, 1.0]), Err(Error::InvalidDistribution(_))));
}

fn random_distribution(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

proptest! {
    #[test]
    fn entropy_bounds(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_distribution(&mut rng, n);
        let h = shannon_entropy(&p).unwrap();
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (n as f64).ln() + 1e-12);
    }

    #[test]
    fn entropy_permutation_exact(seed in any::<u64>(), n in 2usize..64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_distribution(&mut rng, n);
        let mut q = p.clone();
        q.shuffle(&mut rng);
        prop_assert_eq!(shannon_entropy(&p).unwrap(), shannon_entropy(&q).unwrap());
    }
}

#[test]
fn diagonal_weighted_histogram() {
    let img = Image::new(2, 1, vec![0.1, 0.9]).unwrap();
    let f = FocusMap::new(2, 1, vec![0.75, 0.25]).unwrap();
    let v = evaluate_all(&img, &img, &AffineTransform::identity(), &BinningScheme::new(4).unwrap(), Some(&f)).unwrap();
    // -(0.75 ln 0.75 + 0.25 ln 0.25)
    let expected = 0.5623351446188083;
    assert_abs_diff_eq!(v.h_joint, expected, epsilon = 1e-15);
    assert_eq!(v.h_ref, v.h_joint);
    assert_eq!(v.h_test, v.h_joint);
    assert_eq!(v.nmi, 2.0);
    assert_eq!(v.ecc, 1.0);
}

#[test]
fn independent_histogram_has_zero_information() {
    let rows = [0.2, 0.5, 0.3];
    let cols = [0.6, 0.4, 0.0];
    let mass: Vec<f64> = rows.iter().flat_map(|r| cols.iter().map(move |c| r * c)).collect();
    let h = JointHistogram::from_mass(3, mass, 9).unwrap();
    let v = criteria_from_histogram(&h).unwrap();
    assert_abs_diff_eq!(v.mi, 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(v.nmi, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(v.ecc, 0.0, epsilon = 1e-12);
}

#[test]
fn single_cell_is_degenerate() {
    let img = Image::constant(4, 4, 0.3).unwrap();
    let err = evaluate_criterion(
        &img,
        &img,
        &AffineTransform::identity(),
        &BinningScheme::default(),
        None,
        Criterion::Nmi,
    )
    .unwrap_err();
    assert!(matches!(err, Error::DegenerateHistogram { mi } if mi == 0.0));
}

#[test]
fn histogram_matches_brute_force_8x8() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let reference = random_image(&mut rng, 8, 8);
        let test = random_image(&mut rng, 8, 8);
        let t = random_affine(&mut rng, 0.1, 1.5);
        let s = BinningScheme::new(8).unwrap();
        let (mass, count) = naive_histogram(&reference, &test, &t, 8, None);
        match accumulate_joint(&reference, &test, &t, &s, None) {
            Ok(h) => {
                assert_eq!(h.mass(), &mass[..]);
                assert_eq!(h.overlap_count(), count);
            }
            Err(Error::EmptyOverlap) => assert_eq!(count, 0),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn mi_matches_brute_force_16x16() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let reference = random_image(&mut rng, 16, 16);
    let test = Image::from_fn(16, 16, |x, y| 0.6 * reference.get(x, y) + 0.4 * rng.gen_range(0.0..1.0)).unwrap();
    let t = AffineTransform::new(0.98, 0.03, -0.02, 1.01, 0.4, -0.3).unwrap();
    let s = BinningScheme::new(16).unwrap();
    let (mass, _) = naive_histogram(&reference, &test, &t, 16, None);
    let (mi, nmi, ecc) = naive_criteria(&mass, 16);
    let v = evaluate_all(&reference, &test, &t, &s, None).unwrap();
    assert_abs_diff_eq!(v.mi, mi, epsilon = 1e-12);
    assert_abs_diff_eq!(v.nmi, nmi, epsilon = 1e-12);
    assert_abs_diff_eq!(v.ecc, ecc, epsilon = 1e-12);
    assert_eq!(
        evaluate_criterion(&reference, &test, &t, &s, None, Criterion::Mi).unwrap(),
        v.mi
    );
}

#[test]
fn constant_focus_equals_unweighted() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let reference = random_image(&mut rng, 24, 20);
    let test = random_image(&mut rng, 24, 20);
    let t = random_affine(&mut rng, 0.1, 2.0);
    let s = BinningScheme::default();
    let f = FocusMap::uniform(24, 20).unwrap();
    let a = evaluate_all(&reference, &test, &t, &s, None).unwrap();
    let b = evaluate_all(&reference, &test, &t, &s, Some(&f)).unwrap();
    assert_abs_diff_eq!(a.mi, b.mi, epsilon = 1e-12);
    assert_abs_diff_eq!(a.nmi, b.nmi, epsilon = 1e-12);
    assert_abs_diff_eq!(a.ecc, b.ecc, epsilon = 1e-12);
}

#[test]
fn relabeling_test_bins_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let reference = random_image(&mut rng, 20, 20);
    let test = Image::from_fn(20, 20, |x, y| (reference.get(x, y) + rng.gen_range(0.0..0.3)).min(1.0)).unwrap();
    let k = 8;
    let s = BinningScheme::new(k).unwrap();
    let h = accumulate_joint(&reference, &test, &AffineTransform::identity(), &s, None).unwrap();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(&mut rng);
    let mut relabeled = vec![0.0; k * k];
    for r in 0..k {
        for c in 0..k {
            relabeled[r * k + perm[c]] = h.cell(r, c);
        }
    }
    let g = JointHistogram::from_mass(k, relabeled, h.overlap_count()).unwrap();
    assert_eq!(criteria_from_histogram(&h).unwrap(), criteria_from_histogram(&g).unwrap());
}

#[test]
fn row_partitions_merge_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let reference = random_image(&mut rng, 16, 16);
    let test = random_image(&mut rng, 16, 16);
    let s = BinningScheme::new(8).unwrap();
    // weights 1/512 and 3/512 sampled at pixel centers keep every partial sum exact
    let focus = FocusMap::from_fn(16, 16, |x, y| if (x + y) % 2 == 0 { 1.0 } else { 3.0 }).unwrap();
    let cases = [
        (random_affine(&mut rng, 0.05, 1.0), None),
        (AffineTransform::translation(2.0, -1.0), Some(&focus)),
    ];
    for (t, f) in cases {
        let whole = accumulate_joint(&reference, &test, &t, &s, f).unwrap();
        let a = accumulate_joint_rows(&reference, &test, &t, &s, f, 0..5).unwrap();
        let b = accumulate_joint_rows(&reference, &test, &t, &s, f, 5..11).unwrap();
        let c = accumulate_joint_rows(&reference, &test, &t, &s, f, 11..16).unwrap();
        let left = a.merge(&b).unwrap().merge(&c).unwrap();
        let right = a.merge(&b.merge(&c).unwrap()).unwrap();
        assert_eq!(left.mass(), whole.mass());
        assert_eq!(right.mass(), whole.mass());
        assert_eq!(left.overlap_count(), whole.overlap_count());
    }
}

#[test]
fn marginals_and_entropy_ordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let reference = random_image(&mut rng, 16, 16);
        let test = random_image(&mut rng, 16, 16);
        let focus = random_focus(&mut rng, 16, 16);
        let t = random_affine(&mut rng, 0.1, 2.0);
        let h = accumulate_joint(&reference, &test, &t, &BinningScheme::new(12).unwrap(), Some(&focus)).unwrap();
        let probs: f64 = h.probabilities().iter().sum();
        assert_abs_diff_eq!(probs, 1.0, epsilon = 1e-12);
        for k in 0..12 {
            let row: f64 = (0..12).map(|l| h.cell(k, l)).sum();
            assert_abs_diff_eq!(row, h.row_marginal()[k], epsilon = 1e-12);
        }
        let v = criteria_from_histogram(&h).unwrap();
        assert!(v.h_ref.max(v.h_test) <= v.h_joint + 1e-9);
        assert!(v.h_joint <= v.h_ref + v.h_test + 1e-9);
        assert_abs_diff_eq!(v.mi, v.h_ref + v.h_test - v.h_joint, epsilon = 1e-12);
    }
}
