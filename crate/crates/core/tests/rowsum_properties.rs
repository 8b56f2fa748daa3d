use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spectra_core::jcfcert::weyr_sequence;
use spectra_core::linalg::char_poly;
use spectra_core::rowsum::{to_constant_row_sums, to_constant_row_sums_float};
use spectra_core::sample::class_matrix;
use spectra_core::scalar::int;
use spectra_core::{Error, RationalMatrix, Scalar};

fn rm(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_fold_is_a_nonnegative_similarity(seed in any::<u64>(), n in 1usize..=7, small in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = class_matrix(&mut rng, n, small);
        let r = to_constant_row_sums(&a).unwrap();
        prop_assert!(r.b.is_nonnegative());
        prop_assert!(r.b.row_sums().iter().all(|s| *s == r.lambda1));
        prop_assert_eq!(&a * &r.s, &r.s * &r.b);
        prop_assert!(r.s.inverse().is_some());
        prop_assert_eq!(r.composed_similarity(), r.s.clone());
        let p = char_poly(&a).unwrap();
        prop_assert_eq!(&char_poly(&r.b).unwrap(), &p);
        if let Some(roots) = p.rational_roots() {
            for (v, _) in roots {
                prop_assert_eq!(weyr_sequence(&a, &v).unwrap(), weyr_sequence(&r.b, &v).unwrap());
            }
        }
    }

    #[test]
    fn float_fold_matches_within_tolerance(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = class_matrix(&mut rng, n, true);
        let exact = to_constant_row_sums(&a).unwrap();
        match to_constant_row_sums_float(&a.to_float()) {
            Ok(r) => {
                let l1 = Scalar::to_f64(&exact.lambda1);
                prop_assert!((r.lambda1 - l1).abs() < 1e-9 * l1.max(1.0));
                prop_assert!(r.b.entries().iter().all(|x| *x >= -1e-9));
                for s in r.b.row_sums() {
                    prop_assert!((s - r.lambda1).abs() < 1e-7 * r.lambda1.max(1.0));
                }
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn non_simple_perron_roots_are_rejected() {
    for a in [rm(&[&[1, 0], &[1, 1]]), rm(&[&[2, 0, 0], &[0, 2, 0], &[2, 0, 1]])] {
        assert!(matches!(to_constant_row_sums(&a), Err(Error::PerronNotSimple(_))));
    }
}

#[test]
fn negative_input_is_a_domain_error() {
    assert!(matches!(
        to_constant_row_sums(&rm(&[&[1, -1], &[0, 1]])),
        Err(Error::Domain(_))
    ));
}

#[test]
fn irreducible_input_is_only_rescaled() {
    let a = rm(&[&[1, 2], &[3, 0]]);
    let r = to_constant_row_sums(&a).unwrap();
    assert_eq!(r.lambda1, int(3));
    assert!(r.b.row_sums().iter().all(|s| *s == int(3)));
}
