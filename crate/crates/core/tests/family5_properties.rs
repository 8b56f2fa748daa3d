use proptest::prelude::*;
use spectra_core::family5::{
    closed_form_coeffs, companion4, companion_entries, diagonalizable_realization, expand_coeffs, feasible_d1,
    make_point, region_member, torre_realizable, D1Choice, Family,
};
use spectra_core::linalg::char_poly;
use spectra_core::scalar::{int, ratio};
use spectra_core::{Error, Rational};

/// Points `(i/den, j/den)` in the open triangle of each family.
fn triangle_point(family: Family) -> impl Strategy<Value = (Rational, Rational)> {
    (1i64..=200, 1i64..=400, 1i64..=200).prop_filter_map("outside the triangle", move |(den, i, j)| {
        let (t0, t) = (ratio(i, den), ratio(j, den));
        let inside = match family {
            Family::TT0 => t0 < &t * int(2) && t < int(1),
            Family::TT0Prime => &t + &t0 < int(1),
            Family::PmT => t <= int(3),
        };
        inside.then_some((t0, t))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_matches_closed_forms(i in 1i64..200, j in -99i64..=300, den in 1i64..=100) {
        for family in [Family::TT0, Family::TT0Prime] {
            let (t0, t) = (ratio(i, 100), ratio(j, den));
            if let Ok(p) = make_point(family, &t0, &t) {
                prop_assert_eq!(p.list.trace(), int(0));
                prop_assert_eq!(&expand_coeffs(&family.template(&t0, &t)), &closed_form_coeffs(family, &t0, &t));
            }
        }
    }

    #[test]
    fn torre_agrees_with_boundary_on_t((t0, t) in triangle_point(Family::TT0)) {
        let p = make_point(Family::TT0, &t0, &t).unwrap();
        prop_assert_eq!(p.torre().realizable(), region_member(Family::TT0, &t0, &t).unwrap().member);
    }

    #[test]
    fn torre_agrees_with_boundary_on_r((t0, t) in triangle_point(Family::TT0Prime)) {
        let p = make_point(Family::TT0Prime, &t0, &t).unwrap();
        prop_assert_eq!(p.torre().realizable(), region_member(Family::TT0Prime, &t0, &t).unwrap().member);
    }

    #[test]
    fn interior_d1_gives_nonnegative_entries((t0, t) in triangle_point(Family::TT0), s in 1i64..100) {
        let p = make_point(Family::TT0, &t0, &t).unwrap();
        let g = p.gamma1_coeffs();
        if let Some(iv) = feasible_d1(&g) {
            let (lo, hi) = (iv.lo.to_f64(), iv.hi.to_f64());
            let x = lo + (hi - lo) * (s as f64) / 100.0;
            if let Some(d1) = spectra_core::scalar::best_rational(x, 1 << 20).filter(|d| iv.contains(d)) {
                let (d3, b, a) = companion_entries(&g, &d1);
                prop_assert!(d1 >= int(0) && d3 >= int(0) && b >= int(0) && a >= int(0));
                let (m, _) = companion4(&g, &d1).unwrap();
                prop_assert_eq!(char_poly(&m).unwrap(), spectra_core::Spectrum::new(p.gamma1()).char_poly());
            }
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn realizable_points_are_certified((t0, t) in triangle_point(Family::TT0Prime)) {
        let p = make_point(Family::TT0Prime, &t0, &t).unwrap();
        if p.torre().realizable() {
            match diagonalizable_realization(&p, &D1Choice::Auto) {
                Ok(r) => prop_assert!(r.certificate.passed),
                Err(Error::ConstructionUnavailable(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}

#[test]
fn torre_flips_near_the_pm_threshold() {
    let k = |t: Rational| make_point(Family::PmT, &int(0), &t).unwrap().torre().realizable();
    assert!(!k(ratio(43789, 100_000)));
    assert!(k(ratio(43809, 100_000)));
}

#[test]
fn realizable_points_below_one_are_not_symmetric() {
    let f = region_member(Family::TT0, &int(1), &ratio(4, 5)).unwrap();
    assert!(f.member && !f.symmetric);
    let f = region_member(Family::TT0Prime, &ratio(1, 2), &ratio(3, 10)).unwrap();
    assert!(f.member && !f.symmetric);
}

#[test]
fn failing_conditions_are_named() {
    let v = torre_realizable(&int(1), &int(0), &int(0), &int(0));
    assert!(!v.a && !v.realizable());
    assert!(v.detail[0].starts_with("(a)"));
}

#[test]
fn pm_family_has_no_diagonalizable_construction() {
    let p = make_point(Family::PmT, &int(0), &int(2)).unwrap();
    assert!(matches!(
        diagonalizable_realization(&p, &D1Choice::Auto),
        Err(Error::ConstructionUnavailable(_))
    ));
}
