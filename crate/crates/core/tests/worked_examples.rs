use spectra_core::family5::{
    boundary_t, boundary_t_prime, companion4, diagonalizable_realization, feasible_d1, make_point, pm_threshold,
    D1Choice, Family,
};
use spectra_core::jcfcert::{enumerate_jordan_forms, jordan_spec};
use spectra_core::linalg::char_poly;
use spectra_core::poly::Polynomial;
use spectra_core::scalar::{int, parse_rational, ratio};
use spectra_core::{RationalMatrix, Spectrum};

fn dec(rows: &[&[&str]]) -> RationalMatrix {
    RationalMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_rational(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn first_list_and_quartic_polynomial() {
    let p = make_point(Family::TT0, &int(1), &ratio(4, 5)).unwrap();
    assert_eq!(
        p.list,
        Spectrum::new(["2.8", "2.2", "-1", "-2", "-2"].map(|s| parse_rational(s).unwrap()))
    );
    let quartic = Polynomial::from_descending(vec![int(1), int(-2), ratio(-171, 25), ratio(212, 25), ratio(308, 25)]);
    assert_eq!(Spectrum::new(p.gamma1()).char_poly(), quartic);
}

#[test]
fn first_companion_entries() {
    let p = make_point(Family::TT0, &int(1), &ratio(4, 5)).unwrap();
    let (a, params) = companion4(&p.gamma1_coeffs(), &ratio(11, 2)).unwrap();
    assert_eq!((params.b.clone(), params.a.clone()), (ratio(63, 25), ratio(9, 100)));
    let quartic = Spectrum::new(p.gamma1()).char_poly();
    assert_eq!(char_poly(&a).unwrap(), quartic);
    // the reference value 2.58 for d3 does not reproduce the quartic
    assert_eq!(params.d3, ratio(67, 50));
    let mut printed = a.clone();
    printed[(3, 2)] = ratio(129, 50);
    assert_ne!(char_poly(&printed).unwrap(), quartic);
}

#[test]
fn first_bonded_matrix() {
    let p = make_point(Family::TT0, &int(1), &ratio(4, 5)).unwrap();
    let r = diagonalizable_realization(&p, &D1Choice::Value(ratio(11, 2))).unwrap();
    let expected = dec(&[
        &["0", "1", "0", "0", "0"],
        &["5.5", "0", "1", "0", "0"],
        &["2.52", "0", "0", "0.5", "0.5"],
        &["0.09", "0", "1.34", "0", "2"],
        &["0.09", "0", "1.34", "2", "0"],
    ]);
    assert_eq!(r.matrix(), &expected);
    assert!(r.certificate.passed);
    assert!(jordan_spec(r.matrix(), &p.list).unwrap().is_diagonal());
}

#[test]
fn first_feasible_interval() {
    let p = make_point(Family::TT0, &int(1), &ratio(4, 5)).unwrap();
    let iv = feasible_d1(&p.gamma1_coeffs()).unwrap();
    assert!((iv.lo.to_f64() - 5.10951).abs() < 1e-5);
    assert!((iv.hi.to_f64() - 5.73048).abs() < 1e-5);
    let r = 241f64.sqrt();
    assert!((iv.lo.to_f64() - (271.0 - r) / 50.0).abs() < 1e-12);
}

#[test]
fn second_example() {
    let p = make_point(Family::TT0Prime, &ratio(1, 2), &ratio(3, 10)).unwrap();
    assert_eq!(
        p.list,
        Spectrum::new(["3.8", "2.7", "-2", "-2", "-2.5"].map(|s| parse_rational(s).unwrap()))
    );
    let g = p.gamma1_coeffs();
    let quartic = Polynomial::from_descending(vec![
        int(1),
        int(-2),
        ratio(-1399, 100),
        ratio(1367, 100),
        ratio(513, 10),
    ]);
    assert_eq!(Spectrum::new(p.gamma1()).char_poly(), quartic);
    let r = diagonalizable_realization(&p, &D1Choice::Value(int(9))).unwrap();
    let expected = dec(&[
        &["0", "1", "0", "0", "0"],
        &["9", "0", "1", "0", "0"],
        &["4.33", "0", "0", "0.5", "0.5"],
        &["2.27", "0", "4.99", "0", "2"],
        &["2.27", "0", "4.99", "2", "0"],
    ]);
    assert_eq!(r.matrix(), &expected);
    assert!(r.certificate.passed);
    let iv = feasible_d1(&g).unwrap();
    let root = 1121f64.sqrt();
    assert!((iv.lo.to_f64() - (1799.0 - 9.0 * root) / 200.0).abs() < 1e-9);
    assert!((iv.hi.to_f64() - (1799.0 + 9.0 * root) / 200.0).abs() < 1e-9);
    assert!((iv.hi.to_f64() - 10.501).abs() < 1e-3);
}

#[test]
fn threshold_values() {
    assert!((boundary_t(1.0) - (1.0 + (48.0 * 5f64.sqrt() - 107.0).sqrt()) / 2.0).abs() < 1e-12);
    assert!((boundary_t(1.0) - 0.7877).abs() < 1e-4);
    assert!((boundary_t_prime(0.5) - (-1.0 + (144.0 * 26f64.sqrt() - 731.0).sqrt()) / 4.0).abs() < 1e-12);
    assert!((boundary_t_prime(0.5) - 0.2013).abs() < 1e-4);
    assert!((pm_threshold() - 0.43799).abs() < 1e-5);
    assert!((boundary_t(1e-6) - pm_threshold()).abs() < 1e-3);
}

#[test]
fn first_list_has_two_jordan_forms() {
    let p = make_point(Family::TT0, &int(1), &ratio(4, 5)).unwrap();
    assert_eq!(enumerate_jordan_forms(&p.list).len(), 2);
}
