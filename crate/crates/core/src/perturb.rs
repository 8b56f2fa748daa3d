//! Rank-one Perron shifts of constant-row-sum matrices.
//!
//! For `B` with `B e = lambda1 e`, the matrix `B + e q^T` keeps every Jordan
//! block of `B` except the 1x1 block at `lambda1`, which moves to
//! `lambda1 + sum(q)`.

use crate::jcfcert::weyr_sequence;
use crate::linalg::char_poly;
use crate::matrix::RationalMatrix;
use crate::poly::Polynomial;
use crate::rowsum::{to_constant_row_sums, RowSumResult};
use crate::scalar::{int, Rational};
use crate::spectrum::Spectrum;
use crate::Error;

/// `B + e q^T`, without any checks.
pub fn add_row_vector(b: &RationalMatrix, q: &[Rational]) -> RationalMatrix {
    RationalMatrix::from_fn(b.rows(), b.cols(), |i, j| &b[(i, j)] + &q[j])
}

/// The exact common row sum of `b`, or a domain error.
pub fn row_sum_constant(b: &RationalMatrix) -> Result<Rational, Error> {
    let sums = b.row_sums();
    let first = sums
        .first()
        .cloned()
        .ok_or_else(|| Error::Dimension("empty matrix".into()))?;
    match sums.iter().position(|s| *s != first) {
        Some(i) => Err(Error::Domain(format!(
            "matrix is not in constant-row-sum form: row 0 sums to {first}, row {i} to {}",
            sums[i]
        ))),
        None => Ok(first),
    }
}

/// `B + e q^T` for `B` in constant-row-sum form with spectrum `spectrum`.
///
/// Checks, all exact: `B e = lambda1 e` with `lambda1` simple in `spectrum`
/// and `spectrum` equal to the spectrum of `B`; the moved eigenvalue
/// `lambda1 + sum(q)` avoids the others; the result is nonnegative. The
/// output is then certified: its characteristic polynomial has the factor
/// `x - lambda1` replaced and every other Weyr sequence is unchanged.
pub fn rank_one_shift(b: &RationalMatrix, q: &[Rational], spectrum: &Spectrum) -> Result<RationalMatrix, Error> {
    let n = b.ensure_square()?;
    if q.len() != n {
        return Err(Error::Dimension(format!("q has length {}, expected {n}", q.len())));
    }
    let lambda1 = row_sum_constant(b)?;
    let p = char_poly(b)?;
    if p != spectrum.char_poly() {
        return Err(Error::SpectrumMismatch(format!(
            "char poly of B is {p}, the spectrum gives {}",
            spectrum.char_poly()
        )));
    }
    if spectrum.multiplicity(&lambda1) != 1 {
        return Err(Error::Domain(format!(
            "row sum {lambda1} has multiplicity {} in the spectrum, expected a simple eigenvalue",
            spectrum.multiplicity(&lambda1)
        )));
    }
    let shift: Rational = q.iter().sum();
    let moved = &lambda1 + &shift;
    if moved != lambda1 && spectrum.multiplicity(&moved) > 0 {
        return Err(Error::Collision(format!(
            "lambda1 + sum(q) = {moved} is already an eigenvalue"
        )));
    }
    let c = add_row_vector(b, q);
    if let Some((row, col, v)) = c.first_negative() {
        return Err(Error::NonnegativityLoss {
            row,
            col,
            value: v.to_string(),
        });
    }
    certify_shift(b, &c, &lambda1, &moved, spectrum)?;
    Ok(c)
}

fn certify_shift(
    b: &RationalMatrix,
    c: &RationalMatrix,
    lambda1: &Rational,
    moved: &Rational,
    spectrum: &Spectrum,
) -> Result<(), Error> {
    let lhs = &char_poly(c)? * &Polynomial::linear(lambda1);
    let rhs = &char_poly(b)? * &Polynomial::linear(moved);
    if lhs != rhs {
        return Err(Error::InvariantViolation(
            "shifted char poly does not trade x - lambda1 for x - lambda1 - sum(q)".into(),
        ));
    }
    for (v, _) in spectrum.iter() {
        if v == lambda1 {
            continue;
        }
        let before = weyr_sequence(b, v)?;
        let after = weyr_sequence(c, v)?;
        if before != after {
            return Err(Error::InvariantViolation(format!(
                "Weyr sequence at {v} changed from {before:?} to {after:?}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct UrShift {
    /// Nonnegative matrix with spectrum `shifted` and row sums `lambda1 + eps`.
    pub matrix: RationalMatrix,
    pub shifted: Spectrum,
    /// The constant-row-sum form the shift was applied to.
    pub normalized: RowSumResult<Rational>,
}

/// Raises the Perron root of a realization of `spectrum` by `eps`, keeping
/// the Jordan structure of every other eigenvalue.
///
/// Runs [`to_constant_row_sums`] and then [`rank_one_shift`] with
/// `q = (eps / n) e`.
pub fn ur_shift(a: &RationalMatrix, spectrum: &Spectrum, eps: &Rational) -> Result<UrShift, Error> {
    let n = a.ensure_square()?;
    if *eps < int(0) {
        return Err(Error::Domain(format!("eps = {eps} is negative")));
    }
    if let Some((i, j, v)) = a.first_negative() {
        return Err(Error::Domain(format!("entry ({i}, {j}) = {v} is negative")));
    }
    let p = char_poly(a)?;
    if p != spectrum.char_poly() {
        return Err(Error::SpectrumMismatch(format!(
            "A has char poly {p}, the spectrum gives {}",
            spectrum.char_poly()
        )));
    }
    let normalized = to_constant_row_sums(a)?;
    let lambda1 = normalized.lambda1.clone();
    let q = vec![eps / int(n as i64); n];
    let matrix = rank_one_shift(&normalized.b, &q, spectrum)?;
    let shifted = spectrum.replace_one(&lambda1, &lambda1 + eps)?;
    Ok(UrShift {
        matrix,
        shifted,
        normalized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn zero_shift_is_identity() {
        let b = rm(&[&[0, 2], &[2, 0]]);
        let s = Spectrum::new([int(2), int(-2)]);
        assert_eq!(rank_one_shift(&b, &[int(0), int(0)], &s).unwrap(), b);
    }

    #[test]
    fn uniform_half_shift() {
        let b = rm(&[&[0, 2], &[2, 0]]);
        let s = Spectrum::new([int(2), int(-2)]);
        let c = rank_one_shift(&b, &[ratio(1, 2), ratio(1, 2)], &s).unwrap();
        assert_eq!(c[(0, 0)], ratio(1, 2));
        assert_eq!(c[(0, 1)], ratio(5, 2));
        assert_eq!(char_poly(&c).unwrap(), Spectrum::new([int(3), int(-2)]).char_poly());
    }

    #[test]
    fn zero_sum_shift_loses_nonnegativity() {
        let b = rm(&[&[0, 2], &[2, 0]]);
        let s = Spectrum::new([int(2), int(-2)]);
        let raw = add_row_vector(&b, &[int(1), int(-1)]);
        assert_eq!(raw, rm(&[&[1, 1], &[3, -1]]));
        assert_eq!(char_poly(&raw).unwrap(), char_poly(&b).unwrap());
        assert!(matches!(
            rank_one_shift(&b, &[int(1), int(-1)], &s),
            Err(Error::NonnegativityLoss { row: 1, col: 1, .. })
        ));
    }

    #[test]
    fn collision_and_domain_errors() {
        let b = rm(&[&[0, 2], &[2, 0]]);
        let s = Spectrum::new([int(2), int(-2)]);
        assert!(matches!(
            rank_one_shift(&b, &[int(-2), int(-2)], &s),
            Err(Error::Collision(_))
        ));
        let not_cs = rm(&[&[1, 2], &[2, 0]]);
        assert!(matches!(
            rank_one_shift(&not_cs, &[int(0), int(0)], &s),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ur_shift_raises_row_sums() {
        let a = rm(&[&[3, 0], &[1, 1]]);
        let s = Spectrum::new([int(3), int(1)]);
        let out = ur_shift(&a, &s, &ratio(1, 5)).unwrap();
        assert!(out.matrix.row_sums().iter().all(|r| *r == ratio(16, 5)));
        assert_eq!(out.shifted, Spectrum::new([ratio(16, 5), int(1)]));
        assert_eq!(char_poly(&out.matrix).unwrap(), out.shifted.char_poly());
    }
}
