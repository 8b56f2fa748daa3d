//! Gluing two matrices through a shared eigenvalue.
//!
//! With `A = [[A1, a], [b^T, c]]` and `B` having eigenvalue `c` with left and
//! right eigenvectors `u`, `v` (`u^T v = 1`), the bond is
//! `C = [[A1, a u^T], [v b^T, B]]`. Its spectrum is that of `A` and `B`
//! together with one copy of `c` removed.

use crate::jcfcert::{jordan_spec, weyr_sequence};
use crate::linalg::char_poly;
use crate::matrix::RationalMatrix;
use crate::poly::Polynomial;
use crate::scalar::{int, Rational, Scalar};
use crate::spectrum::{JordanSpec, Spectrum};
use crate::Error;

#[derive(Clone, Debug)]
pub struct Bond {
    pub matrix: RationalMatrix,
    /// Left eigenvector of `B` at `c`, scaled so that `u^T v = 1`.
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    /// Set when both spectra are rational.
    pub jordan: Option<JordanCheck>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanCheck {
    pub expected: JordanSpec,
    pub found: JordanSpec,
}

impl JordanCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.found
    }
}

/// Bonds `a` and `b` at `c`.
///
/// `vectors` are `(u, v)`; they are checked exactly. When absent they are
/// computed from the eigenspaces of `b`. With `auto_normalize`, a supplied
/// `u` is rescaled by `1 / (u^T v)`; otherwise `u^T v != 1` is an error.
pub fn smigoc_bond(
    a: &RationalMatrix,
    b: &RationalMatrix,
    c: &Rational,
    vectors: Option<(Vec<Rational>, Vec<Rational>)>,
    auto_normalize: bool,
) -> Result<Bond, Error> {
    let n = a.ensure_square()?;
    let m = b.ensure_square()?;
    if n == 0 || m == 0 {
        return Err(Error::Dimension("bonding needs nonempty matrices".into()));
    }
    let corner = &a[(n - 1, n - 1)];
    if corner != c {
        return Err(Error::CornerMismatch {
            found: corner.to_string(),
            expected: c.to_string(),
        });
    }
    let weyr = weyr_sequence(b, c)?;
    let Some(&w1) = weyr.first() else {
        return Err(Error::Domain(format!("{c} is not an eigenvalue of B")));
    };
    let w2 = weyr.get(1).copied().unwrap_or(w1);
    // blocks of size exactly 1: w1 - (w2 - w1)
    if 2 * w1 <= w2 {
        return Err(Error::Domain(format!(
            "B has no 1x1 Jordan block at {c} (Weyr sequence {weyr:?})"
        )));
    }

    let (u, v) = match vectors {
        Some((u, v)) => {
            check_eigenvector(&b.transpose(), c, &u, "u")?;
            check_eigenvector(b, c, &v, "v")?;
            let uv = dot(&u, &v);
            if uv == int(1) {
                (u, v)
            } else if auto_normalize && !uv.is_negligible() {
                (u.iter().map(|x| x / &uv).collect(), v)
            } else {
                return Err(Error::Normalization(uv.to_string()));
            }
        }
        None => eigenvector_pair(b, c)?,
    };

    let matrix = glue(a, b, &u, &v);
    let lhs = &char_poly(&matrix)? * &Polynomial::linear(c);
    let rhs = &char_poly(a)? * &char_poly(b)?;
    if lhs != rhs {
        return Err(Error::InvariantViolation(
            "char(C) (x - c) differs from char(A) char(B)".into(),
        ));
    }
    let jordan = jordan_check(a, b, &matrix, c)?;
    Ok(Bond { matrix, u, v, jordan })
}

/// `[[A1, a u^T], [v b^T, B]]` with no checks.
pub fn glue(a: &RationalMatrix, b: &RationalMatrix, u: &[Rational], v: &[Rational]) -> RationalMatrix {
    let n = a.rows();
    let m = b.rows();
    let k = n - 1;
    RationalMatrix::from_fn(k + m, k + m, |i, j| match (i < k, j < k) {
        (true, true) => a[(i, j)].clone(),
        (true, false) => &a[(i, k)] * &u[j - k],
        (false, true) => &v[i - k] * &a[(k, j)],
        (false, false) => b[(i - k, j - k)].clone(),
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_eigenvector(m: &RationalMatrix, c: &Rational, x: &[Rational], name: &str) -> Result<(), Error> {
    if x.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "{name} has length {}, expected {}",
            x.len(),
            m.rows()
        )));
    }
    if x.iter().all(Scalar::is_negligible) {
        return Err(Error::Domain(format!("{name} is zero")));
    }
    let mx = m.mul_vec(x);
    if let Some(i) = (0..x.len()).find(|&i| mx[i] != c * &x[i]) {
        return Err(Error::Domain(format!(
            "{name} is not an eigenvector for {c}: residual {} at index {i}",
            &mx[i] - c * &x[i]
        )));
    }
    Ok(())
}

/// Left and right eigenvectors of `b` at `c` with `u^T v = 1`, preferring
/// nonnegative ones.
fn eigenvector_pair(b: &RationalMatrix, c: &Rational) -> Result<(Vec<Rational>, Vec<Rational>), Error> {
    let rights = b.shift(c).nullspace();
    let lefts = b.transpose().shift(c).nullspace();
    let orient = |x: Vec<Rational>| -> Vec<Rational> {
        if x.iter().sum::<Rational>() < int(0) {
            x.into_iter().map(|t| -t).collect()
        } else {
            x
        }
    };
    let mut best: Option<(Vec<Rational>, Vec<Rational>)> = None;
    for l in &lefts {
        for r in &rights {
            let (u, v) = (orient(l.clone()), orient(r.clone()));
            let uv = dot(&u, &v);
            if uv.is_negligible() {
                continue;
            }
            let u: Vec<Rational> = u.iter().map(|x| x / &uv).collect();
            let nonneg = u.iter().chain(&v).all(|x| !x.is_negative_strict());
            if nonneg {
                return Ok((u, v));
            }
            best.get_or_insert((u, v));
        }
    }
    // Generic combinations when no pair of basis vectors works.
    if best.is_none() && !lefts.is_empty() && !rights.is_empty() {
        let sum = |vs: &[Vec<Rational>]| -> Vec<Rational> {
            (0..vs[0].len())
                .map(|i| vs.iter().enumerate().map(|(k, x)| &x[i] * int(k as i64 + 1)).sum())
                .collect()
        };
        let (u, v) = (sum(&lefts), sum(&rights));
        let uv = dot(&u, &v);
        if !uv.is_negligible() {
            best = Some((u.iter().map(|x| x / &uv).collect(), v));
        }
    }
    best.ok_or_else(|| Error::Normalization("0 for every eigenvector pair".into()))
}

fn jordan_check(
    a: &RationalMatrix,
    b: &RationalMatrix,
    matrix: &RationalMatrix,
    c: &Rational,
) -> Result<Option<JordanCheck>, Error> {
    let (Some(sa), Some(sb)) = (
        Spectrum::from_char_poly(&char_poly(a)?),
        Spectrum::from_char_poly(&char_poly(b)?),
    ) else {
        return Ok(None);
    };
    let ja = jordan_spec(a, &sa)?;
    let jb = jordan_spec(b, &sb)?;
    let expected = ja.union(&jb).remove_block(c, 1)?;
    let found = jordan_spec(matrix, &expected.spectrum())?;
    Ok(Some(JordanCheck { expected, found }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn scalar_partner_is_identity() {
        let a = rm(&[&[0, 1, 0], &[0, 0, 1], &[4, 0, 3]]);
        let bond = smigoc_bond(&a, &rm(&[&[3]]), &int(3), None, false).unwrap();
        assert_eq!(bond.matrix, a);
    }

    #[test]
    fn bond_with_swap_block() {
        let a = rm(&[&[1, 1], &[1, 2]]);
        let b = rm(&[&[0, 2], &[2, 0]]);
        let bond = smigoc_bond(
            &a,
            &b,
            &int(2),
            Some((vec![ratio(1, 2), ratio(1, 2)], vec![int(1), int(1)])),
            false,
        )
        .unwrap();
        assert_eq!(
            bond.matrix,
            RationalMatrix::from_rows(vec![
                vec![int(1), ratio(1, 2), ratio(1, 2)],
                vec![int(1), int(0), int(2)],
                vec![int(1), int(2), int(0)],
            ])
            .unwrap()
        );
    }

    #[test]
    fn errors() {
        let a = rm(&[&[1, 1], &[1, 2]]);
        let b = rm(&[&[0, 2], &[2, 0]]);
        assert!(matches!(
            smigoc_bond(&a, &b, &int(3), None, false),
            Err(Error::CornerMismatch { .. })
        ));
        let unnormalized = Some((vec![int(1), int(1)], vec![int(1), int(1)]));
        assert!(matches!(
            smigoc_bond(&a, &b, &int(2), unnormalized.clone(), false),
            Err(Error::Normalization(_))
        ));
        let fixed = smigoc_bond(&a, &b, &int(2), unnormalized, true).unwrap();
        assert_eq!(fixed.u, vec![ratio(1, 2), ratio(1, 2)]);
        let wrong = Some((vec![int(1), int(-1)], vec![int(1), int(1)]));
        assert!(matches!(
            smigoc_bond(&a, &b, &int(2), wrong, true),
            Err(Error::Domain(_))
        ));
        let jordan = rm(&[&[2, 0], &[1, 2]]);
        assert!(matches!(
            smigoc_bond(&a, &jordan, &int(2), None, false),
            Err(Error::Domain(_))
        ));
    }
}
