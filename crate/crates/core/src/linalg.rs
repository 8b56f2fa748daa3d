//! Exact primitives used for certification: characteristic polynomial,
//! fraction-free rank, and float/rational conversion.

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::matrix::{FloatMatrix, RationalMatrix};
use crate::poly::Polynomial;
use crate::scalar::{rational_from_f64, Rational};
use crate::Error;

/// Tolerance used when reconstructing rationals from floats.
pub const RECONSTRUCTION_TOL: f64 = 1e-12;

/// Characteristic polynomial `det(xI - A)`, monic of degree `n`, computed
/// exactly by the Faddeev-LeVerrier recurrence.
pub fn char_poly(a: &RationalMatrix) -> Result<Polynomial, Error> {
    let n = a.ensure_square()?;
    // coeffs[k] multiplies x^k
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = (a * &m).shift(&-coeffs[n - k + 1].clone());
        let am = a * &m;
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am[(i, i)]);
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    Ok(Polynomial::new(coeffs))
}

/// Rank over the rationals by fraction-free (Bareiss) elimination on an
/// integer copy of `a`. The pivot is the first nonzero entry of each column.
pub fn exact_rank(a: &RationalMatrix) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = a.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// `cols - rank`.
pub fn nullity(a: &RationalMatrix) -> usize {
    a.cols() - exact_rank(a)
}

pub fn to_float(a: &RationalMatrix) -> FloatMatrix {
    a.to_float()
}

/// Reconstructs each entry as the best rational with denominator at most
/// `max_den`, failing on the first entry not within 1e-12 of such a value.
pub fn from_float(a: &FloatMatrix, max_den: u64) -> Result<RationalMatrix, Error> {
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a[(i, j)];
            let r = rational_from_f64(x, max_den, RECONSTRUCTION_TOL).ok_or(Error::Reconstruction {
                row: i,
                col: j,
                value: x,
                max_den,
            })?;
            data.push(r);
        }
    }
    RationalMatrix::new(a.rows(), a.cols(), data)
}

/// `A^k` by repeated multiplication.
pub fn power(a: &RationalMatrix, k: usize) -> RationalMatrix {
    (0..k).fold(RationalMatrix::identity(a.rows()), |acc, _| &acc * a)
}
