//! Univariate polynomials with rational coefficients.

use std::fmt;

use num::{One, Signed, Zero};

use crate::scalar::Rational;

/// Coefficients are stored lowest degree first and kept trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds a polynomial from coefficients listed leading term first.
    pub fn from_descending(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs.into_iter().rev().collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`.
    pub fn linear(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    /// Monic polynomial with the given roots (repeated roots repeated).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| &acc * &Self::linear(r))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients lowest degree first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients leading term first.
    pub fn descending(&self) -> Vec<Rational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use crate::scalar::Scalar;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Multiplicity of `r` as a root (0 when `r` is not a root). The zero
    /// polynomial reports 0.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Self::linear(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            p = q;
        }
    }

    /// Real roots in `[lo, hi]` located by bisection on sign changes over a
    /// uniform grid of `samples` cells; returns floats accurate to `tol`.
    pub fn real_roots_in(&self, lo: f64, hi: f64, samples: usize, tol: f64) -> Vec<f64> {
        let mut roots = Vec::new();
        let step = (hi - lo) / samples as f64;
        let mut a = lo;
        let mut fa = self.eval_f64(a);
        for k in 1..=samples {
            let b = lo + step * k as f64;
            let fb = self.eval_f64(b);
            if fa == 0.0 {
                roots.push(a);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                let (mut l, mut h) = (a, b);
                while h - l > tol {
                    let mid = 0.5 * (l + h);
                    if self.eval_f64(mid).signum() == fa.signum() {
                        l = mid;
                    } else {
                        h = mid;
                    }
                }
                roots.push(0.5 * (l + h));
            }
            a = b;
            fa = fb;
        }
        roots
    }
}

impl Polynomial {
    /// The same polynomial scaled to leading coefficient 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// All roots with multiplicities when the polynomial splits over the
    /// rationals, in decreasing order; `None` otherwise.
    ///
    /// Roots of the square-free part are located numerically from its
    /// companion matrix, rounded to nearby rationals and confirmed by exact
    /// evaluation.
    pub fn rational_roots(&self) -> Option<Vec<(Rational, usize)>> {
        let n = self.degree()?;
        if n == 0 {
            return Some(Vec::new());
        }
        let sf = self.square_free();
        let d = sf.degree()?;
        let mut found: Vec<Rational> = Vec::new();
        if sf.coeffs[0].is_zero() {
            found.push(Rational::zero());
        }
        let comp = nalgebra::DMatrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -crate::scalar::Scalar::to_f64(&sf.coeffs[i])
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        for z in comp.complex_eigenvalues().iter() {
            if z.im.abs() > 1e-6 * z.re.abs().max(1.0) {
                return None;
            }
            let hit = [1u64, 10, 100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000]
                .iter()
                .filter_map(|&den| crate::scalar::best_rational(z.re, den))
                .filter(|r| (crate::scalar::Scalar::to_f64(r) - z.re).abs() <= 1e-6 * z.re.abs().max(1.0))
                .find(|r| sf.eval(r).is_zero());
            match hit {
                Some(r) if !found.contains(&r) => found.push(r),
                Some(_) => {}
                None => return None,
            }
        }
        if found.len() != d {
            return None;
        }
        found.sort_by(|a, b| b.cmp(a));
        let out: Vec<(Rational, usize)> = found
            .into_iter()
            .map(|r| {
                let m = self.root_multiplicity(&r);
                (r, m)
            })
            .collect();
        (out.iter().map(|(_, m)| m).sum::<usize>() == n).then_some(out)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let body = if a.is_integer() {
                a.to_string()
            } else {
                format!("({a})")
            };
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{body}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{body}x^{k}")?,
            }
        }
        Ok(())
    }
}
