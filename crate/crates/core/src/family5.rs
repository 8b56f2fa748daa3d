//! Trace-zero lists of length five.
//!
//! Three families, all scaled so that the repeated negative eigenvalue is
//! `-2`:
//!
//! * `PmT`: `{3+t, 3-t, -2, -2, -2}`
//! * `TT0`: `{3+t-t0, 3-t, -2+t0, -2, -2}`
//! * `TT0Prime`: `{3+t+t0, 3-t, -2, -2, -2-t0}`
//!
//! Characteristic polynomials are written `x^5 + k2 x^3 + k3 x^2 + k4 x + k5`.
//! Realizability is decided by the coefficient test of Torre-Mascarenhas and
//! compared with closed-form region boundaries. Diagonalizable realizations
//! come from bonding a companion-like realization of the first four values
//! with `[[0,2],[2,0]]`.

pub use crate::obstruction::obstruction_witness_families;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{Signed, Zero};
use rayon::prelude::*;

use crate::bonding::{smigoc_bond, Bond};
use crate::jcfcert::{verify_certificate, RealizationCertificate};
use crate::linalg::char_poly;
use crate::matrix::RationalMatrix;
use crate::poly::Polynomial;
use crate::scalar::{best_rational, format_decimal, int, Rational, Scalar};
use crate::spectrum::{JordanSpec, Spectrum};
use crate::Error;

/// Slack for float comparisons against the closed-form boundaries.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PmT,
    TT0,
    TT0Prime,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PmT => "pm",
            Family::TT0 => "t",
            Family::TT0Prime => "tprime",
        }
    }

    /// The five values at `(t0, t)`, unchecked.
    pub fn template(self, t0: &Rational, t: &Rational) -> [Rational; 5] {
        let (two, three) = (int(2), int(3));
        match self {
            Family::PmT => [&three + t, &three - t, -&two, -&two, -&two],
            Family::TT0 => [&three + t - t0, &three - t, t0 - &two, -&two, -&two],
            Family::TT0Prime => [&three + t + t0, &three - t, -&two, -&two, -&two - t0],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pm" | "pm_t" | "pmt" => Ok(Family::PmT),
            "t" | "t_t0" | "tt0" => Ok(Family::TT0),
            "tprime" | "t_t0_prime" | "tt0prime" | "t'" => Ok(Family::TT0Prime),
            other => Err(Error::Parse(format!(
                "unknown family {other:?}, expected t, tprime or pm"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Family5Point {
    pub family: Family,
    /// Zero for `PmT`.
    pub t0: Rational,
    pub t: Rational,
    pub list: Spectrum,
    /// `(k2, k3, k4, k5)`.
    pub coeffs: [Rational; 4],
}

impl Family5Point {
    /// The list with one copy of `-2` removed.
    pub fn gamma1(&self) -> Vec<Rational> {
        let mut values = self.family.template(&self.t0, &self.t).to_vec();
        let pos = values
            .iter()
            .rposition(|v| *v == int(-2))
            .expect("every template holds -2");
        values.remove(pos);
        values
    }

    /// Coefficients `(k1, k2, k3, k4)` of the monic quartic with roots
    /// [`Self::gamma1`].
    pub fn gamma1_coeffs(&self) -> [Rational; 4] {
        let p = Polynomial::from_roots(&self.gamma1());
        [p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)]
    }

    pub fn torre(&self) -> TorreVerdict {
        let [k2, k3, k4, k5] = &self.coeffs;
        torre_realizable(k2, k3, k4, k5)
    }

    pub fn region(&self) -> Result<RegionFlags, Error> {
        region_member(self.family, &self.t0, &self.t)
    }
}

fn bound(holds: bool, what: &str) -> Result<(), Error> {
    if holds {
        Ok(())
    } else {
        Err(Error::Domain(format!("parameters violate {what}")))
    }
}

fn check_family_domain(family: Family, t0: &Rational, t: &Rational) -> Result<(), Error> {
    let (zero, two, three) = (int(0), int(2), int(3));
    let at = format!("(t0 = {t0}, t = {t})");
    match family {
        Family::PmT => {
            bound(t0.is_zero(), &format!("t0 = 0 for the pm family {at}"))?;
            bound(*t > zero, &format!("0 < t {at}"))?;
            bound(*t <= three, &format!("t <= 3 {at}"))
        }
        Family::TT0 => {
            bound(*t0 > zero, &format!("0 < t0 {at}"))?;
            bound(*t0 < two, &format!("t0 < 2 {at}"))?;
            bound(*t <= three, &format!("t <= 3 {at}"))
        }
        Family::TT0Prime => {
            bound(*t0 > zero, &format!("0 < t0 {at}"))?;
            bound(*t0 > -(&two * t), &format!("t0 > -2t {at}"))?;
            bound(*t <= three, &format!("t <= 3 {at}"))
        }
    }
}

/// Builds a point, computing the coefficients twice: from the product of
/// the linear factors and from the closed forms.
pub fn make_point(family: Family, t0: &Rational, t: &Rational) -> Result<Family5Point, Error> {
    check_family_domain(family, t0, t)?;
    let values = family.template(t0, t);
    let expanded = expand_coeffs(&values);
    let closed = closed_form_coeffs(family, t0, t);
    if expanded != closed {
        return Err(Error::InvariantViolation(format!(
            "expanded coefficients {:?} differ from the closed forms {:?}",
            expanded.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            closed.iter().map(|k| k.to_string()).collect::<Vec<_>>()
        )));
    }
    let list = Spectrum::new(values);
    if !list.trace().is_zero() {
        return Err(Error::InvariantViolation(format!("trace {} is not zero", list.trace())));
    }
    Ok(Family5Point {
        family,
        t0: t0.clone(),
        t: t.clone(),
        list,
        coeffs: expanded,
    })
}

/// `(k2, k3, k4, k5)` of `prod (x - v)` for five values of sum zero.
pub fn expand_coeffs(values: &[Rational; 5]) -> [Rational; 4] {
    let p = Polynomial::from_roots(values.iter());
    [p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)]
}

/// The closed forms for `(k2, k3, k4, k5)`.
pub fn closed_form_coeffs(family: Family, t0: &Rational, t: &Rational) -> [Rational; 4] {
    let n = |v: i64| int(v);
    let tt = t * t;
    let t0t0 = t0 * t0;
    match family {
        Family::PmT | Family::TT0 => {
            let t0 = if family == Family::PmT { n(0) } else { t0.clone() };
            let t0t0 = &t0 * &t0;
            let six = n(6) - &t0;
            let k2 = -&tt + &t0 * t - &t0t0 + n(5) * &t0 - n(15);
            let k3 = -(&six * &tt) + &t0 * &six * t - &t0t0 + n(5) * &t0 - n(10);
            let k4 = n(4) * ((&t0 - n(3)) * &tt + &t0 * (n(3) - &t0) * t + n(2) * &t0t0 - n(10) * &t0 + n(15));
            let k5 = n(4) * (t - n(3)) * (t - &t0 + n(3)) * (&t0 - n(2));
            [k2, k3, k4, k5]
        }
        Family::TT0Prime => {
            let six = t0 + n(6);
            let k2 = -(&tt + t0 * t + &t0t0 + n(5) * t0 + n(15));
            let k3 = -(&six * &tt + t0 * &six * t + &t0t0 + n(5) * t0 + n(10));
            let k4 = -n(4) * ((t0 + n(3)) * &tt + t0 * (t0 + n(3)) * t - n(2) * &t0t0 - n(10) * t0 - n(15));
            let k5 = n(4) * (n(3) - t) * (t + t0 + n(3)) * (t0 + n(2));
            [k2, k3, k4, k5]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorreVerdict {
    /// `k2 <= 0` and `k3 <= 0`.
    pub a: bool,
    /// `k4 <= k2^2 / 4`.
    pub b: bool,
    /// The bound on `k5`.
    pub c: bool,
    /// Which conditions failed and why; empty when realizable.
    pub detail: Vec<String>,
}

impl TorreVerdict {
    pub fn realizable(&self) -> bool {
        self.a && self.b && self.c
    }
}

/// Coefficient test for `x^5 + k2 x^3 + k3 x^2 + k4 x + k5` to be the
/// characteristic polynomial of a nonnegative matrix. Exact throughout; the
/// square root in the last condition is removed by squaring with sign
/// analysis.
pub fn torre_realizable(k2: &Rational, k3: &Rational, k4: &Rational, k5: &Rational) -> TorreVerdict {
    let zero = int(0);
    let mut detail = Vec::new();
    let a = *k2 <= zero && *k3 <= zero;
    if !a {
        detail.push(format!("(a) needs k2 <= 0 and k3 <= 0, got k2 = {k2}, k3 = {k3}"));
    }
    let disc = k2 * k2 / int(4) - k4;
    let b = disc >= zero;
    if !b {
        detail.push(format!(
            "(b) needs k4 <= k2^2/4, got k4 = {k4}, k2^2/4 = {}",
            k2 * k2 / int(4)
        ));
    }
    let c = if *k4 <= zero {
        let rhs = k2 * k3;
        let ok = *k5 <= rhs;
        if !ok {
            detail.push(format!("(c) with k4 <= 0 needs k5 <= k2 k3 = {rhs}, got k5 = {k5}"));
        }
        ok
    } else if !b {
        detail.push("(c) undefined: k2^2/4 - k4 < 0".into());
        false
    } else {
        // k5 - k3 k2 / 2 <= -k3 sqrt(disc)
        let lhs = k5 - k3 * k2 / int(2);
        let s = -k3;
        let (l2, r2) = (&lhs * &lhs, &s * &s * &disc);
        let ok = if s >= zero {
            lhs <= zero || l2 <= r2
        } else {
            lhs <= zero && l2 >= r2
        };
        if !ok {
            detail.push(format!(
                "(c) with k4 > 0 needs k5 <= k3 (k2/2 - sqrt(k2^2/4 - k4)), about {:.12}, got k5 = {k5}",
                k3.to_f64() * (k2.to_f64() / 2.0 - disc.to_f64().sqrt())
            ));
        }
        ok
    };
    TorreVerdict { a, b, c, detail }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionFlags {
    /// Least `t` in the region at this `t0`; `-inf` when every `t` is.
    pub boundary: f64,
    pub member: bool,
    /// Symmetric realizability, `t >= 1`.
    pub symmetric: bool,
}

/// The realizability threshold of the `pm` family, `sqrt(16 sqrt 6 - 39)`.
pub fn pm_threshold() -> f64 {
    (16.0 * 6f64.sqrt() - 39.0).sqrt()
}

/// Region boundary for `TT0`:
/// `(t0 + sqrt(16 (4 - t0) sqrt(6 - t0) - 3 t0^2 + 52 t0 - 156)) / 2`.
pub fn boundary_t(t0: f64) -> f64 {
    let radicand = 16.0 * (4.0 - t0) * (6.0 - t0).sqrt() - 3.0 * t0 * t0 + 52.0 * t0 - 156.0;
    if radicand < 0.0 {
        f64::NEG_INFINITY
    } else {
        (t0 + radicand.sqrt()) / 2.0
    }
}

/// Region boundary for `TT0Prime`:
/// `(-t0 + sqrt(16 (4 + t0) sqrt(6 + t0) - 3 t0^2 - 52 t0 - 156)) / 2`.
pub fn boundary_t_prime(t0: f64) -> f64 {
    let radicand = 16.0 * (4.0 + t0) * (6.0 + t0).sqrt() - 3.0 * t0 * t0 - 52.0 * t0 - 156.0;
    if radicand < 0.0 {
        f64::NEG_INFINITY
    } else {
        (-t0 + radicand.sqrt()) / 2.0
    }
}

pub fn boundary(family: Family, t0: f64) -> f64 {
    match family {
        Family::PmT => pm_threshold(),
        Family::TT0 => boundary_t(t0),
        Family::TT0Prime => boundary_t_prime(t0),
    }
}

/// Parameter triangles for region work: `0 < t0 < 2t < 2` for `TT0`,
/// `0 < t0, 0 < t, t + t0 < 1` for `TT0Prime`, and `0 < t <= 3` for `PmT`.
pub fn in_region_domain(family: Family, t0: &Rational, t: &Rational) -> Result<(), Error> {
    let (zero, one, two) = (int(0), int(1), int(2));
    let at = format!("(t0 = {t0}, t = {t})");
    match family {
        Family::PmT => check_family_domain(family, t0, t),
        Family::TT0 => {
            bound(*t0 > zero, &format!("0 < t0 {at}"))?;
            bound(*t0 < &two * t, &format!("t0 < 2t {at}"))?;
            bound(*t < one, &format!("2t < 2 {at}"))
        }
        Family::TT0Prime => {
            bound(*t0 > zero, &format!("0 < t0 {at}"))?;
            bound(*t > zero, &format!("0 < t {at}"))?;
            bound(t + t0 < one, &format!("t + t0 < 1 {at}"))
        }
    }
}

/// Membership in the closed-form realizability region.
pub fn region_member(family: Family, t0: &Rational, t: &Rational) -> Result<RegionFlags, Error> {
    in_region_domain(family, t0, t)?;
    let b = boundary(family, t0.to_f64());
    let tf = t.to_f64();
    Ok(RegionFlags {
        boundary: b,
        member: tf + BOUNDARY_TOL >= b,
        symmetric: *t >= int(1),
    })
}

/// `p + q sqrt(r)` with `r >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
}

impl Surd {
    pub fn rational(p: Rational) -> Self {
        Surd {
            p,
            q: int(0),
            r: int(0),
        }
    }

    /// `p + q sqrt(r)`, with square factors pulled out of `r`.
    pub fn new(p: Rational, q: Rational, r: Rational) -> Self {
        if q.is_zero() || r.is_zero() {
            return Surd::rational(p);
        }
        // sqrt(n/d) = sqrt(n d) / d
        let d = r.denom().clone();
        let (k, rest) = square_part(&(r.numer() * &d));
        let q = q * Rational::new(k, d);
        if rest == BigInt::from(1) {
            return Surd::rational(p + q);
        }
        Surd {
            p,
            q,
            r: Rational::from_integer(rest),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.q.is_zero().then_some(&self.p)
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64() + self.q.to_f64() * self.r.to_f64().sqrt()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let zero = int(0);
        let u = self.p.cmp(&zero);
        let w = if self.r.is_zero() {
            Ordering::Equal
        } else {
            self.q.cmp(&zero)
        };
        if u == w || w == Ordering::Equal {
            return u;
        }
        if u == Ordering::Equal {
            return w;
        }
        // opposite signs: the larger magnitude wins
        let pp = &self.p * &self.p;
        let qq = &self.q * &self.q * &self.r;
        match pp.cmp(&qq) {
            Ordering::Greater => u,
            Ordering::Less => w,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison when the radicands agree or one side is rational.
    pub fn cmp_exact(&self, other: &Surd) -> Option<Ordering> {
        let diff = if self.q.is_zero() || other.q.is_zero() || self.r == other.r {
            let r = if self.q.is_zero() {
                other.r.clone()
            } else {
                self.r.clone()
            };
            Surd {
                p: &self.p - &other.p,
                q: &self.q - &other.q,
                r,
            }
        } else {
            return None;
        };
        Some(diff.signum())
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        self.cmp_exact(&Surd::rational(x.clone())).expect("rational side")
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let q = self.q.abs();
        let q = if q == int(1) { String::new() } else { format!("{q}*") };
        write!(f, "{} {sign} {q}sqrt({})", self.p, self.r)
    }
}

/// Splits `n = k^2 m` with trial division by small factors.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::from(1);
    let mut m = n.clone();
    let mut f = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while f < limit && &f * &f <= m {
        let ff = &f * &f;
        while (&m % &ff).is_zero() {
            m /= &ff;
            k *= &f;
        }
        f += 1;
    }
    (k, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Interval {
    pub lo: Surd,
    pub hi: Surd,
}

impl D1Interval {
    pub fn contains(&self, d1: &Rational) -> bool {
        self.lo.cmp_rational(d1) != Ordering::Greater && self.hi.cmp_rational(d1) != Ordering::Less
    }

    /// Float enclosure widened by [`BOUNDARY_TOL`].
    pub fn bracket(&self) -> (f64, f64) {
        (self.lo.to_f64() - BOUNDARY_TOL, self.hi.to_f64() + BOUNDARY_TOL)
    }

    /// The exact midpoint when rational, otherwise the simplest rational
    /// near it inside the interval.
    pub fn midpoint(&self) -> Option<Rational> {
        let same = self.lo.q.is_zero() || self.hi.q.is_zero() || self.lo.r == self.hi.r;
        if same && (&self.lo.q + &self.hi.q).is_zero() {
            return Some((&self.lo.p + &self.hi.p) / int(2));
        }
        let mid = (self.lo.to_f64() + self.hi.to_f64()) / 2.0;
        let mut den = 1u64;
        while den <= 1_000_000_000_000 {
            if let Some(x) = best_rational(mid, den) {
                if self.contains(&x) {
                    return Some(x);
                }
            }
            den *= 10;
        }
        None
    }
}

impl fmt::Display for D1Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompanionParams {
    pub d1: Rational,
    pub d3: Rational,
    pub b: Rational,
    pub a: Rational,
    pub feasible_interval: Option<D1Interval>,
}

/// Entries of the companion-like realization for quartic coefficients
/// `(k1, k2, k3, k4)` with trace `c = -k1`:
/// `d3 = -k2 - d1`, `b = c d1 - k3`, `a = -d1^2 + (c^2 - k2) d1 - c k3 - k4`.
pub fn companion_entries(coeffs: &[Rational; 4], d1: &Rational) -> (Rational, Rational, Rational) {
    let [k1, k2, k3, k4] = coeffs;
    let c = -k1;
    let d3 = -k2 - d1;
    let b = &c * d1 - k3;
    let a = -(d1 * d1) + (&c * &c - k2) * d1 - &c * k3 - k4;
    (d3, b, a)
}

/// The matrix `[[0,1,0,0],[d1,0,1,0],[b,0,0,1],[a,0,d3,c]]`, whose
/// characteristic polynomial is `x^4 + k1 x^3 + k2 x^2 + k3 x + k4`.
/// A negative entry is an error naming it.
pub fn companion4(coeffs: &[Rational; 4], d1: &Rational) -> Result<(RationalMatrix, CompanionParams), Error> {
    let (d3, b, a) = companion_entries(coeffs, d1);
    let (z, o) = (int(0), int(1));
    let c = -&coeffs[0];
    let m = RationalMatrix::from_rows(vec![
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![d1.clone(), z.clone(), o.clone(), z.clone()],
        vec![b.clone(), z.clone(), z.clone(), o],
        vec![a.clone(), z.clone(), d3.clone(), c],
    ])?;
    if let Some((row, col, value)) = m.first_negative() {
        return Err(Error::NonnegativityLoss {
            row,
            col,
            value: value.to_string(),
        });
    }
    let p = char_poly(&m)?;
    let expected = Polynomial::new(vec![
        coeffs[3].clone(),
        coeffs[2].clone(),
        coeffs[1].clone(),
        coeffs[0].clone(),
        int(1),
    ]);
    if p != expected {
        return Err(Error::InvariantViolation(format!(
            "companion has char poly {p}, expected {expected}"
        )));
    }
    let params = CompanionParams {
        d1: d1.clone(),
        d3,
        b,
        a,
        feasible_interval: feasible_d1(coeffs),
    };
    Ok((m, params))
}

/// The set of `d1` making every entry of [`companion4`] nonnegative, or
/// `None` when it is empty.
pub fn feasible_d1(coeffs: &[Rational; 4]) -> Option<D1Interval> {
    let [k1, k2, k3, k4] = coeffs;
    let zero = int(0);
    let c = -k1;
    if c < zero {
        return None;
    }
    let mut lows = vec![Surd::rational(zero.clone())];
    let mut highs = vec![Surd::rational(-k2)];
    if c > zero {
        lows.push(Surd::rational(k3 / &c));
    } else if *k3 > zero {
        return None;
    }
    // a >= 0 between the roots of d1^2 - (c^2 - k2) d1 + c k3 + k4
    let s = &c * &c - k2;
    let disc = &s * &s - int(4) * (&c * k3 + k4);
    if disc < zero {
        return None;
    }
    let half = Rational::new(1.into(), 2.into());
    lows.push(Surd::new(&s * &half, -half.clone(), disc.clone()));
    highs.push(Surd::new(&s * &half, half, disc));

    let pick = |xs: Vec<Surd>, want: Ordering| -> Option<Surd> {
        let mut best: Option<Surd> = None;
        for x in xs {
            best = match best {
                None => Some(x),
                Some(cur) => match x.cmp_exact(&cur)? {
                    o if o == want => Some(x),
                    _ => Some(cur),
                },
            };
        }
        best
    };
    let lo = pick(lows, Ordering::Greater)?;
    let hi = pick(highs, Ordering::Less)?;
    match lo.cmp_exact(&hi)? {
        Ordering::Greater => None,
        _ => Some(D1Interval { lo, hi }),
    }
}

/// Choice of the free companion parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D1Choice {
    /// Midpoint of the feasible interval.
    Auto,
    Value(Rational),
}

impl FromStr for D1Choice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim().eq_ignore_ascii_case("auto") {
            Ok(D1Choice::Auto)
        } else {
            Ok(D1Choice::Value(crate::scalar::parse_rational(s)?))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Family5Realization {
    pub point: Family5Point,
    /// Realization of the first four values.
    pub companion: RationalMatrix,
    pub params: CompanionParams,
    /// The bond with `[[0,2],[2,0]]`.
    pub bond: Bond,
    pub certificate: RealizationCertificate,
}

impl Family5Realization {
    pub fn matrix(&self) -> &RationalMatrix {
        &self.bond.matrix
    }
}

/// Parameter ranges under which the construction applies:
/// `0 < t0 < 2`, `t0/2 < t <= 3` for `TT0` and `t0 > max(0, -2t)`,
/// `t <= 3` for `TT0Prime`.
fn check_construction_domain(point: &Family5Point) -> Result<(), Error> {
    let at = format!("(t0 = {}, t = {})", point.t0, point.t);
    match point.family {
        Family::PmT => Err(Error::ConstructionUnavailable(format!(
            "the pm list repeats -2 in the quartic part, so the companion realization \
             carries a 2x2 Jordan block at -2 {at}"
        ))),
        Family::TT0 => bound(&point.t0 / int(2) < point.t, &format!("t0/2 < t {at}")),
        Family::TT0Prime => Ok(()),
    }
}

/// Diagonalizable realization of a realizable point: a companion-like
/// realization of the first four values bonded at `2` with
/// `[[0,2],[2,0]]`, `u = [1/2,1/2]`, `v = [1,1]`, then certified against
/// the fully diagonal Jordan structure.
pub fn diagonalizable_realization(point: &Family5Point, d1: &D1Choice) -> Result<Family5Realization, Error> {
    check_construction_domain(point)?;
    let verdict = point.torre();
    if !verdict.realizable() {
        return Err(Error::Domain(format!(
            "list {} is not realizable: {}",
            point.list,
            verdict.detail.join("; ")
        )));
    }
    let coeffs = point.gamma1_coeffs();
    let interval = feasible_d1(&coeffs).ok_or_else(|| {
        Error::ConstructionUnavailable(format!("no d1 makes the companion nonnegative for {}", point.list))
    })?;
    let d1 = match d1 {
        D1Choice::Value(v) => v.clone(),
        D1Choice::Auto => interval.midpoint().ok_or_else(|| {
            Error::ConstructionUnavailable(format!("feasible interval {interval} holds no usable rational"))
        })?,
    };
    let (companion, params) = companion4(&coeffs, &d1)?;
    let b = RationalMatrix::from_rows(vec![vec![int(0), int(2)], vec![int(2), int(0)]])?;
    let half = Rational::new(1.into(), 2.into());
    let bond = smigoc_bond(
        &companion,
        &b,
        &int(2),
        Some((vec![half.clone(), half], vec![int(1), int(1)])),
        false,
    )?;
    let certificate = verify_certificate(&bond.matrix, &point.list, Some(&JordanSpec::diagonal(&point.list)));
    Ok(Family5Realization {
        point: point.clone(),
        companion,
        params,
        bond,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionRow {
    pub t0: Rational,
    pub t: Rational,
    pub torre: bool,
    pub boundary_member: bool,
    pub symmetric: bool,
}

pub const REGION_CSV_HEADER: &str = "t0,t,torre,boundary_member,symmetric";

/// Every grid point `(i step, j step)` inside the region triangle of
/// `family`, with both tests evaluated. Rows are ordered by `t0`, then `t`.
pub fn region_grid(family: Family, step: &Rational) -> Result<Vec<RegionRow>, Error> {
    if *step <= int(0) {
        return Err(Error::Domain(format!("grid step {step} must be positive")));
    }
    let count = |limit: i64| -> Result<i64, Error> {
        let n = (int(limit) / step).floor().to_integer();
        i64::try_from(n)
            .ok()
            .filter(|&n| n <= 100_000)
            .ok_or_else(|| Error::Domain(format!("grid step {step} gives too many points")))
    };
    let (t0_max, t_max) = match family {
        Family::PmT => (0, count(3)?),
        Family::TT0 => (count(2)?, count(1)?),
        Family::TT0Prime => (count(1)?, count(1)?),
    };
    let rows: Vec<Vec<RegionRow>> = (0..=t0_max)
        .into_par_iter()
        .map(|i| {
            let t0 = step * int(i);
            (0..=t_max)
                .filter_map(|j| {
                    let t = step * int(j);
                    let flags = region_member(family, &t0, &t).ok()?;
                    let point = make_point(family, &t0, &t).ok()?;
                    Some(RegionRow {
                        torre: point.torre().realizable(),
                        boundary_member: flags.member,
                        symmetric: flags.symmetric,
                        t0: t0.clone(),
                        t,
                    })
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn region_csv(rows: &[RegionRow]) -> String {
    let mut out = String::from(REGION_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_decimal(&r.t0),
            format_decimal(&r.t),
            r.torre,
            r.boundary_member,
            r.symmetric
        ));
    }
    out
}
