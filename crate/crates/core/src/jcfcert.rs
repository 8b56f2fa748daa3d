//! Exact Jordan structure and realization certificates.
//!
//! Everything here works over rational spectra: ranks of `(A - lambda I)^k`
//! are computed exactly, so a passing certificate is a proof of the claimed
//! Jordan form, not an estimate.

pub use crate::obstruction::obstruction_check;
use serde_json::{json, Value};

use crate::io::{jordan_to_value, matrix_to_value, spectrum_to_value};
use crate::linalg::{char_poly, exact_rank};
use crate::matrix::{FloatMatrix, RationalMatrix};
use crate::scalar::{format_decimal, Rational};
use crate::spectrum::{segre_from_weyr, JordanSpec, Spectrum};
use crate::Error;

/// Version tag carried by certificate JSON.
pub const SCHEMA_VERSION: u32 = 1;

/// Singular values below this (relative to the largest) count as zero in
/// [`weyr_estimate_float`].
pub const FLOAT_RANK_THRESHOLD: f64 = 1e-8;

/// `w_k = nullity((A - lambda I)^k)` for `k = 1, 2, ...` until it reaches
/// the algebraic multiplicity. Empty when `lambda` is not an eigenvalue.
pub fn weyr_sequence(a: &RationalMatrix, lambda: &Rational) -> Result<Vec<usize>, Error> {
    let n = a.ensure_square()?;
    let multiplicity = char_poly(a)?.root_multiplicity(lambda);
    Ok(weyr_with_multiplicity(a, lambda, n, multiplicity))
}

fn weyr_with_multiplicity(a: &RationalMatrix, lambda: &Rational, n: usize, m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let base = a.shift(lambda);
    let mut power = base.clone();
    loop {
        let w = n - exact_rank(&power);
        let stalled = out.last() == Some(&w);
        out.push(w);
        if w >= m || stalled {
            return out;
        }
        power = &power * &base;
    }
}

/// Float Weyr estimate by singular-value thresholding. Not a certificate:
/// numerical rank can be wrong near the threshold.
pub fn weyr_estimate_float(a: &FloatMatrix, lambda: f64) -> Result<Vec<usize>, Error> {
    let n = a.ensure_square()?;
    let base = nalgebra::DMatrix::from_row_slice(n, n, a.shift(&lambda).entries());
    let mut power = base.clone();
    let mut out: Vec<usize> = Vec::new();
    for _ in 0..n {
        let sv = power.clone().singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
        let rank = sv.iter().filter(|&&s| s > FLOAT_RANK_THRESHOLD * top).count();
        let w = n - rank;
        if out.last() == Some(&w) {
            break;
        }
        out.push(w);
        power = &power * &base;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// Jordan structure of `a`, after checking that its characteristic
/// polynomial splits over `spectrum`.
pub fn jordan_spec(a: &RationalMatrix, spectrum: &Spectrum) -> Result<JordanSpec, Error> {
    let n = a.ensure_square()?;
    let p = char_poly(a)?;
    let q = spectrum.char_poly();
    if p != q {
        return Err(Error::SpectrumMismatch(format!(
            "char poly {p} differs from {q} by {}",
            &p - &q
        )));
    }
    let mut blocks = Vec::new();
    for (lambda, m) in spectrum.iter() {
        let weyr = weyr_with_multiplicity(a, lambda, n, m);
        let segre = segre_from_weyr(&weyr)
            .ok_or_else(|| Error::InvariantViolation(format!("Weyr sequence {weyr:?} has increasing steps")))?;
        blocks.push((lambda.clone(), segre));
    }
    Ok(JordanSpec::new(blocks))
}

/// Integer partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every Jordan structure the spectrum allows. The smallest eigenvalue
/// varies slowest; partitions appear in reverse lexicographic order.
pub fn enumerate_jordan_forms(spectrum: &Spectrum) -> Vec<JordanSpec> {
    let mut forms: Vec<Vec<(Rational, Vec<usize>)>> = vec![Vec::new()];
    for (lambda, m) in spectrum.iter() {
        let parts = partitions(m);
        forms = forms
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push((lambda.clone(), p.clone()));
                    next
                })
            })
            .collect();
    }
    forms.into_iter().map(JordanSpec::new).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationCertificate {
    pub matrix: RationalMatrix,
    pub claimed_spectrum: Spectrum,
    /// Absent claims are filled with the computed structure.
    pub claimed_jordan: Option<JordanSpec>,
    /// Structure read off the Weyr sequences, when the spectrum matched.
    pub computed_jordan: Option<JordanSpec>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl RealizationCertificate {
    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_value(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "verdict": self.verdict(),
            "matrix": matrix_to_value(&self.matrix),
            "spectrum": spectrum_to_value(&self.claimed_spectrum),
            "claimed_jordan": self.claimed_jordan.as_ref().map(jordan_to_value),
            "computed_jordan": self.computed_jordan.as_ref().map(jordan_to_value),
            "checks": checks,
        })
    }
}

/// Checks nonnegativity, the characteristic polynomial and, per
/// eigenvalue, the Weyr sequence against the claimed Jordan structure.
/// Failures are reported in the verdict, never as errors.
pub fn verify_certificate(
    matrix: &RationalMatrix,
    claimed_spectrum: &Spectrum,
    claimed_jordan: Option<&JordanSpec>,
) -> RealizationCertificate {
    let mut checks = Vec::new();
    let n = matrix.rows();
    let square = matrix.is_square();
    checks.push(Check::new(
        "shape",
        square && claimed_spectrum.order() == n,
        format!(
            "{}x{} matrix, spectrum of size {}",
            matrix.rows(),
            matrix.cols(),
            claimed_spectrum.order()
        ),
    ));
    checks.push(match matrix.first_negative() {
        None => Check::new("nonnegativity", true, "all entries >= 0"),
        Some((i, j, v)) => Check::new("nonnegativity", false, format!("entry ({i}, {j}) = {v}")),
    });

    let mut computed_jordan = None;
    if square {
        let p = char_poly(matrix).expect("square");
        let q = claimed_spectrum.char_poly();
        let same = p == q;
        checks.push(Check::new(
            "char_poly",
            same,
            if same {
                format!("{p}")
            } else {
                format!("computed {p}, claimed {q}")
            },
        ));
        if let Some(j) = claimed_jordan {
            let js = j.spectrum();
            checks.push(Check::new(
                "jordan_multiplicities",
                js == *claimed_spectrum,
                format!("claimed structure {j} covers {js}"),
            ));
        }
        let mut blocks = Vec::new();
        for (lambda, _) in claimed_spectrum.iter() {
            let m = p.root_multiplicity(lambda);
            let weyr = weyr_with_multiplicity(matrix, lambda, n, m);
            let segre = segre_from_weyr(&weyr).unwrap_or_default();
            let expected = claimed_jordan.map(|j| j.weyr(lambda));
            let passed = m > 0 && expected.as_ref().is_none_or(|e| *e == weyr);
            let mut detail = format!("weyr {weyr:?}, blocks {segre:?}");
            if let Some(e) = &expected {
                detail.push_str(&format!(", claimed weyr {e:?}"));
            }
            checks.push(Check::new(format!("weyr[{}]", format_decimal(lambda)), passed, detail));
            blocks.push((lambda.clone(), segre));
        }
        if same {
            computed_jordan = Some(JordanSpec::new(blocks));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    RealizationCertificate {
        matrix: matrix.clone(),
        claimed_spectrum: claimed_spectrum.clone(),
        claimed_jordan: claimed_jordan.cloned(),
        computed_jordan,
        passed,
        checks,
    }
}
