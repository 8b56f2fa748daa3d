use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};
use spectra_core::bonding::smigoc_bond;
use spectra_core::family5::{
    diagonalizable_realization, make_point, region_csv, region_grid, D1Choice, Family, Family5Realization,
};
use spectra_core::io::{
    float_matrix_to_value, jordan_from_value, jordan_to_value, matrix_from_value, matrix_to_value, read_json,
    spectrum_from_value, spectrum_to_value,
};
use spectra_core::jcfcert::{enumerate_jordan_forms, jordan_spec, verify_certificate, SCHEMA_VERSION};
use spectra_core::linalg::char_poly;
use spectra_core::perturb::{rank_one_shift, row_sum_constant, ur_shift};
use spectra_core::rowsum::{to_constant_row_sums, to_constant_row_sums_float, Mode, RowSumResult};
use spectra_core::scalar::parse_rational;
use spectra_core::{Error, JordanSpec, Matrix, Rational, Scalar, Spectrum};

use crate::{BondArgs, GuoShiftArgs, JordanFormsArgs, NormalizeArgs, Outcome, Realize5Args, RegionArgs, VerifyArgs};

pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_json(out: Option<&Path>, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(out, &text)
}

fn load(path: &Path) -> Result<Value> {
    read_json(path).with_context(|| format!("reading {}", path.display()))
}

fn rational_array(v: &Value, what: &str) -> Result<Vec<Rational>> {
    let items = v.as_array().with_context(|| format!("{what} must be a JSON array"))?;
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("{what}: not a number: {other}"))),
        })
        .collect::<Result<_, _>>()
        .map_err(Into::into)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn transcript_value<T: Scalar>(r: &RowSumResult<T>, mat: impl Fn(&Matrix<T>) -> Value) -> Value {
    let steps: Vec<Value> = r
        .transcript
        .iter()
        .map(|s| {
            json!({
                "kind": s.kind.name(),
                "blocks": s.blocks,
                "note": s.note,
                "factor": mat(&s.factor),
            })
        })
        .collect();
    json!(steps)
}

pub fn normalize(args: NormalizeArgs) -> Result<Outcome> {
    let a = matrix_from_value(&load(&args.input)?)?;
    let exact = match args.mode {
        Mode::Exact => match to_constant_row_sums(&a) {
            Ok(r) => Some(r),
            Err(Error::Mode(msg)) => {
                eprintln!("warning: exact mode unavailable ({msg}); using float mode");
                None
            }
            Err(e) => return Err(e.into()),
        },
        Mode::Float => None,
    };
    let v = match exact {
        Some(r) => json!({
            "schema_version": SCHEMA_VERSION,
            "mode": "exact",
            "lambda1": r.lambda1.to_string(),
            "b": matrix_to_value(&r.b),
            "s": matrix_to_value(&r.s),
            "transcript": transcript_value(&r, matrix_to_value),
            "warnings": r.warnings,
        }),
        None => {
            let r = to_constant_row_sums_float(&a.to_float())?;
            let mut warnings = r.warnings.clone();
            if args.mode == Mode::Exact {
                warnings.insert(0, "exact mode unavailable: the Perron root is not rational".into());
            }
            json!({
                "schema_version": SCHEMA_VERSION,
                "mode": "float",
                "lambda1": r.lambda1,
                "b": float_matrix_to_value(&r.b),
                "s": float_matrix_to_value(&r.s),
                "transcript": transcript_value(&r, float_matrix_to_value),
                "warnings": warnings,
            })
        }
    };
    emit_json(args.out.as_deref(), &v)?;
    Ok(Outcome::Pass)
}

fn certificate_outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::CertificateFailed
    }
}

/// The Jordan structure of `a` with the 1x1 block at `old` moved to `new`.
fn shifted_jordan(
    a: &spectra_core::RationalMatrix,
    spectrum: &Spectrum,
    old: &Rational,
    new: &Rational,
) -> Result<JordanSpec> {
    let j = jordan_spec(a, spectrum)?;
    Ok(j.remove_block(old, 1)?
        .union(&JordanSpec::new([(new.clone(), vec![1])])))
}

pub fn guo_shift(args: GuoShiftArgs) -> Result<Outcome> {
    let a = matrix_from_value(&load(&args.input)?)?;
    let spectrum = spectrum_from_value(&load(&args.spectrum)?)?;
    let eps = parse_rational(&args.eps)?;
    let (matrix, shifted, lambda1, extra) = match &args.q {
        Some(path) => {
            let q = rational_array(&load(path)?, "q")?;
            let sum: Rational = q.iter().sum();
            if sum != eps {
                bail!("q sums to {sum}, but --eps is {eps}");
            }
            let lambda1 = row_sum_constant(&a)?;
            let c = rank_one_shift(&a, &q, &spectrum)?;
            let shifted = spectrum.replace_one(&lambda1, &lambda1 + &eps)?;
            (c, shifted, lambda1, json!({ "q": strings(&q) }))
        }
        None => {
            let out = ur_shift(&a, &spectrum, &eps)?;
            let lambda1 = out.normalized.lambda1.clone();
            let extra = json!({
                "normalized": matrix_to_value(&out.normalized.b),
                "similarity": matrix_to_value(&out.normalized.s),
                "transcript": transcript_value(&out.normalized, matrix_to_value),
            });
            (out.matrix, out.shifted, lambda1, extra)
        }
    };
    let moved = &lambda1 + &eps;
    let claimed = shifted_jordan(&a, &spectrum, &lambda1, &moved)?;
    let cert = verify_certificate(&matrix, &shifted, Some(&claimed));
    let mut v = cert.to_value();
    v["construction"] = json!({
        "lambda1": lambda1.to_string(),
        "eps": eps.to_string(),
        "details": extra,
    });
    emit_json(args.out.as_deref(), &v)?;
    Ok(certificate_outcome(cert.passed))
}

pub fn bond(args: BondArgs) -> Result<Outcome> {
    let a = matrix_from_value(&load(&args.a)?)?;
    let b = matrix_from_value(&load(&args.b)?)?;
    let c = parse_rational(&args.c)?;
    let vectors = match (&args.u, &args.v) {
        (Some(u), Some(v)) => Some((rational_array(&load(u)?, "u")?, rational_array(&load(v)?, "v")?)),
        _ => None,
    };
    let bond = smigoc_bond(&a, &b, &c, vectors, args.auto_normalize)?;
    let construction = json!({
        "u": strings(&bond.u),
        "v": strings(&bond.v),
        "c": c.to_string(),
    });
    let (mut v, passed) = match &bond.jordan {
        Some(check) => {
            let spectrum = check.expected.spectrum();
            let cert = verify_certificate(&bond.matrix, &spectrum, Some(&check.expected));
            (cert.to_value(), cert.passed && check.holds())
        }
        None => {
            // irrational spectra: only the characteristic identity was checked
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "verdict": "pass",
                "matrix": matrix_to_value(&bond.matrix),
                "char_poly": char_poly(&bond.matrix)?.to_string(),
                "checks": [{"name": "char_identity", "passed": true,
                            "detail": "char(C) (x - c) = char(A) char(B)"}],
                "note": "spectra are not rational; Jordan structure not certified",
            });
            (v, true)
        }
    };
    v["construction"] = construction;
    emit_json(args.out.as_deref(), &v)?;
    Ok(certificate_outcome(passed))
}

pub fn realization_value(r: &Family5Realization) -> Value {
    let p = &r.point;
    let [k2, k3, k4, k5] = &p.coeffs;
    let torre = p.torre();
    let region = p.region().ok().map(|f| {
        json!({
            "boundary": f.boundary,
            "member": f.member,
            "symmetric": f.symmetric,
        })
    });
    let gamma = Spectrum::new(p.gamma1());
    let interval = r.params.feasible_interval.as_ref().map(|iv| {
        json!({
            "lo": iv.lo.to_string(),
            "hi": iv.hi.to_string(),
            "lo_approx": iv.lo.to_f64(),
            "hi_approx": iv.hi.to_f64(),
        })
    });
    let mut v = r.certificate.to_value();
    v["construction"] = json!({
        "family": p.family.name(),
        "t0": p.t0.to_string(),
        "t": p.t.to_string(),
        "list": spectrum_to_value(&p.list),
        "coefficients": {
            "k2": k2.to_string(), "k3": k3.to_string(), "k4": k4.to_string(), "k5": k5.to_string(),
        },
        "torre": {
            "a": torre.a, "b": torre.b, "c": torre.c,
            "realizable": torre.realizable(),
            "detail": torre.detail,
        },
        "region": region,
        "gamma1": spectrum_to_value(&gamma),
        "gamma1_char_poly": gamma.char_poly().to_string(),
        "d1_interval": interval,
        "d1": r.params.d1.to_string(),
        "d3": r.params.d3.to_string(),
        "b": r.params.b.to_string(),
        "a": r.params.a.to_string(),
        "companion": matrix_to_value(&r.companion),
        "partner": {"entries": [["0", "2"], ["2", "0"]]},
        "u": strings(&r.bond.u),
        "v": strings(&r.bond.v),
    });
    v
}

pub fn realize5(args: Realize5Args) -> Result<Outcome> {
    let family: Family = args.family.parse()?;
    let t0 = parse_rational(&args.t0)?;
    let t = parse_rational(&args.t)?;
    let d1: D1Choice = args.d1.parse()?;
    let point = make_point(family, &t0, &t)?;
    let r = diagonalizable_realization(&point, &d1)?;
    emit_json(args.out.as_deref(), &realization_value(&r))?;
    Ok(certificate_outcome(r.certificate.passed))
}

pub fn region(args: RegionArgs) -> Result<Outcome> {
    let family: Family = args.family.parse()?;
    let step = parse_rational(&args.grid_step)?;
    let rows = region_grid(family, &step)?;
    emit(args.out.as_deref(), &region_csv(&rows))?;
    Ok(Outcome::Pass)
}

pub fn verify(args: VerifyArgs) -> Result<Outcome> {
    let m = matrix_from_value(&load(&args.matrix)?)?;
    let s = spectrum_from_value(&load(&args.spectrum)?)?;
    let j = match &args.jordan {
        Some(p) => Some(jordan_from_value(&load(p)?)?),
        None => None,
    };
    let cert = verify_certificate(&m, &s, j.as_ref());
    emit_json(args.out.as_deref(), &cert.to_value())?;
    Ok(certificate_outcome(cert.passed))
}

pub fn jordan_forms(args: JordanFormsArgs) -> Result<Outcome> {
    let s = spectrum_from_value(&load(&args.spectrum)?)?;
    let forms: Vec<Value> = enumerate_jordan_forms(&s).iter().map(jordan_to_value).collect();
    let mut v = Map::new();
    v.insert("schema_version".into(), json!(SCHEMA_VERSION));
    v.insert("spectrum".into(), spectrum_to_value(&s));
    v.insert("count".into(), json!(forms.len()));
    v.insert("forms".into(), Value::Array(forms));
    emit_json(args.out.as_deref(), &Value::Object(v))?;
    Ok(Outcome::Pass)
}
