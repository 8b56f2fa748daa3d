//! JSON encodings of matrices, spectra and Jordan structures.
//!
//! Matrices use `{"rows": n, "cols": m, "entries": [[...], ...]}`. Entries
//! may be JSON strings (`"171/25"`, `"2.52"`, `"-3"`) or JSON numbers; both
//! are read as exact rationals, numbers through their shortest decimal form.

use serde_json::{json, Value};

use crate::matrix::{FloatMatrix, RationalMatrix};
use crate::scalar::{parse_rational, Rational};
use crate::spectrum::{JordanSpec, Spectrum};
use crate::Error;

fn parse_entry(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number or string, got {other}"))),
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, Error> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn count(v: &Value, name: &str) -> Result<usize, Error> {
    field(v, name)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("field {name:?} must be a nonnegative integer")))
}

pub fn matrix_from_value(v: &Value) -> Result<RationalMatrix, Error> {
    let rows = count(v, "rows")?;
    let cols = count(v, "cols")?;
    let entries = field(v, "entries")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"entries\" must be an array of rows".into()))?;
    if entries.len() != rows {
        return Err(Error::Dimension(format!(
            "declared {rows} rows, found {}",
            entries.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
        if row.len() != cols {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries, declared {cols}",
                row.len()
            )));
        }
        for x in row {
            data.push(parse_entry(x)?);
        }
    }
    RationalMatrix::new(rows, cols, data)
}

pub fn matrix_to_value(m: &RationalMatrix) -> Value {
    let entries: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn float_matrix_to_value(m: &FloatMatrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": m.to_rows()})
}

/// Accepts `["3", "-1", ...]` or `{"eigenvalues": [...]}`.
pub fn spectrum_from_value(v: &Value) -> Result<Spectrum, Error> {
    let list = match v {
        Value::Array(a) => a,
        Value::Object(_) => field(v, "eigenvalues")?
            .as_array()
            .ok_or_else(|| Error::Parse("\"eigenvalues\" must be an array".into()))?,
        other => return Err(Error::Parse(format!("not a spectrum: {other}"))),
    };
    Ok(Spectrum::new(
        list.iter().map(parse_entry).collect::<Result<Vec<_>, _>>()?,
    ))
}

pub fn spectrum_to_value(s: &Spectrum) -> Value {
    let values: Vec<String> = s.values().iter().map(ToString::to_string).collect();
    json!({ "eigenvalues": values })
}

/// Accepts `{"-2": [2], "3": [1]}` or `{"blocks": {...}}`.
pub fn jordan_from_value(v: &Value) -> Result<JordanSpec, Error> {
    let map = v
        .get("blocks")
        .unwrap_or(v)
        .as_object()
        .ok_or_else(|| Error::Parse("a Jordan spec must be an object".into()))?;
    let mut blocks = Vec::with_capacity(map.len());
    for (key, sizes) in map {
        let sizes = sizes
            .as_array()
            .ok_or_else(|| Error::Parse(format!("block sizes for {key} must be an array")))?
            .iter()
            .map(|s| {
                s.as_u64()
                    .filter(|&s| s > 0)
                    .map(|s| s as usize)
                    .ok_or_else(|| Error::Parse(format!("bad block size {s} for {key}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push((parse_rational(key)?, sizes));
    }
    Ok(JordanSpec::new(blocks))
}

pub fn jordan_to_value(j: &JordanSpec) -> Value {
    let map: serde_json::Map<String, Value> = j.iter().map(|(v, s)| (v.to_string(), json!(s))).collect();
    json!({ "blocks": map })
}

pub fn read_json(path: &std::path::Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn matrix_round_trip_with_mixed_entries() {
        let v: Value =
            serde_json::from_str(r#"{"rows": 2, "cols": 2, "entries": [["2.52", "1/3"], [0.09, -4]]}"#).unwrap();
        let m = matrix_from_value(&v).unwrap();
        assert_eq!(m[(0, 0)], ratio(63, 25));
        assert_eq!(m[(1, 0)], ratio(9, 100));
        assert_eq!(m[(1, 1)], int(-4));
        assert_eq!(matrix_from_value(&matrix_to_value(&m)).unwrap(), m);
    }

    #[test]
    fn matrix_shape_errors() {
        let v: Value = serde_json::from_str(r#"{"rows": 2, "cols": 2, "entries": [["1", "2"]]}"#).unwrap();
        assert!(matches!(matrix_from_value(&v), Err(Error::Dimension(_))));
        let v: Value = serde_json::from_str(r#"{"rows": 1, "cols": 1, "entries": [[true]]}"#).unwrap();
        assert!(matches!(matrix_from_value(&v), Err(Error::Parse(_))));
    }

    #[test]
    fn spectrum_and_jordan_forms() {
        let a: Value = serde_json::from_str(r#"["2.8", "2.2", -1, "-2", "-2"]"#).unwrap();
        let s = spectrum_from_value(&a).unwrap();
        assert_eq!(s.multiplicity(&int(-2)), 2);
        assert_eq!(spectrum_from_value(&spectrum_to_value(&s)).unwrap(), s);
        let j: Value = serde_json::from_str(r#"{"-2": [2], "14/5": [1]}"#).unwrap();
        let j = jordan_from_value(&j).unwrap();
        assert_eq!(j.blocks(&int(-2)), &[2]);
        assert_eq!(jordan_from_value(&jordan_to_value(&j)).unwrap(), j);
    }
}
