//! JSON encoding of elements and matrices.
//!
//! Element: `{"algebra": tag, "mode": "exact"|"float", "terms": [{"irrep",
//! "row", "col", "re", "im"}]}`, exact scalars as `"p/q"` strings. Matrix:
//! `{"n": n, "entries": [[element, ...], ...]}`.

use num::complex::Complex64;
use num::BigRational;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::scalar::{format_fraction, parse_fraction, GaussRat, Scalar, ScalarMode};

use super::{AlgebraElement, BasisIndex, MatrixOverPol, PolAlgebra};

#[derive(Serialize)]
struct TermDoc {
    irrep: Value,
    row: u32,
    col: u32,
    re: Value,
    im: Value,
}

#[derive(Serialize)]
struct ElementDoc<'a> {
    algebra: &'a str,
    mode: ScalarMode,
    terms: Vec<TermDoc>,
}

#[derive(Serialize)]
struct MatrixDoc<'a> {
    n: usize,
    entries: Vec<Vec<ElementDoc<'a>>>,
}

fn float_value(x: f64) -> Value {
    // integral floats keep a fractional part so they re-read as floats
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn element_doc(a: &AlgebraElement) -> ElementDoc<'_> {
    let ring = a.algebra().ring();
    let terms = a
        .terms()
        .map(|(idx, c)| {
            let (re, im) = match c {
                Scalar::Exact(q) => (
                    Value::String(format_fraction(&q.re)),
                    Value::String(format_fraction(&q.im)),
                ),
                Scalar::Float(z) => (float_value(z.re), float_value(z.im)),
            };
            TermDoc {
                irrep: ring.label_to_json(idx.label),
                row: idx.row,
                col: idx.col,
                re,
                im,
            }
        })
        .collect();
    ElementDoc {
        algebra: a.algebra().tag(),
        mode: a.algebra().mode(),
        terms,
    }
}

pub fn element_to_value(a: &AlgebraElement) -> Value {
    serde_json::to_value(element_doc(a)).expect("serializable")
}

/// Compact serialization; terms in basis order.
pub fn element_to_string(a: &AlgebraElement) -> String {
    serde_json::to_string(&element_doc(a)).expect("serializable")
}

pub fn matrix_to_value(t: &MatrixOverPol) -> Value {
    serde_json::to_value(matrix_doc(t)).expect("serializable")
}

pub fn matrix_to_string(t: &MatrixOverPol) -> String {
    serde_json::to_string(&matrix_doc(t)).expect("serializable")
}

fn matrix_doc(t: &MatrixOverPol) -> MatrixDoc<'_> {
    let n = t.n();
    MatrixDoc {
        n,
        entries: (0..n)
            .map(|i| (0..n).map(|j| element_doc(t.get(i, j))).collect())
            .collect(),
    }
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        schema(
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn object<'a>(v: &'a Value, path: &str, keys: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    for k in obj.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(schema(&format!("{path}.{k}"), "unknown field"));
        }
    }
    for k in keys {
        if !obj.contains_key(*k) {
            return Err(schema(path, format!("missing field `{k}`")));
        }
    }
    Ok(obj)
}

fn index_field(obj: &Map<String, Value>, key: &str, path: &str) -> Result<u32> {
    obj[key]
        .as_u64()
        .filter(|&x| x >= 1 && x <= u32::MAX as u64)
        .map(|x| x as u32)
        .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a positive integer"))
}

fn exact_part(v: &Value, path: &str) -> Result<BigRational> {
    let s = v
        .as_str()
        .ok_or_else(|| schema(path, "exact coefficients must be \"p/q\" strings"))?;
    parse_fraction(s).map_err(|e| schema(path, e.to_string()))
}

fn float_part(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| schema(path, "float coefficients must be numbers"))
}

/// Parses an element given as a JSON value; `algebra` pins the expected
/// algebra when the element sits inside a matrix.
pub fn element_from_value(v: &Value, path: &str, expect: Option<&PolAlgebra>) -> Result<AlgebraElement> {
    let obj = object(v, path, &["algebra", "mode", "terms"])?;
    let tag = obj["algebra"]
        .as_str()
        .ok_or_else(|| schema(&format!("{path}.algebra"), "expected a ring tag string"))?;
    let mode: ScalarMode = serde_json::from_value(obj["mode"].clone())
        .map_err(|_| schema(&format!("{path}.mode"), "expected \"exact\" or \"float\""))?;
    let alg = match expect {
        Some(a) if a.tag() == tag && a.mode() == mode => a.clone(),
        Some(a) => return Err(Error::MixedAlgebras(a.tag().to_string(), tag.to_string())),
        None => {
            let ring = FusionRing::parse(tag).map_err(|e| schema(&format!("{path}.algebra"), e.to_string()))?;
            PolAlgebra::with_mode(ring, mode)?
        }
    };
    let terms = obj["terms"]
        .as_array()
        .ok_or_else(|| schema(&format!("{path}.terms"), "expected an array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let tp = format!("{path}.terms[{k}]");
        let to = object(t, &tp, &["irrep", "row", "col", "re", "im"])?;
        let label = alg
            .ring()
            .label_from_json(&to["irrep"])
            .map_err(|e| schema(&format!("{tp}.irrep"), e.to_string()))?;
        let idx = BasisIndex::new(label, index_field(to, "row", &tp)?, index_field(to, "col", &tp)?);
        alg.validate_index(idx)?;
        let c = match mode {
            ScalarMode::Exact => Scalar::Exact(GaussRat::new(
                exact_part(&to["re"], &format!("{tp}.re"))?,
                exact_part(&to["im"], &format!("{tp}.im"))?,
            )),
            ScalarMode::Float => Scalar::Float(Complex64::new(
                float_part(&to["re"], &format!("{tp}.re"))?,
                float_part(&to["im"], &format!("{tp}.im"))?,
            )),
        };
        out.push((idx, c));
    }
    AlgebraElement::from_terms(&alg, out)
}

pub fn element_from_str(text: &str) -> Result<AlgebraElement> {
    element_from_value(&parse_text(text)?, "$", None)
}

pub fn matrix_from_value(v: &Value) -> Result<MatrixOverPol> {
    let obj = object(v, "$", &["n", "entries"])?;
    let n = obj["n"]
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| schema("$.n", "expected a positive integer"))? as usize;
    let rows = obj["entries"]
        .as_array()
        .ok_or_else(|| schema("$.entries", "expected an array of rows"))?;
    if rows.len() != n {
        return Err(schema("$.entries", format!("expected {n} rows, got {}", rows.len())));
    }
    let mut alg: Option<PolAlgebra> = None;
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let path = format!("$.entries[{i}]");
        let items = row.as_array().ok_or_else(|| schema(&path, "expected an array"))?;
        if items.len() != n {
            return Err(schema(&path, format!("expected {n} entries, got {}", items.len())));
        }
        let mut r = Vec::with_capacity(n);
        for (j, e) in items.iter().enumerate() {
            let el = element_from_value(e, &format!("{path}[{j}]"), alg.as_ref())?;
            alg.get_or_insert_with(|| el.algebra().clone());
            r.push(el);
        }
        out.push(r);
    }
    MatrixOverPol::new(&alg.expect("n ≥ 1"), out)
}

/// Accepts either a matrix document or a bare element (read as `[a]`).
pub fn matrix_from_str(text: &str) -> Result<MatrixOverPol> {
    let v = parse_text(text)?;
    if v.get("entries").is_some() {
        matrix_from_value(&v)
    } else {
        Ok(MatrixOverPol::scalar(element_from_value(&v, "$", None)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_roundtrip_is_byte_identical() {
        let text = r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":1,"col":1,"re":"1","im":"0"},{"irrep":1,"row":1,"col":1,"re":"-1","im":"0"}]}"#;
        let a = element_from_str(text).unwrap();
        assert_eq!(a.support().len(), 2);
        assert_eq!(element_to_string(&a), text);
        let m = matrix_from_str(&matrix_to_string(&MatrixOverPol::scalar(a.clone()))).unwrap();
        assert_eq!(m.get(0, 0), &a);
    }

    #[test]
    fn empty_terms_is_zero() {
        let a = element_from_str(r#"{"algebra":"group:Z^2","mode":"exact","terms":[]}"#).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let row2 = r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":2,"col":1,"re":"1","im":"0"}]}"#;
        assert!(matches!(element_from_str(row2), Err(Error::IndexOutOfRange { .. })));
        let decimal = r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":1,"col":1,"re":"0.5","im":"0"}]}"#;
        assert!(matches!(element_from_str(decimal), Err(Error::Schema { .. })));
        let extra = r#"{"algebra":"group:Z","mode":"exact","terms":[],"x":1}"#;
        match element_from_str(extra) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.x"),
            other => panic!("{other:?}"),
        }
        match element_from_str("{\"algebra\":\n}") {
            Err(Error::Schema { path, .. }) => assert!(path.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_and_named_labels() {
        let text = r#"{"algebra":"finite:S3","mode":"float","terms":[{"irrep":"std","row":1,"col":2,"re":0.5,"im":-0.25}]}"#;
        let a = element_from_str(text).unwrap();
        let again = element_from_str(&element_to_string(&a)).unwrap();
        assert_eq!(a, again);
    }
}
