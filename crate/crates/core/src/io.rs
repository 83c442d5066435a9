//! The `sym3-v1` tensor file format:
//!
//! ```json
//! {"format": "sym3-v1", "field": "rational", "components": ["3/5", "0/1", ...]}
//! ```
//!
//! Ten components in the order A111, A112, A113, A122, A123, A133, A222,
//! A223, A233, A333. Rational components are strings `p/q` (a bare integer
//! `p` is accepted on input); float components are JSON numbers.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{format_ratio, parse_ratio, ExactScalar, Field, Scalar};
use crate::tensor::Sym3Tensor;

pub const FORMAT_TAG: &str = "sym3-v1";

/// A tensor read from a file, in whichever field the file declared.
#[derive(Debug, Clone, PartialEq)]
pub enum TensorData {
    Rational(Sym3Tensor<ExactScalar>),
    Float(Sym3Tensor<f64>),
}

impl TensorData {
    pub fn field(&self) -> Field {
        match self {
            TensorData::Rational(_) => Field::Rational,
            TensorData::Float(_) => Field::Float,
        }
    }

    /// The exact tensor, or a field-mismatch error for float data.
    pub fn exact(&self) -> Result<&Sym3Tensor<ExactScalar>> {
        match self {
            TensorData::Rational(t) => Ok(t),
            TensorData::Float(_) => Err(Error::field_mismatch(Field::Rational, Field::Float)),
        }
    }

    /// Float view; rational data is converted.
    pub fn to_float(&self) -> Sym3Tensor<f64> {
        match self {
            TensorData::Rational(t) => t.map(Scalar::to_f64),
            TensorData::Float(t) => t.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RawFile {
    format: String,
    field: String,
    components: Vec<Value>,
}

fn rational_component(v: &Value) -> Result<ExactScalar> {
    match v {
        Value::String(s) => parse_ratio(s),
        Value::Number(n) if n.is_i64() => Ok(ExactScalar::from_i64(n.as_i64().expect("checked"))),
        other => Err(Error::Malformed(format!("rational component must be a \"p/q\" string, got {other}"))),
    }
}

fn float_component(v: &Value) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Malformed(format!("float component must be a finite number, got {v}")))
}

fn collect<S, F: Fn(&Value) -> Result<S>>(values: &[Value], f: F) -> Result<[S; 10]> {
    let parsed: Vec<S> = values.iter().map(f).collect::<Result<_>>()?;
    parsed.try_into().map_err(|_| Error::Malformed("expected 10 components".into()))
}

pub fn parse_tensor(text: &str) -> Result<TensorData> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if raw.format != FORMAT_TAG {
        return Err(Error::Malformed(format!("unknown format {:?}, expected {FORMAT_TAG:?}", raw.format)));
    }
    if raw.components.len() != 10 {
        return Err(Error::Malformed(format!("expected 10 components, got {}", raw.components.len())));
    }
    match raw.field.as_str() {
        "rational" => Ok(TensorData::Rational(Sym3Tensor::new(collect(&raw.components, rational_component)?))),
        "float" => Ok(TensorData::Float(Sym3Tensor::new(collect(&raw.components, float_component)?))),
        other => Err(Error::Malformed(format!("unknown field {other:?}"))),
    }
}

pub fn read_tensor(path: &Path) -> Result<TensorData> {
    parse_tensor(&std::fs::read_to_string(path)?)
}

pub fn tensor_to_json(t: &TensorData) -> Value {
    let (field, components): (&str, Vec<Value>) = match t {
        TensorData::Rational(a) => {
            ("rational", a.components().iter().map(|c| Value::String(format_ratio(c))).collect())
        }
        TensorData::Float(a) => ("float", a.components().iter().map(|&c| Value::from(c)).collect()),
    };
    serde_json::json!({ "format": FORMAT_TAG, "field": field, "components": components })
}

pub fn write_tensor(path: &Path, t: &TensorData) -> Result<()> {
    let text = serde_json::to_string_pretty(&tensor_to_json(t))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// JSON form of a scalar: `"p/q"` for exact values, a number for floats.
pub fn scalar_to_json<S: Scalar>(x: &S) -> Value {
    match S::FIELD {
        Field::Rational => {
            let exact: &dyn std::any::Any = x;
            Value::String(format_ratio(exact.downcast_ref::<ExactScalar>().expect("rational field")))
        }
        Field::Float => Value::from(x.to_f64()),
    }
}

/// Name-value pairs serialized as a JSON object in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NamedValues(pub Vec<(String, Value)>);

impl Serialize for NamedValues {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let text = r#"{"format":"sym3-v1","field":"rational",
            "components":["3/5","0/1","0","6/5","0/1","-4/5","0/1","1/2","0/1","-1/2"]}"#;
        let t = parse_tensor(text).unwrap();
        assert_eq!(t.field(), Field::Rational);
        let back = parse_tensor(&tensor_to_json(&t).to_string()).unwrap();
        assert_eq!(back, t);
        assert_eq!(tensor_to_json(&t)["components"][2], "0/1");
    }

    #[test]
    fn float_round_trip_and_mismatch() {
        let text = r#"{"format":"sym3-v1","field":"float","components":[1,2,3,4,5,6,7,8,9,0.5]}"#;
        let t = parse_tensor(text).unwrap();
        assert!(matches!(t.exact(), Err(Error::FieldMismatch { .. })));
        assert_eq!(parse_tensor(&tensor_to_json(&t).to_string()).unwrap(), t);
    }

    #[test]
    fn malformed_inputs() {
        for text in [
            r#"{"format":"sym3-v1","field":"float","components":[1,2,3,4,5,6,7,8,9]}"#,
            r#"{"format":"sym3-v2","field":"float","components":[1,2,3,4,5,6,7,8,9,0]}"#,
            r#"{"format":"sym3-v1","field":"complex","components":[1,2,3,4,5,6,7,8,9,0]}"#,
            r#"{"format":"sym3-v1","field":"rational","components":[1,2,3,4,5,6,7,8,9,"1/0"]}"#,
            r#"{"format":"sym3-v1","field":"rational","components":[1,2,3,4,5,6,7,8,9,0.5]}"#,
            r#"{"format":"sym3-v1","field":"float","components":[1,2,3,4,5,6,7,8,9,"x"]}"#,
            "not json",
        ] {
            assert!(matches!(parse_tensor(text), Err(Error::Malformed(_))), "{text}");
        }
    }

    #[test]
    fn scalar_json_forms() {
        assert_eq!(scalar_to_json(&ExactScalar::from_ratio(-6, 4)), Value::String("-3/2".into()));
        assert_eq!(scalar_to_json(&0.25f64), Value::from(0.25));
    }

    #[test]
    fn named_values_keep_order() {
        let v = NamedValues(vec![("b".into(), Value::from(1)), ("a".into(), Value::from(2))]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"b":1,"a":2}"#);
    }
}
