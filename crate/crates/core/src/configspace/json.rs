//! JSON form of a configuration.
//!
//! ```json
//! { "dim": 2, "backend": "exact", "vectors": [[[1,1,0,1],[0,1,0,1]], ...] }
//! { "dim": 2, "backend": "float", "vectors": [[[1.0,0.0],[0.5,-2.0]], ...] }
//! ```
//!
//! Exact entries are `[re_num, re_den, im_num, im_den]`; integers that do not
//! fit in an `i64` are written as decimal strings. `volume_form` is optional
//! and uses the same entry format.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::config::Configuration;
use super::scalar::{GaussRat, Scalar};
use crate::error::{Error, Result};

/// A configuration read from JSON, on whichever backend it declared.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyConfiguration {
    Exact(Configuration<GaussRat>),
    Float(Configuration<Complex64>),
}

impl AnyConfiguration {
    pub fn to_float(&self) -> Configuration<Complex64> {
        match self {
            AnyConfiguration::Exact(c) => c.to_float(),
            AnyConfiguration::Float(c) => c.clone(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing or invalid \"dim\"".into()))? as usize;
        let backend = v.get("backend").and_then(Value::as_str).unwrap_or("exact");
        let vectors = v
            .get("vectors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"vectors\" array".into()))?;
        match backend {
            "exact" => {
                let vs = parse_vectors(vectors, parse_exact)?;
                let mut c = Configuration::new(dim, vs)?;
                if let Some(w) = v.get("volume_form") {
                    c = c.with_volume_form(parse_exact(w)?);
                }
                Ok(AnyConfiguration::Exact(c))
            }
            "float" => {
                let vs = parse_vectors(vectors, parse_float)?;
                let mut c = Configuration::new(dim, vs)?;
                if let Some(w) = v.get("volume_form") {
                    c = c.with_volume_form(parse_float(w)?);
                }
                Ok(AnyConfiguration::Float(c))
            }
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyConfiguration::Exact(c) => exact_to_json(c),
            AnyConfiguration::Float(c) => float_to_json(c),
        }
    }
}

fn parse_vectors<S: Scalar>(vectors: &[Value], entry: fn(&Value) -> Result<S>) -> Result<Vec<Vec<S>>> {
    vectors
        .iter()
        .map(|vec| {
            vec.as_array()
                .ok_or_else(|| Error::Parse("each vector must be an array".into()))?
                .iter()
                .map(entry)
                .collect()
        })
        .collect()
}

fn parse_int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(i.into());
    }
    if let Some(s) = v.as_str() {
        return s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")));
    }
    Err(Error::Parse(format!("expected integer, got {v}")))
}

fn parse_exact(v: &Value) -> Result<GaussRat> {
    let parts = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse(format!("exact entry must be [re_num, re_den, im_num, im_den], got {v}")))?;
    let ints = parts.iter().map(parse_int).collect::<Result<Vec<_>>>()?;
    if ints[1].is_zero() || ints[3].is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(GaussRat::new(
        BigRational::new(ints[0].clone(), ints[1].clone()),
        BigRational::new(ints[2].clone(), ints[3].clone()),
    ))
}

fn parse_float(v: &Value) -> Result<Complex64> {
    let parts = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse(format!("float entry must be [re, im], got {v}")))?;
    let re = parts[0]
        .as_f64()
        .ok_or_else(|| Error::Parse(format!("bad number {}", parts[0])))?;
    let im = parts[1]
        .as_f64()
        .ok_or_else(|| Error::Parse(format!("bad number {}", parts[1])))?;
    Ok(Complex64::new(re, im))
}

fn int_json(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(x) => json!(x),
        None => json!(i.to_string()),
    }
}

fn exact_entry(x: &GaussRat) -> Value {
    json!([
        int_json(x.re.numer()),
        int_json(x.re.denom()),
        int_json(x.im.numer()),
        int_json(x.im.denom())
    ])
}

pub fn exact_to_json(c: &Configuration<GaussRat>) -> Value {
    let vectors: Vec<Value> = c
        .vectors()
        .iter()
        .map(|v| Value::Array(v.iter().map(exact_entry).collect()))
        .collect();
    let mut out = json!({ "dim": c.dim(), "backend": "exact", "vectors": vectors });
    if !c.volume_form().is_one() {
        out["volume_form"] = exact_entry(c.volume_form());
    }
    out
}

pub fn float_to_json(c: &Configuration<Complex64>) -> Value {
    let vectors: Vec<Value> = c
        .vectors()
        .iter()
        .map(|v| Value::Array(v.iter().map(|x| json!([x.re, x.im])).collect()))
        .collect();
    let mut out = json!({ "dim": c.dim(), "backend": "float", "vectors": vectors });
    if *c.volume_form() != Complex64::new(1.0, 0.0) {
        let w = c.volume_form();
        out["volume_form"] = json!([w.re, w.im]);
    }
    out
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for GaussRat {
    fn is_one(&self) -> bool {
        *self == <GaussRat as Scalar>::one()
    }
}
