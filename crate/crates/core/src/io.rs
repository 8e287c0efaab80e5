//! JSON wire formats. Big integers are JSON numbers of arbitrary size,
//! rationals are strings `"p/q"` (or `"p"` when integral). Objects come out
//! with sorted keys and point lists in the order the library keeps them
//! (sorted for polytopes), so equal inputs give byte-identical output.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Number, Value};

use crate::ehrhart::EhrhartData;
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::nakajima::FreeParameterSequence;
use crate::polytope::{hull_vertices, LatticePolytope};
use crate::triangulation::{CertifiedTriangulation, Flags, HeightFunction, Triangulation};

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal is a JSON number"))
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| bad(format!("not an integer: {n}"))),
        Value::String(s) => BigInt::from_str(s).map_err(|_| bad(format!("not an integer: {s}"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

pub fn vector_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<IntVector> {
    v.as_array().ok_or_else(|| bad("expected an array of integers"))?.iter().map(int_from_json).collect()
}

pub fn vectors_to_json(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_to_json(v)).collect())
}

pub fn vectors_from_json(v: &Value) -> Result<Vec<IntVector>> {
    v.as_array().ok_or_else(|| bad("expected an array of vectors"))?.iter().map(vector_from_json).collect()
}

pub fn rational_to_json(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            BigRational::from_str(s.trim()).map_err(|_| bad(format!("not a fraction: {s}")))
        }
        Value::Number(_) => int_from_json(v).map(BigRational::from_integer),
        _ => Err(bad(format!("expected a fraction string, got {v}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

/// `{"ambient_dim": n, "vertices": [[...], ...]}`
pub fn polytope_to_json(p: &LatticePolytope) -> Value {
    json!({ "ambient_dim": p.ambient_dim(), "vertices": vectors_to_json(p.vertices()) })
}

/// Accepts the polytope format (the vertex list may contain non-vertices).
pub fn polytope_from_json(v: &Value) -> Result<LatticePolytope> {
    let pts = vectors_from_json(field(v, "vertices")?)?;
    if let Some(n) = v.get("ambient_dim") {
        let n = n.as_u64().ok_or_else(|| bad("ambient_dim must be a nonnegative integer"))? as usize;
        if let Some(p) = pts.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.len() });
        }
    }
    hull_vertices(&pts)
}

/// `{"d": d, "rows": [[...], ...]}`
pub fn sequence_to_json(m: &FreeParameterSequence) -> Value {
    json!({ "d": m.d(), "rows": vectors_to_json(m.rows()) })
}

pub fn sequence_from_json(v: &Value) -> Result<FreeParameterSequence> {
    let d = field(v, "d")?.as_u64().ok_or_else(|| bad("d must be a positive integer"))? as usize;
    let rows = vectors_from_json(field(v, "rows")?)?;
    FreeParameterSequence::new(d, rows)
}

/// `{"points", "simplices", "heights", "flags"}`
pub fn triangulation_to_json(t: &CertifiedTriangulation) -> Value {
    json!({
        "points": vectors_to_json(&t.triangulation.points),
        "simplices": t.triangulation.simplices,
        "heights": t.heights.iter().map(rational_to_json).collect::<Vec<_>>(),
        "flags": {
            "maximal": t.flags.maximal,
            "basic": t.flags.basic,
            "coherent": t.flags.coherent,
        },
    })
}

/// Reads a stored certificate; the flags are returned as stored, not
/// recomputed.
pub fn triangulation_from_json(v: &Value) -> Result<(Triangulation, HeightFunction, Option<Flags>)> {
    let points = vectors_from_json(field(v, "points")?)?;
    let simplices: Vec<Vec<usize>> = serde_json::from_value(field(v, "simplices")?.clone())
        .map_err(|e| bad(format!("simplices: {e}")))?;
    let heights = match v.get("heights") {
        Some(h) => h
            .as_array()
            .ok_or_else(|| bad("heights must be an array"))?
            .iter()
            .map(rational_from_json)
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let flags = v.get("flags").map(|f| Flags {
        maximal: f.get("maximal").and_then(Value::as_bool).unwrap_or(false),
        basic: f.get("basic").and_then(Value::as_bool).unwrap_or(false),
        coherent: f.get("coherent").and_then(Value::as_bool).unwrap_or(false),
    });
    Ok((Triangulation::new(points, simplices), heights, flags))
}

/// `{"coefficients": ["p/q", ...], "delta": [...], "cohomology": [...]}`
pub fn ehrhart_to_json(e: &EhrhartData, cohomology: &[BigInt]) -> Value {
    json!({
        "coefficients": e.coefficients.iter().map(rational_to_json).collect::<Vec<_>>(),
        "delta": vector_to_json(&e.delta),
        "cohomology": vector_to_json(cohomology),
    })
}

/// Canonical text form: pretty-printed with sorted keys.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
