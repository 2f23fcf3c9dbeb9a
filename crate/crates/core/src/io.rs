//! JSON encodings of matrices, intersection data and configurations.
//!
//! Integer matrices are arrays of integer rows (entries too large for `i64`
//! are written as decimal strings). Ring-valued matrices are arrays of rows of
//! entry strings in the text syntax of the corresponding ring.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{GroupRingElt, Laurent, MultiLaurent};
use crate::error::{Error, Result};
use crate::geometry::{validate_admissible, AdmissibleConfig, RationalPoint};
use crate::matrices::{IntMatrix, MonomialGammaMatrix, RingMatrix};
use crate::monodromy::{validate_n, IntersectionMatrix, ParityClass};
use crate::reconstruct::{build_fan_config, FanConfiguration};

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{s:?} is not an integer"))),
        _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

fn rows_of(v: &Value) -> Result<&Vec<Value>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    for (i, r) in rows.iter().enumerate() {
        let len = r.as_array().ok_or_else(|| Error::Parse(format!("row {} is not an array", i + 1)))?.len();
        if len != rows.len() {
            return Err(Error::Size(format!("row {} has {len} entries, expected {}", i + 1, rows.len())));
        }
    }
    Ok(rows)
}

pub fn int_matrix_to_json(a: &IntMatrix) -> Value {
    Value::Array(a.rows().iter().map(|r| Value::Array(r.iter().map(int_value).collect())).collect())
}

pub fn parse_int_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = rows_of(v)?
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(parse_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

pub fn string_matrix_to_json(rows: &[Vec<String>]) -> Value {
    json!(rows)
}

pub fn ring_matrix_to_json<R: crate::matrices::Ring + std::fmt::Display>(a: &RingMatrix<R>) -> Value {
    let rows: Vec<Vec<String>> = a.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    string_matrix_to_json(&rows)
}

fn parse_string_matrix<R, F>(v: &Value, parse: F) -> Result<RingMatrix<R>>
where
    R: crate::matrices::Ring,
    F: Fn(&str) -> Result<R>,
{
    let rows = rows_of(v)?
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().ok_or_else(|| Error::Parse(format!("expected a string entry, got {x}"))).and_then(&parse))
                .collect::<Result<Vec<R>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RingMatrix::from_rows(rows)
}

pub fn parse_group_ring_matrix(v: &Value) -> Result<RingMatrix<GroupRingElt>> {
    parse_string_matrix(v, GroupRingElt::parse)
}

pub fn parse_laurent_matrix(v: &Value) -> Result<RingMatrix<Laurent>> {
    parse_string_matrix(v, Laurent::parse)
}

pub fn parse_multi_laurent_matrix(v: &Value) -> Result<RingMatrix<MultiLaurent>> {
    parse_string_matrix(v, MultiLaurent::parse)
}

/// Permutation (1-based images) and column entries of a monomial matrix.
pub fn monomial_to_json(a: &MonomialGammaMatrix) -> Value {
    json!({
        "perm": a.perm().iter().map(|p| p + 1).collect::<Vec<_>>(),
        "entries": a.entries().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "matrix": ring_matrix_to_json(&a.to_dense()),
    })
}

fn parity_of(v: &Value) -> Result<ParityClass> {
    let k = v
        .get("n_class")
        .ok_or_else(|| Error::Parse("missing field n_class".into()))
        .and_then(parse_int)?;
    let k = i64::try_from(&k).map_err(|_| Error::Parse("n_class out of range".into()))?;
    if !(0..4).contains(&k) {
        return Err(Error::Parse(format!("n_class must be 0..3, got {k}")));
    }
    Ok(ParityClass::new(k))
}

fn matrix_field(v: &Value) -> Result<IntMatrix> {
    parse_int_matrix(v.get("matrix").ok_or_else(|| Error::Parse("missing field matrix".into()))?)
}

/// `{"n_class": k, "matrix": [[int]]}`.
pub fn parse_classed_matrix(text: &str) -> Result<(ParityClass, IntMatrix)> {
    let v = parse_json(text)?;
    Ok((parity_of(&v)?, matrix_field(&v)?))
}

pub fn parse_intersection_matrix(text: &str) -> Result<IntersectionMatrix> {
    let (p, m) = parse_classed_matrix(text)?;
    validate_n(p, m)
}

pub fn classed_matrix_to_json(parity: ParityClass, a: &IntMatrix) -> Value {
    json!({ "n_class": parity.n_mod_4(), "matrix": int_matrix_to_json(a) })
}

/// Parsed configuration file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigSpec {
    pub parity: ParityClass,
    pub points: Vec<RationalPoint>,
    pub tangents: Option<Vec<RationalPoint>>,
    pub basepoint: Option<RationalPoint>,
}

fn coord(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("coordinates must be rational strings, got {v}"))),
    }
}

fn parse_point(v: &Value) -> Result<RationalPoint> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([x, y]) => RationalPoint::parse(&coord(x)?, &coord(y)?),
        _ => Err(Error::Parse(format!("a point is a pair of coordinates, got {v}"))),
    }
}

fn parse_points(v: &Value, what: &str) -> Result<Vec<RationalPoint>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?
        .iter()
        .map(parse_point)
        .collect()
}

/// `{"n_class": k, "points": [["p/q","p/q"], ...], "tangents": [...]?, "basepoint": [...]?}`.
pub fn parse_config(text: &str) -> Result<ConfigSpec> {
    let v = parse_json(text)?;
    let parity = parity_of(&v)?;
    let points = parse_points(v.get("points").ok_or_else(|| Error::Parse("missing field points".into()))?, "points")?;
    let tangents = v.get("tangents").filter(|t| !t.is_null()).map(|t| parse_points(t, "tangents")).transpose()?;
    let basepoint = v.get("basepoint").filter(|t| !t.is_null()).map(parse_point).transpose()?;
    Ok(ConfigSpec { parity, points, tangents, basepoint })
}

impl ConfigSpec {
    /// The configuration in input order. Missing tangents point at the basepoint.
    pub fn admissible(&self) -> Result<AdmissibleConfig> {
        let tangents = match (&self.tangents, &self.basepoint) {
            (Some(t), _) => t.clone(),
            (None, Some(b)) => self.points.iter().map(|p| b.sub(p)).collect(),
            (None, None) => return Err(Error::Invalid("configuration needs tangents or a basepoint".into())),
        };
        validate_admissible(self.points.clone(), tangents, self.parity)
    }

    pub fn fan(&self) -> Result<FanConfiguration> {
        let b = self.basepoint.clone().ok_or_else(|| Error::Invalid("fan configuration needs a basepoint".into()))?;
        build_fan_config(self.points.clone(), b, self.parity, self.tangents.clone())
    }
}

pub fn config_to_json(cfg: &AdmissibleConfig, basepoint: Option<&RationalPoint>) -> Value {
    let pt = |p: &RationalPoint| json!([p.x.to_string(), p.y.to_string()]);
    let mut v = json!({
        "n_class": cfg.parity().n_mod_4(),
        "points": cfg.points().iter().map(pt).collect::<Vec<_>>(),
        "tangents": cfg.tangents().iter().map(pt).collect::<Vec<_>>(),
    });
    if let Some(b) = basepoint {
        v["basepoint"] = pt(b);
    }
    v
}
