//! JSON documents for diagrams, tableaux, Plücker vectors, matrices and
//! Laurent expansions.
//!
//! Rationals are written as canonical strings. On input they may be strings
//! (`"p"`, `"p/q"`, exact decimals) or JSON integers; JSON floats are
//! rejected. Objects are emitted with sorted keys, so output is
//! byte-deterministic.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::combinatorics::{BoxCoord, LeDiagram, LeTableau, Partition, Subset};
use crate::error::Error;
use crate::inversion::LaurentPolynomial;
use crate::matrix_io::RationalMatrix;
use crate::plucker::{normalize_projective, PluckerVector};
use crate::rational::{format_rational, int, parse_rational, Rational};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn object(v: &Value) -> Result<&Map<String, Value>, Error> {
    v.as_object().ok_or_else(|| malformed("expected a JSON object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, Error> {
    obj.get(key).ok_or_else(|| malformed(format!("missing field {key:?}")))
}

fn uint(v: &Value, what: &str) -> Result<usize, Error> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| malformed(format!("{what} must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, Error> {
    v.as_array().ok_or_else(|| malformed(format!("{what} must be an array")))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                Ok(int(i))
            } else if let Some(u) = x.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(malformed(format!("floating-point number {x} is not exact; write it as a string")))
            }
        }
        _ => Err(malformed(format!("expected a rational, found {v}"))),
    }
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn kn(obj: &Map<String, Value>) -> Result<(usize, usize), Error> {
    let k = uint(field(obj, "k")?, "k")?;
    let n = uint(field(obj, "n")?, "n")?;
    if k > n {
        return Err(malformed(format!("k = {k} exceeds n = {n}")));
    }
    Ok((k, n))
}

fn shape_from(obj: &Map<String, Value>) -> Result<Partition, Error> {
    let (k, n) = kn(obj)?;
    let rows = array(field(obj, "rows")?, "rows")?
        .iter()
        .map(|x| uint(x, "row length"))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(k, n, rows)
}

fn box_from(v: &[Value]) -> Result<BoxCoord, Error> {
    Ok(BoxCoord::new(uint(&v[0], "row")?, uint(&v[1], "column")?))
}

/// `{"k","n","rows","plus":[[r,c],…]}`.
pub fn diagram_from_json(v: &Value) -> Result<LeDiagram, Error> {
    let obj = object(v)?;
    let shape = shape_from(obj)?;
    let mut plus = BTreeSet::new();
    for b in array(field(obj, "plus")?, "plus")? {
        match b.as_array().map(Vec::as_slice) {
            Some(pair @ [_, _]) => {
                if !plus.insert(box_from(pair)?) {
                    return Err(malformed(format!("box {b} listed twice")));
                }
            }
            _ => return Err(malformed(format!("expected [row, col], found {b}"))),
        }
    }
    LeDiagram::from_plus(shape, plus)
}

pub fn diagram_to_json(d: &LeDiagram) -> Value {
    json!({
        "k": d.k(),
        "n": d.n(),
        "rows": d.shape().rows(),
        "plus": d.plus_boxes().iter().map(|b| [b.row, b.col]).collect::<Vec<_>>(),
    })
}

/// `{"k","n","rows","entries":[[r,c,"p/q"],…]}`; unlisted boxes are `0`.
pub fn tableau_from_json(v: &Value) -> Result<LeTableau, Error> {
    let obj = object(v)?;
    let shape = shape_from(obj)?;
    let mut values: BTreeMap<BoxCoord, Rational> = BTreeMap::new();
    for e in array(field(obj, "entries")?, "entries")? {
        match e.as_array().map(Vec::as_slice) {
            Some([r, c, x]) => {
                let b = box_from(&[r.clone(), c.clone()])?;
                if !shape.contains(b) {
                    return Err(malformed(format!("box {b} is outside the shape {shape}")));
                }
                if values.insert(b, rational_from_json(x)?).is_some() {
                    return Err(malformed(format!("box {b} listed twice")));
                }
            }
            _ => return Err(malformed(format!("expected [row, col, value], found {e}"))),
        }
    }
    for b in shape.boxes() {
        values.entry(b).or_insert_with(|| int(0));
    }
    LeTableau::new(shape, &values)
}

pub fn tableau_to_json(t: &LeTableau) -> Value {
    let d = t.diagram();
    json!({
        "k": d.k(),
        "n": d.n(),
        "rows": d.shape().rows(),
        "entries": t
            .entries()
            .iter()
            .map(|(b, x)| json!([b.row, b.col, format_rational(x)]))
            .collect::<Vec<_>>(),
    })
}

/// `{"k","n","coords":{"1,3,5":"p/q",…}}`, normalized on the way in.
pub fn plucker_from_json(v: &Value) -> Result<PluckerVector, Error> {
    let obj = object(v)?;
    let (k, n) = kn(obj)?;
    let coords = field(obj, "coords")?.as_object().ok_or_else(|| malformed("coords must be an object"))?;
    let mut raw = Vec::with_capacity(coords.len());
    for (key, x) in coords {
        raw.push((key.parse::<Subset>()?, rational_from_json(x)?));
    }
    normalize_projective(k, n, raw)
}

pub fn plucker_to_json(p: &PluckerVector) -> Value {
    let coords: Map<String, Value> = p.to_strings().into_iter().map(|(j, x)| (j, Value::String(x))).collect();
    json!({ "k": p.k(), "n": p.n(), "coords": coords })
}

/// `{"k","n","rows":[["p/q",…],…]}`.
pub fn matrix_from_json(v: &Value) -> Result<RationalMatrix, Error> {
    let obj = object(v)?;
    let (k, n) = kn(obj)?;
    let rows = array(field(obj, "rows")?, "rows")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != k || rows.iter().any(|r| r.len() != n) {
        return Err(malformed(format!("matrix is not {k}×{n}")));
    }
    RationalMatrix::with_width(rows, n)
}

pub fn matrix_to_json(m: &RationalMatrix) -> Value {
    json!({
        "k": m.k(),
        "n": m.n(),
        "rows": m.rows().iter().map(|r| r.iter().map(rational_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// `{"base":["1,3",…],"terms":[{"coef":c,"exps":[…]},…]}`.
pub fn laurent_to_json(l: &LaurentPolynomial) -> Value {
    json!({
        "base": l.base.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "terms": l.terms.iter().map(|(e, c)| json!({ "coef": c, "exps": e })).collect::<Vec<_>>(),
    })
}

pub fn subset_list(sets: impl IntoIterator<Item = Subset>) -> Value {
    Value::Array(sets.into_iter().map(|s| Value::String(s.to_string())).collect())
}

/// Either a Plücker vector (`coords`) or a matrix (`rows`) document.
pub fn point_from_json(v: &Value) -> Result<PluckerVector, Error> {
    let obj = object(v)?;
    match (obj.contains_key("coords"), obj.contains_key("rows")) {
        (true, false) => plucker_from_json(v),
        (false, true) => crate::matrix_io::plucker_from_matrix(&matrix_from_json(v)?),
        _ => Err(malformed("expected exactly one of \"coords\" (Plücker vector) or \"rows\" (matrix)")),
    }
}
