//! JSON descriptors, elements, and report serialization.
//!
//! Rationals travel as strings ("p/q" or "p") everywhere; approximate
//! scalars are plain JSON numbers, so the two paths are distinguishable in
//! every report.

use serde_json::{json, Map, Value};

use crate::adjoined::{LpExp, NormKind, NormSpec};
use crate::error::{Error, Result};
use crate::linalg::Vecq;
use crate::matrix::SymMatrix;
use crate::polyhedral::Polytope;
use crate::projections::{DecompositionReport, OupReport};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::space::{
    Backend, Coords, Decision, Element, SpaceRef, ValidationReport, Witness,
};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                Err(parse_err(format!(
                    "non-integer number {n} in a rational position; write it as \"p/q\""
                )))
            }
        }
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

fn vector_from_value(v: &Value) -> Result<Vecq> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of rationals"))?
        .iter()
        .map(rational_from_value)
        .collect()
}

fn rows_from_value(v: &Value) -> Result<Vec<Vecq>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of rows"))?
        .iter()
        .map(vector_from_value)
        .collect()
}

fn vector_to_value(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn rows_to_value(rows: &[Vecq]) -> Value {
    Value::Array(rows.iter().map(|r| vector_to_value(r)).collect())
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(q) => Value::String(format_rational(q)),
        Scalar::Approx { value, .. } => json!(value),
    }
}

// ---------------------------------------------------------------------------
// space descriptors

/// Parse the JSON space descriptor and return the validated space.
pub fn load_space(text: &str) -> Result<SpaceRef> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("descriptor is not JSON: {e}")))?;
    space_from_value(&v)
}

pub fn space_from_value(v: &Value) -> Result<SpaceRef> {
    let obj = v.as_object().ok_or_else(|| parse_err("descriptor must be a JSON object"))?;
    let backend = obj
        .get("backend")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("descriptor needs a \"backend\" tag"))?;
    match backend {
        "polyhedral" => {
            let unit = vector_from_value(
                obj.get("unit").ok_or_else(|| parse_err("polyhedral descriptor needs \"unit\""))?,
            )?;
            if let Some(dim) = obj.get("dim").and_then(Value::as_u64) {
                if dim as usize != unit.len() {
                    return Err(Error::DimensionMismatch { expected: dim as usize, got: unit.len() });
                }
            }
            let cone = obj
                .get("cone")
                .and_then(Value::as_object)
                .ok_or_else(|| parse_err("polyhedral descriptor needs \"cone\""))?;
            let h = cone.get("H").map(rows_from_value).transpose()?;
            let g = cone.get("V").map(rows_from_value).transpose()?;
            SpaceRef::polyhedral(h, g, unit)
        }
        "sym-matrix" => {
            let n = obj
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("sym-matrix descriptor needs \"n\""))?;
            SpaceRef::sym_matrix(n as usize)
        }
        "adjoined" => {
            let norm = obj
                .get("norm")
                .ok_or_else(|| parse_err("adjoined descriptor needs \"norm\""))?;
            SpaceRef::adjoined(norm_spec_from_value(norm)?)
        }
        other => Err(parse_err(format!("unknown backend {other:?}"))),
    }
}

pub fn norm_spec_from_value(v: &Value) -> Result<NormSpec> {
    let obj = v.as_object().ok_or_else(|| parse_err("norm spec must be a JSON object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("norm spec needs a \"kind\" tag"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("norm spec needs \"dim\""))? as usize;
    match kind {
        "lp" => {
            let p = obj.get("p").ok_or_else(|| parse_err("lp norm needs \"p\""))?;
            let exp = match p {
                Value::String(s) if s == "inf" || s == "infinity" || s == "oo" => LpExp::Infinity,
                other => {
                    let q = rational_from_value(other)?;
                    if q == Rational::from_integer(1.into()) {
                        LpExp::One
                    } else if q == Rational::from_integer(2.into()) {
                        LpExp::Two
                    } else {
                        LpExp::General(q)
                    }
                }
            };
            Ok(NormSpec::lp(exp, dim))
        }
        "polyhedral-ball" => {
            let rows = rows_from_value(
                obj.get("H").ok_or_else(|| parse_err("polyhedral ball needs \"H\""))?,
            )?;
            Ok(NormSpec::poly_ball(rows, dim))
        }
        other => Err(parse_err(format!("unknown norm kind {other:?}"))),
    }
}

pub fn norm_spec_to_value(n: &NormSpec) -> Value {
    match n.kind() {
        NormKind::Lp(p) => {
            let p = match p {
                LpExp::One => Value::String("1".into()),
                LpExp::Two => Value::String("2".into()),
                LpExp::Infinity => Value::String("inf".into()),
                LpExp::General(q) => Value::String(format_rational(q)),
            };
            json!({"kind": "lp", "p": p, "dim": n.dim()})
        }
        NormKind::PolyBall { rows } => {
            json!({"kind": "polyhedral-ball", "H": rows_to_value(rows), "dim": n.dim()})
        }
    }
}

pub fn space_to_value(s: &SpaceRef) -> Value {
    match s.backend() {
        Backend::Polyhedral => {
            let unit = match s.unit().coords() {
                Coords::Vector(v) => vector_to_value(v),
                _ => unreachable!(),
            };
            json!({
                "backend": "polyhedral",
                "dim": s.dim(),
                "cone": {"H": rows_to_value(s.facets().expect("polyhedral"))},
                "unit": unit,
            })
        }
        Backend::SymMatrix => json!({"backend": "sym-matrix", "n": s.dim()}),
        Backend::Adjoined => {
            json!({"backend": "adjoined", "norm": norm_spec_to_value(s.norm_spec().expect("adjoined"))})
        }
    }
}

// ---------------------------------------------------------------------------
// elements

/// Parse an element for `space`. Accepts the schema objects
/// `{"vec": […]}`, `{"mat": [[…]]}`, `{"pair": {"alpha": "…", "x": […]}}`,
/// bare arrays, and the lenient bracket form `[1,1/2,0]` with unquoted
/// rationals (pairs read as `[alpha, x…]`).
pub fn parse_element(space: &SpaceRef, text: &str) -> Result<Element> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => element_from_value(space, &v),
        Err(_) => {
            let tokens = lenient_rows(text)?;
            element_from_rows(space, &tokens)
        }
    }
}

pub fn element_from_value(space: &SpaceRef, v: &Value) -> Result<Element> {
    if let Some(obj) = v.as_object() {
        if let Some(inner) = obj.get("vec") {
            return Element::vector(space, vector_from_value(inner)?);
        }
        if let Some(inner) = obj.get("mat") {
            return matrix_element(space, &float_rows_from_value(inner)?);
        }
        if let Some(inner) = obj.get("pair") {
            let pair = inner.as_object().ok_or_else(|| parse_err("\"pair\" must be an object"))?;
            let alpha = rational_from_value(
                pair.get("alpha").ok_or_else(|| parse_err("pair needs \"alpha\""))?,
            )?;
            let x = vector_from_value(pair.get("x").ok_or_else(|| parse_err("pair needs \"x\""))?)?;
            return Element::pair(space, alpha, x);
        }
        return Err(parse_err("element object needs \"vec\", \"mat\" or \"pair\""));
    }
    if let Some(arr) = v.as_array() {
        let nested = arr.iter().all(Value::is_array) && !arr.is_empty();
        return match (space.backend(), nested) {
            (Backend::SymMatrix, _) if nested => matrix_element(space, &float_rows_from_value(v)?),
            (Backend::SymMatrix, false) => {
                Err(parse_err("sym-matrix elements are nested arrays of rows"))
            }
            (Backend::Polyhedral, false) => Element::vector(space, vector_from_value(v)?),
            (Backend::Adjoined, false) => {
                let flat = vector_from_value(v)?;
                pair_from_flat(space, flat)
            }
            _ => Err(parse_err("nested arrays are only matrix elements")),
        };
    }
    Err(parse_err(format!("cannot read an element from {v}")))
}

fn pair_from_flat(space: &SpaceRef, flat: Vecq) -> Result<Element> {
    if flat.is_empty() {
        return Err(parse_err("adjoined element needs [alpha, x…]"));
    }
    let alpha = flat[0].clone();
    Element::pair(space, alpha, flat[1..].to_vec())
}

fn float_rows_from_value(v: &Value) -> Result<Vec<Vec<f64>>> {
    v.as_array()
        .ok_or_else(|| parse_err("matrix must be an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?
                .iter()
                .map(|x| match x {
                    Value::Number(n) => {
                        n.as_f64().ok_or_else(|| parse_err("bad matrix entry"))
                    }
                    Value::String(s) => Ok(crate::scalar::rational_to_f64(&parse_rational(s)?)),
                    other => Err(parse_err(format!("bad matrix entry {other}"))),
                })
                .collect()
        })
        .collect()
}

fn matrix_element(space: &SpaceRef, rows: &[Vec<f64>]) -> Result<Element> {
    Element::matrix(space, SymMatrix::from_rows(rows)?)
}

/// Tokenize `[1,1/2]` or `[[1,0],[0,1]]` without quoting.
fn lenient_rows(text: &str) -> Result<Vec<Vec<String>>> {
    let t = text.trim();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(parse_err(format!("cannot parse element {text:?}")));
    }
    let inner = &t[1..t.len() - 1];
    if inner.trim_start().starts_with('[') {
        let mut rows = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for c in inner.chars() {
            match c {
                '[' => {
                    depth += 1;
                    if depth == 1 {
                        current.clear();
                        continue;
                    }
                }
                ']' => {
                    depth = depth.checked_sub(1).ok_or_else(|| parse_err("unbalanced brackets"))?;
                    if depth == 0 {
                        rows.push(split_tokens(&current)?);
                        continue;
                    }
                }
                _ => {}
            }
            if depth >= 1 {
                current.push(c);
            }
        }
        Ok(rows)
    } else {
        Ok(vec![split_tokens(inner)?])
    }
}

fn split_tokens(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if !tok.is_empty() {
            out.push(tok.to_string());
        }
    }
    Ok(out)
}

fn element_from_rows(space: &SpaceRef, rows: &[Vec<String>]) -> Result<Element> {
    match space.backend() {
        Backend::SymMatrix => {
            let dense: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|t| {
                            t.parse::<f64>()
                                .or_else(|_| parse_rational(t).map(|q| crate::scalar::rational_to_f64(&q)))
                                .map_err(|_| parse_err(format!("bad matrix entry {t:?}")))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            matrix_element(space, &dense)
        }
        _ => {
            if rows.len() != 1 {
                return Err(parse_err("vector elements are flat arrays"));
            }
            let flat: Vecq = rows[0].iter().map(|t| parse_rational(t)).collect::<Result<_>>()?;
            match space.backend() {
                Backend::Polyhedral => Element::vector(space, flat),
                Backend::Adjoined => pair_from_flat(space, flat),
                Backend::SymMatrix => unreachable!(),
            }
        }
    }
}

pub fn element_to_value(e: &Element) -> Value {
    match e.coords() {
        Coords::Vector(v) => json!({"vec": vector_to_value(v)}),
        Coords::Matrix(m) => {
            let rows: Vec<Vec<f64>> = (0..m.side())
                .map(|i| (0..m.side()).map(|j| m.get(i, j)).collect())
                .collect();
            json!({"mat": rows})
        }
        Coords::Pair { alpha, x } => {
            json!({"pair": {"alpha": format_rational(alpha), "x": vector_to_value(x)}})
        }
    }
}

// ---------------------------------------------------------------------------
// reports

pub fn witness_to_value(w: &Witness) -> Value {
    match w {
        Witness::Element(e) => json!({"element": element_to_value(e)}),
        Witness::Pair(a, b) => json!({"pair": [element_to_value(a), element_to_value(b)]}),
        Witness::Scale { k, x, y } => {
            json!({"scale": {"k": scalar_to_value(k), "x": element_to_value(x), "y": element_to_value(y)}})
        }
    }
}

pub fn decision_to_value(d: &Decision) -> Value {
    let routes: Vec<Value> = d
        .routes
        .iter()
        .map(|r| json!({"name": r.name, "holds": r.holds, "exactness": r.exactness.name()}))
        .collect();
    let mut obj = Map::new();
    obj.insert("holds".into(), json!(d.holds));
    obj.insert("trivial".into(), json!(d.trivial));
    obj.insert("routes".into(), Value::Array(routes));
    obj.insert("witness".into(), d.witness.as_ref().map(witness_to_value).unwrap_or(Value::Null));
    obj.insert("tolerance".into(), d.tolerance.map(|t| json!(t)).unwrap_or(Value::Null));
    Value::Object(obj)
}

pub fn oup_report_to_value(r: &OupReport) -> Value {
    json!({
        "decision": decision_to_value(&r.decision),
        "sv": decision_to_value(&r.sv),
    })
}

pub fn polytope_to_value(p: &Polytope) -> Value {
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|h| json!({"normal": vector_to_value(&h.normal), "offset": format_rational(&h.offset)}))
        .collect();
    let equalities: Vec<Value> = p
        .equalities()
        .iter()
        .map(|h| json!({"normal": vector_to_value(&h.normal), "offset": format_rational(&h.offset)}))
        .collect();
    json!({
        "vertices": rows_to_value(p.vertices()),
        "facets": facets,
        "equalities": equalities,
        "basis": p.basis().map(rows_to_value).unwrap_or(Value::Null),
    })
}

pub fn validation_to_value(r: &ValidationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "witness": c.witness.clone().map(Value::from).unwrap_or(Value::Null),
                "detail": c.detail,
            })
        })
        .collect();
    json!({"ok": r.ok(), "checks": checks})
}

pub fn decomposition_to_value(r: &DecompositionReport) -> Value {
    json!({
        "ideal_u": r.ideal_u.iter().map(element_to_value).collect::<Vec<_>>(),
        "ideal_complement": r.ideal_complement.iter().map(element_to_value).collect::<Vec<_>>(),
        "sum_dim": r.sum_dim,
        "direct_sum": r.direct_sum,
        "contains_unit": r.contains_unit,
        "max_residual": scalar_to_value(&r.max_residual),
        "samples": r.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn space_descriptor_roundtrip() {
        let text = r#"{"backend":"polyhedral","dim":2,"cone":{"H":[["1","0"],["0","1"]]},"unit":["1","1"]}"#;
        let s = load_space(text).unwrap();
        assert_eq!(s.backend(), Backend::Polyhedral);
        let echoed = space_to_value(&s);
        let s2 = space_from_value(&echoed).unwrap();
        assert_eq!(s, s2);

        let m = load_space(r#"{"backend":"sym-matrix","n":3}"#).unwrap();
        assert_eq!(m.backend(), Backend::SymMatrix);

        let a = load_space(r#"{"backend":"adjoined","norm":{"kind":"lp","p":"inf","dim":2}}"#).unwrap();
        assert_eq!(a.backend(), Backend::Adjoined);
        let b = load_space(
            r#"{"backend":"adjoined","norm":{"kind":"polyhedral-ball","H":[["1","0"],["-1","0"],["0","1"],["0","-1"]],"dim":2}}"#,
        )
        .unwrap();
        assert_eq!(space_from_value(&space_to_value(&b)).unwrap(), b);
    }

    #[test]
    fn descriptor_errors_carry_reasons() {
        let bad = r#"{"backend":"polyhedral","dim":2,"cone":{"H":[["1","0"],["0","1"]]},"unit":["1","0"]}"#;
        let err = load_space(bad).unwrap_err();
        assert!(err.to_string().contains("order unit not interior"));
        assert!(load_space("{").is_err());
        assert!(load_space(r#"{"backend":"other"}"#).is_err());
    }

    #[test]
    fn element_forms() {
        let s = load_space(
            r#"{"backend":"polyhedral","dim":2,"cone":{"H":[["1","0"],["0","1"]]},"unit":["1","1"]}"#,
        )
        .unwrap();
        let a = parse_element(&s, r#"{"vec":["1","1/2"]}"#).unwrap();
        let b = parse_element(&s, "[1,1/2]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.as_vec().unwrap(), &vec![rat_int(1), rat(1, 2)]);

        let m = load_space(r#"{"backend":"sym-matrix","n":2}"#).unwrap();
        let x = parse_element(&m, r#"{"mat":[[1,0.5],[0.5,0]]}"#).unwrap();
        let y = parse_element(&m, "[[1,1/2],[1/2,0]]").unwrap();
        assert_eq!(x, y);

        let adj = load_space(r#"{"backend":"adjoined","norm":{"kind":"lp","p":"inf","dim":2}}"#).unwrap();
        let p = parse_element(&adj, r#"{"pair":{"alpha":"1/2","x":["1/4","-1/4"]}}"#).unwrap();
        let q = parse_element(&adj, "[1/2,1/4,-1/4]").unwrap();
        assert_eq!(p, q);

        // round trip through the echo form
        let echoed = element_to_value(&p);
        assert_eq!(element_from_value(&adj, &echoed).unwrap(), p);
    }

    #[test]
    fn decision_json_shape() {
        let d = Decision::new(false)
            .with_route("vertex-scan", false, crate::space::Exactness::Exact);
        let v = decision_to_value(&d);
        assert_eq!(v["holds"], json!(false));
        assert_eq!(v["routes"][0]["exactness"], json!("exact"));
        assert_eq!(v["witness"], Value::Null);
    }
}
