//! JSON encoding of radial functions, measures, and reports.
//!
//! ```text
//! RadialFunction {"rank": 2 | "infinity", "role": "phi" | "psi", "values": [...]}
//! AtomicMeasure  {"atoms": [{"s": 0.5, "w": 1.0}, ...]}
//! ```
//!
//! Floats are written in shortest round-trip form, exact values as `"p/q"`
//! strings. Either backend reads numbers or `"p/q"` strings; the exact
//! backend reads decimal literals exactly (`0.1` is `1/10`).

use serde_json::{json, Map, Number, Value};

use crate::classify::{LinearBoundReport, Verdict};
use crate::error::{Error, Result};
use crate::moments::{AtomicMeasure, MatrixFloor, MomentSequence, MomentVerdict, RadialFunction, Role};
use crate::oracle::{GramReport, NonradialReport};
use crate::scalar::{ParseScalar, Rational};
use crate::words::Rank;

pub trait JsonScalar: ParseScalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        float(*self)
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

fn float(v: f64) -> Value {
    Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{at}/{key}"), "missing field"))
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(at, "expected an object"))
}

pub fn scalar_from_json<S: ParseScalar>(v: &Value, at: &str) -> Result<S> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(schema(at, "expected a number or a \"p/q\" string")),
    };
    S::parse_scalar(&text).ok_or_else(|| schema(at, format!("cannot read {text:?} as a finite number")))
}

fn scalars_from_json<S: ParseScalar>(v: &Value, at: &str) -> Result<Vec<S>> {
    let arr = v.as_array().ok_or_else(|| schema(at, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, &format!("{at}/{i}")))
        .collect()
}

pub fn rank_to_json(rank: Rank) -> Value {
    match rank.r() {
        Some(r) => json!(r),
        None => json!("infinity"),
    }
}

pub fn rank_from_json(v: &Value, at: &str) -> Result<Rank> {
    match v {
        Value::String(s) if s == "infinity" || s == "inf" => Ok(Rank::Infinite),
        Value::Number(n) => n
            .as_u64()
            .and_then(|r| u32::try_from(r).ok())
            .and_then(|r| Rank::finite(r).ok())
            .ok_or_else(|| schema(at, "rank must be a positive integer or \"infinity\"")),
        _ => Err(schema(at, "rank must be a positive integer or \"infinity\"")),
    }
}

pub fn radial_to_json<S: JsonScalar>(f: &RadialFunction<S>) -> Value {
    json!({
        "rank": rank_to_json(f.rank()),
        "role": f.role().as_str(),
        "values": f.values().iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
    })
}

pub fn radial_from_json<S: JsonScalar>(v: &Value) -> Result<RadialFunction<S>> {
    let obj = object(v, "")?;
    let rank = rank_from_json(field(obj, "rank", "")?, "/rank")?;
    let role = match field(obj, "role", "")?.as_str() {
        Some("phi") => Role::Phi,
        Some("psi") => Role::Psi,
        _ => return Err(schema("/role", "role must be \"phi\" or \"psi\"")),
    };
    let values: Vec<S> = scalars_from_json(field(obj, "values", "")?, "/values")?;
    if values.is_empty() {
        return Err(schema("/values", "at least one value is required"));
    }
    if role == Role::Psi && !values[0].is_zero() {
        return Err(schema("/values/0", "psi-role values must start with 0"));
    }
    RadialFunction::new(rank, role, values)
}

pub fn measure_to_json<S: JsonScalar>(m: &AtomicMeasure<S>) -> Value {
    let atoms: Vec<Value> = m
        .atoms()
        .iter()
        .map(|a| json!({"s": a.node.to_json(), "w": a.weight.to_json()}))
        .collect();
    json!({ "atoms": atoms })
}

pub fn measure_from_json<S: JsonScalar>(v: &Value) -> Result<AtomicMeasure<S>> {
    let obj = object(v, "")?;
    let arr = field(obj, "atoms", "")?
        .as_array()
        .ok_or_else(|| schema("/atoms", "expected an array"))?;
    let mut pairs = Vec::with_capacity(arr.len());
    for (i, atom) in arr.iter().enumerate() {
        let at = format!("/atoms/{i}");
        let a = object(atom, &at)?;
        let s: S = scalar_from_json(field(a, "s", &at)?, &format!("{at}/s"))?;
        let w: S = scalar_from_json(field(a, "w", &at)?, &format!("{at}/w"))?;
        if w <= S::zero() {
            return Err(schema(format!("{at}/w"), "weights must be positive"));
        }
        pairs.push((s, w));
    }
    AtomicMeasure::from_pairs(pairs)
}

/// `{"moments": [...]}`
pub fn moments_from_json<S: JsonScalar>(v: &Value) -> Result<MomentSequence<S>> {
    let obj = object(v, "")?;
    scalars_from_json(field(obj, "moments", "")?, "/moments").map(MomentSequence)
}

pub fn moments_to_json<S: JsonScalar>(m: &MomentSequence<S>) -> Value {
    json!({ "moments": m.0.iter().map(JsonScalar::to_json).collect::<Vec<_>>() })
}

fn floor_to_json(f: &MatrixFloor) -> Value {
    json!({"matrix": f.matrix.name(), "dim": f.dim, "min_eig": float(f.min_eig)})
}

pub fn moment_verdict_to_json(v: &MomentVerdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "witness": v.witness.as_ref().map(floor_to_json),
        "floors": v.floors.iter().map(floor_to_json).collect::<Vec<_>>(),
        "scale": float(v.scale),
        "tol": float(v.tol),
    })
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "depth": v.depth,
        "moments": moment_verdict_to_json(&v.moments),
        "moment_values": v.moment_values.iter().map(|m| float(*m)).collect::<Vec<_>>(),
    })
}

pub fn gram_report_to_json(r: &GramReport) -> Value {
    let mut obj = json!({
        "radius": r.radius,
        "dim": r.dim,
        "min_eig": float(r.min_eig),
        "scale": float(r.scale),
        "verdict": r.verdict.as_str(),
    });
    if let Some(w) = &r.witness {
        obj["witness"] = Value::Array(w.iter().map(|x| float(*x)).collect());
    }
    obj
}

pub fn bound_report_to_json<S: JsonScalar>(r: &LinearBoundReport<S>) -> Value {
    json!({
        "a": r.a.to_json(),
        "c": r.c.to_json(),
        "margins": r.margins.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
        "holds": r.holds,
        "first_violation": r.first_violation,
    })
}

pub fn nonradial_report_to_json(r: &NonradialReport) -> Value {
    json!({
        "gram": gram_report_to_json(&r.gram),
        "powers": r.powers.iter().map(|p| json!({
            "n": p.n,
            "value": p.value.to_string().parse::<Number>().map(Value::Number).unwrap_or(Value::Null),
            "length": p.length,
        })).collect::<Vec<_>>(),
    })
}

pub fn parse_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| schema("", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn roundtrip(text: &str) -> String {
        let f: RadialFunction<f64> = radial_from_json(&parse_str(text).unwrap()).unwrap();
        serde_json::to_string(&radial_to_json(&f)).unwrap()
    }

    #[test]
    fn radial_roundtrips() {
        let text = r#"{"rank":2,"role":"phi","values":[1.0,0.5,0.0]}"#;
        assert_eq!(roundtrip(text), text);
        let again = roundtrip(&roundtrip(text));
        assert_eq!(again, text);

        let f: RadialFunction<f64> =
            radial_from_json(&parse_str(r#"{"rank":"infinity","role":"psi","values":[0,1,2]}"#).unwrap())
                .unwrap();
        assert_eq!(f.rank(), Rank::Infinite);
        assert_eq!(f.role(), Role::Psi);
        assert_eq!(f.values(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn measure_roundtrips() {
        let v = parse_str(r#"{"atoms":[{"s":0.5,"w":1}]}"#).unwrap();
        let m: AtomicMeasure<f64> = measure_from_json(&v).unwrap();
        let back = measure_to_json(&m);
        let m2: AtomicMeasure<f64> = measure_from_json(&back).unwrap();
        assert_eq!(m, m2);
        assert_eq!(
            serde_json::to_string(&back).unwrap(),
            r#"{"atoms":[{"s":0.5,"w":1.0}]}"#
        );
    }

    #[test]
    fn exact_values_as_strings() {
        let v = parse_str(r#"{"rank":2,"role":"phi","values":[1,"1/2",0.1]}"#).unwrap();
        let f: RadialFunction<Rational> = radial_from_json(&v).unwrap();
        assert_eq!(f.values()[2], Rational::ratio(1, 10));
        let out = serde_json::to_string(&radial_to_json(&f)).unwrap();
        assert_eq!(out, r#"{"rank":2,"role":"phi","values":["1","1/2","1/10"]}"#);
        let g: RadialFunction<Rational> = radial_from_json(&parse_str(&out).unwrap()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let cases = [
            (r#"{"rank":0,"role":"phi","values":[1]}"#, "/rank"),
            (r#"{"rank":2,"role":"chi","values":[1]}"#, "/role"),
            (r#"{"rank":2,"role":"phi","values":[1,"x"]}"#, "/values/1"),
            (r#"{"rank":2,"role":"psi","values":[1,2]}"#, "/values/0"),
            (r#"{"role":"phi","values":[1]}"#, "/rank"),
            (r#"{"atoms":[{"s":0.5}]}"#, "/atoms/0/w"),
        ];
        for (text, pointer) in cases {
            let v = parse_str(text).unwrap();
            let err = if text.contains("atoms") {
                measure_from_json::<f64>(&v).unwrap_err()
            } else {
                radial_from_json::<f64>(&v).unwrap_err()
            };
            match err {
                Error::Schema { pointer: p, .. } => assert_eq!(p, pointer, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn float_tables_roundtrip_bit_exactly(
            values in prop::collection::vec(-1e300f64..1e300, 1..20),
            r in prop_oneof![Just(None), (1u32..50).prop_map(Some)],
        ) {
            let rank = r.map(|r| Rank::finite(r).unwrap()).unwrap_or(Rank::Infinite);
            let f = RadialFunction::new(rank, Role::Phi, values).unwrap();
            let text = serde_json::to_string(&radial_to_json(&f)).unwrap();
            let g: RadialFunction<f64> = radial_from_json(&parse_str(&text).unwrap()).unwrap();
            prop_assert_eq!(
                f.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                g.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>()
            );
            prop_assert_eq!(f.rank(), g.rank());
        }
    }
}
