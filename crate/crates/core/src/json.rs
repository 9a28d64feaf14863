//! JSON encodings: rationals as strings, forms as arrays of rational
//! strings, pure quaternions as `["x","y","z"]`.

use serde_json::{json, Map, Value};

use crate::cohomology::{CohClass, CohValue};
use crate::error::{domain, Result};
use crate::f2comb::{Subset, Universe};
use crate::hermitian::HermDiagForm;
use crate::pfister::SquareClassMorphism;
use crate::quadform::{witt_filtration_degree, DiagForm, GWClass};
use crate::quaternion::{Quat, QuaternionAlgebra};
use crate::rationals::{parse_rat, rat_to_string, Rat, SquareClass};

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

/// Accepts `"p/q"`, `"n"`, or a JSON integer.
pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(crate::rationals::rat(i)),
            None => domain(format!("rational must be an integer or a string, got {n}")),
        },
        _ => domain(format!("expected a rational, got {v}")),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| domain(format!("{what} must be a JSON array")), Ok)
}

pub fn diag_form_to_json(q: &DiagForm) -> Value {
    Value::Array(q.entries().iter().map(rat_to_json).collect())
}

pub fn diag_form_from_json(v: &Value) -> Result<DiagForm> {
    DiagForm::new(array(v, "a diagonal form")?.iter().map(rat_from_json).collect::<Result<_>>()?)
}

pub fn square_class_to_json(c: &SquareClass) -> Value {
    Value::String(c.to_string())
}

/// `{"terms": [["c", m], …], "rank": r, "signature": s, "filtration": "k"|"inf"}`.
pub fn gw_class_to_json(x: &GWClass) -> Value {
    let terms: Vec<Value> = x.terms().iter().map(|(c, m)| json!([c.to_string(), m])).collect();
    json!({
        "terms": terms,
        "rank": x.rank(),
        "signature": x.signature(),
        "filtration": witt_filtration_degree(x).to_string(),
    })
}

pub fn coh_class_to_json(c: &CohClass) -> Value {
    let symbols: Vec<Value> = c
        .symbols()
        .iter()
        .map(|s| Value::Array(s.iter().map(square_class_to_json).collect()))
        .collect();
    json!({ "degree": c.degree(), "symbols": symbols })
}

pub fn coh_class_from_json(v: &Value) -> Result<CohClass> {
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .map_or_else(|| domain("cohomology class needs an integer \"degree\""), Ok)? as usize;
    let symbols = array(v.get("symbols").unwrap_or(&Value::Null), "\"symbols\"")?
        .iter()
        .map(|s| {
            array(s, "a symbol")?
                .iter()
                .map(|c| crate::rationals::squarefree_rep(&rat_from_json(c)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CohClass::from_symbols(degree, symbols)
}

pub fn coh_value_to_json(v: &CohValue) -> Value {
    match v {
        CohValue::Parity(b) => json!({ "parity": u8::from(*b) }),
        CohValue::Class(c) => json!({ "class": c.to_string() }),
        CohValue::Places(p) => json!({ "places": p.iter().map(|v| v.to_string()).collect::<Vec<_>>() }),
        CohValue::Real(b) => json!({ "real": u8::from(*b) }),
    }
}

pub fn subset_to_json(u: &Universe, s: Subset) -> Value {
    let mut labels = u.labels_of(s);
    labels.sort();
    json!(labels)
}

pub fn subset_from_json(u: &Universe, v: &Value) -> Result<Subset> {
    let labels = array(v, "a subset")?
        .iter()
        .map(|l| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => domain(format!("subset label must be a string, got {l}")),
        })
        .collect::<Result<Vec<_>>>()?;
    u.subset_from_labels(&labels)
}

/// `{"label": "square class"}` on singletons.
pub fn morphism_to_json(u: &Universe, f: &SquareClassMorphism) -> Value {
    let map: Map<String, Value> = u
        .labels()
        .iter()
        .zip(f.values())
        .map(|(l, c)| (l.clone(), square_class_to_json(c)))
        .collect();
    Value::Object(map)
}

pub fn morphism_from_json(u: &Universe, v: &Value) -> Result<SquareClassMorphism> {
    let obj = v.as_object().map_or_else(|| domain("morphism must be a JSON object"), Ok)?;
    if obj.len() != u.len() {
        return domain("morphism must assign a value to every label");
    }
    let values = u
        .labels()
        .iter()
        .map(|l| match obj.get(l) {
            Some(c) => crate::rationals::squarefree_rep(&rat_from_json(c)?),
            None => domain(format!("morphism has no value at {l}")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SquareClassMorphism::new(values))
}

pub fn algebra_to_json(q: &QuaternionAlgebra) -> Value {
    json!({ "a": rat_to_string(q.a()), "b": rat_to_string(q.b()) })
}

pub fn algebra_from_json(v: &Value) -> Result<QuaternionAlgebra> {
    let get = |k: &str| rat_from_json(v.get(k).unwrap_or(&Value::Null));
    QuaternionAlgebra::new(get("a")?, get("b")?)
}

pub fn pure_quat_to_json(z: &Quat) -> Value {
    Value::Array(z.0[1..].iter().map(rat_to_json).collect())
}

pub fn pure_quat_from_json(v: &Value) -> Result<Quat> {
    let c = array(v, "a pure quaternion")?;
    if c.len() != 3 {
        return domain("a pure quaternion has three coordinates");
    }
    Ok(Quat::pure(rat_from_json(&c[0])?, rat_from_json(&c[1])?, rat_from_json(&c[2])?))
}

pub fn herm_form_to_json(h: &HermDiagForm) -> Value {
    json!({
        "algebra": algebra_to_json(h.algebra()),
        "gens": h.gens().iter().map(pure_quat_to_json).collect::<Vec<_>>(),
    })
}

pub fn herm_form_from_json(v: &Value) -> Result<HermDiagForm> {
    let alg = algebra_from_json(v.get("algebra").unwrap_or(&Value::Null))?;
    let gens = array(v.get("gens").unwrap_or(&Value::Null), "\"gens\"")?
        .iter()
        .map(pure_quat_from_json)
        .collect::<Result<_>>()?;
    HermDiagForm::new(alg, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationals::ratio;

    #[test]
    fn round_trips() {
        let q = DiagForm::new(vec![ratio(1, 1), ratio(-2, 1), ratio(3, 5)]).unwrap();
        let v = diag_form_to_json(&q);
        assert_eq!(v, json!(["1", "-2", "3/5"]));
        assert_eq!(diag_form_from_json(&v).unwrap(), q);
        assert_eq!(diag_form_from_json(&json!([1, "-2", "3/5"])).unwrap(), q);
        assert!(diag_form_from_json(&json!(["0"])).is_err());
        assert!(diag_form_from_json(&json!({"a": 1})).is_err());

        let h = json!({"algebra": {"a": "-1", "b": "-1"}, "gens": [["1", "0", "0"], ["0", "1", "0"]]});
        assert_eq!(herm_form_to_json(&herm_form_from_json(&h).unwrap()), h);
        assert!(herm_form_from_json(&json!({"algebra": {"a": "0", "b": "1"}, "gens": []})).is_err());

        let c = json!({"degree": 2, "symbols": [["2", "3"], ["-1", "5"]]});
        assert_eq!(coh_class_to_json(&coh_class_from_json(&c).unwrap()), c);
        assert!(coh_class_from_json(&json!({"degree": 2, "symbols": [["2"]]})).is_err());
    }

    #[test]
    fn subsets_and_morphisms() {
        let u = Universe::new(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(subset_to_json(&u, 0b101), json!(["x", "z"]));
        assert_eq!(subset_from_json(&u, &json!(["z", "x"])).unwrap(), 0b101);
        assert!(subset_from_json(&u, &json!(["w"])).is_err());
        let f = morphism_from_json(&u, &json!({"x": "-2", "y": "3", "z": "8"})).unwrap();
        assert_eq!(morphism_to_json(&u, &f), json!({"x": "-2", "y": "3", "z": "2"}));
        assert!(morphism_from_json(&u, &json!({"x": "1"})).is_err());
    }

    #[test]
    fn gw_json_shape() {
        let x = DiagForm::from_ints(&[1, -1, 3]).unwrap().to_gw();
        let v = gw_class_to_json(&x);
        assert_eq!(v["rank"], 3);
        assert_eq!(v["filtration"], "0");
        assert_eq!(v["terms"], json!([["-1", 1], ["1", 1], ["3", 1]]));
    }
}
