//! Invariant specs (`"P:r,d"`, `"Qherm:n,d"`, …) evaluated on JSON input.

use qforms::cohomology::milnor_value;
use qforms::error::{Error, Result};
use qforms::f2comb::{Subset, Universe};
use qforms::hermitian::{beta_hat, extension_class, psi0_herm, HermDiagForm, Q_herm};
use qforms::json::{
    coh_class_to_json, coh_value_to_json, diag_form_from_json, gw_class_to_json, herm_form_from_json,
    subset_from_json,
};
use qforms::lambda_ops::{w_d, GammaFn, P_gamma, Q_gamma, P, Q};
use qforms::pfister::{psi0_ja, BinaryFamily, ScaledPfister};
use qforms::quadform::{DiagForm, GWClass};
use qforms::rationals::SquareClass;
use serde_json::{json, Value};

/// A parsed invariant spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    P { r: usize, d: usize },
    Q { n: usize, d: usize },
    W { d: usize },
    Pgamma(Vec<usize>),
    Qgamma(Vec<usize>),
    Psi0 { j: Value, a: Value },
    Qherm { n: usize, d: usize },
    BetaHat(Vec<usize>),
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn numbers(s: &str, count: Option<usize>) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("not a number: {t:?}"))))
        .collect::<Result<_>>()?;
    match count {
        Some(c) if v.len() != c => parse_err(format!("expected {c} numbers in {s:?}")),
        _ => Ok(v),
    }
}

fn json_list(s: &str) -> Result<Vec<usize>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("expected a JSON list of numbers: {e}")))
}

impl Spec {
    pub fn parse(s: &str) -> Result<Spec> {
        let (name, args) = match s.split_once(':') {
            Some(p) => p,
            None => return parse_err(format!("invariant spec {s:?} has no ':'")),
        };
        Ok(match name {
            "P" | "Q" | "Qherm" => {
                let v = numbers(args, Some(2))?;
                match name {
                    "P" => Spec::P { r: v[0], d: v[1] },
                    "Q" => Spec::Q { n: v[0], d: v[1] },
                    _ => Spec::Qherm { n: v[0], d: v[1] },
                }
            }
            "w" => Spec::W { d: numbers(args, Some(1))?[0] },
            "Pgamma" => Spec::Pgamma(json_list(args)?),
            "Qgamma" => Spec::Qgamma(json_list(args)?),
            "betahat" => Spec::BetaHat(numbers(args, None)?),
            "psi0" => {
                let wrapped: Value = serde_json::from_str(&format!("[{args}]"))
                    .map_err(|e| Error::Parse(format!("psi0 expects J,A as two JSON lists: {e}")))?;
                match wrapped.as_array().map(Vec::as_slice) {
                    Some([j, a]) if j.is_array() && a.is_array() => Spec::Psi0 { j: j.clone(), a: a.clone() },
                    _ => return parse_err("psi0 expects J,A as two JSON lists, e.g. psi0:[1,2],[3]"),
                }
            }
            _ => return parse_err(format!("unknown invariant {name:?}")),
        })
    }
}

fn subset_labels(v: &Value) -> Value {
    match v {
        Value::Array(items) => Value::Array(
            items
                .iter()
                .map(|x| match x {
                    Value::Number(n) => Value::String(n.to_string()),
                    other => other.clone(),
                })
                .collect(),
        ),
        other => other.clone(),
    }
}

fn subsets(n: usize, j: &Value, a: &Value) -> Result<(Subset, Subset)> {
    let u = Universe::range(n)?;
    Ok((subset_from_json(&u, &subset_labels(j))?, subset_from_json(&u, &subset_labels(a))?))
}

fn family(v: &Value) -> Result<Vec<DiagForm>> {
    match v {
        Value::Array(items) if items.iter().all(Value::is_array) && !items.is_empty() => {
            items.iter().map(diag_form_from_json).collect()
        }
        _ => parse_err("this invariant needs a family: a nonempty JSON array of forms"),
    }
}

fn single(v: &Value) -> Result<DiagForm> {
    if v.as_array().is_some_and(|a| a.iter().any(Value::is_array)) {
        return parse_err("this invariant needs a single form, not a family");
    }
    diag_form_from_json(v)
}

fn gamma_for(values: &[usize], qs: &[DiagForm]) -> Result<GammaFn> {
    let m = qs[0].dim();
    if qs.iter().any(|q| q.dim() != m) {
        return Err(Error::Domain("gamma invariants need forms of a common dimension".into()));
    }
    if values.len() != qs.len() {
        return Err(Error::Domain("gamma and family have different lengths".into()));
    }
    GammaFn::new(values.to_vec(), m)
}

/// `{"invariant", "value", "cohomology"}` where `cohomology` is the degree-`k`
/// invariant at the degree the value is guaranteed to reach, or `null` if
/// the value is not in `I^k`.
fn report(spec: &str, x: &GWClass, k: usize) -> Value {
    let coh = match milnor_value(x, k) {
        Ok(v) => json!({ "degree": k, "value": coh_value_to_json(&v) }),
        Err(_) => Value::Null,
    };
    json!({ "invariant": spec, "value": gw_class_to_json(x), "cohomology": coh })
}

pub fn eval_quad(spec_text: &str, input: &Value) -> Result<Value> {
    let spec = Spec::parse(spec_text)?;
    Ok(match spec {
        Spec::P { r, d } => report(spec_text, &P(r, d, &single(input)?)?, d),
        Spec::Q { n, d } => report(spec_text, &Q(n, d, &single(input)?)?, d.saturating_sub(1)),
        Spec::W { d } => {
            let c = w_d(&single(input)?, d);
            json!({
                "invariant": spec_text,
                "value": Value::Null,
                "cohomology": { "degree": d, "class": coh_class_to_json(&c), "value": coh_value_to_json(&c.eval()) },
            })
        }
        Spec::Pgamma(g) | Spec::Qgamma(g) => {
            let qs = family(input)?;
            let gamma = gamma_for(&g, &qs)?;
            let size = gamma.size();
            if spec_text.starts_with('P') {
                report(spec_text, &P_gamma(&gamma, &qs)?, size)
            } else {
                report(spec_text, &Q_gamma(&gamma, &qs)?, size.saturating_sub(1))
            }
        }
        Spec::Psi0 { j, a } => {
            let qs = family(input)?;
            let (j, a) = subsets(qs.len(), &j, &a)?;
            let fam = BinaryFamily::new(&qs)?;
            let k = (2 * a.count_ones() + j.count_ones()) as usize;
            report(spec_text, &psi0_ja(j, a, &fam)?, k.saturating_sub(1))
        }
        Spec::Qherm { .. } | Spec::BetaHat(_) => {
            return Err(Error::Domain(format!("{spec_text:?} is a hermitian invariant; use eval-herm")))
        }
    })
}

pub fn eval_herm(spec_text: &str, input: &Value) -> Result<Value> {
    let spec = Spec::parse(spec_text)?;
    let h: HermDiagForm = herm_form_from_json(input)?;
    Ok(match spec {
        // the n_Q part of Q_n^d(h) is only in I²
        Spec::Qherm { n, d } => report(spec_text, &Q_herm(n, d, &h)?, d.saturating_sub(1).min(2)),
        Spec::Psi0 { j, a } => {
            let (j, a) = subsets(h.len(), &j, &a)?;
            let k = (2 * a.count_ones() + j.count_ones()) as usize;
            report(spec_text, &psi0_herm(j, a, &h)?, k.saturating_sub(1))
        }
        Spec::BetaHat(ds) => {
            if ds.is_empty() {
                return Err(Error::Domain("betahat needs at least one degree".into()));
            }
            let coeffs: Vec<(Vec<ScaledPfister>, usize)> = ds
                .iter()
                .map(|&d| (vec![ScaledPfister::new(1, SquareClass::one(), vec![])], d))
                .collect();
            let value = beta_hat(&coeffs, &h)?;
            let m = ds.iter().min().copied().unwrap_or(0).saturating_sub(1);
            let class = extension_class(&coeffs, &h, m)?;
            let mut out = report(spec_text, &value, m);
            out["extension_class"] = json!({ "degree": m, "class": coh_class_to_json(&class), "value": coh_value_to_json(&class.eval()) });
            out
        }
        _ => return Err(Error::Domain(format!("{spec_text:?} is a quadratic invariant; use eval-quad"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        assert_eq!(Spec::parse("P:2,2").unwrap(), Spec::P { r: 2, d: 2 });
        assert_eq!(Spec::parse("Qherm:4,4").unwrap(), Spec::Qherm { n: 4, d: 4 });
        assert_eq!(Spec::parse("Pgamma:[1,0,2]").unwrap(), Spec::Pgamma(vec![1, 0, 2]));
        assert_eq!(Spec::parse("betahat:4,6").unwrap(), Spec::BetaHat(vec![4, 6]));
        assert_eq!(Spec::parse("psi0:[1],[2,3]").unwrap(), Spec::Psi0 { j: json!([1]), a: json!([2, 3]) });
        for bad in ["P2,2", "P:2", "X:1", "psi0:[1]", "Pgamma:1,2", "w:a"] {
            assert!(Spec::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn hyperbolic_q() {
        let v = eval_quad("Q:2,2", &json!(["1", "-1"])).unwrap();
        assert_eq!(v["value"]["terms"], json!([["-1", 1], ["1", 1]]));
        assert_eq!(v["value"]["filtration"], "inf");
    }

    #[test]
    fn p22_reaches_degree_two() {
        let v = eval_quad("P:2,2", &json!(["1", "-2"])).unwrap();
        assert_ne!(v["value"]["filtration"], "0");
        assert_ne!(v["value"]["filtration"], "1");
        assert!(v["cohomology"].is_object());
    }
}
