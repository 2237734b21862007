//! JSON records shared by every command: series, operators, vectors, and a
//! plain-text rendering of any record.

use serde_json::{json, Map, Value};

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::mmde::EisensteinOperator;
use crate::modular_deriv::VvmfVector;
use crate::qseries::QSeries;
use crate::rat::{format_rat, parse_rat, Rat};

pub fn rat_value(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn rat_list_value(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat_value).collect())
}

pub fn angle_list_value(xs: &[RationalAngle]) -> Value {
    Value::Array(xs.iter().map(|a| rat_value(a.value())).collect())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => parse_rat(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational string, got {v}"))),
    }
}

pub fn rat_list_from_value(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(rat_from_value)
        .collect()
}

fn usize_from_value(v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::Parse(format!("expected a non-negative integer, got {v}")))
}

/// `{"base_exponent", "coeffs", "precision"}`, plus `"grid_denominator"`
/// when the exponents are not integer spaced.
pub fn series_to_json(f: &QSeries) -> Value {
    let mut m = Map::new();
    m.insert("base_exponent".into(), rat_value(f.base_exponent()));
    m.insert("coeffs".into(), rat_list_value(&f.coefficients()));
    m.insert("precision".into(), json!(f.precision()));
    if f.grid_denominator() != 1 {
        m.insert("grid_denominator".into(), json!(f.grid_denominator()));
    }
    Value::Object(m)
}

pub fn series_from_json(v: &Value) -> Result<QSeries> {
    let base = rat_from_value(field(v, "base_exponent")?)?;
    let coeffs = rat_list_from_value(field(v, "coeffs")?)?;
    let precision = usize_from_value(field(v, "precision")?)?;
    match v.get("grid_denominator") {
        None => QSeries::new(base, coeffs, precision),
        Some(s) => {
            let step = s
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bad grid denominator {s}")))?;
            if coeffs.len() != precision + 1 {
                return Err(Error::Parse(format!(
                    "expected {} coefficients, got {}",
                    precision + 1,
                    coeffs.len()
                )));
            }
            QSeries::with_grid(base, step, coeffs)
        }
    }
}

/// `{"order", "weight", "alphas", "cusp_c"?}`.
pub fn operator_to_json(op: &EisensteinOperator, cusp: Option<&Rat>) -> Value {
    let mut m = Map::new();
    m.insert("order".into(), json!(op.order));
    m.insert("weight".into(), rat_value(&op.weight));
    m.insert("alphas".into(), rat_list_value(&op.alphas));
    if let Some(c) = cusp {
        m.insert("cusp_c".into(), rat_value(c));
    }
    Value::Object(m)
}

pub fn operator_from_json(v: &Value) -> Result<(EisensteinOperator, Option<Rat>)> {
    let order = usize_from_value(field(v, "order")?)?;
    let weight = rat_from_value(field(v, "weight")?)?;
    let alphas = rat_list_from_value(field(v, "alphas")?)?;
    if order == 0 || alphas.len() + 1 != order {
        return Err(Error::Parse(format!(
            "order {order} needs {} alphas, got {}",
            order.saturating_sub(1),
            alphas.len()
        )));
    }
    let cusp = v.get("cusp_c").map(rat_from_value).transpose()?;
    Ok((EisensteinOperator::new(weight, alphas), cusp))
}

pub fn vector_to_json(f: &VvmfVector) -> Value {
    json!({
        "weight": rat_value(&f.weight),
        "components": f.components.iter().map(series_to_json).collect::<Vec<_>>(),
    })
}

pub fn vector_from_json(v: &Value) -> Result<VvmfVector> {
    let weight = rat_from_value(field(v, "weight")?)?;
    let components = field(v, "components")?
        .as_array()
        .ok_or_else(|| Error::Parse("components must be an array".into()))?
        .iter()
        .map(series_from_json)
        .collect::<Result<Vec<_>>>()?;
    VvmfVector::new(weight, components)
}

fn is_series(m: &Map<String, Value>) -> bool {
    m.contains_key("base_exponent") && m.contains_key("coeffs")
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(inner) if is_series(inner) => {
                        let s = series_from_json(x).map(|f| f.to_string());
                        out.push_str(&format!("{pad}{k}: {}\n", s.unwrap_or_else(|_| x.to_string())));
                    }
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    Value::Array(items) => {
                        let joined: Vec<String> = items.iter().map(scalar_text).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", joined.join(", ")));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Object(inner) if is_series(inner) => {
                        let s = series_from_json(x).map(|f| f.to_string());
                        out.push_str(&format!("{pad}- {}\n", s.unwrap_or_else(|_| x.to_string())));
                    }
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

/// Indented `key: value` lines; series appear in their `Display` form.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}
