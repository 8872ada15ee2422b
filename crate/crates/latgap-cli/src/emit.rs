//! JSON rendering: exact values as rational strings, floats tagged with
//! their rounding direction, integers as JSON numbers.

use std::str::FromStr;

use latgap::bounds::{BoundsReport, CoverReport, DirectedBound, Rounding};
use latgap::intlat::CosetLabel;
use latgap::{Integer, Rational};
use num_traits::One;
use serde_json::{json, Map, Value};

/// `"p/q"`, or plain `"p"` when integral.
pub fn rat_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integers render as JSON numbers of any size (never floats).
pub fn int_value(i: &Integer) -> Value {
    match serde_json::Number::from_str(&i.to_string()) {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(i.to_string()),
    }
}

pub fn ints_value(xs: &[Integer]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

pub fn rats_value(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|r| Value::String(rat_str(r))).collect())
}

pub fn label_value(label: &CosetLabel) -> Value {
    json!({
        "digits": ints_value(label.digits()),
        "index": int_value(label.index()),
    })
}

fn f64_value(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// One directed bound: the float rendering plus its exact endpoint and the
/// direction it was rounded.
pub fn bound_value(b: &DirectedBound) -> Value {
    json!({
        "value": f64_value(b.value),
        "endpoint": rat_str(&b.endpoint),
        "rounding": match b.direction {
            Rounding::Down => "down",
            Rounding::Up => "up",
        },
        "exact": b.exact,
    })
}

/// Bounds that don't apply in the instance's dimension are omitted.
pub fn bounds_value(report: &BoundsReport) -> Value {
    let mut out = Map::new();
    out.insert("k".into(), json!(report.k));
    out.insert("det".into(), int_value(&report.det));
    if let Some(b) = &report.lower_rho {
        out.insert("lower_rho".into(), bound_value(b));
    }
    if let Some(b) = &report.lower_factorial {
        out.insert("lower_factorial".into(), bound_value(b));
    }
    if let Some(b) = &report.upper {
        out.insert("upper".into(), bound_value(b));
    }
    if let Some(g) = &report.gap {
        out.insert("gap".into(), Value::String(rat_str(g)));
    }
    Value::Object(out)
}

pub fn cover_value(rho: &Rational, h: &Rational, report: &CoverReport) -> Value {
    json!({
        "rho": rat_str(rho),
        "h": rat_str(h),
        "grid_points": report.grid_points,
        "covered": report.uncovered.is_empty() && !report.truncated,
        "uncovered": report.uncovered.iter().map(|p| rats_value(p)).collect::<Vec<_>>(),
        "truncated": report.truncated,
    })
}
