//! Strict JSON instance parsing: integers and exact rationals only; any
//! floating-point literal is rejected rather than silently rounded.

use latgap::frobenius::FrobeniusInput;
use latgap::gomory::IpInstance;
use latgap::groupsolve::{CostVector, GroupInstance};
use latgap::intlat::{IntMatrix, LatticeBasis};
use latgap::{Integer, Rational};
use num_traits::Zero;
use serde_json::{Map, Value};

/// One parsed instance, tagged by its `"kind"`.
pub enum Instance {
    Group {
        inst: Box<GroupInstance>,
        r: Option<Vec<Integer>>,
    },
    Frobenius(FrobeniusInput),
    Ip(IpInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Group { .. } => "group",
            Instance::Frobenius(_) => "frobenius",
            Instance::Ip(_) => "ip",
        }
    }
}

pub fn parse(doc: &Value) -> Result<Instance, String> {
    let obj = doc.as_object().ok_or("instance must be a JSON object")?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or("missing string field \"kind\"")?;
    match kind {
        "group" => {
            known_fields(obj, &["kind", "basis", "l", "r"])?;
            let rows = integer_rows(field(obj, "basis")?, "basis")?;
            let matrix = IntMatrix::from_rows(rows).map_err(|e| e.to_string())?;
            let basis = LatticeBasis::new(matrix).map_err(|e| e.to_string())?;
            let l = rational_vec(field(obj, "l")?, "l")?;
            let cost = CostVector::new(l).map_err(|e| e.to_string())?;
            let inst = GroupInstance::new(basis, cost).map_err(|e| e.to_string())?;
            let r = match obj.get("r") {
                Some(v) => Some(integer_vec(v, "r")?),
                None => None,
            };
            Ok(Instance::Group {
                inst: Box::new(inst),
                r,
            })
        }
        "frobenius" => {
            known_fields(obj, &["kind", "a"])?;
            let a = integer_vec(field(obj, "a")?, "a")?;
            let coins = FrobeniusInput::new(a).map_err(|e| e.to_string())?;
            Ok(Instance::Frobenius(coins))
        }
        "ip" => {
            known_fields(obj, &["kind", "A", "b", "c"])?;
            let rows = integer_rows(field(obj, "A")?, "A")?;
            let a = IntMatrix::from_rows(rows).map_err(|e| e.to_string())?;
            let b = integer_vec(field(obj, "b")?, "b")?;
            let c = rational_vec(field(obj, "c")?, "c")?;
            let ip = IpInstance::new(a, b, c).map_err(|e| e.to_string())?;
            Ok(Instance::Ip(ip))
        }
        other => Err(format!("unknown kind {other:?}")),
    }
}

/// Parses `"p/q"` or `"p"`; used for JSON strings and the `--grid-h` flag.
pub fn rational_str(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: Integer = p.parse().map_err(|_| format!("bad rational {s:?}"))?;
    let q: Integer = q.parse().map_err(|_| format!("bad rational {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

fn known_fields(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), String> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(format!("unexpected field {key:?}"));
        }
    }
    Ok(())
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, String> {
    obj.get(name).ok_or(format!("missing field {name:?}"))
}

fn integer(v: &Value) -> Result<Integer, String> {
    match v {
        Value::Number(n) => {
            let lit = n.to_string();
            if lit.bytes().any(|b| matches!(b, b'.' | b'e' | b'E')) {
                return Err(format!("floating-point value {lit} is not accepted"));
            }
            lit.parse().map_err(|_| format!("bad integer {lit}"))
        }
        Value::String(s) => s.trim().parse().map_err(|_| format!("bad integer {s:?}")),
        _ => Err("expected an integer".into()),
    }
}

fn rational(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => rational_str(s),
        Value::Number(_) => integer(v).map(Rational::from_integer),
        _ => Err("expected a rational as a string \"p/q\"".into()),
    }
}

fn integer_vec(v: &Value, what: &str) -> Result<Vec<Integer>, String> {
    v.as_array()
        .ok_or(format!("{what} must be an array"))?
        .iter()
        .map(integer)
        .collect::<Result<_, _>>()
        .map_err(|e| format!("{what}: {e}"))
}

fn rational_vec(v: &Value, what: &str) -> Result<Vec<Rational>, String> {
    v.as_array()
        .ok_or(format!("{what} must be an array"))?
        .iter()
        .map(rational)
        .collect::<Result<_, _>>()
        .map_err(|e| format!("{what}: {e}"))
}

fn integer_rows(v: &Value, what: &str) -> Result<Vec<Vec<Integer>>, String> {
    v.as_array()
        .ok_or(format!("{what} must be an array of rows"))?
        .iter()
        .map(|row| integer_vec(row, what))
        .collect()
}
