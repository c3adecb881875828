//! Canonical JSON documents for instances and certificates.
//!
//! Instances: `{"n": <int>, "points": [[<int>, ...], ...]}`.
//! Certificates: object with keys `base`, `beta`, `box`, `face_members`,
//! `method`, `n0`, `n1`, `price`. Rationals are strings `"num/den"`, index
//! sets are 1-based. Output is pretty-printed with sorted keys, LF line
//! endings and a trailing newline.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::types::{Certificate, IntBox, IntVec, Method, PointSet, Rat};

/// `num/den`, with integers rendered as `num/1`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_rat_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses `"a/b"` or `"a"`; the result is reduced.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

fn int_value(v: &BigInt) -> Value {
    Value::Number(
        v.to_string()
            .parse::<Number>()
            .expect("decimal integer is a JSON number"),
    )
}

fn point_value(p: &IntVec) -> Value {
    Value::Array(p.iter().map(int_value).collect())
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(num) => {
            let text = num.to_string();
            text.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("expected an integer, found {text}")))
        }
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

fn parse_point(v: &Value) -> Result<IntVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an integer array, found {v}")))?;
    Ok(IntVec::new(arr.iter().map(parse_int).collect::<Result<_>>()?))
}

fn parse_points(n: usize, v: &Value) -> Result<PointSet> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("\"points\" must be an array".into()))?;
    let pts = arr.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
    PointSet::new(n, pts)
}

fn parse_dim(v: Option<&Value>) -> Result<usize> {
    let n = v.ok_or_else(|| Error::Parse("missing key \"n\"".into()))?;
    let n = parse_int(n)?;
    usize::try_from(&n)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Parse(format!("\"n\" must be a positive integer, found {n}")))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Reads an instance document into a canonical, nonempty [`PointSet`].
pub fn parse_instance(text: &str) -> Result<PointSet> {
    let doc = parse_json(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("instance must be a JSON object".into()))?;
    let n = parse_dim(obj.get("n"))?;
    let points = obj
        .get("points")
        .ok_or_else(|| Error::Parse("missing key \"points\"".into()))?;
    let set = parse_points(n, points)?;
    set.require_nonempty()?;
    Ok(set)
}

pub fn emit_instance(set: &PointSet) -> String {
    let mut obj = Map::new();
    obj.insert("n".into(), int_value(&BigInt::from(set.dim())));
    obj.insert(
        "points".into(),
        Value::Array(set.iter().map(point_value).collect()),
    );
    render(&Value::Object(obj))
}

fn index_list(idx: &[usize]) -> Value {
    Value::Array(
        idx.iter()
            .map(|&i| int_value(&BigInt::from(i + 1)))
            .collect(),
    )
}

pub fn emit_certificate(cert: &Certificate) -> String {
    let mut bx = Map::new();
    bx.insert("hi".into(), point_value(&cert.inner_box.hi));
    bx.insert("lo".into(), point_value(&cert.inner_box.lo));

    let mut obj = Map::new();
    obj.insert("base".into(), int_value(&BigInt::from(cert.base)));
    obj.insert("beta".into(), Value::String(format_rat(&cert.beta)));
    obj.insert("box".into(), Value::Object(bx));
    obj.insert(
        "face_members".into(),
        Value::Array(cert.face_members.iter().map(point_value).collect()),
    );
    obj.insert("method".into(), Value::String(cert.method.as_str().into()));
    obj.insert("n0".into(), index_list(&cert.n0));
    obj.insert("n1".into(), index_list(&cert.n1));
    obj.insert(
        "price".into(),
        Value::Array(
            cert.price
                .iter()
                .map(|r| Value::String(format_rat(r)))
                .collect(),
        ),
    );
    render(&Value::Object(obj))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}

fn parse_index_list(v: &Value, n: usize) -> Result<Vec<usize>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("index set must be an array".into()))?;
    arr.iter()
        .map(|e| {
            let i = parse_int(e)?;
            usize::try_from(&i)
                .ok()
                .filter(|&i| (1..=n).contains(&i))
                .map(|i| i - 1)
                .ok_or_else(|| Error::Parse(format!("index {i} outside 1..={n}")))
        })
        .collect()
}

fn parse_rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(_) => parse_int(v).map(Rat::from_integer),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let doc = parse_json(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("certificate must be a JSON object".into()))?;

    let method: Method = field(obj, "method")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"method\" must be a string".into()))?
        .parse()?;
    let base = parse_int(field(obj, "base")?)?;
    let base = u64::try_from(&base)
        .ok()
        .filter(|&b| b >= 1)
        .ok_or_else(|| Error::Parse(format!("\"base\" must be a positive integer, found {base}")))?;
    let price = field(obj, "price")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"price\" must be an array".into()))?
        .iter()
        .map(parse_rat_value)
        .collect::<Result<Vec<_>>>()?;
    let n = price.len();
    if n == 0 {
        return Err(Error::Parse("\"price\" must be nonempty".into()));
    }
    let beta = parse_rat_value(field(obj, "beta")?)?;

    let bx = field(obj, "box")?
        .as_object()
        .ok_or_else(|| Error::Parse("\"box\" must be an object".into()))?;
    let lo = parse_point(field(bx, "lo")?)?;
    let hi = parse_point(field(bx, "hi")?)?;
    for corner in [&lo, &hi] {
        if corner.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: corner.dim(),
            });
        }
    }
    let inner_box = IntBox::new(lo, hi)?;

    let n0 = parse_index_list(field(obj, "n0")?, n)?;
    let n1 = parse_index_list(field(obj, "n1")?, n)?;
    let face_members = parse_points(n, field(obj, "face_members")?)?;

    Ok(Certificate {
        method,
        base,
        price,
        beta,
        inner_box,
        n0,
        n1,
        face_members,
    })
}

/// True when `r` is an integer; handy for rendering.
pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}
