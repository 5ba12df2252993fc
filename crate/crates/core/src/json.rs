//! JSON helpers: every float is written with 17 significant digits.

use serde::Serializer;
use serde_json::value::RawValue;

pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no encoding for these; only reachable through diagnostics.
        "null".to_string()
    }
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, s)
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

pub fn ser_f64_seq<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?)?;
    }
    seq.end()
}
