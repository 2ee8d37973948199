//! Shared serialization helpers: complex numbers travel as `a+bi` strings in
//! JSON and CSV so the wire format matches the CLI argument grammar.

use num_complex::Complex64;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Render a complex value in the CLI grammar (`1.5`, `i`, `0.3-0.7i`, ...).
/// f64 Display is shortest-round-trip, so the output is byte-deterministic.
pub fn fmt_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        return format!("{}", v.re);
    }
    if v.re == 0.0 {
        return format!("{}i", v.im);
    }
    if v.im < 0.0 {
        format!("{}{}i", v.re, v.im)
    } else {
        format!("{}+{}i", v.re, v.im)
    }
}

/// Parse the same grammar: optional real part, optional `[+-]<num>i`
/// imaginary part, plus the shorthands `i`, `-i`, `2i`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Ok(re) = s.parse::<f64>() {
        return Some(Complex64::new(re, 0.0));
    }
    let body = s.strip_suffix(['i', 'I'])?;
    // split into real and imaginary at the last +/- that is not an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let b = bytes[idx];
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    match split {
        Some(idx) => {
            let re: f64 = body[..idx].parse().ok()?;
            let im_str = &body[idx..];
            let im: f64 = match im_str {
                "+" => 1.0,
                "-" => -1.0,
                other => other.parse().ok()?,
            };
            Some(Complex64::new(re, im))
        }
        None => {
            let im: f64 = match body {
                "" => 1.0,
                "-" => -1.0,
                other => other.parse().ok()?,
            };
            Some(Complex64::new(0.0, im))
        }
    }
}

/// Serde adapter: `Complex64` as an `a+bi` string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexField(pub Complex64);

impl Serialize for ComplexField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&fmt_complex(self.0))
    }
}

impl<'de> Deserialize<'de> for ComplexField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_complex(&s)
            .map(ComplexField)
            .ok_or_else(|| de::Error::custom(format!("invalid complex literal `{s}`")))
    }
}
