//! Parsing of `key=value` parameter assignments with real or complex values.
//!
//! Accepted value forms: `1.5`, `-2e-3`, `i`, `-i`, `0.25i`, `1-0.5i`,
//! `-3e-2+4E1i`. Whitespace around the value is ignored.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("parameter assignment `{0}` is not of the form key=value")]
    NotAssignment(String),
    #[error("parameter name `{0}` must be a non-empty identifier")]
    BadName(String),
    #[error("cannot parse `{0}` as a real or complex number")]
    BadNumber(String),
}

fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    // f64::from_str also accepts "inf"/"nan"; parameters must be finite.
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

fn parse_imag(s: &str) -> Option<f64> {
    match s.trim() {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => parse_real(t),
    }
}

/// Parses a real or complex literal.
pub fn parse_complex(input: &str) -> Result<Complex64, ParamError> {
    let s = input.trim();
    let bad = || ParamError::BadNumber(input.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // Split at the last sign that is not the leading sign and does not belong
    // to an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = parse_real(&body[..i]).ok_or_else(bad)?;
            let im = parse_imag(&body[i..]).ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        None => parse_imag(body).map(|im| Complex64::new(0.0, im)).ok_or_else(bad),
    }
}

/// Parses `name=value`.
pub fn parse_param(input: &str) -> Result<(String, Complex64), ParamError> {
    let (name, value) = input
        .split_once('=')
        .ok_or_else(|| ParamError::NotAssignment(input.to_string()))?;
    let name = name.trim();
    let valid = !name.is_empty()
        && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(ParamError::BadName(name.to_string()));
    }
    Ok((name.to_string(), parse_complex(value)?))
}
