//! Decimal parsing and printing for command-line and FFI use.

use rug::Float;

use super::BigComplex;
use crate::error::{Error, Result};

/// Scientific notation with exactly `digits` significant digits,
/// e.g. `-1.2340e-05`. Zero prints as `0.000e+00`.
pub fn sci(x: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        let mut s = String::from("0");
        if digits > 1 {
            s.push('.');
            s.push_str(&"0".repeat(digits - 1));
        }
        s.push_str("e+00");
        return s;
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x.is_sign_negative() {
            "-inf".into()
        } else {
            "inf".into()
        };
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    // value = 0.mantissa × 10^exp
    let exp = exp.unwrap_or(0) - 1;
    let mut out = String::with_capacity(digits + 8);
    if neg {
        out.push('-');
    }
    let bytes = mantissa.as_bytes();
    out.push(bytes[0] as char);
    if digits > 1 {
        out.push('.');
        out.push_str(&mantissa[1..]);
    }
    out.push('e');
    out.push(if exp < 0 { '-' } else { '+' });
    out.push_str(&format!("{:02}", exp.abs()));
    out
}

fn parse_real(text: &str, prec: u32) -> Result<Float> {
    let t = text.trim();
    if t.is_empty() || t == "+" || t == "-" {
        return Err(Error::Usage(format!("missing number in `{text}`")));
    }
    let parsed = Float::parse(t).map_err(|e| Error::Usage(format!("bad number `{t}`: {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (also `i`, `-i`, `a+i`) at `prec` bits.
/// Decimal parts are converted with a single correctly rounded step.
pub fn parse_complex(text: &str, prec: u32) -> Result<BigComplex> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Usage("empty complex number".into()));
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(BigComplex::from_real(parse_real(&t, prec)?));
    };
    // Locate the sign separating real and imaginary parts, skipping exponent signs.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let ch = bytes[k];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re_txt, im_txt) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im_txt = match im_txt {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = parse_real(re_txt, prec)?;
    let im = parse_real(im_txt, prec)?;
    Ok(BigComplex::new(re, im))
}
