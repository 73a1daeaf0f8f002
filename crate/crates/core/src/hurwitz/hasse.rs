use rug::ops::Pow;

use crate::error::{Error, Result};
use crate::numctx::{cpow, digits_to_bits, BigComplex};

/// Outer terms allowed per requested digit.
const TERMS_PER_DIGIT: usize = 10;
/// Consecutive negligible outer terms that end the sum.
const QUIET_RUN: usize = 8;

/// ζ(s,q) = 1/(s−1) Σ_n 1/(n+1) Σ_{k≤n} (−1)^k C(n,k) (q+k)^{1−s}.
///
/// Converges for every s ≠ 1 but can be very slow; after 10·D outer terms
/// without a run of 8 terms below 10^{−D−4} this gives up with
/// `SlowConvergence`. The inner differences cancel by up to 2^n, which the
/// working precision absorbs.
pub fn hz_hasse(s: &BigComplex, q: &BigComplex, digits: u32) -> Result<BigComplex> {
    if s.as_integer() == Some(1) {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if q.im().is_zero() && *q.re() <= 0 {
        return Err(Error::Domain("q must not be a non-positive real".into()));
    }
    let budget = TERMS_PER_DIGIT * digits.max(1) as usize;
    let bits = digits_to_bits(digits) + budget as u32 + 20;
    let s = s.with_prec(bits);
    let q = q.with_prec(bits);
    let one_minus_s = (-&s).add_i64(1);
    let powers = (0..budget).map(|k| cpow(&q.add_i64(k as i64), &one_minus_s, 0)).collect::<Result<Vec<_>>>()?;
    let threshold = rug::Float::with_val(bits, 10).pow(-(digits as i32) - 4);
    let mut acc = BigComplex::zero(bits);
    let mut quiet = 0;
    let mut binoms = vec![rug::Integer::from(1)];
    for n in 0..budget {
        if n > 0 {
            // row n of Pascal's triangle from row n−1
            let mut next = Vec::with_capacity(n + 1);
            next.push(rug::Integer::from(1));
            for k in 1..n {
                next.push(rug::Integer::from(&binoms[k - 1] + &binoms[k]));
            }
            next.push(rug::Integer::from(1));
            binoms = next;
        }
        let mut inner = BigComplex::zero(bits);
        for (k, c) in binoms.iter().enumerate() {
            let t = powers[k].scale(&rug::Float::with_val(bits, c));
            inner = if k % 2 == 0 { &inner + &t } else { &inner - &t };
        }
        let term = inner.div_i64(n as i64 + 1);
        if term.abs() < threshold {
            quiet += 1;
        } else {
            quiet = 0;
        }
        acc = &acc + &term;
        if quiet >= QUIET_RUN {
            return Ok(acc.div(&s.add_i64(-1)));
        }
    }
    Err(Error::SlowConvergence(format!("Hasse series not settled after {budget} outer terms")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(128, re, im)
    }

    #[test]
    fn negative_integers_terminate() {
        let v = hz_hasse(&c(-3.0, 0.0), &c(1.0, 0.0), 30).unwrap();
        let want = Float::with_val(200, 1) / 120u32;
        assert!((v.re().clone() - &want).abs() < crate::numctx::tolerance(30, 200));
        // ζ(0, q) = 1/2 − q
        let v = hz_hasse(&c(0.0, 0.0), &c(0.3, 0.2), 20).unwrap();
        assert!((v.re_f64() - 0.2).abs() < 1e-15 && (v.im_f64() + 0.2).abs() < 1e-15);
    }

    #[test]
    fn slow_at_two() {
        assert!(matches!(hz_hasse(&c(2.0, 0.0), &c(1.0, 0.0), 30), Err(Error::SlowConvergence(_))));
    }

    #[test]
    fn pole() {
        assert!(matches!(hz_hasse(&c(1.0, 0.0), &c(1.0, 0.0), 10), Err(Error::Pole(_))));
    }
}
