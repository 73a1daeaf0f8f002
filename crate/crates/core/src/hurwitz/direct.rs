use rug::Float;

use super::em::em_remainder_log10;
use crate::error::{Error, Result};
use crate::numctx::{digits_to_bits, BigComplex};

/// B_2, B_4, …, B_20 as (numerator, denominator).
const BERNOULLI_EVEN: [(i64, i64); 10] =
    [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6), (-3617, 510), (43867, 798), (-174611, 330)];

/// ζ(s,q) = Σ (k+q)^{−s} for Re s > 1.1, summed directly up to a cutoff K.
///
/// The tail beyond K is the integral ∫_K^∞ plus the half end term and ten
/// fixed endpoint corrections from a hard-coded Bernoulli list. K is doubled
/// until the remainder bound after those ten corrections is below 10^{−D−2}.
pub fn hz_direct(s: &BigComplex, q: &BigComplex, digits: u32) -> Result<BigComplex> {
    if s.re_f64() <= 1.1 {
        return Err(Error::Convergence(format!("direct sum needs Re s > 1.1, got {}", s.re_f64())));
    }
    if q.re_f64() <= 0.0 {
        return Err(Error::Domain("direct sum needs Re q > 0".into()));
    }
    let p = BERNOULLI_EVEN.len();
    let target = -(digits as f64) - 2.0;
    let mut k_max = 16usize;
    while em_remainder_log10(s, q, k_max, p)? > target {
        k_max *= 2;
        if k_max > 1 << 26 {
            return Err(Error::Convergence("direct sum cutoff too large".into()));
        }
    }
    let lq = q.abs_f64().log2();
    let bits =
        digits_to_bits(digits) + 24 + (-s.re_f64() * lq).max(0.0).ceil() as u32 + (k_max as f64).log2().ceil() as u32;
    let s = s.with_prec(bits);
    let q = q.with_prec(bits);
    let neg_s = -&s;
    let mut acc = BigComplex::zero(bits);
    for k in 0..k_max {
        acc = &acc + &(&neg_s * &q.add_i64(k as i64).ln()).exp();
    }
    let kq = q.add_i64(k_max as i64);
    let f_k = (&neg_s * &kq.ln()).exp();
    let mut tail = (&f_k * &kq).div(&s.add_i64(-1));
    tail = &tail + &f_k.div_i64(2);
    let inv2 = kq.recip().square();
    let mut power = f_k.div(&kq);
    let mut poch = s.clone();
    let mut fact = Float::with_val(bits, 2);
    for (j, &(num, den)) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j + 1;
        let coef = Float::with_val(bits, num) / den / &fact;
        tail = &tail + &(&poch * &power).scale(&coef);
        poch = &(&poch * &s.add_i64(2 * j as i64 - 1)) * &s.add_i64(2 * j as i64);
        power = &power * &inv2;
        fact *= ((2 * j + 1) * (2 * j + 2)) as u32;
    }
    Ok(&acc + &tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numctx::{pi, tolerance};

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(128, re, im)
    }

    #[test]
    fn basel() {
        let v = hz_direct(&c(2.0, 0.0), &c(1.0, 0.0), 40).unwrap();
        let want = pi(300).square() / 6u32;
        assert!((v.re().clone() - &want).abs() < tolerance(40, 300));
        assert!((v.re_f64() - 1.644934067).abs() < 1e-9);
    }

    #[test]
    fn quarter_is_pi_squared_plus_eight_catalan() {
        let v = hz_direct(&c(2.0, 0.0), &c(0.25, 0.0), 40).unwrap();
        let p = 300;
        let catalan = Float::with_val(p, rug::float::Constant::Catalan);
        let want = pi(p).square() + catalan * 8u32;
        assert!((v.re().clone() - &want).abs() < tolerance(40, p));
    }

    #[test]
    fn rejects_slow_region() {
        assert!(matches!(hz_direct(&c(1.05, 3.0), &c(0.5, 0.0), 20), Err(Error::Convergence(_))));
    }
}
