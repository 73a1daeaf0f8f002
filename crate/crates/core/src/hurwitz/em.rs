use rug::Float;

use super::bernoulli::bernoulli_table;
use crate::error::{Error, Result};
use crate::numctx::{digits_to_bits, BigComplex};

/// Why the correction sum stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmStop {
    /// The remainder bound fell below the target.
    Converged,
    /// The next correction term was no smaller than the last one included.
    Turnover,
}

/// Split point, number of correction terms and remainder estimate of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct EMPlan {
    pub n_split: usize,
    pub p_used: usize,
    pub remainder_est: f64,
    pub remainder_log10: f64,
    pub stop: EmStop,
    pub retries: u32,
}

const MAX_RETRIES: u32 = 5;

fn pole_check(s: &BigComplex) -> Result<()> {
    if s.as_integer() == Some(1) {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    Ok(())
}

/// log10 of 2(2π)^{−2p} |s(s+1)…(s+2p)| (N+q)^{−(σ+2p)} / (σ+2p).
///
/// For complex q the base is N + Re q and the bound picks up e^{|τ|·|arg(N+q)|}.
pub fn em_remainder_log10(s: &BigComplex, q: &BigComplex, n: usize, p: usize) -> Result<f64> {
    let sigma = s.re_f64();
    let tau = s.im_f64();
    let denom = sigma + 2.0 * p as f64;
    if denom <= 0.0 {
        return Err(Error::Domain(format!("Re s + 2p = {denom} is not positive")));
    }
    let base = n as f64 + q.re_f64();
    if base <= 0.0 {
        return Err(Error::Domain("N + Re q must be positive".into()));
    }
    let mut ln_b = std::f64::consts::LN_2 - 2.0 * p as f64 * std::f64::consts::TAU.ln();
    // |s+k| from the full-precision s: near a negative integer the f64 real
    // part would round the smallest factor to zero.
    for k in 0..=(2 * p) {
        ln_b += s.add_i64(k as i64).abs_f64().ln();
    }
    ln_b -= denom * base.ln() + denom.ln();
    let qi = q.im_f64();
    if qi != 0.0 {
        ln_b += tau.abs() * qi.atan2(n as f64 + q.re_f64()).abs();
    }
    Ok(ln_b / std::f64::consts::LN_10)
}

/// The remainder bound as an `f64` (may underflow to 0).
pub fn em_remainder_bound(s: &BigComplex, q: &BigComplex, n: usize, p: usize) -> Result<f64> {
    Ok(10f64.powf(em_remainder_log10(s, q, n, p)?))
}

fn magnitude_bits(s: &BigComplex, q: &BigComplex) -> u32 {
    // |q^{−s}| = |q|^{−σ} e^{τ arg q}
    let lq = q.abs_f64().max(1e-300).log2();
    let arg = q.im_f64().atan2(q.re_f64());
    let l = -s.re_f64() * lq + s.im_f64() * arg / std::f64::consts::LN_2;
    l.max(0.0).ceil() as u32
}

/// ζ(s,q) by Euler–Maclaurin summation of f(x) = (x+q)^{−s}.
pub fn hz_euler_maclaurin(s: &BigComplex, q: &BigComplex, digits: u32) -> Result<BigComplex> {
    hz_euler_maclaurin_plan(s, q, digits).map(|(v, _)| v)
}

/// As [`hz_euler_maclaurin`], also returning the split point and stopping data.
pub fn hz_euler_maclaurin_plan(s: &BigComplex, q: &BigComplex, digits: u32) -> Result<(BigComplex, EMPlan)> {
    pole_check(s)?;
    // x + q must avoid (−∞, 0] for every x ≥ 0.
    if q.im().is_zero() && *q.re() <= 0 {
        return Err(Error::Domain("q must not be a non-positive real".into()));
    }
    let mut n_split = digits as usize / 2 + 10;
    // Keep the correction series away from its divergent start.
    let need = (s.abs_f64() / std::f64::consts::TAU).ceil() as usize + 2;
    n_split = n_split.max(need);
    if q.re_f64() < 0.0 {
        n_split = n_split.max((-q.re_f64()).ceil() as usize + 2);
    }
    let mut retries = 0;
    loop {
        match em_once(s, q, digits, n_split) {
            Ok((v, mut plan)) => {
                plan.retries = retries;
                return Ok((v, plan));
            }
            Err(Error::HeuristicFailure(msg)) => {
                if retries >= MAX_RETRIES {
                    return Err(Error::HeuristicFailure(format!("{msg} after {retries} doublings of N")));
                }
                retries += 1;
                n_split *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn em_once(s: &BigComplex, q: &BigComplex, digits: u32, n_split: usize) -> Result<(BigComplex, EMPlan)> {
    let target_log10 = -(digits as f64);
    let bits = digits_to_bits(digits) + 24 + magnitude_bits(s, q) + (n_split as f64).log2().ceil() as u32;
    let s = s.with_prec(bits);
    let q = q.with_prec(bits);
    let neg_s = -&s;

    let mut acc = BigComplex::zero(bits);
    for k in 0..n_split {
        let base = q.add_i64(k as i64);
        acc = &acc + &(&neg_s * &base.ln()).exp();
    }
    let nq = q.add_i64(n_split as i64);
    let ln_nq = nq.ln();
    let f_n = (&neg_s * &ln_nq).exp();
    acc = &acc + &f_n.div_i64(2);
    let s_minus_1 = s.add_i64(-1);
    acc = &acc + &(&f_n * &nq).div(&s_minus_1);

    // T_k = B_{2k}/(2k)! · (s)_{2k−1} · (N+q)^{−s−2k+1}
    let inv_nq = nq.recip();
    let inv_nq2 = inv_nq.square();
    let mut poch = s.clone(); // (s)_1
    let mut power = &f_n * &inv_nq; // (N+q)^{−s−1}
    let mut fact = Float::with_val(bits, 2); // (2k)!
    let mut prev_abs: Option<Float> = None;
    let max_p = 4 * digits as usize + 64;
    let table = bernoulli_table(2 * max_p + 2);
    let mut p_used = 0;
    let mut last_bound = f64::INFINITY;
    let mut k = 1;
    loop {
        let b = Float::with_val(bits, table.get(2 * k));
        let coef = Float::with_val(bits, &b / &fact);
        let term = (&poch * &power).scale(&coef);
        let t_abs = term.abs();
        if let Some(prev) = &prev_abs {
            if t_abs >= *prev {
                let plan = EMPlan {
                    n_split,
                    p_used,
                    remainder_est: 10f64.powf(last_bound),
                    remainder_log10: last_bound,
                    stop: EmStop::Turnover,
                    retries: 0,
                };
                if last_bound <= target_log10 {
                    return Ok((acc, plan));
                }
                return Err(Error::HeuristicFailure(format!(
                    "smallest correction term reached with remainder 1e{last_bound:.1} at N = {n_split}"
                )));
            }
        }
        acc = &acc + &term;
        p_used = k;
        last_bound =
            if s.re_f64() + 2.0 * k as f64 > 0.0 { em_remainder_log10(&s, &q, n_split, k)? } else { f64::INFINITY };
        if last_bound <= target_log10 {
            let plan = EMPlan {
                n_split,
                p_used,
                remainder_est: 10f64.powf(last_bound),
                remainder_log10: last_bound,
                stop: EmStop::Converged,
                retries: 0,
            };
            return Ok((acc, plan));
        }
        if k >= max_p {
            return Err(Error::HeuristicFailure(format!("no convergence within {max_p} correction terms")));
        }
        prev_abs = Some(t_abs);
        // advance (s)_{2k−1} → (s)_{2k+1}, power by (N+q)^{−2}, (2k)! → (2k+2)!
        let a = s.add_i64(2 * k as i64 - 1);
        let b2 = s.add_i64(2 * k as i64);
        poch = &(&poch * &a) * &b2;
        power = &power * &inv_nq2;
        fact *= ((2 * k + 1) * (2 * k + 2)) as u32;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numctx::{pi, tolerance};

    fn c(prec: u32, re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(prec, re, im)
    }

    #[test]
    fn zeta_two_to_fifty_digits() {
        let v = hz_euler_maclaurin(&c(64, 2.0, 0.0), &c(64, 1.0, 0.0), 50).unwrap();
        let want = pi(300).square() / 6u32;
        assert!((v.re().clone() - &want).abs() < tolerance(50, 300));
        assert!(v.im().is_zero());
    }

    #[test]
    fn near_first_zero() {
        let v = hz_euler_maclaurin(&c(128, 0.5, 14.134725), &c(128, 1.0, 0.0), 30).unwrap();
        assert!(v.abs_f64() < 1e-5);
    }

    #[test]
    fn negative_integer() {
        let v = hz_euler_maclaurin(&c(64, -3.0, 0.0), &c(64, 1.0, 0.0), 30).unwrap();
        let want = Float::with_val(200, 1) / 120u32;
        assert!((v.re().clone() - &want).abs() < tolerance(30, 200));
    }

    #[test]
    fn pole() {
        assert!(matches!(hz_euler_maclaurin(&c(64, 1.0, 0.0), &c(64, 0.5, 0.0), 20), Err(Error::Pole(_))));
    }

    #[test]
    fn remainder_bound_examples() {
        let one = c(64, 1.0, 0.0);
        let two = c(64, 2.0, 0.0);
        let b = em_remainder_bound(&two, &one, 10, 5).unwrap();
        assert!(b > 1e-13 && b < 1e-12, "{b}");
        assert!(em_remainder_bound(&two, &one, 1, 0).unwrap().is_finite());
        let b5 = em_remainder_bound(&two, &one, 10, 5).unwrap();
        let b6 = em_remainder_bound(&two, &one, 10, 6).unwrap();
        assert!(b6 < b5);
        assert!(matches!(em_remainder_bound(&c(64, -4.0, 0.0), &one, 5, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn stop_reasons_respect_smallest_term_rule() {
        // A coarse split forces the turnover path; the plan must be consistent with it.
        for digits in [10u32, 30, 60] {
            let (_, plan) = hz_euler_maclaurin_plan(&c(128, 0.5, 25.0), &c(128, 0.3, 0.0), digits).unwrap();
            assert!(plan.remainder_log10 <= -(digits as f64));
        }
    }

    #[test]
    fn complex_q() {
        // ζ(s, q) − ζ(s, q+1) = q^{−s} for complex q with Re q > 0.
        let s = c(128, 0.7, -3.0);
        let q = c(128, 0.4, -0.9);
        let a = hz_euler_maclaurin(&s, &q, 30).unwrap();
        let b = hz_euler_maclaurin(&s, &q.add_i64(1), 30).unwrap();
        let qs = (-&(&s * &q.ln())).exp();
        assert!((&(&a - &b) - &qs).abs() < tolerance(28, 128));
    }
}
