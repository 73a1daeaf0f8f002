use rug::ops::Pow;
use rug::Float;

use super::{guarded, is_positive_real};
use crate::error::{Error, Result};
use crate::hurwitz::hz_euler_maclaurin;
use crate::numctx::{digits_to_bits, gamma, log_poscut, pi, two_pi, BigComplex};

/// Li_s(z) from two Hurwitz zeta values at a = 1 − s:
///
/// ```text
/// Li_s(z) = Γ(a)/(2π)^a [e^{iπa/2} ζ(a, q) + e^{−iπa/2} ζ(a, 1−q)],  q = log z/(2πi)
/// ```
///
/// with the logarithm cut along the positive real axis, so Re q ∈ (0, 1].
/// For z on (1, ∞) the logarithm is taken with argument 0, which is the limit
/// from above. At integer s ≥ 0 the value is the average of s ± δ.
pub fn li_inversion(s: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::Domain("inversion is undefined at z = 0".into()));
    }
    if z.add_i64(-1).is_zero() {
        return Err(Error::BranchPoint("Li_s(z) has a branch point at z = 1".into()));
    }
    let bits = digits_to_bits(digits);
    let m = s.re_f64().round();
    if (0.0..1e15).contains(&m) {
        let mi = m as i64;
        let gap = s.add_i64(-mi).abs_f64();
        if gap == 0.0 || gap.log2() < -(bits as f64) / 2.0 {
            let half = digits / 2 + 2;
            let delta = Float::with_val(bits + 64, 10).pow(-(half as i32));
            let center = BigComplex::from_int(bits + 64, mi);
            let up = center.add_real(&delta);
            let down = center.add_real(&(-delta));
            let a = guarded(digits + 1, |d| inversion_terms(&up, z, d))?;
            let b = guarded(digits + 1, |d| inversion_terms(&down, z, d))?;
            return Ok((&a + &b).div_i64(2));
        }
    }
    guarded(digits, |d| inversion_terms(s, z, d))
}

fn inversion_terms(s: &BigComplex, z: &BigComplex, digits: u32) -> Result<(BigComplex, f64)> {
    let bits = digits_to_bits(digits) + 16;
    let s = s.with_prec(bits);
    let z = z.with_prec(bits);
    let log = if is_positive_real(&z) { BigComplex::from_real(z.re().clone().ln()) } else { log_poscut(&z)? };
    let tp = two_pi(bits);
    // q = log/(2πi) = (Im log − i Re log)/(2π)
    let q = BigComplex::new(Float::with_val(bits, log.im() / &tp), Float::with_val(bits, -(log.re().clone()) / &tp));
    let one_minus_q = (-&q).add_i64(1);
    let a = (-&s).add_i64(1);
    let za = hz_euler_maclaurin(&a, &q, digits)?;
    let zb = hz_euler_maclaurin(&a, &one_minus_q, digits)?;
    // Γ(a)(2π)^{−a}
    let pref = &gamma(&a)? * &(-&a.scale(&tp.clone().ln())).exp();
    let half_turn = BigComplex::new(Float::new(bits), pi(bits) / 2u32);
    let rot = (&half_turn * &a).exp();
    let t1 = &(&pref * &rot) * &za;
    let t2 = (&pref * &zb).div(&rot);
    let mag = [(&pref * &rot).abs_f64() * za.abs_f64().max(1.0), pref.div(&rot).abs_f64() * zb.abs_f64().max(1.0)]
        .into_iter()
        .fold(0.0f64, f64::max);
    Ok((&t1 + &t2, mag.log10()))
}
