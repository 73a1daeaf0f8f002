//! Complex gamma function by Spouge's approximation.
//!
//! Γ(z+1) = (z+a)^{z+1/2} e^{−(z+a)} [c_0 + Σ_{k=1}^{a−1} c_k/(z+k) + ε]
//! with relative error below (2π)^{−(a+1/2)} / √a for Re(z+a) > 0.
//! The left half-plane goes through the reflection formula.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::ops::Pow;
use rug::Float;

use super::complex::{pi, two_pi};
use super::BigComplex;
use crate::error::{Error, Result};

type CoeffKey = (u32, u32);

fn coeff_cache() -> &'static Mutex<HashMap<CoeffKey, Arc<Vec<Float>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CoeffKey, Arc<Vec<Float>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Spouge parameter for `bits` of relative accuracy.
fn spouge_a(bits: u32) -> u32 {
    (bits as f64 / std::f64::consts::TAU.log2()).ceil() as u32 + 2
}

fn spouge_coeffs(a: u32, prec: u32) -> Arc<Vec<Float>> {
    let key = (a, prec);
    if let Some(c) = coeff_cache().lock().unwrap().get(&key) {
        return c.clone();
    }
    let mut c = Vec::with_capacity(a as usize);
    c.push(two_pi(prec).sqrt());
    let mut fact = Float::with_val(prec, 1);
    for k in 1..a {
        if k > 1 {
            fact *= k - 1;
        }
        let base = Float::with_val(prec, a - k);
        let half = Float::with_val(prec, k) - 0.5f64;
        let pow = base.clone().pow(&half);
        let e = Float::with_val(prec, a - k).exp();
        let mut ck = pow * e / &fact;
        if k % 2 == 0 {
            ck = -ck;
        }
        c.push(ck);
    }
    let arc = Arc::new(c);
    coeff_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// Γ(s) for Re s ≥ 1/2 at internal precision `prec`.
fn gamma_right(s: &BigComplex, target_bits: u32) -> BigComplex {
    let a = spouge_a(target_bits + 8);
    let mag = s.abs_f64().max(1.0).log2().ceil() as u32;
    // Coefficients alternate in sign and reach roughly e^a in size.
    let prec = target_bits + 2 * a + 16 + mag;
    let coeffs = spouge_coeffs(a, prec);
    let s = s.with_prec(prec);
    let z = s.add_i64(-1);
    let mut sum = BigComplex::from_real(coeffs[0].clone());
    for k in 1..a {
        let term = z.add_i64(k as i64).recip().scale(&coeffs[k as usize]);
        sum = &sum + &term;
    }
    let za = z.add_i64(a as i64);
    let expo = z.add_real(&Float::with_val(prec, 0.5));
    let lead = (&expo * &za.ln()).exp();
    let decay = (-&za).exp();
    &(&lead * &decay) * &sum
}

/// Γ(s) to the precision carried by `s`.
pub fn gamma(s: &BigComplex) -> Result<BigComplex> {
    if s.is_nonpositive_integer() {
        return Err(Error::Pole(format!("gamma has a pole at s = {}", s.re_f64())));
    }
    let bits = s.prec();
    let half = Float::with_val(bits, 0.5);
    if *s.re() >= half {
        return Ok(gamma_right(s, bits).with_prec(bits));
    }
    // Γ(s) = π / (sin(πs) Γ(1−s))
    let extra = 16 + s.abs_f64().max(1.0).log2().ceil() as u32;
    let p = bits + extra;
    let sp = s.with_prec(p);
    let one_minus = (-&sp).add_i64(1);
    let g = gamma_right(&one_minus, p);
    let pis = sp.scale(&pi(p));
    let denom = &pis.sin() * &g;
    let num = BigComplex::from_real(pi(p));
    Ok(num.div(&denom).with_prec(bits))
}

/// 1/Γ(s), which is entire; exactly zero at the non-positive integers.
pub fn rgamma(s: &BigComplex) -> BigComplex {
    if s.is_nonpositive_integer() {
        return BigComplex::zero(s.prec());
    }
    gamma(s).expect("pole excluded").recip()
}
