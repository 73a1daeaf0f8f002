use rug::Float;

use super::{apply_word, GenWord, SheetState, UPoly};
use crate::error::{Error, Result};
use crate::extend::{guarded, li_anywhere};
use crate::hurwitz::hz_euler_maclaurin;
use crate::numctx::{cpow, digits_to_bits, log_poscut, pi, rgamma, two_pi, BigComplex};

/// q = log z/(2πi) with the cut on the positive real axis; points of (0, ∞)
/// take argument 0, matching the limit from above used by `li_anywhere`.
pub(crate) fn sheet_q(z: &BigComplex) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::Domain("z = 0 is a branch point of the logarithm".into()));
    }
    let bits = z.prec();
    let log = if z.im().is_zero() && *z.re() > 0 {
        BigComplex::from_real(Float::with_val(bits, z.re().ln_ref()))
    } else {
        log_poscut(z)?
    };
    let tp = two_pi(bits);
    Ok(BigComplex::new(Float::with_val(bits, log.im() / &tp), Float::with_val(bits, -(log.re().clone()) / &tp)))
}

/// e^{±iπs/2}(2π)^s/Γ(s), zero at the poles of Γ.
fn delta_prefactor(s: &BigComplex, sign: i32) -> BigComplex {
    let bits = s.prec();
    let rg = rgamma(s);
    if rg.is_zero() {
        return rg;
    }
    let half_turn = BigComplex::new(Float::new(bits), pi(bits) * sign / 2u32);
    let rot = (&half_turn * s).exp();
    let pow = s.scale(&two_pi(bits).ln()).exp();
    &(&rot * &pow) * &rg
}

fn delta_raw(n: i64, s: &BigComplex, q: &BigComplex) -> Result<BigComplex> {
    let s1 = s.add_i64(-1);
    if n > 0 {
        let pref = delta_prefactor(s, 1);
        if pref.is_zero() {
            return Ok(pref);
        }
        Ok(&pref * &cpow(&q.add_i64(n - 1), &s1, 0)?)
    } else {
        let pref = delta_prefactor(s, -1);
        if pref.is_zero() {
            return Ok(pref);
        }
        Ok(&pref * &cpow(&(-q).add_i64(-n), &s1, 0)?)
    }
}

/// The branch difference
///
/// ```text
/// Δ_N  = e^{iπs/2}(2π)^s/Γ(s) · (N−1+q)^{s−1}   (N ≥ 1)
/// Δ_−N = e^{−iπs/2}(2π)^s/Γ(s) · (N−q)^{s−1}
/// ```
///
/// with q = log z/(2πi). Zero at non-positive integer s.
pub fn delta(n: i64, s: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    if n == 0 {
        return Err(Error::Domain("Δ_0 is not defined".into()));
    }
    check_z(z)?;
    guarded(digits, |d| {
        let bits = digits_to_bits(d) + 16;
        let q = sheet_q(&z.with_prec(bits))?;
        let v = delta_raw(n, &s.with_prec(bits), &q)?;
        Ok((v.clone(), v.abs_f64().log10()))
    })
}

fn check_z(z: &BigComplex) -> Result<()> {
    if z.is_zero() {
        return Err(Error::Domain("sheets are not defined at z = 0".into()));
    }
    if z.add_i64(-1).is_zero() {
        return Err(Error::BranchPoint("sheets are not defined at z = 1".into()));
    }
    Ok(())
}

fn eval_upoly(p: &UPoly, u: &BigComplex, uinv: &BigComplex) -> BigComplex {
    let bits = u.prec();
    let mut acc = BigComplex::zero(bits);
    for (k, c) in p.terms() {
        let base = if k >= 0 { u.powi(k as u64) } else { uinv.powi(k.unsigned_abs()) };
        acc = &acc + &base.scale_i64(c);
    }
    acc
}

/// Numeric value of a sheet state, with u = e^{−2πis}.
pub fn eval_state(s: &BigComplex, z: &BigComplex, state: &SheetState, digits: u32) -> Result<BigComplex> {
    check_z(z)?;
    guarded(digits, |d| {
        let bits = digits_to_bits(d) + 16;
        let s = s.with_prec(bits);
        let z = z.with_prec(bits);
        let turn = BigComplex::new(Float::new(bits), two_pi(bits));
        let uinv = (&turn * &s).exp();
        let u = uinv.recip();
        let q = sheet_q(&z)?;
        let mut acc = BigComplex::zero(bits);
        let mut mag = 0.0f64;
        if !state.li_coeff.is_zero() {
            let (li, _) = li_anywhere(&s, &z, d)?;
            let t = &eval_upoly(&state.li_coeff, &u, &uinv) * &li;
            mag = mag.max(t.abs_f64());
            acc = &acc + &t;
        }
        for (n, c) in state.deltas() {
            let t = &eval_upoly(c, &u, &uinv) * &delta_raw(n, &s, &q)?;
            mag = mag.max(t.abs_f64());
            acc = &acc + &t;
        }
        Ok((acc, mag.log10()))
    })
}

/// Li_s(z) continued along `word`, starting from the principal sheet.
pub fn eval_sheet(s: &BigComplex, z: &BigComplex, word: &GenWord, digits: u32) -> Result<BigComplex> {
    eval_state(s, z, &apply_word(&SheetState::principal(), word), digits)
}

/// Σ_{k=1}^{n} Δ_k as e^{iπs/2}(2π)^s/Γ(s) [ζ(1−s, q) − ζ(1−s, q+n)].
pub fn delta_sum_closed_form(n: u32, s: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    check_z(z)?;
    guarded(digits, |d| {
        let bits = digits_to_bits(d) + 16;
        let s = s.with_prec(bits);
        let pref = delta_prefactor(&s, 1);
        if pref.is_zero() || n == 0 {
            return Ok((BigComplex::zero(bits), 0.0));
        }
        let q = sheet_q(&z.with_prec(bits))?;
        let a = (-&s).add_i64(1);
        let za = hz_euler_maclaurin(&a, &q, d)?;
        let zb = hz_euler_maclaurin(&a, &q.add_i64(n as i64), d)?;
        let mag = pref.abs_f64() * za.abs_f64().max(zb.abs_f64()).max(1.0);
        Ok((&pref * &(&za - &zb), mag.log10()))
    })
}

/// Residual of the jump across the cut at x > 1: the sheet reached by
/// m₁^{N−1}, evaluated at x + iε minus its value at x − iε, less Δ_N(x + iε).
/// The residual is O(ε) plus rounding.
pub fn sheet_jump_check(s: &BigComplex, x: f64, eps: f64, n: i64, digits: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(format!("need N >= 1, got {n}")));
    }
    if !(x > 1.0 && x.is_finite()) {
        return Err(Error::Domain(format!("need x > 1, got {x}")));
    }
    if !(eps > 0.0 && eps <= 1e-4) {
        return Err(Error::Domain(format!("need 0 < eps <= 1e-4, got {eps}")));
    }
    let bits = digits_to_bits(digits) + 32;
    let above = BigComplex::from_f64(bits, x, eps);
    let below = above.conj();
    let word = GenWord::m1().pow((n - 1) as u32);
    let a = eval_sheet(s, &above, &word, digits)?;
    let b = eval_sheet(s, &below, &word, digits)?;
    let d = delta(n, s, &above, digits)?;
    Ok((&(&a - &b) - &d).abs_f64())
}
