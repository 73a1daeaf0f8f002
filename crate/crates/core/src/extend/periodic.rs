use rug::Float;

use super::{guarded, DEPTH_MAX};
use crate::error::{Error, Result};
use crate::hurwitz::{hz_euler_maclaurin, riemann_zeta};
use crate::numctx::{cpow, digits_to_bits, gamma, pi, two_pi, BigComplex};
use crate::polylog::li_borwein;

/// F(q;s) = Σ_{n≥1} e^{2πinq}/n^s = Li_s(e^{2πiq}) for real q in (0, 1].
pub fn periodic_zeta(q: &Float, s: &BigComplex, digits: u32) -> Result<BigComplex> {
    periodic_zeta_traced(q, s, digits).map(|(v, _)| v)
}

/// As [`periodic_zeta`], also returning the deepest level of range reduction.
///
/// q < 1/4 uses F(q) = 2^{1−s}F(2q) − F(q+1/2); q > 3/4 uses
/// F(q) = 2^{1−s}F(2q−1) − F(q−1/2). Both leave one branch in [1/4, 3/4]
/// and move the other twice as far from the endpoint.
pub fn periodic_zeta_traced(q: &Float, s: &BigComplex, digits: u32) -> Result<(BigComplex, usize)> {
    periodic_inner(q, s, digits).map(|(v, depth, _)| (v, depth))
}

/// Value, reduction depth and number of leaf evaluations.
fn periodic_inner(q: &Float, s: &BigComplex, digits: u32) -> Result<(BigComplex, usize, usize)> {
    if !(*q > 0 && *q <= 1) {
        return Err(Error::Domain(format!("periodic zeta needs 0 < q <= 1, got {}", q.to_f64())));
    }
    let qf = q.to_f64();
    let levels = if qf < 0.25 {
        (0.25 / qf).log2().ceil()
    } else if qf > 0.75 && qf < 1.0 {
        (0.25 / (1.0 - qf)).log2().ceil()
    } else {
        0.0
    };
    let sigma = s.re_f64();
    let guard = 2 + (levels * (1.0 + (1.0 - sigma).max(0.0)) / std::f64::consts::LOG2_10).ceil() as u32;
    let inner = digits + guard;
    let bits = digits_to_bits(inner) + 16 + q.prec().min(4096);
    let s = s.with_prec(bits);
    let factor = cpow(&BigComplex::from_int(bits, 2), &(-&s).add_i64(1), 0)?;
    let mut count = Count::default();
    let v = reduce(Float::with_val(bits, q), &s, &factor, inner, 0, &mut count)?;
    Ok((v, count.depth, count.leaves))
}

#[derive(Default)]
struct Count {
    depth: usize,
    leaves: usize,
}

fn reduce(
    q: Float,
    s: &BigComplex,
    factor: &BigComplex,
    digits: u32,
    level: usize,
    count: &mut Count,
) -> Result<BigComplex> {
    if level > DEPTH_MAX {
        return Err(Error::Depth(format!("more than {DEPTH_MAX} range reductions")));
    }
    count.depth = count.depth.max(level);
    count.leaves += 1;
    if q == 1 {
        return riemann_zeta(s, digits);
    }
    let quarter = Float::with_val(q.prec(), 0.25);
    if q < quarter {
        count.leaves -= 1;
        let doubled = reduce(Float::with_val(q.prec(), &q * 2u32), s, factor, digits, level + 1, count)?;
        let shifted = reduce(Float::with_val(q.prec(), &q + 0.5f64), s, factor, digits, level + 1, count)?;
        return Ok(&(factor * &doubled) - &shifted);
    }
    if q > 0.75f64 {
        count.leaves -= 1;
        let doubled = reduce(Float::with_val(q.prec(), &q * 2u32) - 1u32, s, factor, digits, level + 1, count)?;
        let shifted = reduce(Float::with_val(q.prec(), &q - 0.5f64), s, factor, digits, level + 1, count)?;
        return Ok(&(factor * &doubled) - &shifted);
    }
    let bits = s.prec();
    let z = BigComplex::cis(&(two_pi(bits) * &q));
    li_borwein(s, &z, digits)
}

/// Γ(s)(2π)^{−s} at working precision.
fn gamma_over_2pi_pow(s: &BigComplex) -> Result<BigComplex> {
    let bits = s.prec();
    Ok(&gamma(s)? * &(-&s.scale(&two_pi(bits).ln())).exp())
}

fn quarter_turn(s: &BigComplex) -> BigComplex {
    let bits = s.prec();
    (&BigComplex::new(Float::new(bits), pi(bits) / 2u32) * s).exp()
}

/// ζ(1−s, q) from two periodic zeta values:
///
/// ```text
/// ζ(1−s, q) = Γ(s)/(2π)^s [e^{−iπs/2} F(q;s) + e^{iπs/2} F(1−q;s)]
/// ```
///
/// which is Li_s(e^{2πiq}) + (−1)^s Li_s(e^{−2πiq}) = (2πi)^s ζ(1−s,q)/Γ(s)
/// with (−1)^s read as e^{iπs}.
pub fn hurwitz_from_li(s: &BigComplex, q: &Float, digits: u32) -> Result<BigComplex> {
    hurwitz_from_li_counted(s, q, digits).map(|(v, _)| v)
}

/// As [`hurwitz_from_li`], also returning how many polylogarithm (or ζ)
/// evaluations the final pass made.
pub fn hurwitz_from_li_counted(s: &BigComplex, q: &Float, digits: u32) -> Result<(BigComplex, usize)> {
    if s.is_nonpositive_integer() {
        return Err(Error::Pole("Γ(s) has a pole at non-positive integer s".into()));
    }
    if !(*q > 0 && *q < 1) {
        return Err(Error::Domain(format!("need 0 < q < 1, got {}", q.to_f64())));
    }
    let evals = std::cell::Cell::new(0);
    let v = guarded(digits, |d| {
        let bits = digits_to_bits(d) + 16;
        let s = s.with_prec(bits);
        let q = Float::with_val(bits.max(q.prec()), q);
        let one_minus_q = Float::with_val(q.prec(), 1u32 - &q);
        let (f1, _, n1) = periodic_inner(&q, &s, d)?;
        let (f2, _, n2) = periodic_inner(&one_minus_q, &s, d)?;
        evals.set(n1 + n2);
        let pref = gamma_over_2pi_pow(&s)?;
        let rot = quarter_turn(&s);
        let a = (&pref.div(&rot)) * &f1;
        let b = &(&pref * &rot) * &f2;
        let mag =
            (pref.div(&rot).abs_f64() * f1.abs_f64().max(1.0)).max((&pref * &rot).abs_f64() * f2.abs_f64().max(1.0));
        Ok((&a + &b, mag.log10()))
    })?;
    Ok((v, evals.get()))
}

/// F(q; 1−s) from two Hurwitz values, the reflection in the other direction:
///
/// ```text
/// F(q; 1−s) = Γ(s)/(2π)^s [e^{iπs/2} ζ(s,q) + e^{−iπs/2} ζ(s,1−q)]
/// ```
pub fn periodic_from_hurwitz(s: &BigComplex, q: &Float, digits: u32) -> Result<BigComplex> {
    if s.is_nonpositive_integer() {
        return Err(Error::Pole("Γ(s) has a pole at non-positive integer s".into()));
    }
    if !(*q > 0 && *q < 1) {
        return Err(Error::Domain(format!("need 0 < q < 1, got {}", q.to_f64())));
    }
    guarded(digits, |d| {
        let bits = digits_to_bits(d) + 16;
        let s = s.with_prec(bits);
        let qc = BigComplex::from_real(Float::with_val(bits.max(q.prec()), q));
        let z1 = hz_euler_maclaurin(&s, &qc, d)?;
        let z2 = hz_euler_maclaurin(&s, &(-&qc).add_i64(1), d)?;
        let pref = gamma_over_2pi_pow(&s)?;
        let rot = quarter_turn(&s);
        let a = &(&pref * &rot) * &z1;
        let b = (&pref * &z2).div(&rot);
        let mag =
            ((&pref * &rot).abs_f64() * z1.abs_f64().max(1.0)).max(pref.div(&rot).abs_f64() * z2.abs_f64().max(1.0));
        Ok((&a + &b, mag.log10()))
    })
}
