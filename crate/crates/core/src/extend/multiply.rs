use rug::Float;

use super::li_anywhere;
use crate::error::{Error, Result};
use crate::numctx::{cpow, digits_to_bits, two_pi, BigComplex};

/// e^{2πim/p}, exact at multiples of a quarter turn.
pub fn root_of_unity(m: i64, p: u32, prec: u32) -> BigComplex {
    let p = p as i64;
    let m = m.rem_euclid(p);
    if (4 * m) % p == 0 {
        return match 4 * m / p {
            0 => BigComplex::one(prec),
            1 => BigComplex::i(prec),
            2 => BigComplex::from_int(prec, -1),
            _ => -BigComplex::i(prec),
        };
    }
    let theta = two_pi(prec) * m / p;
    BigComplex::cis(&theta)
}

fn extra_digits(s: &BigComplex, p: u32) -> u32 {
    let lp = (p as f64).log10();
    (2.0 + lp + (1.0 - s.re_f64()).max(0.0) * lp).ceil() as u32
}

/// Li_s(z) = p^{1−s} Li_s(z^p) − Σ_{m=1}^{p−1} Li_s(z e^{2πim/p}).
pub fn li_multiplication(s: &BigComplex, z: &BigComplex, p: u32, digits: u32) -> Result<BigComplex> {
    if p < 2 {
        return Err(Error::Usage(format!("multiplication needs p >= 2, got {p}")));
    }
    let inner = digits + extra_digits(s, p);
    let bits = digits_to_bits(inner) + 16;
    let s = s.with_prec(bits);
    let z = z.with_prec(bits);
    let (top, _) = li_anywhere(&s, &z.powi(p as u64), inner)?;
    let scale = cpow(&BigComplex::from_int(bits, p as i64), &(-&s).add_i64(1), 0)?;
    let mut acc = &scale * &top;
    for m in 1..p {
        let (v, _) = li_anywhere(&s, &(&z * &root_of_unity(m as i64, p, bits)), inner)?;
        acc = &acc - &v;
    }
    Ok(acc)
}

/// p^{−s} Σ_{m=1}^{p−1} χ(m) Li_s(z e^{2πim/p}); `chi[0]` is ignored and
/// zero entries are skipped.
pub fn twisted_li(s: &BigComplex, z: &BigComplex, p: u32, chi: &[BigComplex], digits: u32) -> Result<BigComplex> {
    if p < 1 || chi.len() != p as usize {
        return Err(Error::Usage(format!("need {p} character values, got {}", chi.len())));
    }
    let inner = digits + extra_digits(s, p);
    let bits = digits_to_bits(inner) + 16;
    let s = s.with_prec(bits);
    let z = z.with_prec(bits);
    let mut acc = BigComplex::zero(bits);
    for (m, c) in chi.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let (v, _) = li_anywhere(&s, &(&z * &root_of_unity(m as i64, p, bits)), inner)?;
        acc = &acc + &(&c.with_prec(bits) * &v);
    }
    let lp = Float::with_val(bits, p).ln();
    Ok(&acc * &(-&s.scale(&lp)).exp())
}
