//! Scalar substrate: complex numbers over MPFR reals, gamma, and the
//! branch-controlled logarithm and power used throughout the crate.

mod complex;
pub mod format;
mod gamma;

use rug::ops::Pow;
use rug::Float;

pub use complex::BigComplex;
pub(crate) use complex::{pi, two_pi};
pub use gamma::{gamma, rgamma};

use crate::error::{Error, Result};

/// Bits needed to hold `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// Working precision rule: `ceil(D·log2 10) + guard + inflation` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub target_digits: u32,
    pub guard_bits: u32,
    pub inflation_bits: u32,
}

impl PrecisionPolicy {
    pub const MIN_GUARD_BITS: u32 = 10;

    pub fn new(target_digits: u32) -> Self {
        PrecisionPolicy { target_digits: target_digits.max(1), guard_bits: Self::MIN_GUARD_BITS, inflation_bits: 0 }
    }

    pub fn with_guard(mut self, guard_bits: u32) -> Self {
        self.guard_bits = guard_bits.max(Self::MIN_GUARD_BITS);
        self
    }

    pub fn with_inflation(mut self, inflation_bits: u32) -> Self {
        self.inflation_bits = inflation_bits;
        self
    }

    pub fn working_bits(&self) -> u32 {
        digits_to_bits(self.target_digits) + self.guard_bits + self.inflation_bits
    }
}

/// 10^{-digits} as an `f64`-free Float (works far below the `f64` range).
pub fn tolerance(digits: i64, prec: u32) -> Float {
    Float::with_val(prec, 10).pow(-digits)
}

/// Logarithm with its cut on the positive real axis: imaginary part in (0, 2π].
pub fn log_poscut(z: &BigComplex) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    let p = z.prec();
    let mut theta = z.arg();
    if theta <= 0 {
        theta += two_pi(p);
    }
    let ln_r = Float::with_val(p, z.abs().ln_ref());
    Ok(BigComplex::new(ln_r, theta))
}

/// `w^s` on sheet `sheet` of the principal logarithm: e^{s(Log w + 2πi·sheet)}.
///
/// The sheet factor is applied as an explicit multiplication by e^{2πi·s·sheet},
/// so `cpow(w,s,M) = e^{2πisM}·cpow(w,s,0)` holds by construction.
pub fn cpow(w: &BigComplex, s: &BigComplex, sheet: i64) -> Result<BigComplex> {
    if w.is_zero() {
        if *s.re() > 0 {
            return Ok(BigComplex::zero(w.prec().min(s.prec())));
        }
        return Err(Error::Domain("0 raised to a power with Re s <= 0".into()));
    }
    let base = cpow_with_log(&w.ln(), s);
    if sheet == 0 {
        return Ok(base);
    }
    Ok(&base * &sheet_factor(s, sheet))
}

/// e^{s·log} for a caller-supplied logarithm value.
pub fn cpow_with_log(log: &BigComplex, s: &BigComplex) -> BigComplex {
    (s * log).exp()
}

/// e^{2πi·s·M}.
pub fn sheet_factor(s: &BigComplex, sheet: i64) -> BigComplex {
    let p = s.prec();
    let turn = BigComplex::new(Float::new(p), two_pi(p) * sheet);
    (&turn * s).exp()
}

/// k^{-s} for a positive integer k, via the real logarithm of k.
pub fn int_pow_neg(k: u64, s: &BigComplex) -> BigComplex {
    let p = s.prec();
    let lk = Float::with_val(p, k).ln();
    (-&s.scale(&lk)).exp()
}
