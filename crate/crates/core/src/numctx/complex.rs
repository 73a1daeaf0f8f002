use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

/// Arbitrary-precision complex number. Both parts always share one binary
/// precision; binary operations produce the smaller precision of the two
/// operands.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub(crate) fn two_pi(prec: u32) -> Float {
    pi(prec) * 2u32
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().min(im.prec()).max(2);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        let prec = prec.max(2);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_int(prec: u32, n: i64) -> Self {
        let prec = prec.max(2);
        BigComplex { re: Float::with_val(prec, n), im: Float::new(prec) }
    }

    pub fn from_real(x: Float) -> Self {
        let prec = x.prec();
        BigComplex { re: x, im: Float::new(prec) }
    }

    /// Exact ratio `num/den`, rounded once.
    pub fn from_ratio(prec: u32, num: i64, den: i64) -> Self {
        let prec = prec.max(2);
        let re = Float::with_val(prec, num) / den;
        Self::from_real(re)
    }

    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        BigComplex::new(Float::with_val(r.prec(), r * &c), Float::with_val(r.prec(), r * &s))
    }

    /// `e^{i·theta}` for real `theta`.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        BigComplex::new(c, s)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let prec = prec.max(2);
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `Some(n)` when the value is exactly the integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.im.is_zero() || !self.re.is_integer() {
            return None;
        }
        self.re.to_integer().and_then(|i| i.to_i64())
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        matches!(self.as_integer(), Some(n) if n <= 0)
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// |z| as an `f64`. Saturates to infinity or zero outside the `f64` range.
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// log2 |z| without leaving arbitrary precision; `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let a = self.abs();
        a.log2().to_f64()
    }

    /// Principal argument in (-π, π].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().min(k.prec());
        BigComplex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re / k), im: Float::with_val(p, &self.im / k) }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        BigComplex { re: Float::with_val(self.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn add_real(&self, x: &Float) -> Self {
        let p = self.prec().min(x.prec());
        BigComplex { re: Float::with_val(p, &self.re + x), im: Float::with_val(p, &self.im) }
    }

    pub fn add_i64(&self, k: i64) -> Self {
        BigComplex { re: Float::with_val(self.prec(), &self.re + k), im: self.im.clone() }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        BigComplex { re: Float::with_val(p, &self.re / &d), im: Float::with_val(p, -Float::with_val(p, &self.im / &d)) }
    }

    pub fn div(&self, other: &BigComplex) -> Self {
        let p = self.prec().min(other.prec());
        let (c, d) = (&other.re, &other.im);
        let d2 = other.norm_sqr();
        let re = Float::with_val(p, &self.re * c) + Float::with_val(p, &self.im * d);
        let im = Float::with_val(p, &self.im * c) - Float::with_val(p, &self.re * d);
        BigComplex { re: Float::with_val(p, re / &d2), im: Float::with_val(p, im / &d2) }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
    }

    /// Principal logarithm, imaginary part in (-π, π].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = self.abs();
        BigComplex { re: Float::with_val(p, r.ln_ref()), im: self.arg() }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prec();
        let r = self.abs();
        // sqrt((r + |re|)/2) avoids cancellation.
        let t = (Float::with_val(p, &r + Float::with_val(p, self.re.abs_ref())) / 2u32).sqrt();
        if self.re.is_sign_positive() {
            let im = Float::with_val(p, &self.im / &t) / 2u32;
            BigComplex::new(t, im)
        } else {
            let re = Float::with_val(p, Float::with_val(p, self.im.abs_ref()) / &t) / 2u32;
            let im = if self.im.is_sign_negative() { -t } else { t };
            BigComplex::new(re, im)
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        BigComplex { re: Float::with_val(p, &s * &ch), im: Float::with_val(p, &c * &sh) }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        BigComplex { re: Float::with_val(p, &c * &ch), im: Float::with_val(p, -Float::with_val(p, &s * &sh)) }
    }

    /// `self^n` by repeated squaring.
    pub fn powi(&self, n: u64) -> Self {
        let mut result = BigComplex::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Distance |self - other|.
    pub fn dist(&self, other: &BigComplex) -> Float {
        (self - other).abs()
    }

    pub fn max_abs_part(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.abs_ref());
        let b = Float::with_val(self.prec(), self.im.abs_ref());
        match a.partial_cmp(&b) {
            Some(Ordering::Less) => b,
            _ => a,
        }
    }

    /// Decimal rendering with `digits` significant digits per part,
    /// `"<re> <im>"`.
    pub fn to_decimal_pair(&self, digits: usize) -> String {
        format!("{} {}", super::format::sci(&self.re, digits), super::format::sci(&self.im, digits))
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {:+}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize;
        f.write_str(&self.to_decimal_pair(digits))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &'a BigComplex) -> BigComplex {
        let p = self.prec().min(rhs.prec());
        BigComplex { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &'a BigComplex) -> BigComplex {
        let p = self.prec().min(rhs.prec());
        BigComplex { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &'a BigComplex) -> BigComplex {
        let p = self.prec().min(rhs.prec());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        BigComplex { re: ac - bd, im: ad + bc }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: Float::with_val(self.prec(), -&self.re), im: Float::with_val(self.prec(), -&self.im) }
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: BigComplex) -> BigComplex {
        &self + &rhs
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: BigComplex) -> BigComplex {
        &self - &rhs
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: BigComplex) -> BigComplex {
        &self * &rhs
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}
