//! Polylogarithm Li_s(z) = Σ z^k/k^s inside the region |z²/(z−1)| < 4.
//!
//! The main evaluator is the finite sum obtained by the polynomial trick with
//! the kernel y^n(1−y)^n; its truncation error has the closed-form bounds
//! implemented in [`error_bound`], which also drive order selection.

mod borwein;
mod direct;
mod negint;

pub use borwein::{li_borwein, li_borwein_order, li_borwein_with};
pub use direct::{li_direct, li_direct_bits, li_direct_budget, li_direct_with};
pub use negint::li_negint;

use rug::Float;

use crate::error::{Error, Result};
use crate::numctx::{digits_to_bits, BigComplex};

/// Default upper limit on |z²/(z−1)| accepted by the planner.
pub const DEFAULT_RHO_MAX: f64 = 3.6;

/// Constants of the peak of y(1−y)|log y| on [0,1].
#[derive(Debug, Clone, Copy)]
pub struct GaussConstants {
    pub y0: f64,
    /// 1/(2 y0 (1 − 2 y0))
    pub gauss_factor: f64,
    /// |4 y0 (1 − y0) log y0|
    pub peak_const: f64,
    /// 8 y0 (1 − 2 y0)
    pub exp_const: f64,
}

impl GaussConstants {
    pub const Y0: f64 = 0.235_610_582_53;

    /// [`GaussConstants::derive`], computed once per process.
    pub fn get() -> Self {
        static CELL: std::sync::OnceLock<GaussConstants> = std::sync::OnceLock::new();
        *CELL.get_or_init(Self::derive)
    }

    /// Solves (1 − 2y) ln y + (1 − y) = 0 on (0, 1/2) by bisection.
    pub fn derive() -> Self {
        let f = |y: f64| (1.0 - 2.0 * y) * y.ln() + (1.0 - y);
        let (mut lo, mut hi) = (0.01f64, 0.49f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let y0 = 0.5 * (lo + hi);
        GaussConstants {
            y0,
            gauss_factor: 1.0 / (2.0 * y0 * (1.0 - 2.0 * y0)),
            peak_const: (4.0 * y0 * (1.0 - y0) * y0.ln()).abs(),
            exp_const: 8.0 * y0 * (1.0 - 2.0 * y0),
        }
    }
}

/// Order, precision and predicted error for one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BorweinPlan {
    pub order_n: usize,
    pub working_bits: u32,
    pub region_ratio: f64,
    /// Bound on |ξ|; may underflow to 0 for very large D, see `bound_log10`.
    pub predicted_bound: f64,
    pub bound_log10: f64,
}

/// |z²/(z−1)|.
pub fn region_ratio(z: &BigComplex) -> Result<f64> {
    let zm1 = z.add_i64(-1);
    if zm1.is_zero() {
        return Err(Error::Domain("z = 1 is the branch point".into()));
    }
    Ok(z.square().div(&zm1).abs_f64())
}

fn on_cut(z: &BigComplex) -> bool {
    z.im().is_zero() && *z.re() >= 1
}

/// max over y ∈ [0,1] of 1/|1 − yz|.
///
/// The minimum of |1 − yz| sits at y* = Re z/|z|²; when that lies inside the
/// interval the minimum is |Im z|/|z|, otherwise it is at an endpoint.
pub fn denom_bound(z: &BigComplex) -> Result<f64> {
    if on_cut(z) {
        return Err(Error::Domain("z on the cut [1, ∞)".into()));
    }
    if *z.re() <= 0 {
        return Ok(1.0);
    }
    let norm = z.norm_sqr();
    let ystar = Float::with_val(z.prec(), z.re() / &norm);
    if ystar >= 1 {
        return Ok(1.0 / z.add_i64(-1).abs_f64());
    }
    Ok(z.abs_f64() / z.im().to_f64().abs())
}

fn ln_sinhc(x: f64) -> f64 {
    // ln(sinh(x)/x) without overflow
    if x < 1e-8 {
        return 0.0;
    }
    if x > 20.0 {
        x - std::f64::consts::LN_2 - x.ln()
    } else {
        (x.sinh() / x).ln()
    }
}

fn ln_gamma_real(x: f64) -> f64 {
    Float::with_val(64, x).ln_gamma().to_f64()
}

/// Natural log of the upper bound on 1/|Γ(s)|.
///
/// With m = max(0, ⌈1 − σ⌉) so that σ + m ≥ 1:
/// 1/|Γ(s)| = |s(s+1)…(s+m−1)| / |Γ(s+m)| ≤ |s…(s+m−1)|·√(sinh πτ/(πτ)) / Γ(σ+m).
pub fn recip_gamma_bound_ln(s: &BigComplex) -> f64 {
    let sigma = s.re_f64();
    let tau = s.im_f64();
    let m = if sigma >= 1.0 { 0 } else { (1.0 - sigma).ceil() as i64 };
    let mut ln_b = 0.0;
    for k in 0..m {
        // full-precision |s+k|, which stays nonzero next to a pole of Γ
        ln_b += s.add_i64(k).abs_f64().ln();
    }
    ln_b += 0.5 * ln_sinhc(std::f64::consts::PI * tau.abs());
    ln_b -= ln_gamma_real(sigma + m as f64);
    ln_b
}

/// Upper bound on 1/|Γ(s)|.
pub fn recip_gamma_bound(s: &BigComplex) -> f64 {
    recip_gamma_bound_ln(s).exp()
}

fn ln_g_factor(sigma: f64, n: usize, gc: &GaussConstants) -> f64 {
    let n = n as f64;
    let e = gc.exp_const;
    let arg = (1.0 - 2.0 * gc.y0).powi(2) * (sigma - 1.0) * e / (e + (sigma - 1.0) / (n - sigma + 1.0));
    0.5 * (std::f64::consts::PI / (4.0 * n)).ln() - arg
}

/// The n-independent pieces of the truncation bound at (s, z).
struct BoundTerms {
    sigma: f64,
    ln_fixed: f64,
    ln_ratio: f64,
    vanishes: bool,
    gc: GaussConstants,
}

impl BoundTerms {
    fn new(s: &BigComplex, z: &BigComplex) -> Result<Self> {
        let rho = region_ratio(z)?;
        if rho >= 4.0 {
            return Err(Error::Region(format!("|z²/(z−1)| = {rho:.4} is not below 4")));
        }
        let vanishes = s.is_nonpositive_integer() || z.is_zero();
        let ln_fixed = if vanishes { 0.0 } else { z.abs_f64().ln() + recip_gamma_bound_ln(s) + denom_bound(z)?.ln() };
        Ok(BoundTerms { sigma: s.re_f64(), ln_fixed, ln_ratio: (rho / 4.0).ln(), vanishes, gc: GaussConstants::get() })
    }

    fn log10_at(&self, n: usize) -> Result<f64> {
        if self.vanishes {
            return Ok(f64::NEG_INFINITY);
        }
        if n == 0 {
            return Err(Error::Order("order must be positive".into()));
        }
        let sigma = self.sigma;
        let nf = n as f64;
        let mut ln_b = nf * self.ln_ratio + self.ln_fixed;
        if sigma >= 1.0 {
            if sigma > nf {
                return Err(Error::Order(format!("order {n} below Re s = {sigma}")));
            }
            ln_b += ln_g_factor(sigma, n, &self.gc) + (sigma - 1.0) * self.gc.peak_const.ln();
        } else {
            if sigma.abs() > nf / 4.0 {
                return Err(Error::Order(format!("order {n} too small for Re s = {sigma}")));
            }
            ln_b += (1.0 - sigma) * std::f64::consts::LN_2;
        }
        Ok(ln_b / std::f64::consts::LN_10)
    }
}

/// log10 of the truncation bound for order n, or `-inf` when the
/// remainder vanishes identically (non-positive integer s).
pub fn error_bound_log10(s: &BigComplex, z: &BigComplex, n: usize) -> Result<f64> {
    BoundTerms::new(s, z)?.log10_at(n)
}

/// The truncation bound itself (underflows to 0 below ~1e-308).
pub fn error_bound(s: &BigComplex, z: &BigComplex, n: usize) -> Result<f64> {
    Ok(10f64.powf(error_bound_log10(s, z, n)?))
}

fn min_order(s: &BigComplex) -> usize {
    let sigma = s.re_f64();
    if sigma >= 1.0 {
        (sigma.ceil() as usize).max(1)
    } else {
        ((4.0 * sigma.abs()).ceil() as usize).max(1)
    }
}

/// Extra bits for intermediate growth of the order-n sum at z: log2 of the
/// largest tail term |z|^k (1+|z|)^n/|1−z|^n k^{−σ}, k in (n, 2n], which also
/// bounds the partial sums of (−z)^j C(n,j) and the head terms.
pub(crate) fn inflation_bits(s: &BigComplex, z: &BigComplex, n: usize) -> u32 {
    let nf = n as f64;
    let za = z.abs_f64();
    let zm1 = z.add_i64(-1).abs_f64();
    let k = if za < 1.0 { nf + 1.0 } else { 2.0 * nf };
    let mut peak = nf * ((1.0 + za) / zm1).log2() + k * za.log2();
    peak += (-s.re_f64()).max(0.0) * (2.0 * nf).log2();
    peak.max(0.0).ceil() as u32 + (2.0 * nf).log2().ceil() as u32 + 10
}

/// Smallest admissible order whose bound is ≤ 10^{−D}.
pub fn choose_order(s: &BigComplex, z: &BigComplex, digits: u32, rho_max: f64) -> Result<BorweinPlan> {
    if on_cut(z) {
        return Err(Error::Domain("z on the cut [1, ∞)".into()));
    }
    let rho = region_ratio(z)?;
    if rho >= rho_max.min(4.0) {
        return Err(Error::Region(format!("|z²/(z−1)| = {rho:.4} exceeds {rho_max}")));
    }
    let base = digits_to_bits(digits);
    if let Some(m) = s.as_integer().filter(|&m| m <= 0) {
        let n = (1 - m) as usize;
        return Ok(BorweinPlan {
            order_n: n,
            working_bits: base + inflation_bits(s, z, n),
            region_ratio: rho,
            predicted_bound: 0.0,
            bound_log10: f64::NEG_INFINITY,
        });
    }
    let target = -(digits as f64);
    let terms = BoundTerms::new(s, z)?;
    let mut n = min_order(s);
    loop {
        let b = terms.log10_at(n)?;
        if b <= target {
            return Ok(BorweinPlan {
                order_n: n,
                working_bits: base + inflation_bits(s, z, n),
                region_ratio: rho,
                predicted_bound: 10f64.powf(b),
                bound_log10: b,
            });
        }
        n += 1;
        if n > 1_000_000 {
            return Err(Error::Convergence("no order meets the requested accuracy".into()));
        }
    }
}
