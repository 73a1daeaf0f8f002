//! Li_s(z) on the whole z-plane, and the sums built from it: periodic zeta,
//! Hurwitz zeta via Jonquière's identity, multiplication and twisted sums.

mod inversion;
mod multiply;
mod periodic;

pub use inversion::li_inversion;
pub use multiply::{li_multiplication, root_of_unity, twisted_li};
pub use periodic::{
    hurwitz_from_li, hurwitz_from_li_counted, periodic_from_hurwitz, periodic_zeta, periodic_zeta_traced,
};

use crate::error::{Error, Result};
use crate::numctx::{cpow, digits_to_bits, BigComplex};
use crate::polylog::{li_borwein, li_negint, region_ratio, DEFAULT_RHO_MAX};

/// Nesting limit for duplication and descent steps.
pub const DEPTH_MAX: usize = 40;

/// One step taken by the dispatcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteStep {
    /// Rational closed form at a non-positive integer order.
    Exact,
    Borwein,
    /// Li_s(z) = 2^{1−s} Li_s(z²) − Li_s(−z)
    Dup,
    /// Li_s(w²) = 2^{s−1} (Li_s(w) + Li_s(−w)) for very large |z|
    Descent,
    /// Jonquière inversion through two Hurwitz zeta values
    Invert,
}

/// Steps in the order they were taken, and the deepest nesting reached.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DispatchTrace {
    pub route: Vec<RouteStep>,
    pub depth: usize,
}

impl DispatchTrace {
    pub fn describe(&self) -> String {
        let names: Vec<&str> = self
            .route
            .iter()
            .map(|r| match r {
                RouteStep::Exact => "EXACT",
                RouteStep::Borwein => "BORWEIN",
                RouteStep::Dup => "DUP",
                RouteStep::Descent => "DESCENT",
                RouteStep::Invert => "INVERT",
            })
            .collect();
        names.join(",")
    }
}

/// Evaluates at `digits + 4` and, if the largest combined part exceeded 10^3,
/// again with that many extra digits. `f` returns the value together with
/// log10 of its largest part.
pub(crate) fn guarded<F>(digits: u32, f: F) -> Result<BigComplex>
where
    F: Fn(u32) -> Result<(BigComplex, f64)>,
{
    let (v, mag) = f(digits + 4)?;
    if !mag.is_finite() || mag <= 3.0 {
        return Ok(v);
    }
    f(digits + 4 + mag.ceil() as u32).map(|(v, _)| v)
}

/// Squarings needed before z^(2^k) falls in the Borwein region.
fn dup_levels(z: &BigComplex) -> usize {
    let (mut re, mut im) = (z.re_f64(), z.im_f64());
    let mut k = 0;
    while k < DEPTH_MAX {
        let r2 = re * re + im * im;
        let d = ((re - 1.0).powi(2) + im * im).sqrt();
        if d > 0.0 && r2 / d < DEFAULT_RHO_MAX {
            break;
        }
        (re, im) = (re * re - im * im, 2.0 * re * im);
        k += 1;
    }
    k
}

fn is_positive_real(z: &BigComplex) -> bool {
    z.im().is_zero() && *z.re() > 0
}

/// Li_s(z) for any z ≠ 1 on the principal sheet, with the route taken.
///
/// On the cut z ∈ (1, ∞) the value is the limit from the upper half-plane.
pub fn li_anywhere(s: &BigComplex, z: &BigComplex, digits: u32) -> Result<(BigComplex, DispatchTrace)> {
    let sigma = s.re_f64();
    let log2_10 = std::f64::consts::LOG2_10;
    let levels = dup_levels(z) as f64;
    let descents = if z.abs_f64() > (2.0 * std::f64::consts::PI).exp() {
        (z.abs_f64().ln() / (2.0 * std::f64::consts::PI)).log2().ceil().max(1.0)
    } else {
        0.0
    };
    let guard = 2.0 + (levels * (1.0 + (1.0 - sigma).max(0.0)) + descents * (1.0 + (sigma - 1.0).max(0.0))) / log2_10;
    let inner = digits + guard.ceil() as u32;
    let bits = digits_to_bits(inner) + 16;
    let mut trace = DispatchTrace::default();
    let v = dispatch(&s.with_prec(bits), &z.with_prec(bits), inner, 0, &mut trace)?;
    Ok((v, trace))
}

fn dispatch(
    s: &BigComplex,
    z: &BigComplex,
    digits: u32,
    depth: usize,
    trace: &mut DispatchTrace,
) -> Result<BigComplex> {
    if depth > DEPTH_MAX {
        return Err(Error::Depth(format!("more than {DEPTH_MAX} nested reductions")));
    }
    trace.depth = trace.depth.max(depth);
    let bits = z.prec();
    if z.is_zero() {
        return Ok(BigComplex::zero(bits));
    }
    if z.add_i64(-1).is_zero() {
        return Err(Error::BranchPoint("Li_s(z) has a branch point at z = 1".into()));
    }
    if let Some(m) = s.as_integer().filter(|&m| m <= 0) {
        trace.route.push(RouteStep::Exact);
        return li_negint((-m) as u32, z);
    }
    if region_ratio(z)? < DEFAULT_RHO_MAX {
        trace.route.push(RouteStep::Borwein);
        return li_borwein(s, z, digits);
    }
    let za = z.abs_f64();
    let one_minus_s = (-s).add_i64(1);
    let two = BigComplex::from_int(bits, 2);
    if za <= 1.0 {
        trace.route.push(RouteStep::Dup);
        let sq = dispatch(s, &z.square(), digits, depth + 1, trace)?;
        let neg = dispatch(s, &(-z), digits, depth + 1, trace)?;
        return Ok(&(&cpow(&two, &one_minus_s, 0)? * &sq) - &neg);
    }
    if za > (2.0 * std::f64::consts::PI).exp() {
        trace.route.push(RouteStep::Descent);
        let w = if is_positive_real(z) {
            BigComplex::from_real(z.re().clone().sqrt())
        } else {
            let l = crate::numctx::log_poscut(z)?;
            BigComplex::from_polar(&(l.re().clone() / 2u32).exp(), &(l.im().clone() / 2u32))
        };
        let a = dispatch(s, &w, digits, depth + 1, trace)?;
        let b = dispatch(s, &(-&w), digits, depth + 1, trace)?;
        return Ok(&cpow(&two, &(-&one_minus_s), 0)? * &(&a + &b));
    }
    trace.route.push(RouteStep::Invert);
    li_inversion(s, z, digits)
}
