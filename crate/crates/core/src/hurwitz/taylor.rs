use crate::bench::{CacheAux, TermCache};
use crate::error::{Error, Result};
use crate::numctx::{cpow, digits_to_bits, BigComplex};

use super::riemann_zeta;

/// Expansion point of the Taylor series in q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaylorCenter {
    /// ζ(s,q) = q^{−s} + Σ (−q)^n C(s+n−1,n) ζ(s+n), for 0 < |q| < 0.9
    Zero,
    /// ζ(s,1/2+x) = Σ (−x)^n C(s+n−1,n) (2^{s+n}−1) ζ(s+n), for |x| < 0.45
    Half,
    /// ζ(s,1+x) = Σ (−x)^n C(s+n−1,n) ζ(s+n), for |x| < 0.9
    One,
}

impl TaylorCenter {
    /// The center with the smallest convergence ratio at q.
    pub fn nearest(q: &BigComplex) -> TaylorCenter {
        [TaylorCenter::Zero, TaylorCenter::Half, TaylorCenter::One]
            .into_iter()
            .filter_map(|c| offset(q, c).ok().map(|(_, r)| (c, r)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map_or(TaylorCenter::Zero, |(c, _)| c)
    }
}

/// Number of terms, working precision and ζ accuracy for one expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorPlan {
    pub terms: usize,
    pub bits: u32,
    pub zeta_digits: u32,
}

fn offset(q: &BigComplex, center: TaylorCenter) -> Result<(BigComplex, f64)> {
    match center {
        TaylorCenter::Zero => {
            let r = q.abs_f64();
            if !(r > 0.0 && r < 0.9) {
                return Err(Error::Radius(format!("|q| = {r} outside (0, 0.9)")));
            }
            Ok((q.clone(), r))
        }
        TaylorCenter::Half => {
            let x = q.add_real(&rug::Float::with_val(q.prec(), -0.5f64));
            let r = x.abs_f64();
            if r >= 0.45 {
                return Err(Error::Radius(format!("|q − 1/2| = {r} not below 0.45")));
            }
            Ok((x, 2.0 * r))
        }
        TaylorCenter::One => {
            let x = q.add_i64(-1);
            let r = x.abs_f64();
            if r >= 0.9 {
                return Err(Error::Radius(format!("|q − 1| = {r} not below 0.9")));
            }
            Ok((x, r))
        }
    }
}

/// Term count and precision from an `f64` model of |x|^n |C(s+n−1,n)|.
pub fn taylor_plan(s: &BigComplex, q: &BigComplex, digits: u32, center: TaylorCenter) -> Result<TaylorPlan> {
    if let Some(m) = s.as_integer() {
        if m <= 1 {
            return Err(Error::Route(format!("Taylor expansion unavailable at integer s = {m}")));
        }
    }
    let (_, r) = offset(q, center)?;
    let sigma = s.re_f64();
    let tau = s.im_f64();
    let target = -((digits + 2) as f64) * std::f64::consts::LOG2_10;
    let half_shift = if center == TaylorCenter::Half { sigma.max(0.0) + 1.0 } else { 0.0 };
    let mut log_a = 0.0f64; // log2 of r^n |C(s+n−1, n)|
    let mut peak = 0.0f64;
    let mut n = 0usize;
    loop {
        let m = n as f64;
        let shifted = sigma + m;
        let zeta_bound = if shifted > 1.5 { (shifted / (shifted - 1.0)).log2() } else { 8.0 };
        let here = log_a + zeta_bound + half_shift;
        peak = peak.max(here);
        // ratio bound for every later term
        let next_ratio = (((sigma + m).powi(2) + tau * tau).sqrt() / (m + 1.0)).max(1.0) * r;
        if next_ratio < 0.999 && shifted > 1.5 {
            let tail = here + (next_ratio / (1.0 - next_ratio)).log2();
            if tail < target {
                break;
            }
        }
        log_a += (((sigma + m).powi(2) + tau * tau).sqrt() * r / (m + 1.0)).log2();
        n += 1;
        if n > 200_000 {
            return Err(Error::Convergence("Taylor expansion needs too many terms".into()));
        }
    }
    let bits = digits_to_bits(digits) + 24 + peak.max(0.0).ceil() as u32 + (n as f64 + 1.0).log2().ceil() as u32;
    let zeta_digits = (bits as f64 / std::f64::consts::LOG2_10).ceil() as u32;
    Ok(TaylorPlan { terms: n + 1, bits, zeta_digits })
}

/// ζ(s+n) and C(s+n−1, n) for n < terms.
pub fn taylor_tables(s: &BigComplex, plan: &TaylorPlan) -> Result<CacheAux> {
    let bits = plan.bits;
    let s = s.with_prec(bits);
    let mut zeta_shifts = Vec::with_capacity(plan.terms);
    let mut binomials = Vec::with_capacity(plan.terms);
    let mut binom = BigComplex::one(bits);
    for n in 0..plan.terms {
        if n > 0 {
            binom = (&binom * &s.add_i64(n as i64 - 1)).div_i64(n as i64);
        }
        binomials.push(binom.clone());
        zeta_shifts.push(riemann_zeta(&s.add_i64(n as i64), plan.zeta_digits)?.with_prec(bits));
    }
    Ok(CacheAux { gamma_over_2pi_s: None, zeta_shifts, binomials })
}

/// ζ(s,q) from the Taylor series about the chosen center.
pub fn hz_taylor(s: &BigComplex, q: &BigComplex, digits: u32, center: TaylorCenter) -> Result<BigComplex> {
    hz_taylor_with(s, q, digits, center, None).map(|(v, _)| v)
}

/// As [`hz_taylor`]; reuses ζ(s+n) and binomial tables from `cache` when
/// they were built for this s at sufficient precision and length.
/// Also returns the number of terms summed.
pub fn hz_taylor_with(
    s: &BigComplex,
    q: &BigComplex,
    digits: u32,
    center: TaylorCenter,
    cache: Option<&TermCache>,
) -> Result<(BigComplex, usize)> {
    let plan = taylor_plan(s, q, digits, center)?;
    let bits = plan.bits;
    let owned;
    let tables = match cache.filter(|c| c.matches(s, bits) && c.aux.zeta_shifts.len() >= plan.terms) {
        Some(c) => &c.aux,
        None => {
            owned = taylor_tables(s, &plan)?;
            &owned
        }
    };
    let sp = s.with_prec(bits);
    let (x, _) = offset(&q.with_prec(bits), center)?;
    let minus_x = -&x;
    let two = BigComplex::from_int(bits, 2);
    let mut pow2 = match center {
        TaylorCenter::Half => cpow(&two, &sp, 0)?,
        TaylorCenter::Zero | TaylorCenter::One => BigComplex::zero(bits),
    };
    let mut xn = BigComplex::one(bits);
    let mut acc = BigComplex::zero(bits);
    for n in 0..plan.terms {
        let mut term = &(&xn * &tables.binomials[n].with_prec(bits)) * &tables.zeta_shifts[n].with_prec(bits);
        if center == TaylorCenter::Half {
            term = &term * &pow2.add_i64(-1);
            pow2 = pow2.scale_i64(2);
        }
        acc = &acc + &term;
        xn = &xn * &minus_x;
    }
    if center == TaylorCenter::Zero {
        acc = &acc + &cpow(&x, &(-&sp), 0)?;
    }
    Ok((acc, plan.terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::hz_direct;
    use crate::numctx::tolerance;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(128, re, im)
    }

    #[test]
    fn quarter_about_zero() {
        let a = hz_taylor(&c(2.0, 0.0), &c(0.25, 0.0), 30, TaylorCenter::Zero).unwrap();
        let b = hz_direct(&c(2.0, 0.0), &c(0.25, 0.0), 35).unwrap();
        assert!(a.dist(&b) < tolerance(30, 128));
        assert!((a.re_f64() - 17.19732915).abs() < 1e-7);
    }

    #[test]
    fn leading_term_dominates_for_small_q() {
        let q = c(1e-6, 0.0);
        let v = hz_taylor(&c(2.0, 0.0), &q, 20, TaylorCenter::Zero).unwrap();
        let scaled = v.re_f64() * 1e-12;
        assert!((scaled - 1.0).abs() < 1e-10);
    }

    #[test]
    fn about_half() {
        let a = hz_taylor(&c(3.0, 0.0), &c(0.6, 0.0), 30, TaylorCenter::Half).unwrap();
        let b = hz_direct(&c(3.0, 0.0), &c(0.6, 0.0), 35).unwrap();
        assert!(a.dist(&b) < tolerance(30, 128));
    }

    #[test]
    fn about_one() {
        let s = c(1.5, -8.0);
        let a = hz_taylor(&s, &c(0.97, 0.0), 30, TaylorCenter::One).unwrap();
        let b = hz_direct(&s, &c(0.97, 0.0), 35).unwrap();
        assert!(a.dist(&b) < tolerance(30, 128));
        assert_eq!(TaylorCenter::nearest(&c(0.97, 0.0)), TaylorCenter::One);
        assert_eq!(TaylorCenter::nearest(&c(0.55, 0.0)), TaylorCenter::Half);
        assert_eq!(TaylorCenter::nearest(&c(0.1, 0.0)), TaylorCenter::Zero);
    }

    #[test]
    fn refusals() {
        assert!(matches!(hz_taylor(&c(2.0, 0.0), &c(0.95, 0.0), 20, TaylorCenter::Zero), Err(Error::Radius(_))));
        assert!(matches!(hz_taylor(&c(2.0, 0.0), &c(0.01, 0.0), 20, TaylorCenter::Half), Err(Error::Radius(_))));
        assert!(matches!(hz_taylor(&c(2.0, 0.0), &c(0.05, 0.0), 20, TaylorCenter::One), Err(Error::Radius(_))));
        assert!(matches!(hz_taylor(&c(-2.0, 0.0), &c(0.5, 0.0), 20, TaylorCenter::Zero), Err(Error::Route(_))));
    }

    #[test]
    fn cached_tables_match() {
        let s = c(0.5, 14.13);
        let q = c(0.2, 0.0);
        let plan = taylor_plan(&s, &q, 20, TaylorCenter::Zero).unwrap();
        let aux = taylor_tables(&s, &plan).unwrap();
        let cache = TermCache::build(&s, 1, plan.bits).with_aux(aux);
        let (warm, n1) = hz_taylor_with(&s, &q, 20, TaylorCenter::Zero, Some(&cache)).unwrap();
        let (cold, n2) = hz_taylor_with(&s, &q, 20, TaylorCenter::Zero, None).unwrap();
        assert_eq!(n1, n2);
        assert_eq!(warm, cold);
    }
}
