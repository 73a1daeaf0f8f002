use crate::bench::TermCache;
use crate::error::{Error, Result};
use crate::numctx::{int_pow_neg, BigComplex};

use super::{choose_order, li_negint, BorweinPlan, DEFAULT_RHO_MAX};

/// Li_s(z) to absolute accuracy 10^{−D} inside |z²/(z−1)| < 3.6.
pub fn li_borwein(s: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    li_borwein_with(s, z, digits, DEFAULT_RHO_MAX, None).map(|(v, _)| v)
}

/// Like [`li_borwein`] with an explicit region limit and optional cache of k^{−s}.
pub fn li_borwein_with(
    s: &BigComplex,
    z: &BigComplex,
    digits: u32,
    rho_max: f64,
    cache: Option<&TermCache>,
) -> Result<(BigComplex, BorweinPlan)> {
    if z.is_zero() {
        let plan = BorweinPlan {
            order_n: 1,
            working_bits: crate::numctx::digits_to_bits(digits) + 10,
            region_ratio: 0.0,
            predicted_bound: 0.0,
            bound_log10: f64::NEG_INFINITY,
        };
        return Ok((BigComplex::zero(plan.working_bits), plan));
    }
    let plan = choose_order(s, z, digits, rho_max)?;
    let bits = plan.working_bits;
    if let Some(m) = s.as_integer().filter(|&m| m <= 0) {
        let v = li_negint((-m) as u32, &z.with_prec(bits))?;
        return Ok((v, plan));
    }
    let v = li_borwein_order(s, z, plan.order_n, bits, cache)?;
    Ok((v, plan))
}

/// The order-n sum
///
/// ```text
/// Σ_{k=1}^{n} z^k/k^s + (1−z)^{−n} Σ_{k=n+1}^{2n} z^k/k^s Σ_{j=0}^{2n−k} (−z)^j C(n,j)
/// ```
///
/// evaluated at `bits` of working precision, without any truncation bound.
pub fn li_borwein_order(
    s: &BigComplex,
    z: &BigComplex,
    n: usize,
    bits: u32,
    cache: Option<&TermCache>,
) -> Result<BigComplex> {
    if n == 0 {
        return Err(Error::Order("order must be positive".into()));
    }
    let s = s.with_prec(bits);
    let z = z.with_prec(bits);
    let one_minus_z = (-&z).add_i64(1);
    if one_minus_z.is_zero() {
        return Err(Error::Domain("z = 1 is the branch point".into()));
    }
    let cached = cache.filter(|c| c.matches(&s, bits));
    let inv_pow = |k: usize| -> BigComplex {
        match cached.and_then(|c| c.inv_power(k)) {
            Some(v) => v.with_prec(bits),
            None => int_pow_neg(k as u64, &s),
        }
    };

    // Partial sums P_m = Σ_{j≤m} (−z)^j C(n,j), m = 0..n−1.
    let minus_z = -&z;
    let mut partial = Vec::with_capacity(n);
    let mut t = BigComplex::one(bits);
    let mut acc = t.clone();
    partial.push(acc.clone());
    for j in 0..n.saturating_sub(1) {
        t = (&t * &minus_z).scale_i64((n - j) as i64).div_i64((j + 1) as i64);
        acc = &acc + &t;
        partial.push(acc.clone());
    }

    let mut head = BigComplex::zero(bits);
    let mut zk = BigComplex::one(bits);
    for k in 1..=n {
        zk = &zk * &z;
        head = &head + &(&zk * &inv_pow(k));
    }
    let mut tail = BigComplex::zero(bits);
    for k in (n + 1)..=(2 * n) {
        zk = &zk * &z;
        let term = &(&zk * &inv_pow(k)) * &partial[2 * n - k];
        tail = &tail + &term;
    }
    let scale = one_minus_z.powi(n as u64);
    Ok(&head + &tail.div(&scale))
}
