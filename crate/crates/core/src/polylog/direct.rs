use crate::bench::TermCache;
use crate::error::{Error, Result};
use crate::numctx::{digits_to_bits, int_pow_neg, BigComplex};

/// Li_s(z) by summing z^k/k^s until the geometric tail bound drops below
/// 10^{−D−2}. Only for |z| ≤ 0.99.
pub fn li_direct(s: &BigComplex, z: &BigComplex, digits: u32) -> Result<BigComplex> {
    let za = z.abs_f64();
    if za > 0.99 {
        return Err(Error::Convergence(format!("direct sum needs |z| <= 0.99, got {za:.4}")));
    }
    direct_sum(s, z, digits, 50_000_000, None).map(|(v, _)| v)
}

/// As [`li_direct`], taking k^{−s} from `cache` where it has them, and also
/// returning the number of terms summed.
pub fn li_direct_with(
    s: &BigComplex,
    z: &BigComplex,
    digits: u32,
    cache: Option<&TermCache>,
) -> Result<(BigComplex, u64)> {
    let za = z.abs_f64();
    if za > 0.99 {
        return Err(Error::Convergence(format!("direct sum needs |z| <= 0.99, got {za:.4}")));
    }
    direct_sum(s, z, digits, 50_000_000, cache)
}

/// As [`li_direct`] for any |z| < 1, giving up after `max_terms` terms.
pub fn li_direct_budget(s: &BigComplex, z: &BigComplex, digits: u32, max_terms: u64) -> Result<BigComplex> {
    let za = z.abs_f64();
    if za >= 1.0 {
        return Err(Error::Convergence(format!("direct sum needs |z| < 1, got {za:.6}")));
    }
    direct_sum(s, z, digits, max_terms, None).map(|(v, _)| v)
}

fn direct_sum(
    s: &BigComplex,
    z: &BigComplex,
    digits: u32,
    max_terms: u64,
    cache: Option<&TermCache>,
) -> Result<(BigComplex, u64)> {
    let za = z.abs_f64();
    let base = digits_to_bits(digits);
    if z.is_zero() {
        return Ok((BigComplex::zero(base + 10), 0));
    }
    let sigma = s.re_f64();
    let neg = (-sigma).max(0.0);
    let target_log2 = -((digits + 2) as f64) * std::f64::consts::LOG2_10;
    let bits = li_direct_bits(s, z, digits);
    let s = s.with_prec(bits);
    let z = z.with_prec(bits);
    let cached = cache.filter(|c| c.matches(&s, bits));

    let mut acc = BigComplex::zero(bits);
    let mut zk = BigComplex::one(bits);
    let mut k: u64 = 0;
    loop {
        k += 1;
        zk = &zk * &z;
        let p = match cached.and_then(|c| c.inv_power(k as usize)) {
            Some(v) => v.with_prec(bits),
            None => int_pow_neg(k, &s),
        };
        acc = &acc + &(&zk * &p);
        // Tail after k: Σ_{j>k} |z|^j j^{−σ} ≤ |z|^{k+1}(k+1)^{−σ}/(1−r),
        // r = |z|(1 + 1/(k+1))^{max(0,−σ)} bounds the term ratio.
        let kf = k as f64 + 1.0;
        let r = za * (1.0 + 1.0 / kf).powf(neg);
        if r < 1.0 {
            let tail_log2 = kf * za.log2() - sigma * kf.log2() - (1.0 - r).log2();
            if tail_log2 < target_log2 {
                break;
            }
        }
        if k >= max_terms {
            return Err(Error::Convergence(format!("direct sum not converged within {max_terms} terms")));
        }
    }
    Ok((acc, k))
}

/// Working precision used by [`li_direct`], for building a matching cache.
pub fn li_direct_bits(s: &BigComplex, z: &BigComplex, digits: u32) -> u32 {
    let za = z.abs_f64();
    let neg = (-s.re_f64()).max(0.0);
    // Largest term size |z|^k k^{−σ}, for headroom when σ < 0.
    let peak_log2 = if neg > 0.0 && za > 0.0 && za < 1.0 {
        let kmax = (neg / -za.ln()).max(1.0);
        kmax * za.log2() + neg * kmax.log2()
    } else {
        0.0
    };
    digits_to_bits(digits) + 20 + peak_log2.max(0.0).ceil() as u32 + 16
}
