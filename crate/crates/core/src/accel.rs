//! Polynomial-kernel acceleration of series Σ z^k b_k whose terms are moments
//! b_k = ∫₀¹ y^k g(y) dy, plus the q-shifted Euler transform.
//!
//! With r_n(y) = (p_n(y) − p_n(1/z))/(1 − yz) = Σ c_k y^k one has
//!
//! ```text
//! Σ z^k b_k = ∫ g/(1−yz) = −(1/p_n(1/z)) Σ_{k<n} c_k b_k + (1/p_n(1/z)) ∫ p_n g/(1−yz)
//! ```
//!
//! so the accelerated partial sum carries a leading minus sign.
//!
//! The Euler transform with Δ_q b_n = b_{n+1} − q b_n satisfies
//! Σ_m (z/(1−qz))^{m+1} Δ_q^m b_0 = Σ_n z^{n+1} b_n. Checked against brute-force
//! expansion for polynomial b_n; the shifted power z^{n+1} is what the expansion gives.

use rug::Float;

use crate::error::{Error, Result};
use crate::numctx::BigComplex;

/// Polynomial p(y) = Σ a_k y^k with exact degree.
#[derive(Debug, Clone)]
pub struct PolySeq {
    coeffs: Vec<BigComplex>,
}

impl PolySeq {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<BigComplex>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Degenerate("zero polynomial".into()));
        }
        Ok(PolySeq { coeffs })
    }

    pub fn from_i64(prec: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| BigComplex::from_int(prec, a)).collect())
    }

    /// y^a (1−y)^{n−a}.
    pub fn gaussian(prec: u32, a: usize, n: usize) -> Self {
        assert!(a <= n);
        let m = n - a;
        let mut coeffs = vec![BigComplex::zero(prec); n + 1];
        let mut binom = rug::Integer::from(1);
        for j in 0..=m {
            let mut v = Float::with_val(prec, &binom);
            if j % 2 == 1 {
                v = -v;
            }
            coeffs[a + j] = BigComplex::from_real(v);
            binom *= (m - j) as u64;
            binom /= (j + 1) as u64;
        }
        PolySeq { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigComplex) -> BigComplex {
        let mut acc = self.coeffs.last().unwrap().with_prec(x.prec());
        for a in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * x) + a;
        }
        acc
    }
}

/// Coefficients c_0..c_{n−1} of r_n(y), and the normalizer p_n(1/z).
#[derive(Debug, Clone)]
pub struct AccelCoeffs {
    pub c: Vec<BigComplex>,
    pub pn_at_inv_z: BigComplex,
}

/// Runs c_0 = a_0 − p_n(1/z), c_k = a_k + z c_{k−1}, and checks that the
/// step to k = n vanishes to within 2^{−(bits−8)} of the largest term seen.
pub fn borwein_coeffs(poly: &PolySeq, z: &BigComplex) -> Result<AccelCoeffs> {
    if z.is_zero() {
        return Err(Error::Domain("acceleration at z = 0".into()));
    }
    let prec = z.prec().min(poly.coeffs[0].prec());
    let inv_z = z.recip();
    let pn = poly.eval(&inv_z);
    if pn.is_zero() {
        return Err(Error::Degenerate("p_n(1/z) vanishes".into()));
    }
    let n = poly.degree();
    if n == 0 {
        return Ok(AccelCoeffs { c: Vec::new(), pn_at_inv_z: pn });
    }
    let mut c = Vec::with_capacity(n);
    let mut prev = &poly.coeffs[0] - &pn;
    let mut scale = prev.abs().max(&pn.abs()).clone();
    c.push(prev.clone());
    for k in 1..=n {
        let zc = z * &prev;
        let zc_abs = zc.abs();
        if zc_abs > scale {
            scale = zc_abs;
        }
        let next = &poly.coeffs[k] + &zc;
        if k == n {
            let tol = Float::with_val(prec, &scale) >> (prec as i32 - 8);
            if next.abs() > tol {
                return Err(Error::Precision(format!(
                    "recurrence residual {:e} exceeds tolerance",
                    next.abs().to_f64()
                )));
            }
        } else {
            c.push(next.clone());
        }
        prev = next;
    }
    Ok(AccelCoeffs { c, pn_at_inv_z: pn })
}

/// Accelerated value of Σ_{k≥0} z^k b_k using the first deg(p) moments.
pub fn accel_sum(b: &[BigComplex], poly: &PolySeq, z: &BigComplex) -> Result<BigComplex> {
    let n = poly.degree();
    if b.len() < n {
        return Err(Error::Usage(format!("need {n} terms, got {}", b.len())));
    }
    let coeffs = borwein_coeffs(poly, z)?;
    let mut acc = BigComplex::zero(z.prec());
    for (c, bk) in coeffs.c.iter().zip(b) {
        acc = &acc + &(c * bk);
    }
    Ok(-&acc.div(&coeffs.pn_at_inv_z))
}

/// Σ_{m=0}^{M} (z/(1−qz))^{m+1} Δ_q^m b_0, which approximates Σ_n z^{n+1} b_n.
pub fn euler_q_transform(b: &[BigComplex], q: &BigComplex, z: &BigComplex, m_max: usize) -> Result<BigComplex> {
    if b.len() < m_max + 1 {
        return Err(Error::Usage(format!("need {} terms, got {}", m_max + 1, b.len())));
    }
    let denom = (-&(q * z)).add_i64(1);
    if denom.is_zero() {
        return Err(Error::Domain("q·z = 1".into()));
    }
    let ratio = z.div(&denom);
    // Full triangular difference table; row m holds Δ_q^m b_0..b_{M−m}.
    let mut row: Vec<BigComplex> = b[..=m_max].to_vec();
    let mut power = ratio.clone();
    let mut acc = &power * &row[0];
    for _ in 1..=m_max {
        row = row.windows(2).map(|w| &w[1] - &(q * &w[0])).collect();
        power = &power * &ratio;
        acc = &acc + &(&power * &row[0]);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::Rational;

    const P: u32 = 192;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(P, re, im)
    }

    fn moments(n: usize) -> Vec<BigComplex> {
        (0..n).map(|k| BigComplex::from_ratio(P, 1, k as i64 + 1)).collect()
    }

    /// −ln(1−z)/z, the sum with b_k = 1/(k+1).
    fn log_sum(z: &BigComplex) -> BigComplex {
        (-&(-z).add_i64(1).ln()).div(z)
    }

    #[test]
    fn hand_recurrence() {
        let poly = PolySeq::from_i64(P, &[0, 1, -1]).unwrap();
        let co = borwein_coeffs(&poly, &c(-1.0, 0.0)).unwrap();
        assert_eq!(co.pn_at_inv_z.re_f64(), -2.0);
        let got: Vec<f64> = co.c.iter().map(|x| x.re_f64()).collect();
        assert_eq!(got, vec![2.0, -1.0]);
    }

    #[test]
    fn constant_polynomial() {
        let poly = PolySeq::from_i64(P, &[5]).unwrap();
        let co = borwein_coeffs(&poly, &c(0.3, 0.0)).unwrap();
        assert!(co.c.is_empty());
        assert_eq!(co.pn_at_inv_z.re_f64(), 5.0);
    }

    #[test]
    fn euler_case_matches_symbolic_division() {
        // (y³ − (1/z)³)/(1 − yz) at z = −1 is (y³ + 1)/(1 + y) = 1 − y + y².
        let poly = PolySeq::from_i64(P, &[0, 0, 0, 1]).unwrap();
        let co = borwein_coeffs(&poly, &c(-1.0, 0.0)).unwrap();
        let got: Vec<f64> = co.c.iter().map(|x| x.re_f64()).collect();
        assert_eq!(got, vec![1.0, -1.0, 1.0]);
    }

    #[test]
    fn degenerate_and_domain() {
        // p(y) = y − 2 vanishes at 1/z when z = 1/2.
        let poly = PolySeq::from_i64(P, &[-2, 1]).unwrap();
        assert!(matches!(borwein_coeffs(&poly, &c(0.5, 0.0)), Err(Error::Degenerate(_))));
        assert!(matches!(borwein_coeffs(&poly, &c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    /// Exact synthetic division of p(y) − p(1/z) by (1 − yz) over the rationals.
    fn exact_quotient(a: &[i64], z: &Rational) -> Vec<Rational> {
        let inv = Rational::from(1) / z;
        let mut pv = Rational::new();
        for &ak in a.iter().rev() {
            pv = pv * &inv + ak;
        }
        let mut num: Vec<Rational> = a.iter().map(|&x| Rational::from(x)).collect();
        num[0] -= &pv;
        // (1 − yz)·r(y) = num(y): divide from the top degree down.
        let n = num.len() - 1;
        let mut r = vec![Rational::new(); n];
        let mut rem = num;
        for k in (0..n).rev() {
            // coefficient of y^{k+1} in rem equals −z·r_k
            r[k] = -(rem[k + 1].clone() / z);
            rem[k] -= &r[k];
            rem[k + 1] = Rational::new();
        }
        assert!(rem.iter().all(|x| *x == 0));
        r
    }

    #[test]
    fn reconstruction_against_exact_division() {
        let polys: [&[i64]; 5] = [&[0, 1], &[1, -2, 1], &[0, 0, 1, -1], &[3, 0, -1, 2], &[0, 1, -4, 6, -4, 1]];
        let z = Rational::from((-3, 7));
        let zc = BigComplex::from_ratio(P, -3, 7);
        for a in polys {
            let poly = PolySeq::from_i64(P, a).unwrap();
            let co = borwein_coeffs(&poly, &zc).unwrap();
            let exact = exact_quotient(a, &z);
            assert_eq!(co.c.len(), exact.len());
            for (got, want) in co.c.iter().zip(&exact) {
                let w = Float::with_val(P, want);
                assert!(Float::with_val(P, got.re() - &w).abs().to_f64() < 1e-50);
            }
        }
    }

    #[test]
    fn alternating_log_two() {
        let poly = PolySeq::gaussian(P, 4, 8);
        let s = accel_sum(&moments(8), &poly, &c(-1.0, 0.0)).unwrap();
        let ln2 = Float::with_val(P, 2).ln();
        assert!((s.re_f64() - ln2.to_f64()).abs() < 1e-4);
    }

    #[test]
    fn zero_moments() {
        let poly = PolySeq::gaussian(P, 2, 4);
        let b = vec![BigComplex::zero(P); 4];
        assert!(accel_sum(&b, &poly, &c(0.7, 0.2)).unwrap().is_zero());
    }

    #[test]
    fn half_point_value_and_bound() {
        // y³(1−y)³ at z = 1/2. Frozen value from exact rational evaluation of
        // −(1/p(2)) Σ c_k/(k+1); the bound |p(1/2)/p(2)|·|S| = (1/8)^3·... holds.
        let poly = PolySeq::gaussian(P, 3, 6);
        let s = accel_sum(&moments(6), &poly, &c(0.5, 0.0)).unwrap();
        let a = [0i64, 0, 0, 1, -3, 3, -1];
        let r = exact_quotient(&a, &Rational::from((1, 2)));
        let mut tot = Rational::new();
        for (k, ck) in r.iter().enumerate() {
            tot += ck.clone() / Rational::from(k as i64 + 1);
        }
        // p(2) = 8·(−1)^3 = −8
        let exact = -tot / Rational::from(-8);
        assert!((s.re_f64() - exact.to_f64()).abs() < 1e-15);
        let truth = log_sum(&c(0.5, 0.0));
        let err = s.dist(&truth).to_f64();
        let bound = (1.0 / 64.0) / 8.0 * truth.abs_f64();
        assert!(err <= bound, "err {err} bound {bound}");
        assert!((s.re_f64() - 1.386294).abs() < 2e-3);
    }

    #[test]
    fn euler_transform_indexing() {
        let ones = vec![BigComplex::one(P); 1];
        let v = euler_q_transform(&ones, &c(1.0, 0.0), &c(-1.0, 0.0), 0).unwrap();
        assert_eq!(v.re_f64(), -0.5);
        let lin: Vec<BigComplex> = (0..80).map(|n| BigComplex::from_int(P, n)).collect();
        let v = euler_q_transform(&lin, &c(1.0, 0.0), &c(0.5, 0.0), 79).unwrap();
        // Σ n (1/2)^{n+1} = 1
        assert!((v.re_f64() - 1.0).abs() < 1e-6);
        let zero = vec![BigComplex::zero(P)];
        assert!(euler_q_transform(&zero, &c(1.0, 0.0), &c(0.3, 0.0), 0).unwrap().is_zero());
        assert!(matches!(euler_q_transform(&lin, &c(2.0, 0.0), &c(0.5, 0.0), 3), Err(Error::Domain(_))));
    }

    /// Brute-force comparison with Σ z^{n+1} b_n for cubic b_n.
    #[test]
    fn euler_transform_brute_force() {
        let b: Vec<BigComplex> = (0..40i64).map(|n| BigComplex::from_int(P, 2 - n + 3 * n * n * n)).collect();
        for &(q, z) in &[(1.0, -0.5), (0.5, 0.3), (-1.0, 0.2)] {
            let qz = c(q, 0.0);
            let zz = c(z, 0.0);
            // Δ_q^m of a cubic is exact geometric in general; use enough rows for convergence
            let v = euler_q_transform(&b, &qz, &zz, 39).unwrap();
            let mut direct = 0.0f64;
            for n in 0..400 {
                let bn = 2.0 - n as f64 + 3.0 * (n as f64).powi(3);
                direct += z.powi(n + 1) * bn;
            }
            assert!((v.re_f64() - direct).abs() < 1e-6 * direct.abs().max(1.0), "q {q} z {z}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn remainder_identity(a in 0usize..6, extra in 1usize..6, z in -3.0f64..0.9) {
            prop_assume!(z.abs() > 0.05);
            let n = a + extra;
            let poly = PolySeq::gaussian(P, a, n);
            let zc = c(z, 0.0);
            let s = accel_sum(&moments(n), &poly, &zc).unwrap();
            let truth = log_sum(&zc);
            let y0 = c(a as f64 / n as f64, 0.0);
            let ratio = poly.eval(&y0).abs() / poly.eval(&zc.recip()).abs();
            let bound = ratio * truth.abs();
            prop_assert!(s.dist(&truth).to_f64() <= bound.to_f64() * (1.0 + 1e-12));
        }

        #[test]
        fn geometric_acceleration(m in 1usize..10, re in -1.5f64..1.0, im in -1.0f64..1.0) {
            let zc = c(re, im);
            let ratio = (&zc * &zc).div(&zc.add_i64(-1)).abs_f64();
            prop_assume!(ratio < 4.0 && zc.abs_f64() > 0.05 && zc.dist(&c(1.0, 0.0)).to_f64() > 0.05);
            let poly = PolySeq::gaussian(P, m, 2 * m);
            let s = accel_sum(&moments(2 * m), &poly, &zc).unwrap();
            let truth = log_sum(&zc);
            // ∫ 1/|1−yz| dy ≤ 1/min_y |1−yz|
            let mut min_den = f64::INFINITY;
            for i in 0..=1000 {
                let y = i as f64 / 1000.0;
                let d = ((1.0 - y * re).powi(2) + (y * im).powi(2)).sqrt();
                min_den = min_den.min(d);
            }
            let bound = (ratio / 4.0).powi(m as i32) / (min_den * 0.999);
            prop_assert!(s.dist(&truth).to_f64() <= bound);
        }
    }
}
