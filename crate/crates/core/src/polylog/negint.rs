use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::numctx::BigComplex;

/// Row n+1 of the Stirling numbers of the second kind, S(n+1, k) for k = 0..=n+1.
fn stirling2_row(n: u32) -> Vec<Integer> {
    let mut row = vec![Integer::from(1)];
    for i in 1..=(n + 1) {
        let mut next = vec![Integer::new(); i as usize + 1];
        for k in 1..=i as usize {
            let mut v = Integer::from(&row.get(k).cloned().unwrap_or_default() * k as u32);
            v += &row[k - 1];
            next[k] = v;
        }
        row = next;
    }
    row
}

/// Li_{−m}(z) as an exact rational function of z, evaluated at the precision of z.
///
/// m = 0 gives z/(1−z); for m ≥ 1
/// Li_{−m}(z) = (−1)^m Σ_{k=0}^{m} (−1)^k k! S(m+1, k+1) / (1−z)^{k+1}.
pub fn li_negint(m: u32, z: &BigComplex) -> Result<BigComplex> {
    let w = (-z).add_i64(1);
    if w.is_zero() {
        return Err(Error::Domain("z = 1 is a pole of Li at non-positive integer order".into()));
    }
    let inv = w.recip();
    if m == 0 {
        return Ok(inv.add_i64(-1));
    }
    let row = stirling2_row(m);
    let mut fact = Integer::from(1);
    let mut pow = inv.clone();
    let mut acc = BigComplex::zero(z.prec());
    for k in 0..=m as usize {
        if k > 0 {
            fact *= k as u32;
            pow = &pow * &inv;
        }
        let mut coef = Integer::from(&fact * &row[k + 1]);
        if (k + m as usize) % 2 == 1 {
            coef = -coef;
        }
        acc = &acc + &pow.scale(&Float::with_val(z.prec(), &coef));
    }
    Ok(acc)
}
