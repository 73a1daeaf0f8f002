//! Exact Bernoulli numbers, shared process-wide.

use std::sync::{Arc, OnceLock, RwLock};

use rug::{Float, Integer, Rational};

use crate::numctx::BigComplex;

/// B_0..B_{max_index} as exact rationals, with B_1 = −1/2.
#[derive(Debug)]
pub struct BernoulliTable {
    numbers: Vec<Rational>,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.numbers[n]
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }
}

fn published() -> &'static RwLock<Arc<BernoulliTable>> {
    static TABLE: OnceLock<RwLock<Arc<BernoulliTable>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        RwLock::new(Arc::new(BernoulliTable { numbers: vec![Rational::from(1), Rational::from((-1, 2))] }))
    })
}

/// Extends `numbers` through index `max` by Σ_{k=0}^{n} C(n+1,k) B_k = 0.
fn extend(numbers: &mut Vec<Rational>, max: usize) {
    while numbers.len() <= max {
        let n = numbers.len();
        if n % 2 == 1 {
            numbers.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = Integer::from(1); // C(n+1, 0)
        for (k, bk) in numbers.iter().enumerate() {
            if *bk != 0 {
                acc += Rational::from(bk * &binom);
            }
            binom *= (n + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        // binom is now C(n+1, n) = n+1
        numbers.push(-acc / binom);
    }
}

/// A table covering at least index `max`. Readers always receive an immutable
/// snapshot; growth builds a new table and swaps it in.
pub fn bernoulli_table(max: usize) -> Arc<BernoulliTable> {
    {
        let cur = published().read().unwrap();
        if cur.max_index() >= max {
            return cur.clone();
        }
    }
    let mut guard = published().write().unwrap();
    if guard.max_index() >= max {
        return guard.clone();
    }
    let mut numbers = guard.numbers.clone();
    extend(&mut numbers, max.max(2 * guard.max_index()));
    let table = Arc::new(BernoulliTable { numbers });
    *guard = table.clone();
    table
}

/// B_n(x) = Σ_k C(n,k) B_k x^{n−k}.
pub fn bernoulli_poly(n: usize, x: &BigComplex) -> BigComplex {
    let table = bernoulli_table(n);
    let prec = x.prec();
    let mut acc = BigComplex::zero(prec);
    let mut binom = Integer::from(1);
    // Horner in x over the reversed coefficient list.
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        coeffs.push(Rational::from(table.get(k) * &binom));
        binom *= (n - k) as u32;
        binom /= (k + 1) as u32;
    }
    // coefficient of x^{n−k} is coeffs[k]
    for ck in coeffs.iter() {
        acc = &(&acc * x) + &BigComplex::from_real(Float::with_val(prec, ck));
    }
    acc
}
