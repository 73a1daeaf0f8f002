use std::fmt;

use rug::ops::Pow;
use rug::Float;

use super::numeric::sheet_q;
use super::{Gen, GenWord};
use crate::error::{Error, Result};
use crate::extend::li_anywhere;
use crate::numctx::{digits_to_bits, gamma, pi, BigComplex};

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IntMatrix { n, a }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, a: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix { n, a: vec![0; n * n] };
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                self.get(i, j)
                    == if i == j {
                        1
                    } else if i > j {
                        0
                    } else {
                        self.get(i, j)
                    }
            })
        })
    }

    /// Exact inverse of an upper unitriangular matrix: Σ_k (I − A)^k.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if !self.is_unitriangular() {
            return Err(Error::Domain("only unitriangular matrices are inverted".into()));
        }
        let n = self.n;
        let id = IntMatrix::identity(n);
        let mut nil = id.clone();
        for (x, y) in nil.a.iter_mut().zip(&self.a) {
            *x -= y;
        }
        let mut acc = id.clone();
        let mut p = id;
        for _ in 1..n {
            p = p.mul(&nil);
            for (x, y) in acc.a.iter_mut().zip(&p.a) {
                *x += y;
            }
        }
        Ok(acc)
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Matrices of g₀ and g₁ acting on an (m+1)-dimensional basis at s = m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentRep {
    pub m: u32,
    pub g0: IntMatrix,
    pub g1: IntMatrix,
}

impl UnipotentRep {
    pub fn dimension(&self) -> usize {
        self.g0.dim()
    }

    pub fn generator(&self, g: Gen) -> IntMatrix {
        match g {
            Gen::G0 => self.g0.clone(),
            Gen::G1 => self.g1.clone(),
            Gen::G0Inv => self.g0.inverse().expect("unitriangular"),
            Gen::G1Inv => self.g1.inverse().expect("unitriangular"),
        }
    }

    /// The product of the letters in written order.
    pub fn word_matrix(&self, word: &GenWord) -> IntMatrix {
        word.letters.iter().fold(IntMatrix::identity(self.dimension()), |acc, &g| acc.mul(&self.generator(g)))
    }
}

/// g₀ = [C 0; 0 1] with C the upper-triangular Pascal matrix, and g₁ the
/// identity plus a single 1 linking the top monomial to Li_m.
///
/// The basis is e_{j+1} = K q^j for j < m and e_{m+1} = Li_m(z), where
/// q = log z/(2πi) and K = e^{iπ(m−2)/2}(2π)^m/Γ(m); for m = 2 this is
/// (4π², −2πi log z, Li_2) and for m = 3 (4π³i, 2π² log z, −πi log² z, Li_3).
pub fn unipotent_generators(m: u32) -> Result<UnipotentRep> {
    if m < 2 {
        return Err(Error::Domain(format!("need m >= 2, got {m}")));
    }
    let m = m as usize;
    let mut g0 = IntMatrix::identity(m + 1);
    for j in 0..m {
        let mut b = 1i64; // C(j, 0)
        for i in 0..=j {
            g0.set(i, j, b);
            b = b * (j - i) as i64 / (i + 1) as i64;
        }
    }
    let mut g1 = IntMatrix::identity(m + 1);
    g1.set(m - 1, m, 1);
    Ok(UnipotentRep { m: m as u32, g0, g1 })
}

/// Outcome of each relation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationReport {
    pub m: u32,
    /// g₁g₀g₁⁻¹g₀⁻¹ = g₀g₁⁻¹g₀⁻¹g₁
    pub main_relation: bool,
    /// m = 2 only: z = xyx⁻¹y⁻¹ equals the unit corner matrix and commutes with x and y.
    pub heisenberg_center: Option<bool>,
    /// m = 2 only: xyx = yxy.
    pub braid_like: Option<bool>,
    /// w = g₀g₁g₀⁻¹g₁⁻¹ commutes with g₁.
    pub w_commutes_g1: bool,
    /// w commutes with g₀ (expected false for m ≥ 3).
    pub w_commutes_g0: bool,
    /// m = 3 only: g₀⁻ⁿwg₀ⁿ has last column (2n+1, −2, 0, 1) for n in −5..=5.
    pub conjugates_match: Option<bool>,
}

impl PresentationReport {
    /// The relations expected to hold: the main relation, [w, g₁] = 1, and
    /// for m = 2 a central commutator, for m ≥ 3 a non-central w.
    pub fn all_expected(&self) -> bool {
        let shape = if self.m == 2 { self.heisenberg_center == Some(true) } else { !self.w_commutes_g0 };
        self.main_relation && self.w_commutes_g1 && shape
    }
}

pub fn check_presentation(rep: &UnipotentRep) -> PresentationReport {
    let x = rep.generator(Gen::G0);
    let y = rep.generator(Gen::G1);
    let xi = rep.generator(Gen::G0Inv);
    let yi = rep.generator(Gen::G1Inv);
    let lhs = y.mul(&x).mul(&yi).mul(&xi);
    let rhs = x.mul(&yi).mul(&xi).mul(&y);
    let w = x.mul(&y).mul(&xi).mul(&yi);
    let commutes = |a: &IntMatrix, b: &IntMatrix| a.mul(b) == b.mul(a);
    let (heisenberg_center, braid_like) = if rep.m == 2 {
        let corner = IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]);
        let ok = w == corner && commutes(&w, &x) && commutes(&w, &y);
        (Some(ok), Some(x.mul(&y).mul(&x) == y.mul(&x).mul(&y)))
    } else {
        (None, None)
    };
    let conjugates_match = if rep.m == 3 {
        let ok = (-5i64..=5).all(|n| {
            let (a, b) = if n >= 0 { (&xi, &x) } else { (&x, &xi) };
            let mut h = w.clone();
            for _ in 0..n.unsigned_abs() {
                h = a.mul(&h).mul(b);
            }
            (0..4).map(|i| h.get(i, 3)).collect::<Vec<_>>() == vec![2 * n + 1, -2, 0, 1]
        });
        Some(ok)
    } else {
        None
    };
    PresentationReport {
        m: rep.m,
        main_relation: lhs == rhs,
        heisenberg_center,
        braid_like,
        w_commutes_g1: commutes(&w, &y),
        w_commutes_g0: commutes(&w, &x),
        conjugates_match,
    }
}

/// Numeric value of a coordinate vector in the basis of [`unipotent_generators`].
pub fn basis_value(m: u32, v: &[i64], z: &BigComplex, digits: u32) -> Result<BigComplex> {
    let m_us = m as usize;
    if v.len() != m_us + 1 {
        return Err(Error::Usage(format!("need {} coordinates, got {}", m_us + 1, v.len())));
    }
    let bits = digits_to_bits(digits) + 32;
    let z = z.with_prec(bits);
    let q = sheet_q(&z)?;
    let s = BigComplex::from_int(bits, m as i64);
    let rot = BigComplex::new(Float::new(bits), pi(bits) * (m as i64 - 2) / 2u32).exp();
    let two_pi_m = Float::with_val(bits, pi(bits) * 2u32).pow(m as i32);
    let k = rot.scale(&two_pi_m).div(&gamma(&s)?);
    let mut acc = BigComplex::zero(bits);
    let mut qj = BigComplex::one(bits);
    for &c in &v[..m_us] {
        acc = &acc + &(&k * &qj).scale_i64(c);
        qj = &qj * &q;
    }
    if v[m_us] != 0 {
        let (li, _) = li_anywhere(&s, &z, digits + 2)?;
        acc = &acc + &li.scale_i64(v[m_us]);
    }
    Ok(acc)
}
