//! Identity-based self checks with per-check residuals.

use std::fmt;

use rug::Float;

use crate::error::{Error, Result};
use crate::extend::{hurwitz_from_li, li_anywhere, li_multiplication, periodic_zeta, root_of_unity};
use crate::hurwitz::{bernoulli_poly, hz_euler_maclaurin, riemann_zeta};
use crate::monodromy::{
    apply_word, check_presentation, delta, delta_sum_closed_form, sheet_jump_check, unipotent_generators, Gen, GenWord,
    SheetState, UPoly,
};
use crate::numctx::{cpow, digits_to_bits, pi, BigComplex};
use crate::polylog::{li_borwein, li_borwein_order, li_direct, li_negint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Bernoulli,
    ZetaAtMinus1,
    DirectSum,
    Multiplication,
    Jonquiere,
    Monodromy,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Exact,
        Suite::Bernoulli,
        Suite::ZetaAtMinus1,
        Suite::DirectSum,
        Suite::Multiplication,
        Suite::Jonquiere,
        Suite::Monodromy,
    ];

    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "exact" => Suite::Exact,
            "bernoulli" => Suite::Bernoulli,
            "zeta_at_minus1" => Suite::ZetaAtMinus1,
            "direct_sum" => Suite::DirectSum,
            "multiplication" => Suite::Multiplication,
            "jonquiere" => Suite::Jonquiere,
            "monodromy" => Suite::Monodromy,
            "all" => Suite::All,
            _ => return Err(Error::Usage(format!("unknown suite '{text}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Bernoulli => "bernoulli",
            Suite::ZetaAtMinus1 => "zeta_at_minus1",
            Suite::DirectSum => "direct_sum",
            Suite::Multiplication => "multiplication",
            Suite::Jonquiere => "jonquiere",
            Suite::Monodromy => "monodromy",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Residual {
        value: f64,
        tol: f64,
    },
    Holds(bool),
    /// Reported but not counted.
    Info(String),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measure: Measure,
}

impl Check {
    /// None for informational entries.
    pub fn passed(&self) -> Option<bool> {
        match &self.measure {
            Measure::Residual { value, tol } => Some(value <= tol),
            Measure::Holds(b) => Some(*b),
            Measure::Info(_) => None,
            Measure::Failed(_) => Some(false),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let detail = match &self.measure {
            Measure::Residual { value, tol } => format!("residual={value:.3e} tol={tol:.0e}"),
            Measure::Holds(b) => format!("holds={b}"),
            Measure::Info(s) => s.clone(),
            Measure::Failed(e) => format!("error: {e}"),
        };
        let verdict = match self.passed() {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        write!(f, "{:<15} {:<44} {} {}", self.suite, self.name, detail, verdict)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed() != Some(false))
    }

    pub fn counts(&self) -> (usize, usize) {
        let judged: Vec<bool> = self.checks.iter().filter_map(|c| c.passed()).collect();
        (judged.iter().filter(|&&b| b).count(), judged.len())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let (p, n) = self.counts();
        writeln!(f, "passed {p} of {n}")
    }
}

struct Builder {
    suite: &'static str,
    tol: f64,
    checks: Vec<Check>,
}

impl Builder {
    fn new(suite: Suite, digits: u32) -> Self {
        Builder { suite: suite.name(), tol: 10f64.powi(-(digits as i32 - 2)), checks: Vec::new() }
    }

    fn push(&mut self, name: String, measure: Measure) {
        self.checks.push(Check { suite: self.suite, name, measure });
    }

    fn residual(&mut self, name: String, r: Result<f64>) {
        let tol = self.tol;
        self.residual_tol(name, r, tol);
    }

    fn residual_tol(&mut self, name: String, r: Result<f64>, tol: f64) {
        let m = match r {
            Ok(value) => Measure::Residual { value, tol },
            Err(e) => Measure::Failed(e.to_string()),
        };
        self.push(name, m);
    }
}

fn cx(bits: u32, re: f64, im: f64) -> BigComplex {
    BigComplex::from_f64(bits, re, im)
}

fn label(c: &BigComplex) -> String {
    let (re, im) = (c.re_f64(), c.im_f64());
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{im:+}i")
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn validate_suite(suite: Suite, digits: u32) -> Report {
    let checks = match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| validate_suite(s, digits).checks).collect(),
        Suite::Exact => exact(&[0, 1, 2, 3], digits),
        Suite::Bernoulli => bernoulli(digits),
        Suite::ZetaAtMinus1 => zeta_at_minus1(digits),
        Suite::DirectSum => direct_sum(digits),
        Suite::Multiplication => multiplication(digits),
        Suite::Jonquiere => jonquiere(digits),
        Suite::Monodromy => monodromy(digits),
    };
    Report { checks }
}

/// The accelerated sum at orders n and n + 5 against the rational form,
/// for s = −m with m in `orders`.
pub fn exact(orders: &[u32], digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::Exact, digits);
    let bits = digits_to_bits(digits) + 64;
    let zs = [cx(bits, 0.5, 0.0), cx(bits, -2.0, 0.0), cx(bits, 3.0, 1.0)];
    for &m in orders {
        let s = BigComplex::from_int(bits, -(m as i64));
        for z in &zs {
            let r = (|| {
                let want = li_negint(m, z)?;
                let n = m as usize + 4;
                let a = li_borwein_order(&s, z, n, bits, None)?;
                let c = li_borwein_order(&s, z, n + 5, bits, None)?;
                let scale = want.abs_f64().max(1.0);
                Ok(a.dist(&want).to_f64().max(a.dist(&c).to_f64()) / scale)
            })();
            b.residual(format!("s={} z={}", -(m as i64), label(z)), r);
        }
    }
    b.checks
}

fn bernoulli(digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::Bernoulli, digits);
    let bits = digits_to_bits(digits) + 64;
    for n in [2u32, 3, 4] {
        for p in [4u32, 3] {
            // Li_n(e^{2πiq}) + (−1)^n Li_n(e^{−2πiq}) + (2πi)^n B_n(q)/n!, q = 1/p
            let r = (|| {
                let s = BigComplex::from_int(bits, n as i64);
                let (a, _) = li_anywhere(&s, &root_of_unity(1, p, bits), digits + 2)?;
                let (c, _) = li_anywhere(&s, &root_of_unity(-1, p, bits), digits + 2)?;
                let q = BigComplex::from_ratio(bits, 1, p as i64);
                let two_pi_i = BigComplex::new(Float::new(bits), pi(bits) * 2u32);
                let mut fact = 1i64;
                for k in 2..=n as i64 {
                    fact *= k;
                }
                let bn = (&two_pi_i.powi(n as u64) * &bernoulli_poly(n as usize, &q)).div_i64(fact);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                Ok((&(&a + &c.scale_i64(sign)) + &bn).abs_f64())
            })();
            b.residual(format!("n={n} q=1/{p}"), r);
        }
    }
    b.checks
}

fn zeta_at_minus1(digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::ZetaAtMinus1, digits);
    let bits = digits_to_bits(digits) + 64;
    let minus_one = BigComplex::from_int(bits, -1);
    let r = (|| {
        let (v, _) = li_anywhere(&BigComplex::from_int(bits, 2), &minus_one, digits + 2)?;
        let want = BigComplex::from_real(pi(bits).square() / 12u32);
        Ok((&v + &want).abs_f64())
    })();
    b.residual("Li_2(-1) + pi^2/12".into(), r);
    // Li_s(−1) = −(1 − 2^{1−s}) ζ(s)
    for s in [cx(bits, 3.0, 0.0), cx(bits, 0.5, 14.134725), cx(bits, -1.5, 2.0)] {
        let s = s.with_prec(bits);
        let r = (|| {
            let (v, _) = li_anywhere(&s, &minus_one, digits + 2)?;
            let z = riemann_zeta(&s, digits + 2)?;
            let eta = &(-&cpow(&BigComplex::from_int(bits, 2), &(-&s).add_i64(1), 0)?).add_i64(1) * &z;
            Ok((&v + &eta).abs_f64())
        })();
        b.residual(format!("Li_s(-1) + eta(s), s={}", label(&s)), r);
    }
    b.checks
}

fn direct_sum(digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::DirectSum, digits);
    let bits = digits_to_bits(digits) + 64;
    let points = [
        (cx(bits, 2.0, 0.0), cx(bits, 0.5, 0.0)),
        (cx(bits, 0.5, 14.134725), cx(bits, 0.4, 0.3)),
        (cx(bits, -1.5, 3.0), cx(bits, -0.6, 0.2)),
        (cx(bits, 3.0, -7.0), cx(bits, 0.1, -0.7)),
    ];
    for (s, z) in points {
        let r = (|| {
            let a = li_borwein(&s, &z, digits + 2)?;
            let c = li_direct(&s, &z, digits + 2)?;
            Ok(a.dist(&c).to_f64() / a.abs_f64().max(1.0))
        })();
        b.residual(format!("s={} z={}", label(&s), label(&z)), r);
    }
    b.checks
}

fn multiplication(digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::Multiplication, digits);
    let bits = digits_to_bits(digits) + 64;
    let s = cx(bits, 1.5, 2.0);
    for p in [2u32, 3] {
        for z in [cx(bits, 0.3, 0.2), cx(bits, -0.5, 0.4), cx(bits, 0.2, -0.6)] {
            let r = (|| {
                let a = li_multiplication(&s, &z, p, digits + 2)?;
                let (c, _) = li_anywhere(&s, &z, digits + 2)?;
                Ok(a.dist(&c).to_f64())
            })();
            b.residual(format!("p={p} z={}", label(&z)), r);
        }
    }
    b.checks
}

fn jonquiere(digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::Jonquiere, digits);
    let bits = digits_to_bits(digits) + 64;
    let s = cx(bits, 0.5, 14.134725);
    let one_minus_s = (-&s).add_i64(1);
    for q in [0.3, 0.5, 0.7] {
        let r = (|| {
            let a = hurwitz_from_li(&s, &Float::with_val(bits, q), digits + 2)?;
            let c = hz_euler_maclaurin(&one_minus_s, &cx(bits, q, 0.0), digits + 2)?;
            Ok(a.dist(&c).to_f64())
        })();
        b.residual(format!("s={} q={q}", label(&s)), r);
    }
    let r = (|| {
        let z = riemann_zeta(&s, digits)?;
        let f = periodic_zeta(&Float::with_val(bits, 1), &s, digits)?;
        Ok(z.abs_f64().max(f.dist(&z).to_f64()))
    })();
    b.residual_tol("|zeta(0.5+14.134725i)|".into(), r, 1e-5);
    b.checks
}

fn monodromy(digits: u32) -> Vec<Check> {
    let mut b = Builder::new(Suite::Monodromy, digits);
    let bits = digits_to_bits(digits) + 64;
    let s = cx(bits, 0.5, 15.0);
    b.residual_tol("jump at x=2 eps=1e-8 N=1".into(), sheet_jump_check(&s, 2.0, 1e-8, 1, digits), 1e-6);
    b.residual_tol("jump at x=2 eps=1e-8 N=3".into(), sheet_jump_check(&s, 2.0, 1e-8, 3, digits), 1e-6);
    let z = cx(bits, -0.5, 0.0);
    let r = (|| {
        let mut acc = BigComplex::zero(bits);
        for k in 1..=5 {
            acc = &acc + &delta(k, &s, &z, digits)?;
        }
        let cf = delta_sum_closed_form(5, &s, &z, digits)?;
        Ok(acc.dist(&cf).to_f64() / acc.abs_f64().max(1.0))
    })();
    b.residual_tol("sum of 5 deltas vs zeta difference".into(), r, 10f64.powi(-(digits as i32 - 4)));

    let li = SheetState::principal();
    let w = GenWord::commutator();
    let mut want = li.clone();
    let _ = want.add_delta(1, &UPoly::constant(1));
    let _ = want.add_delta(2, &UPoly::constant(-1));
    b.push("w.Li = Li + D1 - D2".into(), Measure::Holds(apply_word(&li, &w) == want));
    let g1 = GenWord::new(vec![Gen::G1]);
    b.push(
        "g1 w = w g1 on Li".into(),
        Measure::Holds(apply_word(&li, &g1.concat(&w)) == apply_word(&li, &w.concat(&g1))),
    );
    for m in 2..=5u32 {
        let rep = match unipotent_generators(m) {
            Ok(r) => check_presentation(&r),
            Err(e) => {
                b.push(format!("m={m} presentation"), Measure::Failed(e.to_string()));
                continue;
            }
        };
        b.push(format!("m={m} main relation"), Measure::Holds(rep.main_relation));
        if let Some(h) = rep.heisenberg_center {
            b.push(format!("m={m} commutator central"), Measure::Holds(h));
        } else {
            b.push(format!("m={m} w g1 = g1 w, w g0 != g0 w"), Measure::Holds(rep.w_commutes_g1 && !rep.w_commutes_g0));
        }
        if let Some(x) = rep.braid_like {
            b.push(format!("m={m} xyx = yxy"), Measure::Info(format!("holds={x}")));
        }
        if let Some(x) = rep.conjugates_match {
            b.push(format!("m={m} conjugate column (2n+1,-2,0)"), Measure::Info(format!("holds={x}")));
        }
    }
    b.checks
}
