//! Cold/warm-cache timing of the evaluators, with CSV output.

use std::fmt;
use std::time::{Duration, Instant};

use rug::Float;

use crate::error::{Error, Result};
use crate::extend::hurwitz_from_li_counted;
use crate::hurwitz::{hz_direct, hz_euler_maclaurin_plan, hz_taylor_with, taylor_plan, taylor_tables, TaylorCenter};
use crate::numctx::{digits_to_bits, int_pow_neg, BigComplex};
use crate::polylog::{choose_order, li_borwein_with, li_direct_bits, li_direct_with, DEFAULT_RHO_MAX};

/// Precomputed k^{−s} for k = 1..=K plus optional per-s constants.
///
/// Built once and never mutated, so it can be shared by reference between
/// any number of evaluations at the same s.
#[derive(Debug, Clone)]
pub struct TermCache {
    s: BigComplex,
    working_bits: u32,
    inv_powers: Vec<BigComplex>,
    pub aux: CacheAux,
}

/// Extra per-s values used by the Hurwitz-side algorithms.
#[derive(Debug, Clone, Default)]
pub struct CacheAux {
    /// Γ(s)/(2π)^s
    pub gamma_over_2pi_s: Option<BigComplex>,
    /// ζ(s+n) for n = 0, 1, ...
    pub zeta_shifts: Vec<BigComplex>,
    /// C(s+n−1, n) for n = 0, 1, ...
    pub binomials: Vec<BigComplex>,
}

impl TermCache {
    /// K values of k^{−s} at `bits` of precision.
    pub fn build(s: &BigComplex, k_max: usize, bits: u32) -> Self {
        let s = s.with_prec(bits);
        let inv_powers = (1..=k_max as u64).map(|k| int_pow_neg(k, &s)).collect();
        TermCache { s, working_bits: bits, inv_powers, aux: CacheAux::default() }
    }

    pub fn with_aux(mut self, aux: CacheAux) -> Self {
        self.aux = aux;
        self
    }

    pub fn s(&self) -> &BigComplex {
        &self.s
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn len(&self) -> usize {
        self.inv_powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_powers.is_empty()
    }

    /// k^{−s}, 1-based.
    pub fn inv_power(&self, k: usize) -> Option<&BigComplex> {
        if k == 0 {
            return None;
        }
        self.inv_powers.get(k - 1)
    }

    pub fn inv_powers(&self) -> &[BigComplex] {
        &self.inv_powers
    }

    /// Whether the cache was built for this s with at least `bits` of precision.
    pub fn matches(&self, s: &BigComplex, bits: u32) -> bool {
        self.working_bits >= bits && self.s.with_prec(bits) == s.with_prec(bits)
    }
}

/// Cache of K values at the precision implied by D digits.
pub fn build_cache(s: &BigComplex, k_max: usize, digits: u32) -> TermCache {
    TermCache::build(s, k_max, digits_to_bits(digits) + 10)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algo {
    Direct,
    Borwein,
    EulerMaclaurin,
    Taylor,
    /// Hurwitz zeta from periodic zeta values, each one a Borwein sum.
    Jonquiere,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Direct => "direct",
            Algo::Borwein => "borwein",
            Algo::EulerMaclaurin => "euler_maclaurin",
            Algo::Taylor => "taylor",
            Algo::Jonquiere => "jonquiere",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Function {
    Polylog,
    Hurwitz,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::Polylog => "polylog",
            Function::Hurwitz => "hurwitz",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CacheMode {
    /// Every table is rebuilt inside the timed region.
    Cold,
    /// Tables for the point are built before timing starts.
    Warm,
}

impl CacheMode {
    pub fn name(self) -> &'static str {
        match self {
            CacheMode::Cold => "cold",
            CacheMode::Warm => "warm",
        }
    }
}

/// The two measurement points: Li_s(z) at s = 0.5 + 14.134725i,
/// z = 0.4 + 0.3i, and ζ(s, q) at s = 0.5 + 14.13i, q = 0.2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig81,
    Fig83,
}

impl Preset {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "fig8.1" => Ok(Preset::Fig81),
            "fig8.3" => Ok(Preset::Fig83),
            _ => Err(Error::Usage(format!("unknown preset '{text}' (expected fig8.1 or fig8.3)"))),
        }
    }

    pub fn function(self) -> Function {
        match self {
            Preset::Fig81 => Function::Polylog,
            Preset::Fig83 => Function::Hurwitz,
        }
    }

    pub fn algos(self) -> Vec<Algo> {
        match self {
            Preset::Fig81 => vec![Algo::Direct, Algo::Borwein],
            Preset::Fig83 => vec![Algo::Direct, Algo::EulerMaclaurin, Algo::Taylor, Algo::Jonquiere],
        }
    }

    fn point(self, bits: u32) -> (BigComplex, BigComplex) {
        match self {
            Preset::Fig81 => (c(bits, "0.5", "14.134725"), c(bits, "0.4", "0.3")),
            Preset::Fig83 => (c(bits, "0.5", "14.13"), c(bits, "0.2", "0")),
        }
    }
}

fn c(bits: u32, re: &str, im: &str) -> BigComplex {
    let p = |t: &str| Float::with_val(bits, Float::parse(t).expect("literal"));
    BigComplex::new(p(re), p(im))
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub preset: Preset,
    pub digits: Vec<u32>,
    /// None runs every algorithm of the preset.
    pub algos: Option<Vec<Algo>>,
    pub caches: Vec<CacheMode>,
    pub repetitions: usize,
}

impl BenchConfig {
    pub fn new(preset: Preset, digits: Vec<u32>) -> Self {
        BenchConfig { preset, digits, algos: None, caches: vec![CacheMode::Cold, CacheMode::Warm], repetitions: 5 }
    }
}

/// One cell: median wall time over the repetitions, or why it was skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub function: Function,
    pub algo: Algo,
    pub digits: u32,
    pub cache: CacheMode,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Timed { seconds: f64, terms_used: u64 },
    Skipped(String),
}

impl BenchRecord {
    pub fn seconds(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Timed { seconds, .. } => Some(seconds),
            Outcome::Skipped(_) => None,
        }
    }

    pub fn terms_used(&self) -> Option<u64> {
        match self.outcome {
            Outcome::Timed { terms_used, .. } => Some(terms_used),
            Outcome::Skipped(_) => None,
        }
    }

    /// The row without its timing, for determinism checks.
    pub fn untimed(&self) -> String {
        let terms = self.terms_used().map_or("SKIPPED".to_string(), |t| t.to_string());
        format!("{},{},{},{},{}", self.function.name(), self.algo.name(), self.digits, self.cache.name(), terms)
    }
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = format!("{},{},{},{}", self.function.name(), self.algo.name(), self.digits, self.cache.name());
        match &self.outcome {
            Outcome::Timed { seconds, terms_used } => write!(f, "{head},{seconds:.6},{terms_used}"),
            Outcome::Skipped(_) => write!(f, "{head},SKIPPED,0"),
        }
    }
}

pub const CSV_HEADER: &str = "function,algo,digits,cache,seconds,terms_used";

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// The table a warm run may reuse, if the algorithm has one.
fn prepare(preset: Preset, algo: Algo, digits: u32) -> Result<Option<TermCache>> {
    let (s, x) = preset.point(digits_to_bits(digits) + 64);
    match (preset.function(), algo) {
        (Function::Polylog, Algo::Direct) => {
            let (_, terms) = li_direct_with(&s, &x, digits, None)?;
            let bits = li_direct_bits(&s, &x, digits);
            Ok(Some(TermCache::build(&s, terms as usize, bits)))
        }
        (Function::Polylog, Algo::Borwein) => {
            let plan = choose_order(&s, &x, digits, DEFAULT_RHO_MAX)?;
            Ok(Some(TermCache::build(&s, 2 * plan.order_n, plan.working_bits)))
        }
        (Function::Hurwitz, Algo::Taylor) => {
            let plan = taylor_plan(&s, &x, digits, TaylorCenter::Zero)?;
            let aux = taylor_tables(&s, &plan)?;
            Ok(Some(TermCache::build(&s, 0, plan.bits).with_aux(aux)))
        }
        _ => Ok(None),
    }
}

fn evaluate(preset: Preset, algo: Algo, digits: u32, cache: Option<&TermCache>) -> Result<u64> {
    let (s, x) = preset.point(digits_to_bits(digits) + 64);
    match (preset.function(), algo) {
        (Function::Polylog, Algo::Direct) => li_direct_with(&s, &x, digits, cache).map(|(_, k)| k),
        (Function::Polylog, Algo::Borwein) => {
            li_borwein_with(&s, &x, digits, DEFAULT_RHO_MAX, cache).map(|(_, plan)| 2 * plan.order_n as u64)
        }
        (Function::Hurwitz, Algo::Direct) => hz_direct(&s, &x, digits).map(|_| 1),
        (Function::Hurwitz, Algo::EulerMaclaurin) => {
            hz_euler_maclaurin_plan(&s, &x, digits).map(|(_, plan)| (plan.n_split + plan.p_used) as u64)
        }
        (Function::Hurwitz, Algo::Taylor) => {
            hz_taylor_with(&s, &x, digits, TaylorCenter::Zero, cache).map(|(_, n)| n as u64)
        }
        (Function::Hurwitz, Algo::Jonquiere) => {
            // ζ(s, q) is ζ(1 − s', q) with s' = 1 − s.
            let s1 = (-&s).add_i64(1);
            hurwitz_from_li_counted(&s1, x.re(), digits).map(|(_, n)| n as u64)
        }
        (f, a) => Err(Error::Usage(format!("{} is not available for {}", a.name(), f.name()))),
    }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2
    }
}

/// Times one cell. Warm runs build their tables before the clock starts.
pub fn run_cell(preset: Preset, algo: Algo, digits: u32, cache: CacheMode, repetitions: usize) -> BenchRecord {
    let record = |outcome| BenchRecord { function: preset.function(), algo, digits, cache, outcome };
    let prepared = match cache {
        CacheMode::Warm => match prepare(preset, algo, digits) {
            Ok(p) => p,
            Err(e) => return record(Outcome::Skipped(e.to_string())),
        },
        CacheMode::Cold => None,
    };
    let mut times = Vec::with_capacity(repetitions.max(1));
    let mut terms = 0;
    for _ in 0..repetitions.max(1) {
        let start = Instant::now();
        let r = evaluate(preset, algo, digits, prepared.as_ref());
        let dt = start.elapsed();
        match r {
            Ok(t) => terms = t.max(1),
            Err(e) => return record(Outcome::Skipped(e.to_string())),
        }
        times.push(dt);
    }
    let seconds = median(times).as_secs_f64().max(1e-9);
    record(Outcome::Timed { seconds, terms_used: terms })
}

/// Every (algorithm, digits, cache) cell of the configuration, in that order.
pub fn run_bench(config: &BenchConfig) -> Vec<BenchRecord> {
    let algos = config.algos.clone().unwrap_or_else(|| config.preset.algos());
    let mut out = Vec::new();
    for &algo in &algos {
        for &d in &config.digits {
            for &cache in &config.caches {
                out.push(run_cell(config.preset, algo, d, cache, config.repetitions));
            }
        }
    }
    out
}
