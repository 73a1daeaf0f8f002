//! Hurwitz zeta ζ(s,q) = Σ_{k≥0} (k+q)^{−s} by several independent routes.

mod bernoulli;
mod direct;
mod em;
mod hasse;
mod taylor;

pub use bernoulli::{bernoulli_poly, bernoulli_table, BernoulliTable};
pub use direct::hz_direct;
pub use em::{em_remainder_bound, em_remainder_log10, hz_euler_maclaurin, hz_euler_maclaurin_plan, EMPlan, EmStop};
pub use hasse::hz_hasse;
pub use taylor::{hz_taylor, hz_taylor_with, taylor_plan, taylor_tables, TaylorCenter, TaylorPlan};

use crate::error::Result;
use crate::numctx::BigComplex;

/// Riemann zeta ζ(s) = ζ(s,1).
pub fn riemann_zeta(s: &BigComplex, digits: u32) -> Result<BigComplex> {
    hz_euler_maclaurin(s, &BigComplex::one(s.prec()), digits)
}
