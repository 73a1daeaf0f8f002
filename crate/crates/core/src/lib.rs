//! Arbitrary-precision polylogarithm and Hurwitz zeta evaluation.

pub mod accel;
pub mod bench;
pub mod error;
pub mod extend;
pub mod hurwitz;
pub mod monodromy;
pub mod numctx;
pub mod polylog;
pub mod render;
pub mod validate;

pub use error::{Error, ErrorCategory, Result};
pub use numctx::BigComplex;
