//! C interface to the polyzeta evaluators.
//!
//! Numbers cross the boundary as decimal strings (`"0.5+14.134725i"`) so
//! that inputs keep their full precision. Results come back as opaque
//! [`PzValue`] handles. Every call returns a [`PzStatus`]; on failure the
//! message is available from [`pz_last_error`] until the next call on the
//! same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polyzeta::bench::TermCache;
use polyzeta::extend::{li_anywhere, periodic_zeta};
use polyzeta::hurwitz::hz_euler_maclaurin;
use polyzeta::monodromy::{eval_sheet, GenWord};
use polyzeta::numctx::format::parse_complex;
use polyzeta::numctx::{digits_to_bits, BigComplex};
use polyzeta::polylog::{choose_order, li_borwein_with, DEFAULT_RHO_MAX};
use polyzeta::{Error, ErrorCategory};

/// Status of a call. The nonzero values match the command line exit codes
/// where they overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PzStatus {
    PzOk = 0,
    /// Outside the domain or region of the requested method.
    PzErrDomain = 2,
    /// The method did not reach the requested accuracy.
    PzErrConvergence = 3,
    /// Malformed input string or argument.
    PzErrUsage = 4,
    /// A required pointer was null.
    PzErrNull = 5,
    /// Internal failure; the handle arguments are left untouched.
    PzErrInternal = 6,
}

/// A complex value with the number of digits it was computed to.
pub struct PzValue {
    value: BigComplex,
    digits: u32,
}

/// Precomputed k^{−s} for repeated evaluation at one order s.
pub struct PzCache {
    cache: TermCache,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PzStatus {
    match e.category() {
        ErrorCategory::Domain => PzStatus::PzErrDomain,
        ErrorCategory::Convergence => PzStatus::PzErrConvergence,
        ErrorCategory::Usage => PzStatus::PzErrUsage,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard<F>(f: F) -> PzStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PzStatus::PzOk,
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            PzStatus::PzErrNull
        }
        Ok(Err(Failure::Pz(e))) => {
            set_error(&format!("{}: {}", e.tag(), e.message()));
            status_of(&e)
        }
        Err(_) => {
            set_error("internal error");
            PzStatus::PzErrInternal
        }
    }
}

enum Failure {
    Null(&'static str),
    Pz(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Pz(e)
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Pz(Error::Usage(format!("{what} is not valid UTF-8"))))
}

unsafe fn number(p: *const c_char, what: &'static str, digits: u32) -> Result<BigComplex, Failure> {
    Ok(parse_complex(text(p, what)?, digits_to_bits(digits) + 64)?)
}

fn check_digits(digits: u32) -> Result<(), Failure> {
    if digits == 0 || digits > 100_000 {
        return Err(Failure::Pz(Error::Usage(format!("digits must be between 1 and 100000, got {digits}"))));
    }
    Ok(())
}

unsafe fn store(out: *mut *mut PzValue, value: BigComplex, digits: u32) {
    *out = Box::into_raw(Box::new(PzValue { value, digits }));
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Li_s(z) anywhere in the plane, to `digits` decimal digits.
#[no_mangle]
pub unsafe extern "C" fn pz_polylog(
    s: *const c_char,
    z: *const c_char,
    digits: u32,
    out: *mut *mut PzValue,
) -> PzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        check_digits(digits)?;
        let s = number(s, "s", digits)?;
        let z = number(z, "z", digits)?;
        let (v, _) = li_anywhere(&s, &z, digits)?;
        store(out, v, digits);
        Ok(())
    })
}

/// ζ(s, q) by Euler–Maclaurin summation.
#[no_mangle]
pub unsafe extern "C" fn pz_hurwitz(
    s: *const c_char,
    q: *const c_char,
    digits: u32,
    out: *mut *mut PzValue,
) -> PzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        check_digits(digits)?;
        let s = number(s, "s", digits)?;
        let q = number(q, "q", digits)?;
        store(out, hz_euler_maclaurin(&s, &q, digits)?, digits);
        Ok(())
    })
}

/// F(q; s) = Li_s(e^{2πiq}) for real 0 < q ≤ 1.
#[no_mangle]
pub unsafe extern "C" fn pz_periodic(
    q: *const c_char,
    s: *const c_char,
    digits: u32,
    out: *mut *mut PzValue,
) -> PzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        check_digits(digits)?;
        let q = number(q, "q", digits)?;
        if !q.im().is_zero() {
            return Err(Failure::Pz(Error::Usage("q must be real".into())));
        }
        let s = number(s, "s", digits)?;
        store(out, periodic_zeta(q.re(), &s, digits)?, digits);
        Ok(())
    })
}

/// Li_s(z) continued along `word`, e.g. `"g1 g0 g1^-1"`.
#[no_mangle]
pub unsafe extern "C" fn pz_sheet(
    word: *const c_char,
    s: *const c_char,
    z: *const c_char,
    digits: u32,
    out: *mut *mut PzValue,
) -> PzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        check_digits(digits)?;
        let w = GenWord::parse(text(word, "word")?)?;
        let s = number(s, "s", digits)?;
        let z = number(z, "z", digits)?;
        store(out, eval_sheet(&s, &z, &w, digits)?, digits);
        Ok(())
    })
}

/// Real and imaginary parts rounded to double.
#[no_mangle]
pub unsafe extern "C" fn pz_value_parts(v: *const PzValue, re: *mut f64, im: *mut f64) -> PzStatus {
    guard(|| {
        let v = v.as_ref().ok_or(Failure::Null("value"))?;
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("re/im"));
        }
        *re = v.value.re_f64();
        *im = v.value.im_f64();
        Ok(())
    })
}

/// `"<re> <im>"` in scientific notation with the digits the value was
/// computed to. Free the result with [`pz_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pz_value_to_string(v: *const PzValue, out: *mut *mut c_char) -> PzStatus {
    guard(|| {
        let v = v.as_ref().ok_or(Failure::Null("value"))?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let s = CString::new(v.value.to_decimal_pair(v.digits as usize)).expect("no interior nul");
        *out = s.into_raw();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pz_value_free(v: *mut PzValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Cache of k^{−s} sized for the accelerated sum at the given point and
/// digits; reusable for any z needing no more terms.
#[no_mangle]
pub unsafe extern "C" fn pz_cache_new(
    s: *const c_char,
    z_hint: *const c_char,
    digits: u32,
    out: *mut *mut PzCache,
) -> PzStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        check_digits(digits)?;
        let s = number(s, "s", digits)?;
        let z = number(z_hint, "z_hint", digits)?;
        let plan = choose_order(&s, &z, digits, DEFAULT_RHO_MAX)?;
        let cache = TermCache::build(&s, 2 * plan.order_n, plan.working_bits);
        *out = Box::into_raw(Box::new(PzCache { cache }));
        Ok(())
    })
}

/// Number of cached k^{−s} values.
#[no_mangle]
pub unsafe extern "C" fn pz_cache_len(c: *const PzCache) -> usize {
    c.as_ref().map_or(0, |c| c.cache.len())
}

#[no_mangle]
pub unsafe extern "C" fn pz_cache_free(c: *mut PzCache) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Li_s(z) by the accelerated sum at the cache's order s, reusing its
/// powers when the working precision matches.
#[no_mangle]
pub unsafe extern "C" fn pz_polylog_cached(
    c: *const PzCache,
    z: *const c_char,
    digits: u32,
    out: *mut *mut PzValue,
) -> PzStatus {
    guard(|| {
        let c = c.as_ref().ok_or(Failure::Null("cache"))?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        check_digits(digits)?;
        let z = number(z, "z", digits)?;
        let (v, _) = li_borwein_with(c.cache.s(), &z, digits, DEFAULT_RHO_MAX, Some(&c.cache))?;
        store(out, v, digits);
        Ok(())
    })
}
