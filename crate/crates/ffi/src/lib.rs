//! C ABI over the circulant-primality library.
//!
//! The surface follows the usual opaque-handle pattern: `cp_context_new`
//! returns a configuration handle, every entry point reports a [`CpStatus`]
//! code and writes its result through an out-pointer, and strings returned by
//! the library must be released with `cp_string_free`. The header is
//! generated by cbindgen at build time into `include/circulant_primality.h`.
//!
//! Integers cross the boundary either as `u64` or as decimal strings (for
//! arbitrary-precision inputs).

use circulant_primality::{baselines::MethodId, bench, galois, minpoly, primality, spectral};
use num_bigint::BigUint;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpStatus {
    /// Success.
    Ok = 0,
    /// An argument was outside the operation's domain.
    ErrDomain = -1,
    /// Coefficient rounding failed at the maximum working precision.
    ErrPrecision = -2,
    /// A budgeted computation timed out.
    ErrTimeout = -3,
    /// A null pointer or malformed string was passed.
    ErrInvalidArgument = -4,
    /// A numeric string failed to parse.
    ErrParse = -5,
    /// Internal failure (panic caught at the boundary).
    ErrInternal = -6,
}

/// Method selector mirrored across the ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpMethod {
    TrialDivision = 0,
    OptimizedTrialDivision = 1,
    MillerRabin = 2,
    Aks = 3,
    CirculantFull = 4,
    CirculantSimplified = 5,
}

/// Opaque configuration handle.
pub struct CpContext {
    mr_rounds: u32,
    seed: u64,
    branch_threshold: u64,
    precision_digits: Option<u32>,
}

impl CpContext {
    fn method(&self, method: CpMethod) -> MethodId {
        match method {
            CpMethod::TrialDivision => MethodId::TrialDivision,
            CpMethod::OptimizedTrialDivision => MethodId::OptimizedTrialDivision,
            CpMethod::MillerRabin => {
                MethodId::MillerRabin { rounds: self.mr_rounds, seed: self.seed }
            }
            CpMethod::Aks => MethodId::Aks,
            CpMethod::CirculantFull => MethodId::CirculantFull,
            CpMethod::CirculantSimplified => MethodId::CirculantSimplified,
        }
    }
}

fn status_of(e: &circulant_primality::Error) -> CpStatus {
    use circulant_primality::Error;
    match e {
        Error::Domain(_) => CpStatus::ErrDomain,
        Error::PrecisionExhausted { .. } | Error::Integrality { .. } => CpStatus::ErrPrecision,
        Error::Timeout { .. } => CpStatus::ErrTimeout,
        Error::Parse(_) => CpStatus::ErrParse,
        _ => CpStatus::ErrInternal,
    }
}

fn guarded<F: FnOnce() -> CpStatus + UnwindSafe>(f: F) -> CpStatus {
    catch_unwind(f).unwrap_or(CpStatus::ErrInternal)
}

/// Creates a context with the default configuration (20 Miller-Rabin rounds,
/// seed 1, branch threshold 10^6). Release with `cp_context_free`.
#[no_mangle]
pub extern "C" fn cp_context_new() -> *mut CpContext {
    Box::into_raw(Box::new(CpContext {
        mr_rounds: 20,
        seed: 1,
        branch_threshold: primality::DEFAULT_BRANCH_THRESHOLD,
        precision_digits: None,
    }))
}

/// Releases a context created by `cp_context_new`. Null is a no-op.
///
/// # Safety
/// `ctx` must be a pointer previously returned by `cp_context_new` that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn cp_context_free(ctx: *mut CpContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// # Safety
/// `ctx` must be a live context pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_context_set_mr_rounds(ctx: *mut CpContext, rounds: u32) -> CpStatus {
    if ctx.is_null() || rounds == 0 {
        return CpStatus::ErrInvalidArgument;
    }
    unsafe { (*ctx).mr_rounds = rounds };
    CpStatus::Ok
}

/// # Safety
/// `ctx` must be a live context pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_context_set_seed(ctx: *mut CpContext, seed: u64) -> CpStatus {
    if ctx.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    unsafe { (*ctx).seed = seed };
    CpStatus::Ok
}

/// # Safety
/// `ctx` must be a live context pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_context_set_branch_threshold(
    ctx: *mut CpContext,
    threshold: u64,
) -> CpStatus {
    if ctx.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    unsafe { (*ctx).branch_threshold = threshold };
    CpStatus::Ok
}

/// Starting decimal digits for minimal-polynomial expansion (0 = automatic).
///
/// # Safety
/// `ctx` must be a live context pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_context_set_precision(ctx: *mut CpContext, digits: u32) -> CpStatus {
    if ctx.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    unsafe { (*ctx).precision_digits = if digits == 0 { None } else { Some(digits) } };
    CpStatus::Ok
}

fn run_is_prime(ctx: &CpContext, n: &BigUint, method: CpMethod) -> Result<bool, CpStatus> {
    let method_id = ctx.method(method);
    let verdict = match method_id {
        MethodId::CirculantFull => primality::is_prime_circulant_full_with(
            n,
            ctx.branch_threshold,
            &circulant_primality::Budget::unlimited(),
        ),
        _ => primality::test(n, &method_id),
    };
    verdict.map(|v| v.is_prime).map_err(|e| status_of(&e))
}

/// Tests `n` for primality with the given method; writes 1 (prime) or 0
/// (composite) into `out_is_prime`.
///
/// # Safety
/// `ctx` must be a live context pointer and `out_is_prime` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_is_prime_u64(
    ctx: *const CpContext,
    n: u64,
    method: CpMethod,
    out_is_prime: *mut i32,
) -> CpStatus {
    if ctx.is_null() || out_is_prime.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    let ctx = unsafe { &*ctx };
    guarded(|| match run_is_prime(ctx, &BigUint::from(n), method) {
        Ok(p) => {
            unsafe { *out_is_prime = i32::from(p) };
            CpStatus::Ok
        }
        Err(s) => s,
    })
}

/// Arbitrary-precision variant of `cp_is_prime_u64`; `n` is a decimal string.
///
/// # Safety
/// `ctx` must be a live context pointer, `n` a NUL-terminated string, and
/// `out_is_prime` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_is_prime_str(
    ctx: *const CpContext,
    n: *const c_char,
    method: CpMethod,
    out_is_prime: *mut i32,
) -> CpStatus {
    if ctx.is_null() || n.is_null() || out_is_prime.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    let ctx = unsafe { &*ctx };
    let text = match unsafe { CStr::from_ptr(n) }.to_str() {
        Ok(t) => t,
        Err(_) => return CpStatus::ErrInvalidArgument,
    };
    let value: BigUint = match text.trim().parse() {
        Ok(v) => v,
        Err(_) => return CpStatus::ErrParse,
    };
    guarded(|| match run_is_prime(ctx, &value, method) {
        Ok(p) => {
            unsafe { *out_is_prime = i32::from(p) };
            CpStatus::Ok
        }
        Err(s) => s,
    })
}

/// Number of Galois orbits of the eigenvalue indices, counted directly.
///
/// # Safety
/// `out_count` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_orbit_count_direct(n: u64, out_count: *mut u64) -> CpStatus {
    if out_count.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    guarded(|| match galois::orbit_count_direct(n) {
        Ok(k) => {
            unsafe { *out_count = k };
            CpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Orbit count from the divisor formula (disagrees with the direct count on
/// prime powers; see the library documentation).
///
/// # Safety
/// `out_count` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_orbit_count_divisor_formula(n: u64, out_count: *mut u64) -> CpStatus {
    if out_count.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    guarded(|| match galois::orbit_count_divisor_formula(n) {
        Ok(k) => {
            unsafe { *out_count = k };
            CpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Number of irreducible factors of the minimal polynomial of C_n.
///
/// # Safety
/// `ctx` must be a live context pointer and `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_factor_count(
    ctx: *const CpContext,
    n: u64,
    out_count: *mut u64,
) -> CpStatus {
    if ctx.is_null() || out_count.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    let ctx = unsafe { &*ctx };
    let digits = ctx.precision_digits;
    guarded(move || {
        let result = match digits {
            Some(d) => minpoly::minimal_polynomial_factors_with_digits(n, d),
            None => minpoly::minimal_polynomial_factors(n),
        };
        match result {
            Ok(fs) => {
                unsafe { *out_count = fs.factor_count() };
                CpStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// The spectral regularity statistic S(n).
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_spectral_value(n: u64, out_value: *mut f64) -> CpStatus {
    if out_value.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    guarded(|| match spectral::spectral_property(n) {
        Ok(s) => {
            unsafe { *out_value = s };
            CpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

fn string_out(s: String, out: *mut *mut c_char) -> CpStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            CpStatus::Ok
        }
        Err(_) => CpStatus::ErrInternal,
    }
}

/// Minimal-polynomial factors of C_n as a JSON document
/// `{"n": n, "factors": [[c0, c1, ...], ...]}`. Free with `cp_string_free`.
///
/// # Safety
/// `ctx` must be a live context pointer and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_minpoly_json(
    ctx: *const CpContext,
    n: u64,
    out_json: *mut *mut c_char,
) -> CpStatus {
    if ctx.is_null() || out_json.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    let ctx = unsafe { &*ctx };
    let digits = ctx.precision_digits;
    guarded(move || {
        let result = match digits {
            Some(d) => minpoly::minimal_polynomial_factors_with_digits(n, d),
            None => minpoly::minimal_polynomial_factors(n),
        };
        match result {
            Ok(fs) => string_out(fs.to_json(), out_json),
            Err(e) => status_of(&e),
        }
    })
}

/// Orbit partition of C_n as JSON `{"n": n, "orbits": [[...], ...]}`.
/// Free with `cp_string_free`.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_orbits_json(n: u64, out_json: *mut *mut c_char) -> CpStatus {
    if out_json.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    guarded(|| match galois::compute_orbits(n) {
        Ok(p) => string_out(p.to_json(), out_json),
        Err(e) => status_of(&e),
    })
}

/// Agreement sweep of [lo, hi] between two methods; writes the number of
/// disagreements (expected 0).
///
/// # Safety
/// `ctx` must be a live context pointer and `out_disagreements` valid.
#[no_mangle]
pub unsafe extern "C" fn cp_sweep_validate(
    ctx: *const CpContext,
    lo: u64,
    hi: u64,
    method: CpMethod,
    baseline: CpMethod,
    out_disagreements: *mut u64,
) -> CpStatus {
    if ctx.is_null() || out_disagreements.is_null() {
        return CpStatus::ErrInvalidArgument;
    }
    let ctx = unsafe { &*ctx };
    guarded(|| {
        match bench::sweep_validate(lo, hi, &ctx.method(method), &ctx.method(baseline)) {
            Ok(report) => {
                unsafe { *out_disagreements = report.disagreements.len() as u64 };
                CpStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be a string pointer previously returned by this library that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn cp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
