//! C ABI for the negbeta library.
//!
//! Conventions: every fallible call returns an [`NbStatus`]; out-parameters
//! are written only when the status is `NB_STATUS_OK`; digit buffers are
//! caller-allocated arrays of raw `0`/`1` bytes whose length is the requested
//! expansion depth; strings returned by the library must be released with
//! [`nb_string_free`]. Parameter handles are opaque and must be released
//! with [`nb_params_free`].

use std::ffi::{c_char, CStr, CString};

use negbeta::error::Error;
use negbeta::measure::{support, SUPPORT_MAX_ITER, SUPPORT_TOL};
use negbeta::params::{AlphaPreset, AlphaSpec, ExpansionParams};
use negbeta::random::{classify_uniqueness, greedy_digits, UniquenessVerdict};
use negbeta::transforms::{digits_alt, digits_r, odd_greedy_digits};
use negbeta::word::DigitWord;

/// Result of a library call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NbStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The base is not strictly between 1 and 2.
    BetaOutOfRange = 2,
    /// The cut point lies outside the switch region.
    AlphaOutsideSwitch = 3,
    /// The preset name is not recognized.
    UnknownPreset = 4,
    /// The point lies outside the representable domain.
    XOutOfDomain = 5,
    /// A digit byte other than 0 or 1 was supplied.
    BadDigit = 6,
    /// The coin word ran out before the expansion finished.
    CoinsExhausted = 7,
    /// An iterative computation did not converge.
    NonConvergence = 8,
    /// No refutation witness was found.
    WitnessNotFound = 9,
    /// Any other invalid argument or internal failure.
    InvalidArgument = 10,
}

fn status_of(e: &Error) -> NbStatus {
    match e {
        Error::BetaOutOfRange(_) => NbStatus::BetaOutOfRange,
        Error::AlphaOutsideSwitch { .. } => NbStatus::AlphaOutsideSwitch,
        Error::UnknownPreset(_) => NbStatus::UnknownPreset,
        Error::XOutOfDomain { .. } => NbStatus::XOutOfDomain,
        Error::BadDigit(_) => NbStatus::BadDigit,
        Error::CoinsExhausted { .. } => NbStatus::CoinsExhausted,
        Error::NonConvergence { .. } => NbStatus::NonConvergence,
        Error::WitnessNotFound { .. } => NbStatus::WitnessNotFound,
        Error::Invalid(_) => NbStatus::InvalidArgument,
    }
}

/// Opaque handle to a validated (base, cut point) pair.
pub struct NbParams {
    inner: ExpansionParams,
}

/// Plain-old-data snapshot of the constants derived from a handle.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct NbParamsInfo {
    pub beta: f64,
    pub alpha: f64,
    /// Left end of the representable domain.
    pub m_minus: f64,
    /// Right end of the representable domain.
    pub m_plus: f64,
    /// Left end of the switch region.
    pub s_lo: f64,
    /// Right end of the switch region.
    pub s_hi: f64,
}

/// How a point's expansion was classified.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NbUniqueness {
    /// Exactly one expansion; `detail` holds the certified cycle length.
    Unique = 0,
    /// More than one expansion; `detail` holds the first switch-region step.
    NotUnique = 1,
    /// Undecided within the horizon; `detail` is zero.
    Undecided = 2,
}

fn write_params(out: *mut *mut NbParams, params: ExpansionParams) -> NbStatus {
    if out.is_null() {
        return NbStatus::NullArgument;
    }
    let boxed = Box::new(NbParams { inner: params });
    unsafe { *out = Box::into_raw(boxed) };
    NbStatus::Ok
}

/// Create a parameter handle from a numeric cut point.
///
/// # Safety
/// `out` must be a valid pointer to a `NbParams*` slot.
#[no_mangle]
pub unsafe extern "C" fn nb_params_new(beta: f64, alpha: f64, out: *mut *mut NbParams) -> NbStatus {
    match ExpansionParams::new(beta, AlphaSpec::Value(alpha)) {
        Ok(p) => write_params(out, p),
        Err(e) => status_of(&e),
    }
}

/// Create a parameter handle from a preset name
/// (`ito-sadahiro|odd-greedy|midpoint|s-left|s-right`).
///
/// # Safety
/// `preset` must be a valid NUL-terminated string and `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn nb_params_new_preset(
    beta: f64,
    preset: *const c_char,
    out: *mut *mut NbParams,
) -> NbStatus {
    if preset.is_null() {
        return NbStatus::NullArgument;
    }
    let name = match unsafe { CStr::from_ptr(preset) }.to_str() {
        Ok(s) => s,
        Err(_) => return NbStatus::InvalidArgument,
    };
    let parsed: AlphaPreset = match name.parse() {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match ExpansionParams::new(beta, AlphaSpec::Preset(parsed)) {
        Ok(p) => write_params(out, p),
        Err(e) => status_of(&e),
    }
}

/// Release a parameter handle. Passing null is a no-op.
///
/// # Safety
/// `p` must have come from `nb_params_new*` and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn nb_params_free(p: *mut NbParams) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Copy the derived constants of a handle into `info`.
///
/// # Safety
/// `p` must be a live handle and `info` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nb_params_info(p: *const NbParams, info: *mut NbParamsInfo) -> NbStatus {
    if p.is_null() || info.is_null() {
        return NbStatus::NullArgument;
    }
    let q = unsafe { &(*p).inner };
    unsafe {
        *info = NbParamsInfo {
            beta: q.beta,
            alpha: q.alpha,
            m_minus: q.m_minus,
            m_plus: q.m_plus,
            s_lo: q.s_lo,
            s_hi: q.s_hi,
        };
    }
    NbStatus::Ok
}

unsafe fn fill_digits(
    digits: *mut u8,
    depth: usize,
    word: negbeta::error::Result<DigitWord>,
) -> NbStatus {
    if depth > 0 && digits.is_null() {
        return NbStatus::NullArgument;
    }
    match word {
        Ok(w) => {
            debug_assert_eq!(w.len(), depth);
            for (i, d) in w.iter().enumerate().take(depth) {
                unsafe { *digits.add(i) = *d };
            }
            NbStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Expand `x` with the cut map, writing `depth` digit bytes into `digits`.
///
/// # Safety
/// `p` must be a live handle; `digits` must point to at least `depth` bytes.
#[no_mangle]
pub unsafe extern "C" fn nb_digits_r(
    p: *const NbParams,
    x: f64,
    digits: *mut u8,
    depth: usize,
) -> NbStatus {
    if p.is_null() {
        return NbStatus::NullArgument;
    }
    let params = unsafe { &(*p).inner };
    unsafe { fill_digits(digits, depth, digits_r(params, x, depth).map(|o| o.digits)) }
}

/// Expand `x` with the alternating tie rule.
///
/// # Safety
/// Same contract as [`nb_digits_r`].
#[no_mangle]
pub unsafe extern "C" fn nb_digits_alt(
    p: *const NbParams,
    x: f64,
    digits: *mut u8,
    depth: usize,
) -> NbStatus {
    if p.is_null() {
        return NbStatus::NullArgument;
    }
    let params = unsafe { &(*p).inner };
    unsafe { fill_digits(digits, depth, digits_alt(params, x, depth).map(|o| o.digits)) }
}

/// Expand `x` by the parameter-free partial-sum recursion.
///
/// # Safety
/// `digits` must point to at least `depth` bytes.
#[no_mangle]
pub unsafe extern "C" fn nb_odd_greedy(
    beta: f64,
    x: f64,
    digits: *mut u8,
    depth: usize,
) -> NbStatus {
    unsafe { fill_digits(digits, depth, odd_greedy_digits(beta, x, depth)) }
}

/// Expand `x` into the alternate-order maximal digit word.
///
/// # Safety
/// `digits` must point to at least `depth` bytes.
#[no_mangle]
pub unsafe extern "C" fn nb_greedy(beta: f64, x: f64, digits: *mut u8, depth: usize) -> NbStatus {
    unsafe { fill_digits(digits, depth, greedy_digits(beta, x, depth).map(|t| t.digits)) }
}

/// Evaluate a digit word back to the point it represents, together with the
/// truncation error bound.
///
/// # Safety
/// `digits` must point to `len` bytes; `value` and `error_bound` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nb_evaluate(
    beta: f64,
    digits: *const u8,
    len: usize,
    value: *mut f64,
    error_bound: *mut f64,
) -> NbStatus {
    if (len > 0 && digits.is_null()) || value.is_null() || error_bound.is_null() {
        return NbStatus::NullArgument;
    }
    let slice = if len == 0 { &[][..] } else { unsafe { std::slice::from_raw_parts(digits, len) } };
    if let Some(bad) = slice.iter().find(|d| **d > 1) {
        return status_of(&Error::BadDigit((b'0' + *bad.min(&9)) as char));
    }
    let word: DigitWord = slice.iter().copied().collect();
    match negbeta::params::evaluate(beta, &word) {
        Ok((v, b)) => {
            unsafe {
                *value = v;
                *error_bound = b;
            }
            NbStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Classify whether `x` has a unique expansion. `detail` receives the cycle
/// length (unique), the first switch-region step (not unique), or zero.
///
/// # Safety
/// `kind` and `detail` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nb_classify_uniqueness(
    beta: f64,
    x: f64,
    horizon: usize,
    kind: *mut NbUniqueness,
    detail: *mut usize,
) -> NbStatus {
    if kind.is_null() || detail.is_null() {
        return NbStatus::NullArgument;
    }
    match classify_uniqueness(beta, x, horizon) {
        Ok(v) => {
            let (k, d) = match v {
                UniquenessVerdict::Unique { period, .. } => (NbUniqueness::Unique, period),
                UniquenessVerdict::NotUnique { switch_step } => {
                    (NbUniqueness::NotUnique, switch_step)
                }
                UniquenessVerdict::UndecidedAtHorizon => (NbUniqueness::Undecided, 0),
            };
            unsafe {
                *kind = k;
                *detail = d;
            }
            NbStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Compute the support of the invariant density and return it as a JSON
/// string `{"parts": [[lo, hi], ...], "iterations": n, "residual": r}`.
/// The string must be released with [`nb_string_free`].
///
/// # Safety
/// `out` must be a valid pointer to a `char*` slot.
#[no_mangle]
pub unsafe extern "C" fn nb_support_json(
    beta: f64,
    alpha: f64,
    out: *mut *mut c_char,
) -> NbStatus {
    if out.is_null() {
        return NbStatus::NullArgument;
    }
    let params = match ExpansionParams::new(beta, AlphaSpec::Value(alpha)) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    let res = support(&params, SUPPORT_MAX_ITER, SUPPORT_TOL);
    let parts: Vec<[f64; 2]> = res.support.parts().iter().map(|i| [i.lo, i.hi]).collect();
    let doc = serde_json::json!({
        "parts": parts,
        "iterations": res.iterations,
        "residual": res.invariance_residual,
    });
    let text = doc.to_string();
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            NbStatus::Ok
        }
        Err(_) => NbStatus::InvalidArgument,
    }
}

/// Release a string allocated by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn nb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
