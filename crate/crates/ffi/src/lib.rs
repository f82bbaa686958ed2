//! C interface to `altfact`.
//!
//! Every entry point returns an [`AltfactStatus`]; results go through out
//! pointers. A context owns the evaluation settings and the text of the last
//! error raised through it. Contexts are not thread-safe; use one per thread.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use altfact::gamma::gamma;
use altfact::kurepa::{a_integer_oracle, evaluate, KurepaFunction, RepresentationId};
use altfact::singular::{singularity, FunctionId};
use altfact::special::{constant_gompertz, constant_l2};
use altfact::{Complex64, Error, EvalConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltfactStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    PoleProximity = 3,
    Domain = 4,
    NoConvergence = 5,
    Overflow = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Representation selector for [`altfact_eval_a`] and [`altfact_eval_a1`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltfactMethod {
    Integral = 0,
    Recurrence = 1,
    Series = 2,
    ClosedForm = 3,
    Slavic = 4,
    Auto = 5,
}

/// Function selector for [`altfact_singularity`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltfactFunction {
    A = 0,
    A1 = 1,
    Gamma = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AltfactOutcome {
    pub value_re: f64,
    pub value_im: f64,
    pub err_est: f64,
    /// The representation actually used, never `Auto`.
    pub method: i32,
    pub work: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AltfactSingularity {
    pub location: i64,
    /// 0 when the function is regular at `location`, 1 for a simple pole.
    pub order: u8,
    pub residue_re: f64,
    pub residue_im: f64,
    pub principal_value_re: f64,
    pub principal_value_im: f64,
}

/// Opaque evaluation context.
pub struct AltfactContext {
    cfg: EvalConfig,
    last_error: CString,
}

impl AltfactContext {
    fn fail(&mut self, status: AltfactStatus, message: String) -> AltfactStatus {
        self.last_error = CString::new(message.replace('\0', " ")).unwrap_or_default();
        status
    }

    fn fail_with(&mut self, e: Error) -> AltfactStatus {
        let status = status_of(&e);
        self.fail(status, e.to_string())
    }
}

fn status_of(e: &Error) -> AltfactStatus {
    match e {
        Error::PoleProximity { .. } => AltfactStatus::PoleProximity,
        Error::Domain(_) => AltfactStatus::Domain,
        Error::NoConvergence { .. } => AltfactStatus::NoConvergence,
        Error::Overflow(_) => AltfactStatus::Overflow,
        Error::NonFinite(_) | Error::InvalidConfig(_) => AltfactStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> AltfactStatus) -> AltfactStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(AltfactStatus::Panic)
}

fn method_from(raw: i32) -> Option<RepresentationId> {
    Some(match raw {
        0 => RepresentationId::Integral,
        1 => RepresentationId::Recurrence,
        2 => RepresentationId::Series,
        3 => RepresentationId::ClosedForm,
        4 => RepresentationId::Slavic,
        5 => RepresentationId::Auto,
        _ => return None,
    })
}

fn method_to(m: RepresentationId) -> i32 {
    match m {
        RepresentationId::Integral => AltfactMethod::Integral as i32,
        RepresentationId::Recurrence => AltfactMethod::Recurrence as i32,
        RepresentationId::Series => AltfactMethod::Series as i32,
        RepresentationId::ClosedForm => AltfactMethod::ClosedForm as i32,
        RepresentationId::Slavic => AltfactMethod::Slavic as i32,
        RepresentationId::Auto => AltfactMethod::Auto as i32,
    }
}

/// Creates a context with default settings. Returns NULL only on allocation
/// failure or panic. Release with [`altfact_context_free`].
#[no_mangle]
pub extern "C" fn altfact_context_new() -> *mut AltfactContext {
    catch_unwind(|| {
        Box::into_raw(Box::new(AltfactContext {
            cfg: EvalConfig::default(),
            last_error: CString::default(),
        }))
    })
    .unwrap_or(ptr::null_mut())
}

/// # Safety
/// `ctx` must be NULL or a pointer from [`altfact_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn altfact_context_free(ctx: *mut AltfactContext) {
    if !ctx.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(ctx))));
    }
}

/// Sets the relative tolerance; the absolute tolerance becomes `tol / 100`.
///
/// # Safety
/// `ctx` must be NULL or a live context.
#[no_mangle]
pub unsafe extern "C" fn altfact_context_set_tolerance(ctx: *mut AltfactContext, tol: f64) -> AltfactStatus {
    let Some(ctx) = ctx.as_mut() else {
        return AltfactStatus::NullPointer;
    };
    guard(|| {
        let cfg = ctx.cfg.with_tolerance(tol);
        match cfg.validate() {
            Ok(()) => {
                ctx.cfg = cfg;
                AltfactStatus::Ok
            }
            Err(e) => ctx.fail_with(e),
        }
    })
}

/// # Safety
/// `ctx` must be NULL or a live context.
#[no_mangle]
pub unsafe extern "C" fn altfact_context_set_max_terms(ctx: *mut AltfactContext, max_terms: u64) -> AltfactStatus {
    let Some(ctx) = ctx.as_mut() else {
        return AltfactStatus::NullPointer;
    };
    guard(|| {
        let Ok(n) = usize::try_from(max_terms) else {
            return ctx.fail(AltfactStatus::InvalidArgument, format!("max_terms {max_terms} too large"));
        };
        let cfg = ctx.cfg.with_max_terms(n);
        match cfg.validate() {
            Ok(()) => {
                ctx.cfg = cfg;
                AltfactStatus::Ok
            }
            Err(e) => ctx.fail_with(e),
        }
    })
}

/// Message for the most recent failure on `ctx`, or an empty string. The
/// pointer stays valid until the next call that fails on the same context.
///
/// # Safety
/// `ctx` must be NULL or a live context.
#[no_mangle]
pub unsafe extern "C" fn altfact_context_last_error(ctx: *const AltfactContext) -> *const c_char {
    match ctx.as_ref() {
        Some(ctx) => ctx.last_error.as_ptr(),
        None => c"".as_ptr(),
    }
}

/// Static description of an [`AltfactStatus`] value; unknown codes get a
/// generic message.
#[no_mangle]
pub extern "C" fn altfact_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"invalid argument",
        3 => c"argument too close to a pole",
        4 => c"outside the domain of the requested representation",
        5 => c"no convergence within the work limit",
        6 => c"overflow",
        7 => c"buffer too small",
        8 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

unsafe fn eval(
    ctx: *mut AltfactContext,
    function: KurepaFunction,
    re: f64,
    im: f64,
    method: i32,
    out: *mut AltfactOutcome,
) -> AltfactStatus {
    let Some(ctx) = ctx.as_mut() else {
        return AltfactStatus::NullPointer;
    };
    if out.is_null() {
        return ctx.fail(AltfactStatus::NullPointer, "out is NULL".into());
    }
    guard(|| {
        let Some(method) = method_from(method) else {
            return ctx.fail(AltfactStatus::InvalidArgument, format!("unknown method {method}"));
        };
        match evaluate(function, Complex64::new(re, im), method, &ctx.cfg) {
            Ok(o) => {
                *out = AltfactOutcome {
                    value_re: o.value.re,
                    value_im: o.value.im,
                    err_est: o.err_est,
                    method: method_to(o.method),
                    work: o.work as u64,
                };
                AltfactStatus::Ok
            }
            Err(e) => ctx.fail_with(e),
        }
    })
}

/// Evaluates A(re + i im). `method` is an [`AltfactMethod`] value.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn altfact_eval_a(
    ctx: *mut AltfactContext,
    re: f64,
    im: f64,
    method: i32,
    out: *mut AltfactOutcome,
) -> AltfactStatus {
    eval(ctx, KurepaFunction::A, re, im, method, out)
}

/// Evaluates A1(re + i im). `method` is an [`AltfactMethod`] value.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn altfact_eval_a1(
    ctx: *mut AltfactContext,
    re: f64,
    im: f64,
    method: i32,
    out: *mut AltfactOutcome,
) -> AltfactStatus {
    eval(ctx, KurepaFunction::A1, re, im, method, out)
}

/// # Safety
/// `out_re` and `out_im` must be valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn altfact_gamma(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> AltfactStatus {
    if out_re.is_null() || out_im.is_null() {
        return AltfactStatus::NullPointer;
    }
    guard(|| match gamma(Complex64::new(re, im)) {
        Ok(v) => {
            *out_re = v.re;
            *out_im = v.im;
            AltfactStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Residue and principal value of `function` at the integer `m`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn altfact_singularity(function: i32, m: i64, out: *mut AltfactSingularity) -> AltfactStatus {
    if out.is_null() {
        return AltfactStatus::NullPointer;
    }
    let function = match function {
        0 => FunctionId::A,
        1 => FunctionId::A1,
        2 => FunctionId::Gamma,
        _ => return AltfactStatus::InvalidArgument,
    };
    guard(|| match singularity(function, m) {
        Ok(s) => {
            *out = AltfactSingularity {
                location: s.location,
                order: s.order,
                residue_re: s.residue.re,
                residue_im: s.residue.im,
                principal_value_re: s.principal_value.re,
                principal_value_im: s.principal_value.im,
            };
            AltfactStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The constant L2 = 1 + e Ei(-1).
#[no_mangle]
pub extern "C" fn altfact_constant_l2() -> f64 {
    constant_l2()
}

/// The Gompertz constant -e Ei(-1) = 1 - L2.
#[no_mangle]
pub extern "C" fn altfact_constant_gompertz() -> f64 {
    constant_gompertz()
}

/// Writes the exact A(n), 0 <= n <= 500, as a NUL-terminated decimal string.
///
/// `required` (may be NULL) receives the buffer size needed including the
/// terminator. With `buf` NULL or `len` too small nothing is written to `buf`
/// and [`AltfactStatus::BufferTooSmall`] is returned.
///
/// # Safety
/// `buf` must be NULL or valid for `len` bytes; `required` NULL or valid for
/// one write.
#[no_mangle]
pub unsafe extern "C" fn altfact_integer_oracle(n: u32, buf: *mut c_char, len: usize, required: *mut usize) -> AltfactStatus {
    guard(|| {
        let digits = match a_integer_oracle(n) {
            Ok(v) => v.to_string(),
            Err(e) => return status_of(&e),
        };
        let need = digits.len() + 1;
        if !required.is_null() {
            *required = need;
        }
        if buf.is_null() || len < need {
            return AltfactStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(digits.as_ptr().cast::<c_char>(), buf, digits.len());
        *buf.add(digits.len()) = 0;
        AltfactStatus::Ok
    })
}
