//! C ABI over `fgm_inaccuracy`.
//!
//! Every fallible function returns an [`FgmStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`fgm_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fgm_inaccuracy::cpi::{check_cpi_bounds, cpi_gos, reversed_cpi, CpiBound};
use fgm_inaccuracy::empirical::{empirical_cpi, moments_mtbged, moments_mtbud, moments_mtbud_exact, Moments, Sample};
use fgm_inaccuracy::fgm::{FgmModel, GosParams};
use fgm_inaccuracy::inaccuracy::{inaccuracy_gos, quantile_form_inaccuracy, reversed_inaccuracy};
use fgm_inaccuracy::marginals::MarginalFamily;
use fgm_inaccuracy::measure::{MeasureResult, Method};
use fgm_inaccuracy::numerics::RngStream;
use fgm_inaccuracy::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Quadrature = 5,
    Unsupported = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgmMethod {
    ClosedForm = 0,
    Quadrature = 1,
    QuantileForm = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgmCpiBound {
    BelowCe = -1,
    Equal = 0,
    AboveCe = 1,
}

/// Generalized order statistic parameters. Use `n == r`, `m == -1`,
/// `k == 1` for the r-th upper record and `m == 0`, `k == 1` for the r-th
/// order statistic out of n.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgmGos {
    pub r: u32,
    pub n: u32,
    pub m: f64,
    pub k: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgmMeasure {
    pub value: f64,
    pub abs_error: f64,
    pub method: FgmMethod,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgmMoments {
    pub mean: f64,
    pub variance: f64,
}

/// Opaque FGM model handle.
pub struct FgmModelHandle {
    model: FgmModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FgmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Domain(_) => FgmStatus::Domain,
            Error::NotConverged { .. } | Error::NanIntegrand { .. } | Error::Divergent { .. } => FgmStatus::Quadrature,
            Error::Unsupported(_) => FgmStatus::Unsupported,
            Error::Parse(_) => FgmStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FgmStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FgmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FgmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            FgmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(FgmStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn model_ref<'a>(h: *const FgmModelHandle) -> Result<&'a FgmModel, Failure> {
    h.as_ref().map(|h| &h.model).ok_or_else(|| null("model"))
}

unsafe fn gos(p: *const FgmGos) -> Result<GosParams, Failure> {
    let g = p.as_ref().ok_or_else(|| null("gos"))?;
    Ok(GosParams::new(g.r, g.n, g.m, g.k)?)
}

fn measure(r: MeasureResult) -> FgmMeasure {
    FgmMeasure {
        value: r.value,
        abs_error: r.abs_error,
        method: match r.method {
            Method::ClosedForm => FgmMethod::ClosedForm,
            Method::Quadrature => FgmMethod::Quadrature,
            Method::QuantileForm => FgmMethod::QuantileForm,
        },
    }
}

fn moments(m: Moments) -> FgmMoments {
    FgmMoments {
        mean: m.mean,
        variance: m.variance,
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fgm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a model from marginal spec strings such as `"exponential:theta=2"`.
/// `marginal_y` may be NULL to reuse `marginal_x`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fgm_model_new(
    marginal_x: *const c_char,
    marginal_y: *const c_char,
    alpha: f64,
    out: *mut *mut FgmModelHandle,
) -> FgmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let x: MarginalFamily = read_str(marginal_x, "marginal_x")?.parse::<MarginalFamily>().map_err(Error::from)?;
        let y = if marginal_y.is_null() {
            x
        } else {
            read_str(marginal_y, "marginal_y")?.parse::<MarginalFamily>().map_err(Error::from)?
        };
        let model = FgmModel::new(x, y, alpha)?;
        out.write(Box::into_raw(Box::new(FgmModelHandle { model })));
        Ok(())
    })
}

/// # Safety
/// `model` must come from [`fgm_model_new`] and not be freed twice. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn fgm_model_free(model: *mut FgmModelHandle) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_c_star(gos_params: *const FgmGos, out: *mut f64) -> FgmStatus {
    guard(|| write(out, gos(gos_params)?.c_star()))
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_concomitant_pdf(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    y: f64,
    out: *mut f64,
) -> FgmStatus {
    guard(|| write(out, model_ref(model)?.concomitant_pdf(&gos(gos_params)?, y)))
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_concomitant_cdf(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    y: f64,
    out: *mut f64,
) -> FgmStatus {
    guard(|| write(out, model_ref(model)?.concomitant_cdf(&gos(gos_params)?, y)))
}

unsafe fn run_measure(
    f: fn(&FgmModel, &GosParams) -> fgm_inaccuracy::Result<MeasureResult>,
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmMeasure,
) -> Result<(), Failure> {
    let r = f(model_ref(model)?, &gos(gos_params)?)?;
    write(out, measure(r))
}

/// Inaccuracy of the concomitant density relative to the Y marginal.
///
/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_inaccuracy(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmMeasure,
) -> FgmStatus {
    guard(|| run_measure(inaccuracy_gos, model, gos_params, out))
}

/// Inaccuracy via the quantile representation.
///
/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_inaccuracy_quantile_form(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmMeasure,
) -> FgmStatus {
    guard(|| run_measure(quantile_form_inaccuracy, model, gos_params, out))
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_reversed_inaccuracy(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmMeasure,
) -> FgmStatus {
    guard(|| run_measure(reversed_inaccuracy, model, gos_params, out))
}

/// Cumulative past inaccuracy.
///
/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_cpi(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmMeasure,
) -> FgmStatus {
    guard(|| run_measure(cpi_gos, model, gos_params, out))
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_reversed_cpi(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmMeasure,
) -> FgmStatus {
    guard(|| run_measure(reversed_cpi, model, gos_params, out))
}

/// # Safety
/// Pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fgm_cpi_bound(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    out: *mut FgmCpiBound,
) -> FgmStatus {
    guard(|| {
        let b = match check_cpi_bounds(model_ref(model)?, &gos(gos_params)?)? {
            CpiBound::BelowCe => FgmCpiBound::BelowCe,
            CpiBound::Equal => FgmCpiBound::Equal,
            CpiBound::AboveCe => FgmCpiBound::AboveCe,
        };
        write(out, b)
    })
}

/// Spacing estimator of the CPI from `len` observations of Y.
///
/// # Safety
/// `values` must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn fgm_empirical_cpi(
    values: *const f64,
    len: usize,
    alpha: f64,
    gos_params: *const FgmGos,
    out: *mut f64,
) -> FgmStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        let sample = Sample::new(std::slice::from_raw_parts(values, len).to_vec())?;
        write(out, empirical_cpi(&sample, alpha, &gos(gos_params)?)?)
    })
}

/// Draws `len` concomitant values. Results depend only on `(seed, stream)`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fgm_sample_concomitants(
    model: *const FgmModelHandle,
    gos_params: *const FgmGos,
    seed: u64,
    stream: u64,
    out: *mut f64,
    len: usize,
) -> FgmStatus {
    guard(|| {
        let model = model_ref(model)?;
        let p = gos(gos_params)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let mut rng = RngStream::new(seed, stream);
        let dst = std::slice::from_raw_parts_mut(out, len);
        for d in dst {
            *d = model.sample_concomitant(&p, &mut rng)?;
        }
        Ok(())
    })
}

/// Estimator moments for record concomitants with exponential Y of rate `theta2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fgm_moments_exponential(
    n: usize,
    theta2: f64,
    alpha: f64,
    r: u32,
    out: *mut FgmMoments,
) -> FgmStatus {
    guard(|| write(out, moments(moments_mtbged(n, theta2, alpha, r)?)))
}

/// Estimator moments for record concomitants with standard uniform Y.
/// `exact` selects the variance that accounts for dependence between
/// spacings; otherwise the spacings are treated as independent.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fgm_moments_uniform(
    n: usize,
    alpha: f64,
    r: u32,
    exact: bool,
    out: *mut FgmMoments,
) -> FgmStatus {
    guard(|| {
        let m = if exact {
            moments_mtbud_exact(n, alpha, r)?
        } else {
            moments_mtbud(n, alpha, r)?
        };
        write(out, moments(m))
    })
}
