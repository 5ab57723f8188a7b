//! C ABI over `ridge-core`.
//!
//! Every fallible function returns a [`RidgeStatus`] and writes results
//! through out-pointers. On failure, [`ridge_last_error`] returns a message
//! for the calling thread. Models and datasets are opaque handles released
//! with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use ridge_core::dictionary::{self, Activation, RidgeUnit, Sign};
use ridge_core::greedy::{self, GreedyConfig, InnerStrategy, PenaltyFn};
use ridge_core::penalty::{self, PenaltyConfig, Regime};
use ridge_core::{Dataset, Design, Error, RidgeModel};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RidgeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DimensionMismatch = 3,
    Size = 4,
    RegimeInvalid = 5,
    Io = 6,
    Config = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RidgeActivation {
    Ramp = 0,
    Sine = 1,
    Tanh = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RidgeInner {
    CoverExhaustive = 0,
    ProjectedGradient = 1,
    FrankWolfe = 2,
}

/// Greedy fit settings; the penalty is `lambda·v^exponent` (`exponent = 1` for linear).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RidgeGreedyConfig {
    pub radius: f64,
    pub activation: RidgeActivation,
    pub m_max: usize,
    pub lambda: f64,
    pub exponent: f64,
    pub inner: RidgeInner,
    pub restarts: usize,
    pub steps: usize,
    pub cover_m: usize,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RidgePenaltyConfig {
    pub b: f64,
    pub b_n: f64,
    pub sigma2: f64,
    pub eta: f64,
    pub delta1: f64,
    pub delta2: f64,
}

/// Opaque model handle.
pub struct RidgeModelHandle(RidgeModel);

/// Opaque dataset handle.
pub struct RidgeDatasetHandle(Dataset);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RidgeStatus {
    match e {
        Error::DimensionMismatch { .. } => RidgeStatus::DimensionMismatch,
        Error::InvalidInput(_) => RidgeStatus::InvalidInput,
        Error::Size(_) => RidgeStatus::Size,
        Error::RegimeInvalid(_) => RidgeStatus::RegimeInvalid,
        Error::Io(_) => RidgeStatus::Io,
        Error::Config { .. } => RidgeStatus::Config,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), RidgeStatus>) -> RidgeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RidgeStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            RidgeStatus::Panic
        }
    }
}

fn fail(e: Error) -> RidgeStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> RidgeStatus {
    set_error("null pointer argument");
    RidgeStatus::NullPointer
}

/// # Safety
/// `p` must be null or point to `len` readable values.
unsafe fn view<'a, T>(p: *const T, len: usize) -> Result<&'a [T], RidgeStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(slice::from_raw_parts(p, len))
}

/// # Safety
/// `p` must be null or valid for a write of `T`.
unsafe fn put<T>(p: *mut T, v: T) -> Result<(), RidgeStatus> {
    if p.is_null() {
        return Err(null());
    }
    p.write(v);
    Ok(())
}

fn activation(a: RidgeActivation) -> Activation {
    match a {
        RidgeActivation::Ramp => Activation::Ramp,
        RidgeActivation::Sine => Activation::Sine,
        RidgeActivation::Tanh => Activation::Tanh,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ridge_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates an empty model on `dim` inputs.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ridge_model_new(dim: usize, out: *mut *mut RidgeModelHandle) -> RidgeStatus {
    guard(|| {
        let h = Box::into_raw(Box::new(RidgeModelHandle(RidgeModel::zero(dim))));
        put(out, h).inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// Appends `beta·sign·φ(θ·(x,1))`; `theta` has `dim + 1` entries and `sign` is `±1`.
///
/// # Safety
/// `model` must come from this library; `theta` must hold `theta_len` values.
#[no_mangle]
pub unsafe extern "C" fn ridge_model_push_unit(
    model: *mut RidgeModelHandle,
    beta: f64,
    act: RidgeActivation,
    theta: *const f64,
    theta_len: usize,
    sign: i32,
) -> RidgeStatus {
    guard(|| {
        let m = model.as_mut().ok_or_else(null)?;
        let t = view(theta, theta_len)?.to_vec();
        let s = if sign < 0 { Sign::Minus } else { Sign::Plus };
        let unit = RidgeUnit::new(activation(act), t, s).map_err(fail)?;
        m.0.push(beta, unit).map_err(fail)
    })
}

/// # Safety
/// `model` must come from this library; `x` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_model_eval(
    model: *const RidgeModelHandle,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> RidgeStatus {
    guard(|| {
        let m = model.as_ref().ok_or_else(null)?;
        let v = m.0.eval(view(x, len)?).map_err(fail)?;
        put(out, v)
    })
}

/// `‖β‖₁` of the model, or NaN for a null handle.
///
/// # Safety
/// `model` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ridge_model_v(model: *const RidgeModelHandle) -> f64 {
    model.as_ref().map_or(f64::NAN, |m| m.0.v())
}

/// Number of ridge terms, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ridge_model_num_terms(model: *const RidgeModelHandle) -> usize {
    model.as_ref().map_or(0, |m| m.0.num_terms())
}

/// # Safety
/// `model` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ridge_model_free(model: *mut RidgeModelHandle) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Wraps a row-major `n×d` design and `n` responses.
///
/// # Safety
/// `x` must hold `n·d` values, `y` must hold `n`, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_dataset_new(
    x: *const f64,
    n: usize,
    d: usize,
    y: *const f64,
    out: *mut *mut RidgeDatasetHandle,
) -> RidgeStatus {
    guard(|| {
        let len = n
            .checked_mul(d)
            .ok_or_else(|| fail(Error::InvalidInput("n·d overflows".into())))?;
        let design = Design::new(n, d, view(x, len)?.to_vec()).map_err(fail)?;
        let data = Dataset::from_xy(design, view(y, n)?.to_vec()).map_err(fail)?;
        let h = Box::into_raw(Box::new(RidgeDatasetHandle(data)));
        put(out, h).inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// # Safety
/// `data` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ridge_dataset_free(data: *mut RidgeDatasetHandle) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Runs the greedy pursuit and returns the final model.
///
/// # Safety
/// `data` must come from this library; `cfg` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ridge_fit_lpgp(
    data: *const RidgeDatasetHandle,
    cfg: *const RidgeGreedyConfig,
    out: *mut *mut RidgeModelHandle,
) -> RidgeStatus {
    guard(|| {
        let data = data.as_ref().ok_or_else(null)?;
        let c = cfg.as_ref().ok_or_else(null)?;
        let penalty = if c.exponent == 1.0 {
            PenaltyFn::Linear { lambda: c.lambda }
        } else {
            PenaltyFn::Power {
                lambda: c.lambda,
                exponent: c.exponent,
            }
        };
        let gcfg = GreedyConfig {
            radius: c.radius,
            activation: activation(c.activation),
            m_max: c.m_max,
            penalty,
            inner: match c.inner {
                RidgeInner::CoverExhaustive => InnerStrategy::CoverExhaustive,
                RidgeInner::ProjectedGradient => InnerStrategy::ProjectedGradient,
                RidgeInner::FrankWolfe => InnerStrategy::FrankWolfe,
            },
            restarts: c.restarts,
            steps: c.steps,
            cover_m: c.cover_m,
            seed: c.seed,
            ..GreedyConfig::default()
        };
        let path = greedy::fit_lpgp(&data.0, &gcfg).map_err(fail)?;
        let model = match path.records.last() {
            Some(r) => r.model.clone(),
            None => RidgeModel::zero(data.0.d()),
        };
        let h = Box::into_raw(Box::new(RidgeModelHandle(model)));
        put(out, h).inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// Number of multisets of size `m` over `2d + 1` symbols.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_cover_count(d: u64, m: u64, out: *mut u64) -> RidgeStatus {
    guard(|| {
        let c = dictionary::binomial(2 * d + m, m)
            .and_then(|c| u64::try_from(c).ok())
            .ok_or_else(|| fail(Error::Size("count does not fit in 64 bits".into())))?;
        put(out, c)
    })
}

fn penalty_config(c: &RidgePenaltyConfig) -> PenaltyConfig {
    PenaltyConfig {
        b: c.b,
        b_n: c.b_n,
        sigma2: c.sigma2,
        eta: c.eta,
        delta1: c.delta1,
        delta2: c.delta2,
        regime: Regime::HighDimNoise,
        ..PenaltyConfig::default()
    }
}

/// # Safety
/// `cfg`, `gamma` and `tau` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ridge_gamma_tau(
    cfg: *const RidgePenaltyConfig,
    gamma: *mut f64,
    tau: *mut f64,
) -> RidgeStatus {
    guard(|| {
        let c = cfg.as_ref().ok_or_else(null)?;
        let (g, t) = penalty::gamma_tau(&penalty_config(c)).map_err(fail)?;
        put(gamma, g)?;
        put(tau, t)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_pen_highdim(
    v_f: f64,
    n: usize,
    d: usize,
    radius: f64,
    gamma: f64,
    b_n: f64,
    t_n: f64,
    out: *mut f64,
) -> RidgeStatus {
    guard(|| put(out, penalty::pen_highdim(v_f, n, d, radius, gamma, b_n, t_n).pen_per_n))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_pen_nonoise(
    v_f: f64,
    n: usize,
    d: usize,
    radius: f64,
    gamma: f64,
    out: *mut f64,
) -> RidgeStatus {
    guard(|| put(out, penalty::pen_nonoise(v_f, n, d, radius, gamma).pen_per_n))
}

/// Returns `REGIME_INVALID` when the moderate-dimension guard fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_pen_moderate(
    v_f: f64,
    n: usize,
    d: usize,
    radius: f64,
    gamma: f64,
    t_n: f64,
    out: *mut f64,
) -> RidgeStatus {
    guard(|| {
        let p = penalty::pen_moderate(v_f, n, d, radius, gamma, t_n).map_err(fail)?;
        put(out, p.pen_per_n)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_pen_mixed(
    v_f: f64,
    n: usize,
    d: usize,
    radius: f64,
    gamma: f64,
    sigma: f64,
    c: f64,
    out: *mut f64,
) -> RidgeStatus {
    guard(|| put(out, penalty::pen_mixed(v_f, n, d, radius, gamma, sigma, c).pen_per_n))
}

/// `sgn(value)·min(|value|, b_n)`.
#[no_mangle]
pub extern "C" fn ridge_truncate(value: f64, b_n: f64) -> f64 {
    penalty::truncate(value, b_n)
}

/// # Safety
/// `y` must hold `n` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ridge_tail_tn(y: *const f64, n: usize, b_n: f64, out: *mut f64) -> RidgeStatus {
    guard(|| put(out, penalty::tail_tn(view(y, n)?, b_n)))
}
