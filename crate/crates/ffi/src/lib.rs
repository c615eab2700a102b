//! C interface to `trisym`.
//!
//! Objects are opaque handles created by `*_new` and released by the
//! matching `*_free`. Every fallible call returns a [`TrisymStatus`]; on
//! failure [`trisym_last_error`] describes the problem for the calling thread.
//! Strings returned through `char **` are owned by the caller and must be
//! released with [`trisym_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trisym::curvature::{Curvature, CurvatureReport, MetricSpec, PinchConfig};
use trisym::rational::q;
use trisym::rootsys::RootSystem;
use trisym::threesym::ThreeSymSpace;
use trisym::{presets, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrisymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidType = 3,
    InvalidArgument = 4,
    MarkConstraint = 5,
    UnknownSpace = 6,
    Internal = 7,
    Panic = 8,
}

impl From<&Error> for TrisymStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidType(_) => TrisymStatus::InvalidType,
            Error::InvalidArgument(_) | Error::IrrationalSum => TrisymStatus::InvalidArgument,
            Error::MarkConstraint(_) => TrisymStatus::MarkConstraint,
            Error::UnknownSpace { .. } => TrisymStatus::UnknownSpace,
            Error::Internal(_) => TrisymStatus::Internal,
        }
    }
}

/// Optimizer settings for [`trisym_pinch`]. The metric is `-(num/den) B`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TrisymPinchConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub scale_num: i64,
    pub scale_den: i64,
}

pub struct TrisymRootSystem(RootSystem);

pub struct TrisymSpace {
    name: String,
    space: ThreeSymSpace,
}

pub struct TrisymCurvatureReport(CurvatureReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, mapping errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), (TrisymStatus, String)>) -> TrisymStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrisymStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            TrisymStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TrisymStatus, String) {
    ((&e).into(), e.to_string())
}

fn null(what: &str) -> (TrisymStatus, String) {
    (TrisymStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TrisymStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TrisymStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (TrisymStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (TrisymStatus, String)> {
    let c = CString::new(s).map_err(|_| (TrisymStatus::Internal, "string has interior nul".to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (TrisymStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn trisym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn trisym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `ty` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_root_system_new(ty: *const c_char, out: *mut *mut TrisymRootSystem) -> TrisymStatus {
    guard(|| {
        let ty = read_str(ty, "type")?.parse().map_err(lib)?;
        let rs = RootSystem::new(ty).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(TrisymRootSystem(rs))))
    })
}

/// # Safety
/// `rs` must be null or a handle from [`trisym_root_system_new`].
#[no_mangle]
pub unsafe extern "C" fn trisym_root_system_free(rs: *mut TrisymRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// # Safety
/// `rs` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_root_system_num_positive(rs: *const TrisymRootSystem, out: *mut usize) -> TrisymStatus {
    guard(|| write_out(out, borrow(rs, "root system")?.0.num_positive()))
}

/// # Safety
/// `rs` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_root_system_to_json(rs: *const TrisymRootSystem, out: *mut *mut c_char) -> TrisymStatus {
    guard(|| {
        let j = serde_json::to_string(&borrow(rs, "root system")?.0.to_json()).expect("serializable");
        write_string(out, j)
    })
}

/// Builds a named space (`cp3-sp`, `s6`, `f6`, `cp2-su`, or `TYPE:KIND:i[:j]`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_space_new(name: *const c_char, out: *mut *mut TrisymSpace) -> TrisymStatus {
    guard(|| {
        let name = read_str(name, "space name")?;
        let space = presets::build(name).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(TrisymSpace { name: name.to_string(), space })))
    })
}

/// # Safety
/// `s` must be null or a handle from [`trisym_space_new`].
#[no_mangle]
pub unsafe extern "C" fn trisym_space_free(s: *mut TrisymSpace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_space_dim_m(s: *const TrisymSpace, out: *mut usize) -> TrisymStatus {
    guard(|| write_out(out, borrow(s, "space")?.space.dim_m()))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_space_to_json(s: *const TrisymSpace, out: *mut *mut c_char) -> TrisymStatus {
    guard(|| {
        let s = borrow(s, "space")?;
        let j = serde_json::to_string(&s.space.to_json(&s.name)).expect("serializable");
        write_string(out, j)
    })
}

/// Defaults: 64 starts, seed 42, 5000 iterations, scale 1/2.
#[no_mangle]
pub extern "C" fn trisym_pinch_config_default() -> TrisymPinchConfig {
    let d = PinchConfig::default();
    TrisymPinchConfig { starts: d.starts, seed: d.seed, max_iter: d.max_iter, scale_num: 1, scale_den: 2 }
}

/// Full curvature report. `config` may be null for the defaults.
///
/// # Safety
/// `s` must be a live handle, `config` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_pinch(
    s: *const TrisymSpace,
    config: *const TrisymPinchConfig,
    out: *mut *mut TrisymCurvatureReport,
) -> TrisymStatus {
    guard(|| {
        let s = borrow(s, "space")?;
        let cfg = config.as_ref().copied().unwrap_or_else(|| trisym_pinch_config_default());
        if cfg.scale_den == 0 {
            return Err((TrisymStatus::InvalidArgument, "scale denominator is zero".into()));
        }
        let metric = MetricSpec::new(q(cfg.scale_num, cfg.scale_den)).map_err(lib)?;
        let model = Curvature::new(&s.space, metric).map_err(lib)?.with_name(s.name.as_str());
        let pc = PinchConfig { starts: cfg.starts, seed: cfg.seed, max_iter: cfg.max_iter, ..Default::default() };
        let report = CurvatureReport::run(&model, &pc).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(TrisymCurvatureReport(report))))
    })
}

/// # Safety
/// `r` must be null or a handle from [`trisym_pinch`].
#[no_mangle]
pub unsafe extern "C" fn trisym_report_free(r: *mut TrisymCurvatureReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_report_kmin(r: *const TrisymCurvatureReport, out: *mut f64) -> TrisymStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.kmin()))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_report_kmax(r: *const TrisymCurvatureReport, out: *mut f64) -> TrisymStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.kmax()))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_report_delta(r: *const TrisymCurvatureReport, out: *mut f64) -> TrisymStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.delta()))
}

/// Number of optimizer starts that converged.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_report_converged_starts(r: *const TrisymCurvatureReport, out: *mut usize) -> TrisymStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.converged_starts()))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trisym_report_to_json(r: *const TrisymCurvatureReport, out: *mut *mut c_char) -> TrisymStatus {
    guard(|| write_string(out, borrow(r, "report")?.0.to_json()))
}
