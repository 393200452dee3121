//! C interface to the `pwt` library.
//!
//! Instances and run results are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`PwtStatus`]; on failure, [`pwt_last_error`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pwt::algorithms::{self, Algorithm, InitMode, RunConfig, RunResult};
use pwt::generate::{gen_correlated, gen_uniform, GenParams};
use pwt::theory::optimal_prefix;
use pwt::{Instance, PwtError, Solution};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInstance = 3,
    /// The instance lacks a property the operation requires, such as being
    /// correlated.
    Precondition = 4,
    Io = 5,
    Parse = 6,
    Panic = 7,
}

/// Values accepted by [`pwt_run`] as `algorithm`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwtAlgorithm {
    RlsSwap = 0,
    OnePlusOneEa = 1,
    Gsemo = 2,
    Semo = 3,
    SemoSwap = 4,
}

pub struct PwtInstance {
    inner: Instance,
}

pub struct PwtRunResult {
    inner: RunResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &PwtError) -> PwtStatus {
    match err {
        PwtError::InvalidInstance(_) | PwtError::LengthMismatch { .. } => {
            PwtStatus::InvalidInstance
        }
        PwtError::NotTwoCity { .. }
        | PwtError::NotCorrelated
        | PwtError::Infeasible { .. }
        | PwtError::TooLarge { .. } => PwtStatus::Precondition,
        PwtError::Io { .. } => PwtStatus::Io,
        PwtError::Json(_) | PwtError::Csv(_) => PwtStatus::Parse,
        _ => PwtStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and panics as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (PwtStatus, String)>) -> PwtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PwtStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PwtStatus::Panic
        }
    }
}

fn lib<T>(r: pwt::Result<T>) -> Result<T, (PwtStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PwtStatus, String) {
    (PwtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn instance_ref<'a>(inst: *const PwtInstance) -> Result<&'a Instance, (PwtStatus, String)> {
    inst.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null("instance"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PwtStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        (
            PwtStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn put<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

/// Message describing the last failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pwt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Generates a correlated instance, or a uniform-weight one if `uniform` is
/// set, with the default constants.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn pwt_instance_generate(
    n: usize,
    seed: u64,
    uniform: bool,
    out: *mut *mut PwtInstance,
) -> PwtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = lib(if uniform {
            gen_uniform(&GenParams::uniform(n, seed))
        } else {
            gen_correlated(&GenParams::correlated(n, seed))
        })?;
        out.write(Box::into_raw(Box::new(PwtInstance { inner })));
        Ok(())
    })
}

/// Parses an instance from a NUL-terminated JSON document.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be valid for
/// a pointer write.
#[no_mangle]
pub unsafe extern "C" fn pwt_instance_from_json(
    json: *const c_char,
    out: *mut *mut PwtInstance,
) -> PwtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = lib(Instance::from_json(c_str(json, "json")?))?;
        out.write(Box::into_raw(Box::new(PwtInstance { inner })));
        Ok(())
    })
}

/// Reads an instance from a JSON file.
///
/// # Safety
/// `path` must be NULL or a NUL-terminated string; `out` must be valid for
/// a pointer write.
#[no_mangle]
pub unsafe extern "C" fn pwt_instance_load(
    path: *const c_char,
    out: *mut *mut PwtInstance,
) -> PwtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = lib(Instance::load(c_str(path, "path")?))?;
        out.write(Box::into_raw(Box::new(PwtInstance { inner })));
        Ok(())
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pwt_instance_free(inst: *mut PwtInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of items; 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pwt_instance_n(inst: *const PwtInstance) -> usize {
    inst.as_ref().map_or(0, |h| h.inner.n())
}

/// Knapsack capacity; 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pwt_instance_capacity(inst: *const PwtInstance) -> u64 {
    inst.as_ref().map_or(0, |h| h.inner.capacity())
}

/// Evaluates the packing given as `len` bytes, nonzero meaning packed.
/// Any output pointer may be NULL.
///
/// # Safety
/// `inst` must be a live handle and `bits` must point to `len` readable
/// bytes; outputs must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pwt_evaluate(
    inst: *const PwtInstance,
    bits: *const u8,
    len: usize,
    out_weight: *mut u64,
    out_benefit: *mut f64,
    out_violation: *mut i64,
) -> PwtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        if bits.is_null() && len > 0 {
            return Err(null("bits"));
        }
        let values: Vec<bool> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(bits, len)
                .iter()
                .map(|&b| b != 0)
                .collect()
        };
        let s = lib(Solution::from_bools(inst, &values))?;
        let f = inst.fitness(&s);
        put(out_weight, s.weight());
        put(out_benefit, f.benefit);
        put(out_violation, f.violation);
        Ok(())
    })
}

/// Optimum of a correlated instance: the number of leading items packed and
/// the benefit. Outputs may be NULL.
///
/// # Safety
/// `inst` must be a live handle; outputs must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pwt_optimal_prefix(
    inst: *const PwtInstance,
    out_k: *mut usize,
    out_benefit: *mut f64,
) -> PwtStatus {
    guard(|| {
        let opt = lib(optimal_prefix(instance_ref(inst)?))?;
        put(out_k, opt.k);
        put(out_benefit, opt.optimal_benefit);
        Ok(())
    })
}

/// Runs an algorithm (a [`PwtAlgorithm`] value) for at most
/// `max_evaluations` effective evaluations. Setting `init_zero` starts
/// from the empty packing instead of a random one; setting
/// `stop_at_optimum` ends the run at the optimum of a correlated instance.
///
/// # Safety
/// `inst` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn pwt_run(
    inst: *const PwtInstance,
    algorithm: u32,
    max_evaluations: u64,
    seed: u64,
    init_zero: bool,
    stop_at_optimum: bool,
    out: *mut *mut PwtRunResult,
) -> PwtStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let alg = *Algorithm::ALL.get(algorithm as usize).ok_or_else(|| {
            (
                PwtStatus::InvalidArgument,
                format!("unknown algorithm {algorithm}"),
            )
        })?;
        let init = if init_zero {
            InitMode::Zero
        } else {
            InitMode::UniformRandom
        };
        let mut cfg = RunConfig::new(max_evaluations, seed)
            .with_init(init)
            .with_trace_stride(u64::MAX);
        if stop_at_optimum {
            cfg = cfg.with_target(lib(optimal_prefix(inst))?.optimal_benefit);
        }
        let inner = lib(algorithms::run(alg, inst, &cfg))?;
        out.write(Box::into_raw(Box::new(PwtRunResult { inner })));
        Ok(())
    })
}

/// # Safety
/// `result` must be NULL or a handle from [`pwt_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pwt_result_free(result: *mut PwtRunResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Evaluations spent; 0 for a NULL handle.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pwt_result_evaluations(result: *const PwtRunResult) -> u64 {
    result.as_ref().map_or(0, |r| r.inner.evaluations)
}

/// Benefit of the best packing; NaN for a NULL handle.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pwt_result_best_benefit(result: *const PwtRunResult) -> f64 {
    result
        .as_ref()
        .map_or(f64::NAN, |r| r.inner.best_fitness.benefit)
}

/// Capacity violation `min(C - W, 0)` of the best packing.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pwt_result_best_violation(result: *const PwtRunResult) -> i64 {
    result
        .as_ref()
        .map_or(0, |r| r.inner.best_fitness.violation)
}

/// Whether the run stopped at its target.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pwt_result_hit_target(result: *const PwtRunResult) -> bool {
    result.as_ref().is_some_and(|r| r.inner.hit_target)
}

/// Copies the best packing into `buf` as one byte (0 or 1) per item.
/// `len` must equal the number of items.
///
/// # Safety
/// `result` must be a live handle and `buf` valid for `len` byte writes.
#[no_mangle]
pub unsafe extern "C" fn pwt_result_best_bits(
    result: *const PwtRunResult,
    buf: *mut u8,
    len: usize,
) -> PwtStatus {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        let bits = r.inner.best_solution.bits();
        if len != bits.len() {
            return Err((
                PwtStatus::InvalidArgument,
                format!(
                    "buffer holds {len} bytes, solution has {} items",
                    bits.len()
                ),
            ));
        }
        if buf.is_null() && len > 0 {
            return Err(null("buf"));
        }
        for (i, b) in bits.iter().enumerate() {
            buf.add(i).write(b as u8);
        }
        Ok(())
    })
}
