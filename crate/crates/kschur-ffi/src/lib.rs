//! C ABI over the kschur library.
//!
//! Conventions: every fallible entry point returns a [`KsStatus`]; results
//! travel through out-parameters. Strings returned as `char *` are owned by
//! the caller and must be released with [`ks_string_free`]. The matrix
//! handle is opaque and released with [`ks_kostka_matrix_free`]. A
//! human-readable message for the most recent failure on the current thread
//! is available from [`ks_last_error`].

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use kschur::abc::{abc_enumerate, stats};
use kschur::charge::charge_word;
use kschur::cores::{bounded_from_core, core_from_bounded, Core};
use kschur::error::Error;
use kschur::partition::Partition;
use kschur::symfunc::{kostka_matrix_k, kschur_t, Basis, KostkaMatrixK};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsStatus {
    /// Success.
    Ok = 0,
    /// Malformed input (bad partition, bound violation, bad weight, ...).
    InvalidInput = 1,
    /// An internal anomaly: the library detected a contradiction with its
    /// combinatorial model.
    Anomaly = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// The caller-provided buffer is too small.
    BufferTooSmall = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let stored = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn status_of(err: &Error) -> KsStatus {
    if err.is_anomaly() {
        KsStatus::Anomaly
    } else {
        KsStatus::InvalidInput
    }
}

fn fail(err: Error) -> KsStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guard(body: impl FnOnce() -> KsStatus) -> KsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic caught at the FFI boundary");
            KsStatus::Internal
        }
    }
}

/// # Safety
/// `ptr` and `len` must describe a valid readable array (or `len == 0`).
unsafe fn read_u32_slice<'a>(ptr: *const u32, len: usize) -> Option<&'a [u32]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(unsafe { slice::from_raw_parts(ptr, len) })
    }
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Library version as a caller-owned string.
#[no_mangle]
pub extern "C" fn ks_version() -> *mut c_char {
    to_c_string(env!("CARGO_PKG_VERSION").to_string())
}

/// Releases a string returned by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message of the most recent failure on this thread, as a caller-owned
/// string; null when no failure has been recorded.
#[no_mangle]
pub extern "C" fn ks_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|msg| to_c_string(msg.to_string_lossy().into_owned()))
            .unwrap_or(ptr::null_mut())
    })
}

/// Charge of a word of partition weight.
///
/// # Safety
/// `letters` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_charge_word(
    letters: *const u32,
    len: usize,
    out: *mut u64,
) -> KsStatus {
    guard(|| {
        let Some(word) = (unsafe { read_u32_slice(letters, len) }) else {
            set_error("letters pointer is null");
            return KsStatus::NullPointer;
        };
        if out.is_null() {
            set_error("out pointer is null");
            return KsStatus::NullPointer;
        }
        match charge_word(word) {
            Ok(value) => {
                unsafe { *out = value };
                KsStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

unsafe fn write_parts(parts: &[u32], out: *mut u32, cap: usize, out_len: *mut usize) -> KsStatus {
    if out_len.is_null() {
        set_error("out_len pointer is null");
        return KsStatus::NullPointer;
    }
    unsafe { *out_len = parts.len() };
    if parts.len() > cap {
        set_error(format!("buffer holds {cap}, need {}", parts.len()));
        return KsStatus::BufferTooSmall;
    }
    if !parts.is_empty() {
        if out.is_null() {
            set_error("out pointer is null");
            return KsStatus::NullPointer;
        }
        unsafe { ptr::copy_nonoverlapping(parts.as_ptr(), out, parts.len()) };
    }
    KsStatus::Ok
}

/// Maps a k-bounded partition to its (k+1)-core. `out_len` always receives
/// the required length; parts are written when `cap` suffices.
///
/// # Safety
/// Pointer arguments must be valid as described for [`ks_charge_word`].
#[no_mangle]
pub unsafe extern "C" fn ks_core_from_bounded(
    k: u32,
    parts: *const u32,
    len: usize,
    out: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> KsStatus {
    guard(|| {
        let Some(parts) = (unsafe { read_u32_slice(parts, len) }) else {
            set_error("parts pointer is null");
            return KsStatus::NullPointer;
        };
        let bounded = match Partition::new(parts.to_vec()) {
            Ok(q) => q,
            Err(err) => return fail(err),
        };
        match core_from_bounded(&bounded, k) {
            Ok(core) => unsafe { write_parts(core.shape().parts(), out, cap, out_len) },
            Err(err) => fail(err),
        }
    })
}

/// Maps a (k+1)-core to its k-bounded partition.
///
/// # Safety
/// Pointer arguments must be valid as described for [`ks_charge_word`].
#[no_mangle]
pub unsafe extern "C" fn ks_bounded_from_core(
    k: u32,
    parts: *const u32,
    len: usize,
    out: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> KsStatus {
    guard(|| {
        let Some(parts) = (unsafe { read_u32_slice(parts, len) }) else {
            set_error("parts pointer is null");
            return KsStatus::NullPointer;
        };
        let shape = match Partition::new(parts.to_vec()) {
            Ok(q) => q,
            Err(err) => return fail(err),
        };
        let core = match Core::new(shape, k + 1) {
            Ok(core) => core,
            Err(err) => return fail(err),
        };
        unsafe { write_parts(bounded_from_core(&core).parts(), out, cap, out_len) }
    })
}

/// Opaque handle to a k-Kostka matrix.
pub struct KsKostkaMatrix {
    inner: KostkaMatrixK,
}

/// Builds the k-Kostka matrix for the given degree.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ks_kostka_matrix_new(
    k: u32,
    degree: u32,
    out: *mut *mut KsKostkaMatrix,
) -> KsStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return KsStatus::NullPointer;
        }
        match kostka_matrix_k(k, degree) {
            Ok(inner) => {
                let handle = Box::new(KsKostkaMatrix { inner });
                unsafe { *out = Box::into_raw(handle) };
                KsStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Releases a matrix handle. A null pointer is a no-op.
///
/// # Safety
/// `matrix` must come from [`ks_kostka_matrix_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ks_kostka_matrix_free(matrix: *mut KsKostkaMatrix) {
    if !matrix.is_null() {
        drop(unsafe { Box::from_raw(matrix) });
    }
}

/// Dimension of the matrix (number of indexing partitions); 0 on null.
///
/// # Safety
/// `matrix` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ks_kostka_matrix_dim(matrix: *const KsKostkaMatrix) -> usize {
    if matrix.is_null() {
        return 0;
    }
    unsafe { &*matrix }.inner.index().len()
}

/// Serializes the whole matrix (k, degree, index, entries) as JSON.
/// Returns null on a null handle.
///
/// # Safety
/// `matrix` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ks_kostka_matrix_to_json(matrix: *const KsKostkaMatrix) -> *mut c_char {
    if matrix.is_null() {
        return ptr::null_mut();
    }
    let km = &unsafe { &*matrix }.inner;
    let value = serde_json::json!({
        "k": km.k(),
        "degree": km.n(),
        "index": km.index(),
        "matrix": km.matrix().rows(),
    });
    to_c_string(value.to_string())
}

fn parse_basis(name: &str, k: u32) -> Result<Basis, Error> {
    match name {
        "hl" | "hall_littlewood" => Ok(Basis::HallLittlewood),
        "schur" => Ok(Basis::Schur),
        "monomial" | "m" => Ok(Basis::Monomial),
        "homogeneous" | "h" => Ok(Basis::Homogeneous),
        "kschur_t" => Ok(Basis::KschurT(k)),
        other => Err(Error::InputError(format!("unknown basis {other:?}"))),
    }
}

/// Expands the k-Schur function with parameter t indexed by `lambda` in the
/// named basis ("hl", "schur", "monomial", "homogeneous") and returns the
/// expansion as JSON through `out_json`.
///
/// # Safety
/// `lambda` must point to `len` readable values; `basis` must be a valid
/// NUL-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_kschur_expand_json(
    k: u32,
    lambda: *const u32,
    len: usize,
    basis: *const c_char,
    out_json: *mut *mut c_char,
) -> KsStatus {
    guard(|| {
        let Some(parts) = (unsafe { read_u32_slice(lambda, len) }) else {
            set_error("lambda pointer is null");
            return KsStatus::NullPointer;
        };
        if basis.is_null() || out_json.is_null() {
            set_error("basis or out pointer is null");
            return KsStatus::NullPointer;
        }
        let basis = match unsafe { CStr::from_ptr(basis) }.to_str() {
            Ok(name) => match parse_basis(name, k) {
                Ok(b) => b,
                Err(err) => return fail(err),
            },
            Err(_) => {
                set_error("basis is not valid UTF-8");
                return KsStatus::InvalidInput;
            }
        };
        let shape = match Partition::new(parts.to_vec()) {
            Ok(q) => q,
            Err(err) => return fail(err),
        };
        match kschur_t(&shape, k, basis) {
            Ok(f) => {
                unsafe { *out_json = to_c_string(serde_json::to_string(&f).unwrap()) };
                KsStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Enumerates the counter-tableaux of the given k-weight and returns them
/// as a JSON array; with `with_stats` each element is an object carrying
/// the tableau and its statistics.
///
/// # Safety
/// `weight` must point to `len` readable values; `out_json` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ks_abc_enumerate_json(
    k: u32,
    weight: *const u32,
    len: usize,
    with_stats: bool,
    out_json: *mut *mut c_char,
) -> KsStatus {
    guard(|| {
        let Some(weight) = (unsafe { read_u32_slice(weight, len) }) else {
            set_error("weight pointer is null");
            return KsStatus::NullPointer;
        };
        if out_json.is_null() {
            set_error("out pointer is null");
            return KsStatus::NullPointer;
        }
        let tableaux = match abc_enumerate(k, weight, None) {
            Ok(t) => t,
            Err(err) => return fail(err),
        };
        let mut items = Vec::with_capacity(tableaux.len());
        for abc in &tableaux {
            if with_stats {
                match stats(abc) {
                    Ok(st) => items.push(serde_json::json!({"abc": abc, "stats": st})),
                    Err(err) => return fail(err),
                }
            } else {
                items.push(serde_json::to_value(abc).unwrap());
            }
        }
        unsafe { *out_json = to_c_string(serde_json::Value::Array(items).to_string()) };
        KsStatus::Ok
    })
}
