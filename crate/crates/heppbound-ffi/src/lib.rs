//! C ABI over the heppbound library. Matroids are opaque handles; exact
//! rationals cross the boundary as `p/q` strings; every function reports an
//! `HbStatus` and writes results through out-parameters. The most recent
//! error message is kept per thread and can be fetched with
//! [`hb_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use heppbound::bounds::FlagKind;
use heppbound::engine;
use heppbound::invariants::{self, CrapoMethod, DerksenMethod};
use heppbound::{EdgeSubset, HeppValue, IndexVector, Matroid, Rational};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ComputeError = 4,
    Pole = 5,
    Panic = 6,
}

/// Opaque matroid handle.
pub struct HbMatroid {
    inner: Matroid,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', "?");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn hb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn guard<F: FnOnce() -> HbStatus>(f: F) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            HbStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HbStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(HbStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        HbStatus::InvalidUtf8
    })
}

fn give_string(out: *mut *mut c_char, value: String) -> HbStatus {
    if out.is_null() {
        set_error("null output pointer");
        return HbStatus::NullArgument;
    }
    let c = CString::new(value.replace('\0', "?")).unwrap();
    unsafe { *out = c.into_raw() };
    HbStatus::Ok
}

fn give_matroid(out: *mut *mut HbMatroid, m: Matroid) -> HbStatus {
    if out.is_null() {
        set_error("null output pointer");
        return HbStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(HbMatroid { inner: m })) };
    HbStatus::Ok
}

unsafe fn deref<'a>(handle: *const HbMatroid) -> Result<&'a Matroid, HbStatus> {
    if handle.is_null() {
        set_error("null matroid handle");
        return Err(HbStatus::NullArgument);
    }
    Ok(&(*handle).inner)
}

/// Parse a graph (`v`/`e` lines), basis list (`n`/`b`) or GF(2) matrix
/// (`m` plus 0/1 rows) into a matroid handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_matroid_parse(
    text: *const c_char,
    out: *mut *mut HbMatroid,
) -> HbStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match heppbound::io::parse_object(text) {
            Ok(object) => give_matroid(out, object.matroid()),
            Err(e) => {
                set_error(&e.to_string());
                HbStatus::ParseError
            }
        }
    })
}

/// Uniform matroid of size `n` and rank `r`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_matroid_uniform(n: u32, r: u32, out: *mut *mut HbMatroid) -> HbStatus {
    guard(|| {
        if r > n || n > 64 {
            set_error("uniform parameters out of range");
            return HbStatus::ParseError;
        }
        give_matroid(out, Matroid::uniform(n as usize, r as usize))
    })
}

/// Release a matroid handle.
///
/// # Safety
/// `handle` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hb_matroid_free(handle: *mut HbMatroid) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `ptr` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hb_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Ground-set size.
///
/// # Safety
/// `handle` must be a live matroid handle.
#[no_mangle]
pub unsafe extern "C" fn hb_matroid_size(handle: *const HbMatroid, out: *mut u32) -> HbStatus {
    guard(|| {
        let m = match deref(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return HbStatus::NullArgument;
        }
        *out = m.size() as u32;
        HbStatus::Ok
    })
}

/// Rank of the subset given as a bitmask over edge indices.
///
/// # Safety
/// `handle` must be a live matroid handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_matroid_rank(
    handle: *const HbMatroid,
    subset: u64,
    out: *mut u32,
) -> HbStatus {
    guard(|| {
        let m = match deref(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return HbStatus::NullArgument;
        }
        if subset & !m.ground().0 != 0 {
            set_error("subset outside the ground set");
            return HbStatus::ParseError;
        }
        *out = m.rank(EdgeSubset(subset));
        HbStatus::Ok
    })
}

fn hepp_with_indices(
    m: &Matroid,
    indices: Option<&str>,
    position: bool,
) -> Result<HeppValue, HbStatus> {
    let iv = match indices {
        None => IndexVector::unit(m),
        Some(text) => {
            let values: Result<Vec<Rational>, _> =
                text.split(',').map(|t| t.trim().parse()).collect();
            match values {
                Ok(values) => IndexVector::new(m, values),
                Err(e) => {
                    set_error(&e.to_string());
                    return Err(HbStatus::ParseError);
                }
            }
        }
    };
    let iv = iv.map_err(|e| {
        set_error(&e.to_string());
        HbStatus::ComputeError
    })?;
    let value = if position {
        engine::hepp_position(m, &iv, engine::Algorithm::FlagRecursion)
    } else {
        engine::hepp_auto(m, &iv)
    };
    value.map_err(|e| {
        set_error(&e.to_string());
        HbStatus::ComputeError
    })
}

unsafe fn hepp_impl(
    handle: *const HbMatroid,
    indices: *const c_char,
    position: bool,
    out: *mut *mut c_char,
) -> HbStatus {
    let m = match deref(handle) {
        Ok(m) => m,
        Err(s) => return s,
    };
    let indices = if indices.is_null() {
        None
    } else {
        match read_str(indices) {
            Ok(t) => Some(t),
            Err(s) => return s,
        }
    };
    match hepp_with_indices(m, indices, position) {
        Ok(HeppValue::Finite(q)) => give_string(out, q.to_string()),
        Ok(HeppValue::Pole(subset)) => {
            set_error(&format!("pole at subset {subset:?}"));
            HbStatus::Pole
        }
        Err(status) => status,
    }
}

/// Hepp bound as an exact rational string. `indices` may be NULL for unit
/// indices, or a comma-separated list of rationals.
///
/// # Safety
/// `handle` must be live; `out` must be valid; `indices` NULL or a string.
#[no_mangle]
pub unsafe extern "C" fn hb_hepp(
    handle: *const HbMatroid,
    indices: *const c_char,
    out: *mut *mut c_char,
) -> HbStatus {
    guard(|| hepp_impl(handle, indices, false, out))
}

/// Position-space Hepp bound as an exact rational string.
///
/// # Safety
/// As for [`hb_hepp`].
#[no_mangle]
pub unsafe extern "C" fn hb_hepp_position(
    handle: *const HbMatroid,
    indices: *const c_char,
    out: *mut *mut c_char,
) -> HbStatus {
    guard(|| hepp_impl(handle, indices, true, out))
}

/// Improved rational bound from bridgeless flags, as a rational string.
///
/// # Safety
/// `handle` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_hepp_one(handle: *const HbMatroid, out: *mut *mut c_char) -> HbStatus {
    guard(|| {
        let m = match deref(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        match heppbound::bounds::hepp_one(m, FlagKind::Bridgeless) {
            Ok(q) => give_string(out, q.to_string()),
            Err(e) => {
                set_error(&e.to_string());
                HbStatus::ComputeError
            }
        }
    })
}

/// Crapo beta invariant.
///
/// # Safety
/// `handle` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_crapo(handle: *const HbMatroid, out: *mut i64) -> HbStatus {
    guard(|| {
        let m = match deref(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return HbStatus::NullArgument;
        }
        match invariants::crapo(m, CrapoMethod::SubsetSum) {
            Ok(beta) => {
                *out = beta;
                HbStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                HbStatus::ComputeError
            }
        }
    })
}

/// Derksen invariant as a JSON array of `{"word", "mult"}` objects.
///
/// # Safety
/// `handle` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_derksen_json(
    handle: *const HbMatroid,
    out: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let m = match deref(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        let method = if m.size() <= 12 {
            DerksenMethod::Direct
        } else {
            DerksenMethod::Bridgeless
        };
        match invariants::derksen(m, method) {
            Ok(ws) => {
                let rows: Vec<serde_json::Value> = ws
                    .iter()
                    .map(|(w, mult)| {
                        serde_json::json!({"word": w.to_string(), "mult": mult.to_string()})
                    })
                    .collect();
                give_string(out, serde_json::to_string(&rows).unwrap())
            }
            Err(e) => {
                set_error(&e.to_string());
                HbStatus::ComputeError
            }
        }
    })
}
