//! C ABI for `lie-core`.
//!
//! Elements live behind opaque `LieElement` handles. Every call returns a
//! [`LieStatus`]; on failure the message is available from
//! [`lie_last_error`] until the next failing call on the same thread.
//! Strings handed out by this library are freed with [`lie_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lie_core::error::Error;
use lie_core::exactmath::ExactMatrix;
use lie_core::group_algebra::GroupAlgebraElement;
use lie_core::lie_generators::{eta, kappa, nu};
use lie_core::limits::Bounds;
use lie_core::sdet::{sdet, MainTable};
use lie_core::verify;
use lie_core::wedge_rep::{grp_matrix, is_lie, lie_space};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DegreeMismatch = 4,
    ResourceLimit = 5,
    Panic = 6,
}

/// Opaque group algebra element with rational coefficients.
pub struct LieElement(GroupAlgebraElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> LieStatus {
    match err {
        Error::Parse(_) => LieStatus::Parse,
        Error::DegreeMismatch(..) => LieStatus::DegreeMismatch,
        Error::ResourceLimit { .. } => LieStatus::ResourceLimit,
        _ => LieStatus::InvalidArgument,
    }
}

fn guard<F>(f: F) -> LieStatus
where
    F: FnOnce() -> Result<(), (LieStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LieStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LieStatus::Panic
        }
    }
}

trait Lift<T> {
    fn lift(self) -> Result<T, (LieStatus, String)>;
}

impl<T> Lift<T> for lie_core::error::Result<T> {
    fn lift(self) -> Result<T, (LieStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (LieStatus, String) {
    (LieStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (LieStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (LieStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn elem_arg<'a>(p: *const LieElement, what: &str) -> Result<&'a GroupAlgebraElement, (LieStatus, String)> {
    p.as_ref().map(|e| &e.0).ok_or_else(|| null(what))
}

unsafe fn put_elem(out: *mut *mut LieElement, x: GroupAlgebraElement) -> Result<(), (LieStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(LieElement(x)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (LieStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .map_err(|_| (LieStatus::InvalidArgument, "interior NUL".into()))?
        .into_raw();
    Ok(())
}

/// Message of the last failing call on this thread, or NULL. Owned by the
/// library; do not free.
#[no_mangle]
pub extern "C" fn lie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `x` must be NULL or a handle returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lie_element_free(x: *mut LieElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// `κ_ij` in `Q[S_n]`. Indices are 1-based.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_kappa(n: usize, i: usize, j: usize, out: *mut *mut LieElement) -> LieStatus {
    guard(|| put_elem(out, kappa(n, i, j).lift()?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_nu(n: usize, i: usize, j: usize, k: usize, out: *mut *mut LieElement) -> LieStatus {
    guard(|| put_elem(out, nu(n, i, j, k).lift()?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_eta(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    out: *mut *mut LieElement,
) -> LieStatus {
    guard(|| put_elem(out, eta(n, i, j, k, l).lift()?))
}

/// Parses `[{"cycles": [[1, 2]], "coefficient": "-1/2"}, ...]`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_from_json(n: usize, json: *const c_char, out: *mut *mut LieElement) -> LieStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| (LieStatus::Parse, e.to_string()))?;
        put_elem(out, GroupAlgebraElement::from_json(n, &v).lift()?)
    })
}

/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_bracket(
    a: *const LieElement,
    b: *const LieElement,
    out: *mut *mut LieElement,
) -> LieStatus {
    guard(|| {
        let x = elem_arg(a, "a")?.bracket(elem_arg(b, "b")?).lift()?;
        put_elem(out, x)
    })
}

/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_multiply(
    a: *const LieElement,
    b: *const LieElement,
    out: *mut *mut LieElement,
) -> LieStatus {
    guard(|| {
        let x = elem_arg(a, "a")?.multiply(elem_arg(b, "b")?).lift()?;
        put_elem(out, x)
    })
}

/// # Safety
/// `x` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_is_lie(x: *const LieElement, out: *mut bool) -> LieStatus {
    guard(|| {
        let x = elem_arg(x, "x")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = is_lie(x);
        Ok(())
    })
}

/// Cycle notation, e.g. `(1 2) - (2 3)`.
///
/// # Safety
/// `x` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_to_string(x: *const LieElement, out: *mut *mut c_char) -> LieStatus {
    guard(|| put_string(out, elem_arg(x, "x")?.to_string()))
}

/// # Safety
/// `x` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_to_json(x: *const LieElement, out: *mut *mut c_char) -> LieStatus {
    guard(|| put_string(out, elem_arg(x, "x")?.to_json().to_string()))
}

/// Characteristic polynomial of the action on `Q^n`, as a JSON array of
/// rational strings `c_0, ..., c_n`.
///
/// # Safety
/// `x` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_element_charpoly(x: *const LieElement, out: *mut *mut c_char) -> LieStatus {
    guard(|| {
        let c = grp_matrix(elem_arg(x, "x")?, 1).lift()?.charpoly().lift()?;
        let v: Vec<String> = c.iter().map(|r| r.to_string()).collect();
        put_string(out, serde_json::to_string(&v).expect("strings serialize"))
    })
}

/// Dimension of the space of Lie elements in `Q[S_n]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_space_dim(n: usize, out: *mut usize) -> LieStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lie_space(n).lift()?.dim();
        Ok(())
    })
}

/// Shuffle determinant of two square matrices written as `"1 2; 3/4 -1"`.
/// The result is a rational string.
///
/// # Safety
/// `a`, `b` must be NUL-terminated strings; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_sdet(a: *const c_char, b: *const c_char, out: *mut *mut c_char) -> LieStatus {
    guard(|| {
        let a = ExactMatrix::parse(str_arg(a, "a")?).lift()?;
        let b = ExactMatrix::parse(str_arg(b, "b")?).lift()?;
        put_string(out, sdet(&a, &b).lift()?.to_string())
    })
}

/// Runs one seeded check and writes the report as JSON. `theorem` is one of
/// `mtt`, `pft`, `main`, `iota`. A failing check still returns `LIE_STATUS_OK`;
/// inspect the `status` field of the report.
///
/// # Safety
/// `theorem` must be a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lie_verify(theorem: *const c_char, n: usize, seed: u64, out: *mut *mut c_char) -> LieStatus {
    guard(|| {
        let bounds = Bounds::default();
        let report = match str_arg(theorem, "theorem")? {
            "mtt" => verify::verify_mtt_seeded(n, seed, &bounds),
            "pft" => verify::verify_pft_seeded(n, seed, &bounds),
            "main" if n > bounds.main_n => Err(Error::ResourceLimit {
                what: "main theorem degree",
                n,
                max: bounds.main_n,
            }),
            "main" => MainTable::build(n).and_then(|t| verify::verify_main_seeded(&t, seed, &bounds)),
            "iota" => verify::verify_iota(n, 1, seed, &bounds),
            other => return Err((LieStatus::InvalidArgument, format!("unknown theorem `{other}`"))),
        }
        .lift()?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}
