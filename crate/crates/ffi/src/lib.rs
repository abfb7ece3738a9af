//! C ABI over the interweight toolkit.
//!
//! Objects are opaque handles created by `iw_*_new`/`iw_*_build` functions and
//! released by the matching `iw_*_free`. Every fallible call returns an
//! [`IwStatus`]; on failure a message is available from
//! [`iw_last_error_message`]. Strings returned through `char **` outputs are
//! owned by the caller and must be released with [`iw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use interweight::io::CertificateDocument;
use interweight::krawtchouk::poly_recursive;
use interweight::linalg::format_rational;
use interweight::quotient::{cell_sizes, validate_quotient, QuotientMatrix};
use interweight::recursion::{build_table, DistributionTable, TableKind};
use interweight::screen::{certify, Certificate, CertificateVerdict};
use interweight::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidMatrix = 3,
    LevelTooHigh = 4,
    OutOfRange = 5,
    Internal = 6,
}

/// Table kind selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwTableKind {
    Triangle = 0,
    Interweight = 1,
}

/// A validated quotient matrix.
pub struct IwQuotient {
    inner: QuotientMatrix,
}

/// A computed distribution table.
pub struct IwTable {
    inner: DistributionTable,
}

/// A nonexistence certificate.
pub struct IwCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> IwStatus {
    match e {
        Error::NotSquare { .. }
        | Error::NegativeEntry { .. }
        | Error::RowSum { .. }
        | Error::SupportAsymmetry { .. }
        | Error::Disconnected
        | Error::InconsistentRatios { .. }
        | Error::NonPositiveSize { .. } => IwStatus::InvalidMatrix,
        Error::LevelTooHigh { .. } => IwStatus::LevelTooHigh,
        _ => IwStatus::InvalidArgument,
    }
}

fn fail(status: IwStatus, msg: impl Into<String>) -> IwStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), IwStatus>) -> IwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(IwStatus::Internal, "internal panic"),
    }
}

fn core_err(e: Error) -> IwStatus {
    fail(status_of(&e), e.to_string())
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), IwStatus> {
    let c = CString::new(s).map_err(|_| fail(IwStatus::Internal, "string contains NUL"))?;
    // SAFETY: callers check `out` for null before reaching here.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Reads an m×m row-major matrix from `entries`.
///
/// # Safety
/// `entries` must point to `m * m` readable values.
unsafe fn read_rows(entries: *const i64, m: usize) -> Result<Vec<Vec<i64>>, IwStatus> {
    if entries.is_null() {
        return Err(fail(IwStatus::NullPointer, "entries is null"));
    }
    if m == 0 {
        return Err(fail(IwStatus::InvalidArgument, "m must be positive"));
    }
    let flat = std::slice::from_raw_parts(entries, m * m);
    Ok(flat.chunks(m).map(<[i64]>::to_vec).collect())
}

/// Validates an m×m row-major quotient matrix for the n-cube.
///
/// # Safety
/// `entries` must point to `m * m` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_quotient_new(entries: *const i64, m: usize, n: usize, out: *mut *mut IwQuotient) -> IwStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        let rows = read_rows(entries, m)?;
        let inner = validate_quotient(&rows, n).map_err(core_err)?;
        *out = Box::into_raw(Box::new(IwQuotient { inner }));
        Ok(())
    })
}

/// # Safety
/// `q` must come from [`iw_quotient_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn iw_quotient_free(q: *mut IwQuotient) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of cells.
///
/// # Safety
/// `q` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn iw_quotient_cells(q: *const IwQuotient) -> usize {
    q.as_ref().map_or(0, |q| q.inner.m())
}

/// Size of cell `i` (0-based) as a decimal or `p/q` string.
///
/// # Safety
/// `q` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_quotient_cell_size(q: *const IwQuotient, i: usize, out: *mut *mut c_char) -> IwStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| fail(IwStatus::NullPointer, "quotient is null"))?;
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        let sizes = cell_sizes(&q.inner).map_err(core_err)?;
        let s = sizes.get(i).ok_or_else(|| fail(IwStatus::OutOfRange, format!("cell {i} out of range")))?;
        out_string(format_rational(s), out)
    })
}

/// Builds every level up to `max_level`.
///
/// # Safety
/// `q` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_table_build(q: *const IwQuotient, kind: IwTableKind, max_level: usize, out: *mut *mut IwTable) -> IwStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| fail(IwStatus::NullPointer, "quotient is null"))?;
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        let kind = match kind {
            IwTableKind::Triangle => TableKind::Triangle,
            IwTableKind::Interweight => TableKind::Interweight,
        };
        let inner = build_table(&q.inner, kind, max_level, None).map_err(core_err)?;
        *out = Box::into_raw(Box::new(IwTable { inner }));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`iw_table_build`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn iw_table_free(t: *mut IwTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Highest computed level.
///
/// # Safety
/// `t` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn iw_table_max_level(t: *const IwTable) -> usize {
    t.as_ref().map_or(0, |t| t.inner.max_level())
}

/// Entry `(i, j, k)` (0-based) of `T^{r1,r2,r3}` as a decimal or `p/q` string.
///
/// # Safety
/// `t` must be a live handle; `out` a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn iw_table_entry(
    t: *const IwTable,
    r1: usize,
    r2: usize,
    r3: usize,
    i: usize,
    j: usize,
    k: usize,
    out: *mut *mut c_char,
) -> IwStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| fail(IwStatus::NullPointer, "table is null"))?;
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        let m = t.inner.m();
        if i >= m || j >= m || k >= m {
            return Err(fail(IwStatus::OutOfRange, format!("index ({i},{j},{k}) outside {m} cells")));
        }
        let v = t
            .inner
            .get((r1, r2, r3))
            .ok_or_else(|| fail(IwStatus::OutOfRange, format!("triple ({r1},{r2},{r3}) not computed")))?;
        out_string(format_rational(&v[(i, j, k)]), out)
    })
}

/// Screens an m×m row-major matrix. `max_level < 0` means the full depth `n`.
/// Invalid matrices still produce a certificate.
///
/// # Safety
/// `entries` must point to `m * m` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_certify(entries: *const i64, m: usize, n: usize, max_level: i64, out: *mut *mut IwCertificate) -> IwStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        let rows = read_rows(entries, m)?;
        let level = usize::try_from(max_level).ok();
        let inner = certify(&rows, n, level);
        *out = Box::into_raw(Box::new(IwCertificate { inner }));
        Ok(())
    })
}

/// # Safety
/// `c` must come from [`iw_certify`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn iw_certificate_free(c: *mut IwCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// 1 if the certificate proves nonexistence, 0 for a candidate, -1 for null.
///
/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn iw_certificate_nonexistent(c: *const IwCertificate) -> i32 {
    match c.as_ref() {
        None => -1,
        Some(c) => i32::from(c.inner.verdict == CertificateVerdict::Nonexistent),
    }
}

/// The certificate as a JSON document.
///
/// # Safety
/// `c` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_certificate_json(c: *const IwCertificate, out: *mut *mut c_char) -> IwStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| fail(IwStatus::NullPointer, "certificate is null"))?;
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        out_string(CertificateDocument::from_certificate(&c.inner).to_json(), out)
    })
}

/// Canonical rendering of `P^{r1,r2,r3}(x, y, z)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iw_poly_render(r1: i64, r2: i64, r3: i64, out: *mut *mut c_char) -> IwStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(IwStatus::NullPointer, "out is null"));
        }
        let p = poly_recursive(r1, r2, r3).map_err(core_err)?;
        out_string(p.render(), out)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn iw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Free with [`iw_string_free`].
#[no_mangle]
pub extern "C" fn iw_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(msg) => CString::new(msg.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn iw_status_name(status: IwStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        IwStatus::Ok => b"ok\0",
        IwStatus::NullPointer => b"null pointer\0",
        IwStatus::InvalidArgument => b"invalid argument\0",
        IwStatus::InvalidMatrix => b"invalid quotient matrix\0",
        IwStatus::LevelTooHigh => b"level exceeds cube dimension\0",
        IwStatus::OutOfRange => b"index out of range\0",
        IwStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}
