//! C ABI over `matgroup-interp`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns an
//! [`MgiStatus`]; on failure the message is kept in a thread-local slot
//! readable through [`mgi_last_error`]. Strings returned by the library are
//! owned by the caller and released with [`mgi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matgroup_interp::interp::{Host, InterpretedRing};
use matgroup_interp::report::{Format, Report};
use matgroup_interp::suites::{self, Suite, SuiteOptions};
use matgroup_interp::word::{decompose_gl, decompose_sl};
use matgroup_interp::{Error, Matrix, RingSpec};

/// Result codes. Codes from 10 upward mirror the library error variants
/// one to one.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    NonUnit = 10,
    InfiniteRing = 11,
    BadIndex = 12,
    NotInvertible = 13,
    SpecMismatch = 14,
    TooLarge = 15,
    NotField = 16,
    DetNotOne = 17,
    ScheduleTooShort = 18,
    NotUnitriangular = 19,
    NotInCarrier = 20,
    WitnessCheckFailed = 21,
    BadIndices = 22,
    CharTwo = 23,
    NotNormal = 24,
    NotCoboundary = 25,
    InvalidCocycle = 26,
    BadSplit = 27,
    NotTrivialCocycle = 28,
    InconsistentContext = 29,
    DiagonalFactor = 30,
    Parse = 31,
}

impl From<&Error> for MgiStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonUnit(_) => MgiStatus::NonUnit,
            Error::InfiniteRing(_) => MgiStatus::InfiniteRing,
            Error::BadIndex { .. } => MgiStatus::BadIndex,
            Error::NotInvertible => MgiStatus::NotInvertible,
            Error::SpecMismatch(_) => MgiStatus::SpecMismatch,
            Error::TooLarge { .. } => MgiStatus::TooLarge,
            Error::NotField(_) => MgiStatus::NotField,
            Error::DetNotOne(_) => MgiStatus::DetNotOne,
            Error::ScheduleTooShort { .. } => MgiStatus::ScheduleTooShort,
            Error::NotUnitriangular => MgiStatus::NotUnitriangular,
            Error::NotInCarrier { .. } => MgiStatus::NotInCarrier,
            Error::WitnessCheckFailed(_) => MgiStatus::WitnessCheckFailed,
            Error::BadIndices(_) => MgiStatus::BadIndices,
            Error::CharTwo => MgiStatus::CharTwo,
            Error::NotNormal => MgiStatus::NotNormal,
            Error::NotCoboundary => MgiStatus::NotCoboundary,
            Error::InvalidCocycle(_) => MgiStatus::InvalidCocycle,
            Error::BadSplit(_) => MgiStatus::BadSplit,
            Error::NotTrivialCocycle => MgiStatus::NotTrivialCocycle,
            Error::InconsistentContext(_) => MgiStatus::InconsistentContext,
            Error::DiagonalFactor => MgiStatus::DiagonalFactor,
            Error::Parse(_) => MgiStatus::Parse,
        }
    }
}

/// Report renderings for [`mgi_report_render`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgiFormat {
    Json = 0,
    Csv = 1,
    Markdown = 2,
}

/// A coefficient ring such as `gf:7`, `zmod:6` or `q`.
pub struct MgiRing(RingSpec);

/// A square matrix over a ring.
pub struct MgiMatrix(Matrix);

/// A verification report.
pub struct MgiReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Fail {
    Status(MgiStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, records any failure in the thread-local slot and converts it to
/// a status code. Panics are caught.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MgiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MgiStatus::Ok,
        Ok(Err(Fail::Status(s, m))) => {
            set_error(m);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(format!("{}: {e}", e.name()));
            MgiStatus::from(&e)
        }
        Err(_) => {
            set_error("panic inside matgroup-interp".into());
            MgiStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(MgiStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(MgiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| Fail::Status(MgiStatus::Parse, "output contains a nul byte".into()))?
        .into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next `mgi_*` call on the same thread.
#[no_mangle]
pub extern "C" fn mgi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn mgi_status_name(status: MgiStatus) -> *const c_char {
    let s: &'static CStr = match status {
        MgiStatus::Ok => c"Ok",
        MgiStatus::NullPointer => c"NullPointer",
        MgiStatus::InvalidUtf8 => c"InvalidUtf8",
        MgiStatus::Panic => c"Panic",
        MgiStatus::NonUnit => c"NonUnit",
        MgiStatus::InfiniteRing => c"InfiniteRing",
        MgiStatus::BadIndex => c"BadIndex",
        MgiStatus::NotInvertible => c"NotInvertible",
        MgiStatus::SpecMismatch => c"SpecMismatch",
        MgiStatus::TooLarge => c"TooLarge",
        MgiStatus::NotField => c"NotField",
        MgiStatus::DetNotOne => c"DetNotOne",
        MgiStatus::ScheduleTooShort => c"ScheduleTooShort",
        MgiStatus::NotUnitriangular => c"NotUnitriangular",
        MgiStatus::NotInCarrier => c"NotInCarrier",
        MgiStatus::WitnessCheckFailed => c"WitnessCheckFailed",
        MgiStatus::BadIndices => c"BadIndices",
        MgiStatus::CharTwo => c"CharTwo",
        MgiStatus::NotNormal => c"NotNormal",
        MgiStatus::NotCoboundary => c"NotCoboundary",
        MgiStatus::InvalidCocycle => c"InvalidCocycle",
        MgiStatus::BadSplit => c"BadSplit",
        MgiStatus::NotTrivialCocycle => c"NotTrivialCocycle",
        MgiStatus::InconsistentContext => c"InconsistentContext",
        MgiStatus::DiagonalFactor => c"DiagonalFactor",
        MgiStatus::Parse => c"Parse",
    };
    s.as_ptr()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mgi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a ring such as `gf:5`, `zmod:6` or `q`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_ring_parse(spec: *const c_char, out: *mut *mut MgiRing) -> MgiStatus {
    guard(|| {
        let r: RingSpec = str_arg(spec, "spec")?.parse()?;
        put(out, MgiRing(r))
    })
}

/// # Safety
/// `ring` must come from [`mgi_ring_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mgi_ring_free(ring: *mut MgiRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_identity(ring: *const MgiRing, n: usize, out: *mut *mut MgiMatrix) -> MgiStatus {
    guard(|| {
        let r = ref_arg(ring, "ring")?.0;
        if n == 0 {
            return Err(Fail::Lib(Error::BadIndex { i: 0, j: 0, n }));
        }
        put(out, MgiMatrix(Matrix::identity(r, n)))
    })
}

/// Builds `t_ij(alpha)` with 1-based indices.
///
/// # Safety
/// `ring` must be a live handle, `alpha` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_transvection(
    ring: *const MgiRing,
    n: usize,
    i: usize,
    j: usize,
    alpha: *const c_char,
    out: *mut *mut MgiMatrix,
) -> MgiStatus {
    guard(|| {
        let r = ref_arg(ring, "ring")?.0;
        let a = r.parse_elem(str_arg(alpha, "alpha")?)?;
        put(out, MgiMatrix(Matrix::transvection(r, n, i, j, &a)?))
    })
}

/// Reads a matrix from `{"ring": .., "n": .., "entries": [[..], ..]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_from_json(json: *const c_char, out: *mut *mut MgiMatrix) -> MgiStatus {
    guard(|| put(out, MgiMatrix(Matrix::from_json_str(str_arg(json, "json")?)?)))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_to_json(m: *const MgiMatrix, out: *mut *mut c_char) -> MgiStatus {
    guard(|| {
        let m = ref_arg(m, "matrix")?;
        put_string(out, m.0.to_json().to_string())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_mul(a: *const MgiMatrix, b: *const MgiMatrix, out: *mut *mut MgiMatrix) -> MgiStatus {
    guard(|| {
        let (a, b) = (&ref_arg(a, "a")?.0, &ref_arg(b, "b")?.0);
        if a.ring() != b.ring() || a.n() != b.n() {
            return Err(Fail::Lib(Error::SpecMismatch(format!(
                "{} n={} vs {} n={}",
                a.ring(),
                a.n(),
                b.ring(),
                b.n()
            ))));
        }
        put(out, MgiMatrix(a.mul(b)))
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_inv(m: *const MgiMatrix, out: *mut *mut MgiMatrix) -> MgiStatus {
    guard(|| put(out, MgiMatrix(ref_arg(m, "matrix")?.0.inv()?)))
}

/// Writes `a == b` to `out`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_equal(a: *const MgiMatrix, b: *const MgiMatrix, out: *mut bool) -> MgiStatus {
    guard(|| {
        let eq = ref_arg(a, "a")?.0 == ref_arg(b, "b")?.0;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = eq;
        Ok(())
    })
}

/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mgi_matrix_free(m: *mut MgiMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Decomposes `m` into transvections and writes the word as JSON. With
/// `gl` set, a determinant other than 1 is carried by a trailing `d_n(det)`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_decompose(m: *const MgiMatrix, gl: bool, out: *mut *mut c_char) -> MgiStatus {
    guard(|| {
        let m = &ref_arg(m, "matrix")?.0;
        let w = if gl { decompose_gl(m)? } else { decompose_sl(m)? };
        put_string(out, w.to_json().to_string())
    })
}

/// Computes `x ⊗ y` inside the carrier `T_ik` of `GL_n` and writes the
/// decoded ring element.
///
/// # Safety
/// `ring` must be a live handle, `x` and `y` nul-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_interpret_mul(
    ring: *const MgiRing,
    n: usize,
    i: usize,
    k: usize,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> MgiStatus {
    guard(|| {
        let r = ref_arg(ring, "ring")?.0;
        let ir = InterpretedRing::new(r, n, Host::GL, i, k)?;
        let a = ir.encode(&r.parse_elem(str_arg(x, "x")?)?);
        let b = ir.encode(&r.parse_elem(str_arg(y, "y")?)?);
        put_string(out, r.format_elem(&ir.decode(&ir.mul(&a, &b)?)?))
    })
}

/// Computes `x ⊕ y` inside the carrier `T_ik` of `GL_n`.
///
/// # Safety
/// As for [`mgi_interpret_mul`].
#[no_mangle]
pub unsafe extern "C" fn mgi_interpret_add(
    ring: *const MgiRing,
    n: usize,
    i: usize,
    k: usize,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> MgiStatus {
    guard(|| {
        let r = ref_arg(ring, "ring")?.0;
        let ir = InterpretedRing::new(r, n, Host::GL, i, k)?;
        let a = ir.encode(&r.parse_elem(str_arg(x, "x")?)?);
        let b = ir.encode(&r.parse_elem(str_arg(y, "y")?)?);
        put_string(out, r.format_elem(&ir.decode(&ir.add(&a, &b)?)?))
    })
}

/// Runs a verification suite by name (`steinberg`, `decompose`, `interp`,
/// `definable`, `a4`, `cohom`, `deform` or `all`). A report whose checks
/// fail is still returned with status `MGI_OK`; query it with
/// [`mgi_report_pass`].
///
/// # Safety
/// `suite` must be a nul-terminated string, `ring` a live handle and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_verify(
    suite: *const c_char,
    ring: *const MgiRing,
    n: usize,
    seed: u64,
    cap: usize,
    out: *mut *mut MgiReport,
) -> MgiStatus {
    guard(|| {
        let s: Suite = str_arg(suite, "suite")?.parse()?;
        let r = ref_arg(ring, "ring")?.0;
        let report = suites::run(s, r, n, SuiteOptions { seed, cap })?;
        put(out, MgiReport(report))
    })
}

/// Overall verdict of a report; false for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgi_report_pass(report: *const MgiReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.pass)
}

/// Number of checks in a report; 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mgi_report_check_count(report: *const MgiReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.checks.len())
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgi_report_render(report: *const MgiReport, format: MgiFormat, out: *mut *mut c_char) -> MgiStatus {
    guard(|| {
        let r = ref_arg(report, "report")?;
        let f = match format {
            MgiFormat::Json => Format::Json,
            MgiFormat::Csv => Format::Csv,
            MgiFormat::Markdown => Format::Markdown,
        };
        put_string(out, r.0.render(f))
    })
}

/// # Safety
/// `report` must come from [`mgi_verify`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mgi_report_free(report: *mut MgiReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
