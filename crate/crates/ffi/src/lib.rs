//! C interface to `posthopf`.
//!
//! Objects are opaque handles released with their `*_free` function.
//! Every call returns a [`PhStatus`]; on failure, [`ph_last_error`] holds a
//! message for the calling thread. Strings returned through out-pointers
//! are owned by the caller and released with [`ph_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use posthopf::classifier::{classify, ClassifyOptions, Mode, Parameterization, SolveLimits};
use posthopf::exactmath::{Rational, Rationals};
use posthopf::ffenum::{enumerate, EnumerationTask};
use posthopf::hopf::{sweedler_h4, verify_hopf_axioms, HopfOver, HopfStructure};
use posthopf::multipoly::{PolyRing, Registry};
use posthopf::triangle::{check_mode, family_table, family_table_rational, FamilyId, OpFile};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    ComputeError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhMode {
    Relaxed = 0,
    Weak = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhParameterization {
    Generator32 = 0,
    Full64 = 1,
}

/// A Hopf algebra given by structure constants.
pub struct PhHopf(HopfStructure);

/// An operation table.
pub struct PhOp(OpFile);

impl From<PhMode> for Mode {
    fn from(m: PhMode) -> Mode {
        match m {
            PhMode::Relaxed => Mode::Relaxed,
            PhMode::Weak => Mode::Weak,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

struct Failure(PhStatus, String);

type Res<T> = Result<T, Failure>;

fn fail(status: PhStatus, e: impl ToString) -> Failure {
    Failure(status, e.to_string())
}

/// Run `f`, catching panics and recording any error.
fn guard(f: impl FnOnce() -> Res<()>) -> PhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PhStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PhStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(fail(PhStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(PhStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(fail(PhStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err(fail(PhStatus::NullPointer, "output pointer is null"));
    }
    let c = CString::new(s).map_err(|e| fail(PhStatus::ComputeError, e))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_bool(out: *mut bool, v: bool) -> Res<()> {
    if out.is_null() {
        return Err(fail(PhStatus::NullPointer, "output pointer is null"));
    }
    *out = v;
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| fail(PhStatus::NullPointer, format!("{what} is null")))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ph_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ph_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The Sweedler four-dimensional Hopf algebra.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_hopf_sweedler(out: *mut *mut PhHopf) -> PhStatus {
    guard(|| write_out(out, PhHopf(sweedler_h4())))
}

/// Parse a Hopf structure from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_hopf_from_json(json: *const c_char, out: *mut *mut PhHopf) -> PhStatus {
    guard(|| {
        let s = str_arg(json, "json")?;
        let h = HopfStructure::from_json(s).map_err(|e| fail(PhStatus::ParseError, e))?;
        write_out(out, PhHopf(h))
    })
}

/// Canonical JSON of a Hopf structure.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_hopf_to_json(h: *const PhHopf, out: *mut *mut c_char) -> PhStatus {
    guard(|| {
        let h = handle(h, "hopf")?;
        write_string(out, h.0.to_json())
    })
}

/// # Safety
/// `h` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ph_hopf_free(h: *mut PhHopf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Check every Hopf algebra axiom; `passed` receives the verdict.
///
/// # Safety
/// `h` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_hopf_verify(h: *const PhHopf, passed: *mut bool) -> PhStatus {
    guard(|| {
        let h = handle(h, "hopf")?;
        let rep = verify_hopf_axioms(&h.0).map_err(|e| fail(PhStatus::ComputeError, e))?;
        write_bool(passed, rep.passed())
    })
}

/// One of the six Sweedler tables, `id` being `"i"` to `"vi"`. `param` is a
/// rational such as `"-3/2"`, or null to keep the parameter symbolic.
///
/// # Safety
/// `id` must be a NUL-terminated string, `param` one or null, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ph_op_family(id: *const c_char, param: *const c_char, out: *mut *mut PhOp) -> PhStatus {
    guard(|| {
        let which: FamilyId = str_arg(id, "id")?
            .parse()
            .map_err(|e| fail(PhStatus::InvalidArgument, e))?;
        let param = if param.is_null() {
            None
        } else {
            let s = str_arg(param, "param")?;
            Some(s.parse::<Rational>().map_err(|e| fail(PhStatus::ParseError, e))?)
        };
        let op = if which.has_param() && param.is_none() {
            let mut reg = Registry::new();
            let t = family_table(which, None, &mut reg).map_err(|e| fail(PhStatus::InvalidArgument, e))?;
            OpFile::Poly(t, reg)
        } else {
            OpFile::Rational(
                family_table_rational(which, param.as_ref()).map_err(|e| fail(PhStatus::InvalidArgument, e))?,
            )
        };
        write_out(out, PhOp(op))
    })
}

/// Parse an operation from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_op_from_json(json: *const c_char, out: *mut *mut PhOp) -> PhStatus {
    guard(|| {
        let s = str_arg(json, "json")?;
        let op = OpFile::from_json(s).map_err(|e| fail(PhStatus::ParseError, e))?;
        write_out(out, PhOp(op))
    })
}

/// JSON of an operation.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_op_to_json(op: *const PhOp, out: *mut *mut c_char) -> PhStatus {
    guard(|| {
        let op = handle(op, "op")?;
        write_string(out, op.0.to_json().to_string())
    })
}

/// # Safety
/// `op` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ph_op_free(op: *mut PhOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Check `op` against the `mode` axioms on `h`.
///
/// # Safety
/// `h` and `op` must be live handles and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_op_verify(
    h: *const PhHopf,
    op: *const PhOp,
    mode: PhMode,
    passed: *mut bool,
) -> PhStatus {
    guard(|| {
        let h = &handle(h, "hopf")?.0;
        let op = &handle(op, "op")?.0;
        let compute = |e: &dyn std::fmt::Display| fail(PhStatus::ComputeError, e);
        let ok = match op {
            OpFile::Rational(t) => {
                let ho = HopfOver::new(h, Rationals).map_err(|e| compute(&e))?;
                check_mode(&ho, t, mode.into()).map_err(|e| compute(&e))?.passed()
            }
            OpFile::Poly(t, _) => {
                let ho = HopfOver::new(h, PolyRing).map_err(|e| compute(&e))?;
                check_mode(&ho, t, mode.into()).map_err(|e| compute(&e))?.passed()
            }
            OpFile::Prime(t, field) => {
                let ho = HopfOver::new(h, *field).map_err(|e| compute(&e))?;
                check_mode(&ho, t, mode.into()).map_err(|e| compute(&e))?.passed()
            }
        };
        write_bool(passed, ok)
    })
}

/// Classify operations on the Sweedler algebra; `out` receives the JSON report.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_classify_json(
    mode: PhMode,
    parameterization: PhParameterization,
    out: *mut *mut c_char,
) -> PhStatus {
    guard(|| {
        let opts = ClassifyOptions {
            mode: mode.into(),
            parameterization: match parameterization {
                PhParameterization::Generator32 => Parameterization::Generator32,
                PhParameterization::Full64 => Parameterization::Full64,
            },
            limits: SolveLimits::default(),
        };
        let res = classify(&sweedler_h4(), opts).map_err(|e| fail(PhStatus::ComputeError, e))?;
        let mut js = res.to_json();
        js["match"] = serde_json::to_value(res.match_builtin()).map_err(|e| fail(PhStatus::ComputeError, e))?;
        write_string(out, js.to_string())
    })
}

/// Enumerate operations on the Sweedler algebra over `F_prime`; `out`
/// receives the JSON report.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_enumerate_json(prime: u64, mode: PhMode, out: *mut *mut c_char) -> PhStatus {
    guard(|| {
        let rep = enumerate(&EnumerationTask::new(prime, mode.into())).map_err(|e| fail(PhStatus::InvalidArgument, e))?;
        write_string(out, rep.to_json().to_string())
    })
}
