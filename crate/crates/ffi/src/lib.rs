//! C ABI over qect-core.
//!
//! Objects are opaque handles released with their `_free` function. Every fallible call
//! returns a [`QectStatus`]; on failure the message is available from [`qect_last_error`]
//! on the same thread. Strings returned through `char **` are owned by the caller and
//! must be released with [`qect_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qect_core::cli::run::{elaborate_source, Elaborated};
use qect_core::codes::{builtin, parse_code};
use qect_core::enumerator::{
    coset_enumerator, logical_cosets, path_report, shor_laflamme, MergeMode, NoiseModel,
};
use qect_core::pauli::StabilizerCode;
use serde_json::json;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QectStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidCode = 4,
    EnumerationError = 5,
    TensorError = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Stabilizer code handle.
pub struct QectCode(StabilizerCode);

/// Elaborated circuit handle.
pub struct QectCircuit(Elaborated);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Res<T> = Result<T, (QectStatus, String)>;

fn guard(f: impl FnOnce() -> Res<()>) -> QectStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QectStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            QectStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Res<&'a str> {
    if p.is_null() {
        return Err((QectStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (QectStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err((QectStatus::NullArgument, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|e| (QectStatus::InvalidArgument, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err((QectStatus::NullArgument, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn code_ref<'a>(c: *const QectCode) -> Res<&'a StabilizerCode> {
    c.as_ref()
        .map(|c| &c.0)
        .ok_or((QectStatus::NullArgument, "null code handle".into()))
}

fn merge_mode(merge: bool) -> MergeMode {
    if merge {
        MergeMode::All
    } else {
        MergeMode::BySupportSize
    }
}

fn enum_err(e: impl ToString) -> (QectStatus, String) {
    (QectStatus::EnumerationError, e.to_string())
}

fn to_json(v: serde_json::Value) -> String {
    v.to_string()
}

/// Message for the last failed call on this thread; empty after a success. Valid until
/// the next call on this thread.
#[no_mangle]
pub extern "C" fn qect_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qect_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qect_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sizes the enumeration worker pool. Only the first call before any enumeration has effect.
#[no_mangle]
pub extern "C" fn qect_set_threads(n: usize) -> QectStatus {
    guard(|| {
        if n == 0 {
            return Err((
                QectStatus::InvalidArgument,
                "thread count must be positive".into(),
            ));
        }
        if qect_core::init_threads(n) {
            Ok(())
        } else {
            Err((
                QectStatus::InvalidArgument,
                "thread pool already initialized".into(),
            ))
        }
    })
}

/// Built-in code by name: `perfect`, `surface3`, `surface5` and their aliases.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qect_code_builtin(
    name: *const c_char,
    out: *mut *mut QectCode,
) -> QectStatus {
    guard(|| {
        let c = builtin(text(name)?).map_err(|e| (QectStatus::InvalidCode, e.to_string()))?;
        put_handle(out, QectCode(c))
    })
}

/// Code from generator text, one signed Pauli string per line.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qect_code_parse(
    src: *const c_char,
    out: *mut *mut QectCode,
) -> QectStatus {
    guard(|| {
        let c = parse_code(text(src)?).map_err(|e| (QectStatus::InvalidCode, e.to_string()))?;
        put_handle(out, QectCode(c))
    })
}

/// # Safety
/// `code` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qect_code_free(code: *mut QectCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of physical qubits, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qect_code_n(code: *const QectCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.n())
}

/// Number of logical qubits, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qect_code_k(code: *const QectCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.k())
}

/// Path report (A_path, B_path, cosets, totals, checks, meta) as JSON.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qect_paths_json(
    code: *const QectCode,
    include_idle: bool,
    merge: bool,
    max_degree: u32,
    out: *mut *mut c_char,
) -> QectStatus {
    guard(|| {
        let r = path_report(code_ref(code)?, include_idle, merge_mode(merge), max_degree)
            .map_err(enum_err)?;
        put_string(
            out,
            to_json(serde_json::to_value(&r).expect("serializable")),
        )
    })
}

/// Coset enumerator for a named logical (`X`, `Y`, `Z`, or `X1`, ... for k > 1) as JSON.
///
/// # Safety
/// `code` must be a live handle, `logical` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qect_coset_json(
    code: *const QectCode,
    logical: *const c_char,
    include_idle: bool,
    merge: bool,
    max_degree: u32,
    out: *mut *mut c_char,
) -> QectStatus {
    guard(|| {
        let c = code_ref(code)?;
        let name = text(logical)?;
        let (_, l) = logical_cosets(c)
            .into_iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| {
                (
                    QectStatus::InvalidArgument,
                    format!("unknown logical {name:?}"),
                )
            })?;
        let model = NoiseModel::syndrome_extraction(c, include_idle, merge_mode(merge));
        let p = coset_enumerator(c, &l, &model, max_degree).map_err(enum_err)?;
        put_string(
            out,
            to_json(
                json!({ "logical": name, "representative": l.to_string(), "enumerator": p.to_json() }),
            ),
        )
    })
}

/// Shor-Laflamme enumerators `{"A": ..., "B": ...}` as JSON.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qect_shor_laflamme_json(
    code: *const QectCode,
    out: *mut *mut c_char,
) -> QectStatus {
    guard(|| {
        let (a, b) = shor_laflamme(code_ref(code)?).map_err(enum_err)?;
        put_string(out, to_json(json!({ "A": a.to_json(), "B": b.to_json() })))
    })
}

/// Parses, checks and elaborates circuit source.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qect_circuit_parse(
    src: *const c_char,
    out: *mut *mut QectCircuit,
) -> QectStatus {
    guard(|| {
        let e =
            elaborate_source(text(src)?).map_err(|e| (QectStatus::ParseError, e.to_string()))?;
        put_handle(out, QectCircuit(e))
    })
}

/// # Safety
/// `circuit` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qect_circuit_free(circuit: *mut QectCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Circuit tensor as JSON; with `traced`, every noise group is traced against its weights.
///
/// # Safety
/// `circuit` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qect_circuit_tensor_json(
    circuit: *const QectCircuit,
    traced: bool,
    out: *mut *mut c_char,
) -> QectStatus {
    guard(|| {
        let c = circuit
            .as_ref()
            .ok_or((QectStatus::NullArgument, "null circuit handle".into()))?;
        let t = if traced {
            c.0.traced()
                .map_err(|e| (QectStatus::TensorError, e.to_string()))?
        } else {
            c.0.tensor.clone()
        };
        put_string(
            out,
            to_json(serde_json::to_value(t.to_json()).expect("serializable")),
        )
    })
}
