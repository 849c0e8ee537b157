//! C interface to the graded-lie engine.
//!
//! Algebras are opaque `GlAlgebra` handles created by `gl_algebra_new` or
//! `gl_algebra_from_text` and released with `gl_algebra_free`. Every
//! fallible call returns a `GlStatus`; on failure the message is available
//! from `gl_last_error` on the same thread until the next failing call.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with `gl_string_free`.
//!
//! All input strings are NUL-terminated UTF-8.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graded_lie::algebra::{format_element, parse_element, AlgebraInstance, Window};
use graded_lie::arith::{parse_rational, HalfInt, Var};
use graded_lie::derivations::h1_component;
use graded_lie::spec::{jacobi_symbolic, parse_spec, preset, AlgebraSpec};
use graded_lie::structure::{center, CenterMode};
use graded_lie::Error;

/// Result of a call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Parameter = 4,
    Window = 5,
    Automorphism = 6,
    Algebra = 7,
    Io = 8,
    Panic = 9,
}

impl From<&Error> for GlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Syntax { .. } | Error::UnknownName(_) => GlStatus::Parse,
            Error::Parameter(_) | Error::MissingVariable(_) => GlStatus::Parameter,
            Error::Window(_) | Error::OutOfWindow(_) => GlStatus::Window,
            Error::Automorphism(_) => GlStatus::Automorphism,
            Error::Io(_) => GlStatus::Io,
            Error::InvalidSpec(_) | Error::Dimension(_) | Error::NotHomogeneous => GlStatus::Algebra,
        }
    }
}

/// An algebra with its parameters fixed.
pub struct GlAlgebra {
    inst: AlgebraInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(GlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(GlStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `body`, turning errors and panics into a status plus last-error text.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure(GlStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> FfiResult<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn algebra<'a>(p: *const GlAlgebra) -> FfiResult<&'a AlgebraInstance> {
    p.as_ref()
        .map(|a| &a.inst)
        .ok_or_else(|| Failure(GlStatus::NullArgument, "algebra handle is NULL".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(GlStatus::NullArgument, "output pointer is NULL".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

unsafe fn instance(spec: AlgebraSpec, a: *const c_char, b: *const c_char) -> FfiResult<AlgebraInstance> {
    let mut params = BTreeMap::new();
    if let Some(a) = opt_text(a, "a")? {
        params.insert(Var::A, parse_rational(a)?);
    }
    if let Some(b) = opt_text(b, "b")? {
        params.insert(Var::B, parse_rational(b)?);
    }
    Ok(AlgebraInstance::new(spec, params)?)
}

unsafe fn window(w: *const c_char) -> FfiResult<Window> {
    Ok(opt_text(w, "window")?.unwrap_or("-10:10").parse()?)
}

/// Creates an algebra from a built-in description (`witt`, `wab`, `wgab`).
/// `a` and `b` are rationals such as `"2/3"`; pass NULL for a parameter the
/// algebra does not have.
///
/// # Safety
/// String arguments must be NULL or valid NUL-terminated strings; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_new(
    name: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut GlAlgebra,
) -> GlStatus {
    guard(|| {
        let spec = preset(text(name, "name")?)?;
        let inst = instance(spec, a, b)?;
        write_out(out, Box::into_raw(Box::new(GlAlgebra { inst })))
    })
}

/// Creates an algebra from description text.
///
/// # Safety
/// As for [`gl_algebra_new`].
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_from_text(
    source: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut GlAlgebra,
) -> GlStatus {
    guard(|| {
        let spec = parse_spec(text(source, "source")?)?;
        let inst = instance(spec, a, b)?;
        write_out(out, Box::into_raw(Box::new(GlAlgebra { inst })))
    })
}

/// # Safety
/// `alg` must be NULL or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_free(alg: *mut GlAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Brackets two elements written like `2*L(3) - Y(1/2)`; the result is
/// written to `out` as a new string.
///
/// # Safety
/// `alg` must be a live handle, `x` and `y` valid strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_bracket(
    alg: *const GlAlgebra,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        let g = algebra(alg)?;
        let x = parse_element(g, text(x, "x")?)?;
        let y = parse_element(g, text(y, "y")?)?;
        write_out(out, owned_string(format_element(g, &g.bracket(&x, &y))))
    })
}

/// Whether every Jacobi cyclic sum of the algebra's description vanishes
/// identically in the indices and parameters.
///
/// # Safety
/// `alg` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_jacobi_symbolic(alg: *const GlAlgebra, passed: *mut bool) -> GlStatus {
    guard(|| {
        let g = algebra(alg)?;
        write_out(passed, jacobi_symbolic(g.spec()).passed)
    })
}

/// Dimension of the outer derivations of one degree (e.g. `"-1/2"`) on a
/// window such as `"-10:10"` (NULL for that default).
///
/// # Safety
/// `alg` must be a live handle, `degree` a valid string, `window` NULL or a
/// valid string, `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_h1_outer_dim(
    alg: *const GlAlgebra,
    degree: *const c_char,
    window: *const c_char,
    margin: u32,
    dim: *mut usize,
) -> GlStatus {
    guard(|| {
        let g = algebra(alg)?;
        let degree: HalfInt = text(degree, "degree")?.parse()?;
        let r = h1_component(g, degree, self::window(window)?, margin)?;
        write_out(dim, r.outer_dim)
    })
}

/// Dimension of the center supported on the window interior.
///
/// # Safety
/// As for [`gl_h1_outer_dim`].
#[no_mangle]
pub unsafe extern "C" fn gl_center_dim(
    alg: *const GlAlgebra,
    window: *const c_char,
    margin: u32,
    dim: *mut usize,
) -> GlStatus {
    guard(|| {
        let g = algebra(alg)?;
        let r = center(g, &self::window(window)?, margin, CenterMode::Generators)?;
        write_out(dim, r.basis.len())
    })
}

/// Runs a command-line invocation in-process, e.g. `{"h1-scan", "--a", "0",
/// "--b", "0", "--json"}` (without the program name). Output and error text
/// are returned as new strings; `exit_code` follows the command-line tool
/// (0 pass, 1 check failed, 2 usage or engine error).
///
/// # Safety
/// `argv` must point to `argc` valid strings; the out-pointers must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gl_run(
    argc: usize,
    argv: *const *const c_char,
    stdout_text: *mut *mut c_char,
    stderr_text: *mut *mut c_char,
    exit_code: *mut i32,
) -> GlStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Failure(GlStatus::NullArgument, "argv is NULL".into()));
        }
        if stdout_text.is_null() || stderr_text.is_null() || exit_code.is_null() {
            return Err(Failure(GlStatus::NullArgument, "output pointer is NULL".into()));
        }
        let mut args = vec!["graded-lie".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = graded_lie::cli::run(args, &mut out, &mut err);
        let as_string = |v: Vec<u8>| String::from_utf8_lossy(&v).into_owned();
        stdout_text.write(owned_string(as_string(out)));
        stderr_text.write(owned_string(as_string(err)));
        exit_code.write(code);
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
