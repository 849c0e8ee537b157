use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use graded_lie_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = gl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gl_string_free(s);
    out
}

fn wgab(a: &str, b: &str) -> *mut GlAlgebra {
    let mut alg = ptr::null_mut();
    let status = unsafe { gl_algebra_new(c("wgab").as_ptr(), c(a).as_ptr(), c(b).as_ptr(), &mut alg) };
    assert_eq!(status, GlStatus::Ok);
    alg
}

#[test]
fn handle_lifecycle_and_queries() {
    let alg = wgab("0", "0");
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(gl_bracket(alg, c("Y(3/2)").as_ptr(), c("Y(1/2)").as_ptr(), &mut out), GlStatus::Ok);
        assert_eq!(take(out), "I(2)");

        let mut passed = false;
        assert_eq!(gl_jacobi_symbolic(alg, &mut passed), GlStatus::Ok);
        assert!(passed);

        let mut dim = 99;
        assert_eq!(gl_h1_outer_dim(alg, c("0").as_ptr(), ptr::null(), 3, &mut dim), GlStatus::Ok);
        assert_eq!(dim, 3);
        assert_eq!(gl_center_dim(alg, c("-8:8").as_ptr(), 2, &mut dim), GlStatus::Ok);
        assert_eq!(dim, 1);
        gl_algebra_free(alg);
    }
    let alg = wgab("1", "-1");
    let mut dim = 0;
    unsafe {
        assert_eq!(gl_h1_outer_dim(alg, c("-1/2").as_ptr(), c("-10:10").as_ptr(), 3, &mut dim), GlStatus::Ok);
        gl_algebra_free(alg);
    }
    assert_eq!(dim, 1);
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(gl_algebra_new(c("nope").as_ptr(), ptr::null(), ptr::null(), &mut alg), GlStatus::Parse);
        assert!(last_error().contains("nope"));
        // wgab needs both parameters
        assert_eq!(gl_algebra_new(c("wgab").as_ptr(), c("0").as_ptr(), ptr::null(), &mut alg), GlStatus::Parameter);
        assert!(alg.is_null());
        assert_eq!(gl_algebra_new(ptr::null(), ptr::null(), ptr::null(), &mut alg), GlStatus::NullArgument);

        assert_eq!(gl_algebra_new(c("witt").as_ptr(), ptr::null(), ptr::null(), &mut alg), GlStatus::Ok);
        let mut dim = 0;
        assert_eq!(gl_h1_outer_dim(alg, c("1/3").as_ptr(), ptr::null(), 3, &mut dim), GlStatus::Parse);
        assert_eq!(gl_h1_outer_dim(alg, c("0").as_ptr(), c("4:-4").as_ptr(), 3, &mut dim), GlStatus::Window);
        assert_eq!(gl_h1_outer_dim(alg, c("0").as_ptr(), ptr::null(), 3, ptr::null_mut()), GlStatus::NullArgument);
        assert_eq!(gl_h1_outer_dim(ptr::null(), c("0").as_ptr(), ptr::null(), 3, &mut dim), GlStatus::NullArgument);
        gl_algebra_free(alg);

        let bad = [0xffu8, 0];
        assert_eq!(
            gl_algebra_new(bad.as_ptr().cast(), ptr::null(), ptr::null(), &mut alg),
            GlStatus::InvalidUtf8
        );
        gl_algebra_free(ptr::null_mut());
        gl_string_free(ptr::null_mut());
    }
}

#[test]
fn algebra_from_text() {
    let source = c("algebra witt\nfamily L\n[L(m), L(n)] = (m - n) L(m + n)\n");
    let mut alg = ptr::null_mut();
    unsafe {
        assert_eq!(gl_algebra_from_text(source.as_ptr(), ptr::null(), ptr::null(), &mut alg), GlStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(gl_bracket(alg, c("L(2)").as_ptr(), c("L(-1)").as_ptr(), &mut out), GlStatus::Ok);
        assert_eq!(take(out), "3*L(1)");
        gl_algebra_free(alg);

        let broken = c("algebra x\nfamily L\n[L(m), L(n)] = (m - n) Q(m + n)\n");
        assert_ne!(gl_algebra_from_text(broken.as_ptr(), ptr::null(), ptr::null(), &mut alg), GlStatus::Ok);
    }
}

#[test]
fn run_matches_the_command_line_tool() {
    let args: Vec<CString> = ["h1-scan", "--a", "0", "--b", "0", "--json"].iter().map(|s| c(s)).collect();
    let argv: Vec<*const c_char> = args.iter().map(|s| s.as_ptr()).collect();
    let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), -1);
    unsafe {
        assert_eq!(gl_run(argv.len(), argv.as_ptr(), &mut out, &mut err, &mut code), GlStatus::Ok);
        let (out, err) = (take(out), take(err));
        assert_eq!(code, 0, "{err}");
        assert!(out.trim_start().starts_with('{'), "{out}");
        assert!(out.contains("\"total_outer_dim\": 3"), "{out}");
    }

    let args = [c("perfect"), c("--a"), c("1"), c("--b"), c("3"), c("--window"), c("-6:6"), c("--margin"), c("2")];
    let argv: Vec<*const c_char> = args.iter().map(|s| s.as_ptr()).collect();
    unsafe {
        assert_eq!(gl_run(argv.len(), argv.as_ptr(), &mut out, &mut err, &mut code), GlStatus::Ok);
        assert!(take(out).contains("Y(-1/2)"));
        gl_string_free(err);
    }
    assert_eq!(code, 1);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(gl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/graded_lie.h")).unwrap();
    for name in [
        "gl_algebra_new",
        "gl_algebra_from_text",
        "gl_algebra_free",
        "gl_bracket",
        "gl_jacobi_symbolic",
        "gl_h1_outer_dim",
        "gl_center_dim",
        "gl_run",
        "gl_string_free",
        "gl_last_error",
        "gl_version",
        "GL_STATUS_OK = 0",
        "typedef struct GlAlgebra GlAlgebra;",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "graded_lie.h"

int main(void) {
    GlAlgebra *alg = NULL;
    if (gl_algebra_new("wgab", "0", "1", &alg) != GL_STATUS_OK) return 10;
    size_t dim = 0;
    if (gl_h1_outer_dim(alg, "0", "-10:10", 3, &dim) != GL_STATUS_OK) return 11;
    char *value = NULL;
    if (gl_bracket(alg, "L(1)", "I(2)", &value) != GL_STATUS_OK) return 12;
    printf("%zu %s\n", dim, value);
    gl_string_free(value);
    if (gl_bracket(alg, "L(1)", "Q(2)", &value) == GL_STATUS_OK) return 13;
    if (gl_last_error() == NULL) return 14;
    gl_algebra_free(alg);
    return 0;
}
"#;

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_the_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libgraded_lie_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_api");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.join("main");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    // [L(1), I(2)] = -(2 + a + b) I(3) at (0, 1)
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2 -3*I(3)\n");
}
