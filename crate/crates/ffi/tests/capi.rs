use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use addtrans_ffi::*;

fn spec(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn function(s: &str) -> *mut AddtransFunction {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { addtrans_function_new(spec(s).as_ptr(), &mut f) }, AddtransStatus::Ok);
    f
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    addtrans_string_free(s);
    out
}

fn last_error() -> String {
    let p = addtrans_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn eval_and_transform() {
    unsafe {
        let omega = function("big_omega");
        let mut phi = ptr::null_mut();
        assert_eq!(addtrans_transform(omega, &mut phi), AddtransStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(addtrans_eval(phi, spec("12").as_ptr(), &mut out), AddtransStatus::Ok);
        assert_eq!(take(out), "10");
        let (mut num, mut den) = (0i64, 0u64);
        assert_eq!(addtrans_eval_i64(phi, 360, &mut num, &mut den), AddtransStatus::Ok);
        // Φ_Ω(360) = 360·(3/8 + 2/9 + 1/5)
        assert_eq!((num, den), (287, 1));
        assert_eq!(addtrans_partial_derivative(omega, 2, spec("12").as_ptr(), &mut out), AddtransStatus::Ok);
        assert_eq!(take(out), "6");
        assert_eq!(addtrans_partial_derivative(omega, 5, spec("12").as_ptr(), &mut out), AddtransStatus::Domain);
        assert!(last_error().contains("does not divide"));
        addtrans_function_free(phi);
        addtrans_function_free(omega);
    }
}

#[test]
fn constructor_specs_resolve() {
    unsafe {
        let c = function("companion:mu");
        let inv = function("idmul:mu");
        let mut out = ptr::null_mut();
        assert_eq!(addtrans_eval(c, spec("30").as_ptr(), &mut out), AddtransStatus::Ok);
        assert_eq!(take(out), "-3");
        assert_eq!(addtrans_eval(inv, spec("6").as_ptr(), &mut out), AddtransStatus::Ok);
        assert_eq!(take(out), "6");
        addtrans_function_free(c);
        addtrans_function_free(inv);
    }
}

#[test]
fn convolution_and_tables() {
    unsafe {
        let (mu, id) = (function("mu"), function("id"));
        let mut out = ptr::null_mut();
        assert_eq!(addtrans_convolve_at(mu, id, spec("12").as_ptr(), &mut out), AddtransStatus::Ok);
        assert_eq!(take(out), "4");
        let mut t = ptr::null_mut();
        assert_eq!(addtrans_table_convolve(mu, id, 6, &mut t), AddtransStatus::Ok);
        assert_eq!(addtrans_table_len(t), 6);
        let got: Vec<String> = (1..=6)
            .map(|n| {
                let mut s = ptr::null_mut();
                assert_eq!(addtrans_table_get(t, n, &mut s), AddtransStatus::Ok);
                take(s)
            })
            .collect();
        assert_eq!(got, ["1", "1", "2", "2", "4", "2"]);
        assert_eq!(addtrans_table_get(t, 7, &mut out), AddtransStatus::OutOfRange);

        let sigma = function("sigma_1");
        let mut st = ptr::null_mut();
        assert_eq!(addtrans_table_tabulate(sigma, 50, &mut st), AddtransStatus::Ok);
        let mut inv = ptr::null_mut();
        assert_eq!(addtrans_table_mobius_invert(st, &mut inv), AddtransStatus::Ok);
        // μ*σ = Id
        assert_eq!(addtrans_table_get(inv, 49, &mut out), AddtransStatus::Ok);
        assert_eq!(take(out), "49");
        addtrans_table_free(inv);
        addtrans_table_free(st);
        addtrans_table_free(t);
        addtrans_function_free(sigma);
        addtrans_function_free(mu);
        addtrans_function_free(id);
    }
}

#[test]
fn verify_reports_counts_and_json() {
    unsafe {
        let mut json = ptr::null_mut();
        let mut counts = AddtransVerdictCounts::default();
        let ids = spec("main_theorem,remark_eq17_printed,remark_eq17_scaled");
        let fs = spec("big_omega,omega");
        assert_eq!(addtrans_verify(ids.as_ptr(), fs.as_ptr(), 200, &mut json, &mut counts), AddtransStatus::Ok);
        assert_eq!(counts, AddtransVerdictCounts { pass: 3, fail: 0, erratum_candidate: 1, inapplicable: 2 });
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 6);
        assert_eq!(
            addtrans_verify(spec("").as_ptr(), ptr::null(), 10, ptr::null_mut(), &mut counts),
            AddtransStatus::Ok
        );
        assert_eq!(counts, AddtransVerdictCounts::default());
        assert_eq!(
            addtrans_verify(spec("nope").as_ptr(), ptr::null(), 10, ptr::null_mut(), ptr::null_mut()),
            AddtransStatus::UnknownIdentity
        );
    }
}

#[test]
fn bad_arguments() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(addtrans_function_new(spec("no_such").as_ptr(), &mut f), AddtransStatus::UnknownFunction);
        assert!(last_error().contains("no_such"));
        assert!(f.is_null());
        assert_eq!(addtrans_function_new(ptr::null(), &mut f), AddtransStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(addtrans_function_new(bad.as_ptr().cast(), &mut f), AddtransStatus::InvalidUtf8);
        let mu = function("mu");
        let mut out = ptr::null_mut();
        assert_eq!(addtrans_eval(mu, spec("0").as_ptr(), &mut out), AddtransStatus::Domain);
        assert_eq!(addtrans_eval(mu, spec("x").as_ptr(), &mut out), AddtransStatus::Parse);
        assert_eq!(addtrans_eval(mu, spec("6").as_ptr(), ptr::null_mut()), AddtransStatus::NullArgument);
        assert_eq!(addtrans_eval(ptr::null(), spec("6").as_ptr(), &mut out), AddtransStatus::NullArgument);
        assert_eq!(addtrans_eval(mu, spec("6").as_ptr(), &mut out), AddtransStatus::Ok);
        assert!(addtrans_last_error_message().is_null());
        addtrans_string_free(out);
        let sq = function("sigma_2");
        let (mut num, mut den) = (0i64, 0u64);
        assert_eq!(addtrans_eval_i64(sq, 1 << 40, &mut num, &mut den), AddtransStatus::NotRepresentable);
        addtrans_function_free(sq);
        addtrans_function_free(mu);
        addtrans_function_free(ptr::null_mut());
        addtrans_table_free(ptr::null_mut());
        addtrans_string_free(ptr::null_mut());
        assert_eq!(addtrans_table_len(ptr::null()), 0);
    }
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(addtrans_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/addtrans.h")
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_compiles_as_c_and_cxx() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in ["addtrans_function_new", "addtrans_verify", "ADDTRANS_STATUS_OK", "AddtransVerdictCounts"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    if !have_cc() {
        eprintln!("cc not found; skipping header compile");
        return;
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(header())
            .status()
            .unwrap();
        assert!(status.success(), "{compiler} rejected the header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    if !have_cc() {
        eprintln!("cc not found; skipping link test");
        return;
    }
    // target/<profile>/deps/<test-binary> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libaddtrans_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping link test", lib.display());
        return;
    }
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "addtrans.h"
int main(void) {
    AddtransFunction *f = NULL, *phi = NULL;
    char *out = NULL;
    if (addtrans_function_new("big_omega", &f) != ADDTRANS_STATUS_OK) return 2;
    if (addtrans_transform(f, &phi) != ADDTRANS_STATUS_OK) return 3;
    if (addtrans_eval(phi, "12", &out) != ADDTRANS_STATUS_OK) return 4;
    printf("%s\n", out);
    addtrans_string_free(out);
    if (addtrans_function_new("bogus", &f) != ADDTRANS_STATUS_UNKNOWN_FUNCTION) return 5;
    printf("%s\n", addtrans_last_error_message());
    addtrans_function_free(phi);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "10\nunknown function `bogus`\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("addtrans-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
