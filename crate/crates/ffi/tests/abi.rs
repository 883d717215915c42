use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use matgroup_interp_ffi::*;

fn owned(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mgi_string_free(s) };
    out
}

fn last_error() -> String {
    let p = mgi_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn ring(spec: &str) -> *mut MgiRing {
    let s = CString::new(spec).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { mgi_ring_parse(s.as_ptr(), &mut r) }, MgiStatus::Ok);
    r
}

#[test]
fn interpret_mul_over_gf7() {
    let r = ring("gf:7");
    let (x, y) = (CString::new("2").unwrap(), CString::new("3").unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { mgi_interpret_mul(r, 3, 1, 3, x.as_ptr(), y.as_ptr(), &mut out) };
    assert_eq!(st, MgiStatus::Ok);
    assert_eq!(owned(out), "6");
    let st = unsafe { mgi_interpret_add(r, 3, 2, 1, x.as_ptr(), y.as_ptr(), &mut out) };
    assert_eq!(st, MgiStatus::Ok);
    assert_eq!(owned(out), "5");
    unsafe { mgi_ring_free(r) };
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("gf:4").unwrap();
    let mut r = ptr::null_mut();
    let st = unsafe { mgi_ring_parse(bad.as_ptr(), &mut r) };
    assert_eq!(st, MgiStatus::Parse);
    assert!(r.is_null());
    assert!(last_error().starts_with("Parse"));

    let st = unsafe { mgi_ring_parse(ptr::null(), &mut r) };
    assert_eq!(st, MgiStatus::NullPointer);

    let name = unsafe { CStr::from_ptr(mgi_status_name(MgiStatus::NotInvertible)) };
    assert_eq!(name.to_str().unwrap(), "NotInvertible");
}

#[test]
fn matrix_round_trip_and_decompose() {
    let r = ring("gf:5");
    let alpha = CString::new("2").unwrap();
    let (mut a, mut b, mut ab, mut inv) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(mgi_matrix_transvection(r, 3, 1, 2, alpha.as_ptr(), &mut a), MgiStatus::Ok);
        assert_eq!(mgi_matrix_transvection(r, 3, 2, 3, alpha.as_ptr(), &mut b), MgiStatus::Ok);
        assert_eq!(mgi_matrix_mul(a, b, &mut ab), MgiStatus::Ok);
        assert_eq!(mgi_matrix_inv(ab, &mut inv), MgiStatus::Ok);

        let mut json = ptr::null_mut();
        assert_eq!(mgi_matrix_to_json(ab, &mut json), MgiStatus::Ok);
        let text = CString::new(owned(json)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(mgi_matrix_from_json(text.as_ptr(), &mut back), MgiStatus::Ok);
        let mut eq = false;
        assert_eq!(mgi_matrix_equal(ab, back, &mut eq), MgiStatus::Ok);
        assert!(eq);

        let mut word = ptr::null_mut();
        assert_eq!(mgi_decompose(ab, false, &mut word), MgiStatus::Ok);
        let w: serde_json::Value = serde_json::from_str(&owned(word)).unwrap();
        assert!(!w["letters"].as_array().unwrap().is_empty());

        let bad_idx = mgi_matrix_transvection(r, 3, 2, 2, alpha.as_ptr(), &mut a);
        assert_eq!(bad_idx, MgiStatus::BadIndex);

        for m in [a, b, ab, inv, back] {
            mgi_matrix_free(m);
        }
        mgi_ring_free(r);
    }
}

#[test]
fn singular_and_malformed_inputs() {
    let singular = CString::new(r#"{"ring":"gf:3","n":2,"entries":[[1,1],[1,1]]}"#).unwrap();
    let malformed = CString::new("{\"ring\": \"gf:3\",\n \"n\": 2,").unwrap();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(mgi_matrix_from_json(malformed.as_ptr(), &mut m), MgiStatus::Parse);
        assert!(last_error().contains("line"));
        assert_eq!(mgi_matrix_from_json(singular.as_ptr(), &mut m), MgiStatus::Ok);
        let mut word = ptr::null_mut();
        assert_eq!(mgi_decompose(m, false, &mut word), MgiStatus::NotInvertible);
        assert!(word.is_null());
        assert!(last_error().starts_with("NotInvertible"));
        mgi_matrix_free(m);
    }
}

#[test]
fn verify_suite_report() {
    let r = ring("gf:3");
    let suite = CString::new("steinberg").unwrap();
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(mgi_verify(suite.as_ptr(), r, 3, 1, 200_000, &mut rep), MgiStatus::Ok);
        assert!(mgi_report_pass(rep));
        assert!(mgi_report_check_count(rep) > 0);
        let mut csv = ptr::null_mut();
        assert_eq!(mgi_report_render(rep, MgiFormat::Csv, &mut csv), MgiStatus::Ok);
        assert!(owned(csv).starts_with("suite,check,"));
        mgi_report_free(rep);

        let unknown = CString::new("nonsense").unwrap();
        assert_eq!(mgi_verify(unknown.as_ptr(), r, 3, 1, 10, &mut rep), MgiStatus::Parse);
        assert!(!mgi_report_pass(ptr::null()));
        mgi_ring_free(r);
    }
}

/// Compiles a C program against the generated header and links it with the
/// static library.
#[test]
fn c_program_links_against_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("matgroup_interp.h").exists());
    // the test binary lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libmatgroup_interp_ffi.a");
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path();
    let src = out_dir.join("probe.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "matgroup_interp.h"

int main(void) {
    MgiRing *r = NULL;
    if (mgi_ring_parse("gf:7", &r) != MGI_STATUS_OK) return 1;
    char *v = NULL;
    if (mgi_interpret_mul(r, 3, 1, 3, "2", "3", &v) != MGI_STATUS_OK) return 2;
    int ok = strcmp(v, "6") == 0;
    mgi_string_free(v);
    MgiMatrix *m = NULL;
    MgiStatus st = mgi_matrix_from_json("{\"ring\":\"gf:7\",\"n\":2,\"entries\":[[1,2],[2,4]]}", &m);
    if (st != MGI_STATUS_OK) return 3;
    st = mgi_decompose(m, true, &v);
    ok = ok && st == MGI_STATUS_NOT_INVERTIBLE && mgi_last_error() != NULL;
    mgi_matrix_free(m);
    mgi_ring_free(r);
    printf("%s\n", ok ? "ok" : "mismatch");
    return ok ? 0 : 4;
}
"#,
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    // a header-only syntax check does not need the library
    let syntax = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&header_dir)
        .arg(&src)
        .status()
        .expect("C compiler runs");
    assert!(syntax.success());
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let bin = out_dir.join("probe");
    let status = Command::new(&cc)
        .args(["-std=c99", "-I"])
        .arg(&header_dir)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    assert!(run.status.success());
}
