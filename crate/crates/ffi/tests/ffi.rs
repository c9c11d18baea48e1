use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use eigenwalk_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ew_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ew_last_error_message()).to_str().unwrap().to_owned() }
}

#[test]
fn weight_space() {
    let (mut n, mut d) = (0i64, 0i64);
    assert_eq!(unsafe { ew_w_valuation(5, 0, &mut n, &mut d) }, EwStatus::Ok);
    assert_eq!((n, d), (2, 1));
    assert_eq!(unsafe { ew_w_valuation(2, 5, &mut n, &mut d) }, EwStatus::Ok);
    assert_eq!((n, d), (1, 16));
    let mut inside = false;
    assert_eq!(unsafe { ew_in_boundary(12, 0, &mut inside) }, EwStatus::Ok);
    assert!(!inside);

    assert_eq!(unsafe { ew_w_valuation(2, 0, &mut n, &mut d) }, EwStatus::Precondition);
    assert!(last_error().contains("centre"));
    assert_eq!(unsafe { ew_w_valuation(5, 0, ptr::null_mut(), &mut d) }, EwStatus::NullPointer);
}

#[test]
fn regularity() {
    let mut order = 99u32;
    assert_eq!(unsafe { ew_ratio_order(c("-24").as_ptr(), 12, 2, &mut order) }, EwStatus::Ok);
    assert_eq!(order, 0);
    assert_eq!(unsafe { ew_ratio_order(c("0").as_ptr(), 5, 2, &mut order) }, EwStatus::Ok);
    assert_eq!(order, 2);
    assert_eq!(unsafe { ew_ratio_order(c("4").as_ptr(), 3, 2, &mut order) }, EwStatus::Precondition);
    assert_eq!(unsafe { ew_ratio_order(c("x/").as_ptr(), 3, 2, &mut order) }, EwStatus::Precondition);
    assert_eq!(unsafe { ew_ratio_order(ptr::null(), 3, 2, &mut order) }, EwStatus::NullPointer);

    let mut regular = false;
    assert_eq!(unsafe { ew_is_n_regular(c("-24").as_ptr(), 12, 2, 9, &mut regular) }, EwStatus::Ok);
    assert!(regular);

    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { ew_is_n_regular(bad.as_ptr() as *const c_char, 12, 2, 9, &mut regular) },
        EwStatus::InvalidUtf8
    );

    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ew_refinement_slopes(c("-24").as_ptr(), 12, 2, &mut a, &mut b) }, EwStatus::Ok);
    assert_eq!(unsafe { (take(a), take(b)) }, ("3".to_string(), "8".to_string()));
}

#[test]
fn certificates() {
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(ew_certificate_connect(4, 7, &mut cert), EwStatus::Ok);
        assert_eq!(ew_certificate_len(cert), 8);
        let mut nv = 99usize;
        assert_eq!(ew_certificate_verify(cert, &mut nv), EwStatus::Ok);
        assert_eq!(nv, 0);

        let mut json = ptr::null_mut();
        assert_eq!(ew_certificate_to_json(cert, &mut json), EwStatus::Ok);
        let text = take(json);
        ew_certificate_free(cert);

        let mut back = ptr::null_mut();
        assert_eq!(ew_certificate_from_json(c(&text).as_ptr(), &mut back), EwStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(ew_certificate_to_json(back, &mut again), EwStatus::Ok);
        assert_eq!(take(again), text);
        ew_certificate_free(back);

        let tampered = text.replacen("\"pc\": true", "\"pc\": false", 1);
        assert_ne!(tampered, text);
        let mut bad = ptr::null_mut();
        assert_eq!(ew_certificate_from_json(c(&tampered).as_ptr(), &mut bad), EwStatus::Ok);
        assert_eq!(ew_certificate_verify(bad, &mut nv), EwStatus::VerificationFailed);
        assert!(nv >= 1);
        assert!(!last_error().is_empty());
        ew_certificate_free(bad);

        assert_eq!(ew_certificate_connect(0, 3, &mut bad), EwStatus::Precondition);
        assert_eq!(ew_certificate_from_json(c("{").as_ptr(), &mut bad), EwStatus::Precondition);
        assert_eq!(ew_certificate_verify(ptr::null(), &mut nv), EwStatus::NullPointer);
        assert_eq!(ew_certificate_len(ptr::null()), 0);
        ew_certificate_free(ptr::null_mut());
        ew_string_free(ptr::null_mut());
    }
}

#[test]
fn slopes_json() {
    std::env::remove_var("EIGENWALK_CACHE_DIR");
    let mut out = ptr::null_mut();
    let st = unsafe { ew_slopes_json(c("sl2z").as_ptr(), 12, c("t2").as_ptr(), &mut out) };
    assert_eq!(st, EwStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["charpoly"], "X + 24");
    let st = unsafe { ew_slopes_json(c("sl2z").as_ptr(), 7, c("t2").as_ptr(), &mut out) };
    assert_eq!(st, EwStatus::Precondition);
    assert!(last_error().contains("not admissible"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/eigenwalk.h")).unwrap();
    for name in [
        "ew_last_error_message",
        "ew_string_free",
        "ew_w_valuation",
        "ew_in_boundary",
        "ew_ratio_order",
        "ew_is_n_regular",
        "ew_refinement_slopes",
        "ew_slopes_json",
        "ew_certificate_connect",
        "ew_certificate_from_json",
        "ew_certificate_to_json",
        "ew_certificate_verify",
        "ew_certificate_free",
        "ew_certificate_len",
        "typedef struct EwCertificate EwCertificate",
        "EW_STATUS_VERIFICATION_FAILED = 3",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

const C_SMOKE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "eigenwalk.h"

int main(void) {
    int64_t n, d;
    if (ew_w_valuation(5, 0, &n, &d) != EW_STATUS_OK || n != 2 || d != 1) return 1;
    EwCertificate *c = NULL;
    if (ew_certificate_connect(4, 7, &c) != EW_STATUS_OK) return 2;
    size_t nv = 1;
    if (ew_certificate_verify(c, &nv) != EW_STATUS_OK || nv != 0) return 3;
    char *json = NULL;
    if (ew_certificate_to_json(c, &json) != EW_STATUS_OK || strstr(json, "\"schema\": 1") == NULL) return 4;
    ew_string_free(json);
    ew_certificate_free(c);
    if (ew_w_valuation(2, 0, &n, &d) != EW_STATUS_PRECONDITION) return 5;
    if (strlen(ew_last_error_message()) == 0) return 6;
    puts("ok");
    return 0;
}
"#;

/// The static library next to this test binary, if cargo produced one.
fn staticlib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    [deps.to_path_buf(), deps.parent()?.to_path_buf()]
        .into_iter()
        .map(|d| d.join("libeigenwalk_ffi.a"))
        .find(|p| p.exists())
}

#[test]
fn c_program_links_against_the_header() {
    let lib = staticlib().expect("libeigenwalk_ffi.a is built alongside the tests");
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, C_SMOKE).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eigenwalk-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
