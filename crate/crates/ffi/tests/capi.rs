use std::ffi::{CStr, CString};
use std::ptr;

use lie_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { lie_string_free(s) };
    out
}

fn last_error() -> String {
    let p = lie_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn kappa_bracket_is_nu() {
    unsafe {
        let (mut k12, mut k23, mut br, mut n123) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(lie_kappa(3, 1, 2, &mut k12), LieStatus::Ok);
        assert_eq!(lie_kappa(3, 2, 3, &mut k23), LieStatus::Ok);
        assert_eq!(lie_element_bracket(k12, k23, &mut br), LieStatus::Ok);
        assert_eq!(lie_nu(3, 1, 2, 3, &mut n123), LieStatus::Ok);

        let mut s = ptr::null_mut();
        assert_eq!(lie_element_to_json(br, &mut s), LieStatus::Ok);
        let a = take(s);
        assert_eq!(lie_element_to_json(n123, &mut s), LieStatus::Ok);
        assert_eq!(a, take(s));

        let mut lie = false;
        assert_eq!(lie_element_is_lie(br, &mut lie), LieStatus::Ok);
        assert!(lie);
        for x in [k12, k23, br, n123] {
            lie_element_free(x);
        }
    }
}

#[test]
fn transposition_is_not_lie() {
    let json = CString::new(r#"[{"cycles": [[1, 2]], "coefficient": "1"}]"#).unwrap();
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(lie_element_from_json(3, json.as_ptr(), &mut x), LieStatus::Ok);
        let mut lie = true;
        assert_eq!(lie_element_is_lie(x, &mut lie), LieStatus::Ok);
        assert!(!lie);
        let mut s = ptr::null_mut();
        assert_eq!(lie_element_to_string(x, &mut s), LieStatus::Ok);
        assert_eq!(take(s), "(1 2)");
        lie_element_free(x);
    }
}

#[test]
fn eta_charpoly() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(lie_eta(4, 1, 2, 3, 4, &mut x), LieStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(lie_element_charpoly(x, &mut s), LieStatus::Ok);
        assert_eq!(take(s), r#"["0","0","-4","0","1"]"#);
        lie_element_free(x);
    }
}

#[test]
fn space_dims() {
    for (n, d) in [(2, 1), (3, 4), (4, 13)] {
        let mut out = 0;
        assert_eq!(unsafe { lie_space_dim(n, &mut out) }, LieStatus::Ok);
        assert_eq!(out, d);
    }
}

#[test]
fn sdet_of_identity_pair() {
    let a = CString::new("1 0; 0 1").unwrap();
    let z = CString::new("0 0; 0 0").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(lie_sdet(a.as_ptr(), z.as_ptr(), &mut s), LieStatus::Ok);
        assert_eq!(take(s), "0");
        assert_eq!(lie_sdet(a.as_ptr(), a.as_ptr(), &mut s), LieStatus::Ok);
        let v = take(s);
        assert!(v.parse::<i64>().is_ok(), "{v}");
    }
}

#[test]
fn verify_reports_json() {
    let t = CString::new("mtt").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(lie_verify(t.as_ptr(), 4, 1, &mut s), LieStatus::Ok);
    }
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["n"], 4);
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(lie_kappa(3, 1, 1, &mut x), LieStatus::InvalidArgument);
        assert!(x.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(lie_kappa(3, 1, 2, ptr::null_mut()), LieStatus::NullPointer);
        assert!(last_error().contains("null"));

        let bad = CString::new("[{").unwrap();
        assert_eq!(lie_element_from_json(3, bad.as_ptr(), &mut x), LieStatus::Parse);

        let t = CString::new("main").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(lie_verify(t.as_ptr(), 9, 0, &mut s), LieStatus::ResourceLimit);
        let t = CString::new("nope").unwrap();
        assert_eq!(lie_verify(t.as_ptr(), 3, 0, &mut s), LieStatus::InvalidArgument);

        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        lie_kappa(3, 1, 2, &mut a);
        lie_kappa(4, 1, 2, &mut b);
        assert_eq!(lie_element_bracket(a, b, &mut x), LieStatus::DegreeMismatch);
        lie_element_free(a);
        lie_element_free(b);
        lie_element_free(ptr::null_mut());
        lie_string_free(ptr::null_mut());
    }
}

#[test]
fn header_lists_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lie_ffi.h")).unwrap();
    for f in [
        "typedef struct LieElement LieElement",
        "LIE_STATUS_RESOURCE_LIMIT",
        "lie_kappa(",
        "lie_nu(",
        "lie_eta(",
        "lie_element_bracket(",
        "lie_element_is_lie(",
        "lie_element_charpoly(",
        "lie_space_dim(",
        "lie_sdet(",
        "lie_verify(",
        "lie_last_error(",
        "lie_element_free(",
        "lie_string_free(",
    ] {
        assert!(h.contains(f), "{f}");
    }
}
