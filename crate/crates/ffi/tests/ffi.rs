use std::ffi::{CStr, CString};
use std::ptr;

use trisym_ffi::*;

fn last_error() -> String {
    let p = trisym_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    trisym_string_free(p);
    s
}

#[test]
fn root_system_roundtrip() {
    let ty = CString::new("G2").unwrap();
    let mut rs = ptr::null_mut();
    unsafe {
        assert_eq!(trisym_root_system_new(ty.as_ptr(), &mut rs), TrisymStatus::Ok);
        let mut n = 0usize;
        assert_eq!(trisym_root_system_num_positive(rs, &mut n), TrisymStatus::Ok);
        assert_eq!(n, 6);
        let mut js = ptr::null_mut();
        assert_eq!(trisym_root_system_to_json(rs, &mut js), TrisymStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(v["marks"], serde_json::json!([3, 2]));
        trisym_root_system_free(rs);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("C1").unwrap();
    let mut rs = ptr::null_mut();
    unsafe {
        assert_eq!(trisym_root_system_new(bad.as_ptr(), &mut rs), TrisymStatus::InvalidType);
        assert!(rs.is_null());
        assert!(last_error().contains("C1"));

        assert_eq!(trisym_root_system_new(ptr::null(), &mut rs), TrisymStatus::NullPointer);

        let name = CString::new("cp3-spp").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(trisym_space_new(name.as_ptr(), &mut s), TrisymStatus::UnknownSpace);
        assert!(last_error().contains("cp3-sp"));

        let name = CString::new("C3:A3I:1").unwrap();
        assert_eq!(trisym_space_new(name.as_ptr(), &mut s), TrisymStatus::MarkConstraint);

        let mut n = 0usize;
        assert_eq!(trisym_space_dim_m(ptr::null(), &mut n), TrisymStatus::NullPointer);
    }
    // a successful call clears the message
    assert_eq!(trisym_pinch_config_default().starts, 64);
    let ty = CString::new("A1").unwrap();
    let mut rs = ptr::null_mut();
    unsafe {
        assert_eq!(trisym_root_system_new(ty.as_ptr(), &mut rs), TrisymStatus::Ok);
        assert!(trisym_last_error().is_null());
        trisym_root_system_free(rs);
    }
}

#[test]
fn pinch_cp3() {
    let name = CString::new("cp3-sp").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(trisym_space_new(name.as_ptr(), &mut s), TrisymStatus::Ok);
        let mut dim = 0usize;
        assert_eq!(trisym_space_dim_m(s, &mut dim), TrisymStatus::Ok);
        assert_eq!(dim, 6);

        let mut js = ptr::null_mut();
        assert_eq!(trisym_space_to_json(s, &mut js), TrisymStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(v["isotropy"], "A1+T1");

        let mut cfg = trisym_pinch_config_default();
        cfg.starts = 8;
        let mut r = ptr::null_mut();
        assert_eq!(trisym_pinch(s, &cfg, &mut r), TrisymStatus::Ok);
        let (mut kmin, mut kmax, mut delta) = (0.0, 0.0, 0.0);
        assert_eq!(trisym_report_kmin(r, &mut kmin), TrisymStatus::Ok);
        assert_eq!(trisym_report_kmax(r, &mut kmax), TrisymStatus::Ok);
        assert_eq!(trisym_report_delta(r, &mut delta), TrisymStatus::Ok);
        assert!((kmin - 1.0 / 24.0).abs() < 1e-6);
        assert!((kmax - 2.0 / 3.0).abs() < 1e-6);
        assert!((delta - 0.0625).abs() < 1e-4);
        let mut conv = 0usize;
        assert_eq!(trisym_report_converged_starts(r, &mut conv), TrisymStatus::Ok);
        assert_eq!(conv, 8);
        let mut js = ptr::null_mut();
        assert_eq!(trisym_report_to_json(r, &mut js), TrisymStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(v["scale"], "1/2");
        assert_eq!(v["starts"], 8);
        trisym_report_free(r);

        cfg.scale_den = 0;
        assert_eq!(trisym_pinch(s, &cfg, &mut r), TrisymStatus::InvalidArgument);
        cfg.scale_den = 2;
        cfg.scale_num = -1;
        assert_eq!(trisym_pinch(s, &cfg, &mut r), TrisymStatus::InvalidArgument);
        trisym_space_free(s);
    }
}

#[test]
fn header_declares_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/trisym.h")).unwrap();
    for f in [
        "trisym_root_system_new",
        "trisym_space_new",
        "trisym_pinch",
        "trisym_report_delta",
        "trisym_string_free",
        "trisym_last_error",
        "TRISYM_STATUS_UNKNOWN_SPACE",
    ] {
        assert!(h.contains(f), "{f}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include/trisym.h"))
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
