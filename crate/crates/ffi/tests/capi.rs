use std::ffi::{CStr, CString};
use std::ptr;

use boundary_lab_ffi::*;

fn load(name: &str) -> *mut BlSystem {
    let name = CString::new(name).unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { bl_system_load(name.as_ptr(), 8, &mut sys) }, BlStatus::Ok);
    assert!(!sys.is_null());
    sys
}

#[test]
fn system_queries_round_trip() {
    let sys = load("pants");
    unsafe {
        let mut rank = 0;
        assert_eq!(bl_system_rank(sys, &mut rank), BlStatus::Ok);
        assert_eq!(rank, 2);
        let mut len = 0.0;
        assert_eq!(bl_cover_length(sys, 3, &mut len), BlStatus::Ok);
        assert!(len > 0.0 && len < std::f64::consts::TAU);
        let mut count = 0;
        assert_eq!(bl_quotient_count(sys, 6, &mut count), BlStatus::Ok);
        assert_eq!(count, 3);
        bl_system_free(sys);
    }
}

#[test]
fn classify_json_is_valid_json() {
    let sys = load("cyclic");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(bl_classify_json(sys, 0.3, 64, &mut s), BlStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        bl_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.is_object());
        let mut t = BlRadialType::Undecided;
        assert_eq!(bl_radial_type(sys, 0.3, 64, &mut t), BlStatus::Ok);
        assert_eq!(t, BlRadialType::Escaping);
        let mut class = BlPrimeEndClass::Singular;
        assert_eq!(bl_prime_end_class(sys, 0.3, 64, &mut class), BlStatus::Ok);
        bl_system_free(sys);
    }
}

#[test]
fn errors_are_codes_not_crashes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(bl_system_load(ptr::null(), 8, &mut out), BlStatus::NullPointer);
        let bad = CString::new("{ not json").unwrap();
        assert_eq!(bl_system_from_json(bad.as_ptr(), &mut out), BlStatus::Parse);
        let missing = CString::new("/nonexistent/system.json").unwrap();
        assert_eq!(bl_system_load(missing.as_ptr(), 8, &mut out), BlStatus::Parse);
        let mut rank = 0;
        assert_eq!(bl_system_rank(ptr::null(), &mut rank), BlStatus::NullPointer);
        let mut cov = ptr::null_mut();
        assert_eq!(bl_covering_annulus(0.5, &mut cov), BlStatus::InvalidArgument);
        for code in 0..=8 {
            let status: BlStatus = std::mem::transmute(code as u32);
            assert!(!CStr::from_ptr(bl_status_message(status)).to_bytes().is_empty());
        }
        bl_system_free(ptr::null_mut());
        bl_covering_free(ptr::null_mut());
        bl_string_free(ptr::null_mut());
    }
}

#[test]
fn coverings_and_harmonic_measure() {
    unsafe {
        let mut cov = ptr::null_mut();
        assert_eq!(bl_covering_annulus(2.0, &mut cov), BlStatus::Ok);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(bl_covering_eval(cov, 0.0, 0.0, &mut re, &mut im), BlStatus::Ok);
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        let mut t = BlRadialType::Undecided;
        assert_eq!(bl_covering_radial(cov, 1.0, 400, &mut t), BlStatus::Ok);
        assert_eq!(t, BlRadialType::Escaping);
        // the fixed points of the deck generator lie over the core curve
        assert_eq!(bl_covering_radial(cov, 0.0, 400, &mut t), BlStatus::Ok);
        assert_eq!(t, BlRadialType::Bounded);
        assert_eq!(bl_covering_eval(cov, 2.0, 0.0, &mut re, &mut im), BlStatus::InvalidArgument);
        bl_covering_free(cov);

        let mut p = ptr::null_mut();
        assert_eq!(bl_covering_punctured(&mut p), BlStatus::Ok);
        assert_eq!(bl_covering_eval(p, 0.5, 0.0, &mut re, &mut im), BlStatus::Ok);
        assert!((re * re + im * im).sqrt() < 1.0);
        bl_covering_free(p);

        let (mut v, mut se) = (0.0, 0.0);
        assert_eq!(bl_harmonic_annulus(2.0, 1.0, 0.0, 0, 0, &mut v, &mut se), BlStatus::Ok);
        assert_eq!((v, se), (0.5, 0.0));
        assert_eq!(bl_harmonic_annulus(2.0, 1.0, 0.0, 4000, 3, &mut v, &mut se), BlStatus::Ok);
        assert!((v - 0.5).abs() < 5.0 * se);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/boundary_lab.h")).unwrap();
    for f in [
        "bl_status_message", "bl_system_load", "bl_system_from_json", "bl_system_free", "bl_system_rank",
        "bl_radial_type", "bl_prime_end_class", "bl_cover_length", "bl_quotient_count", "bl_classify_json",
        "bl_string_free", "bl_covering_annulus", "bl_covering_punctured", "bl_covering_free", "bl_covering_eval",
        "bl_covering_radial", "bl_harmonic_annulus",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct BlSystem BlSystem;"));
}
