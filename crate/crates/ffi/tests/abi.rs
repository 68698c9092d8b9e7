use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use shrinker_spectra_ffi::*;

#[test]
fn sphere_handle_round_trip() {
    unsafe {
        let mut s: *mut ShsSpectrum = ptr::null_mut();
        assert_eq!(shs_spectrum_sphere(2, 3, &mut s), ShsStatus::Ok);
        let mut levels = 0;
        assert_eq!(shs_spectrum_num_levels(s, &mut levels), ShsStatus::Ok);
        assert_eq!(levels, 3);
        let (mut lambda, mut mult) = (0.0, 0);
        assert_eq!(shs_spectrum_level(s, 1, &mut lambda, &mut mult), ShsStatus::Ok);
        assert_eq!((lambda, mult), (1.0, 3));
        assert_eq!(shs_spectrum_level(s, 3, &mut lambda, &mut mult), ShsStatus::InvalidArgument);
        assert!(!shs_last_error().is_null());

        let mut json = ptr::null_mut();
        assert_eq!(shs_spectrum_to_json(s, &mut json), ShsStatus::Ok);
        let copy = CString::from(CStr::from_ptr(json));
        shs_string_free(json);
        let mut back: *mut ShsSpectrum = ptr::null_mut();
        assert_eq!(shs_spectrum_from_json(copy.as_ptr(), &mut back), ShsStatus::Ok);
        let mut back_levels = 0;
        shs_spectrum_num_levels(back, &mut back_levels);
        assert_eq!(back_levels, 3);

        let mut r = ShsYangReport::default();
        assert_eq!(shs_yang_check(s, 2, 2.0, 1, &mut r), ShsStatus::Ok);
        assert!(r.satisfied);
        assert!(r.gap.abs() <= 1e-9 * r.rhs);
        assert_eq!(shs_yang_check(s, 2, 2.0, 40, &mut r), ShsStatus::InsufficientData);

        shs_spectrum_free(back);
        shs_spectrum_free(s);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s: *mut ShsSpectrum = ptr::null_mut();
        assert_eq!(shs_spectrum_sphere(0, 3, &mut s), ShsStatus::InvalidArgument);
        assert!(s.is_null());
        assert_eq!(shs_spectrum_sphere(2, 3, ptr::null_mut()), ShsStatus::NullPointer);
        let bad = CString::new("{ nope").unwrap();
        assert_eq!(shs_spectrum_from_json(bad.as_ptr(), &mut s), ShsStatus::Parse);
        let msg = CStr::from_ptr(shs_last_error()).to_str().unwrap();
        assert!(!msg.is_empty());
        let mut x = 0.0;
        assert_eq!(shs_thm12_bound(2, 4.0, 3, &mut x), ShsStatus::Domain);
        assert_eq!(shs_a_coeff(1000, &mut x), ShsStatus::Domain);
        shs_spectrum_free(ptr::null_mut());
        shs_string_free(ptr::null_mut());
    }
}

#[test]
fn numbers_match_the_library() {
    unsafe {
        let mut bound = 0.0;
        assert_eq!(shs_thm12_bound(3, 3.0, 2, &mut bound), ShsStatus::Ok);
        let direct = shrinker_spectra::chengyang::thm12_bound(3, 3.0, 2).unwrap().bound_value;
        assert_eq!(bound, direct);

        let mut a = 0.0;
        assert_eq!(shs_a_coeff(0, &mut a), ShsStatus::Ok);
        assert_eq!(a, 4.0);

        let (mut a1, mut a2, mut a3) = (0.0, 0.0, 0.0);
        assert_eq!(shs_table1_row(1, &mut a1, &mut a2, &mut a3), ShsStatus::Ok);
        assert!((a1 - 2.31).abs() <= 0.01 && (a2 - 2.61).abs() <= 0.01 && (a3 - 2.63).abs() <= 0.01);
        assert_eq!(shs_table1_row(0, &mut a1, &mut a2, &mut a3), ShsStatus::InvalidArgument);
        assert_eq!(shs_table1_row(42, &mut a1, &mut a2, &mut a3), ShsStatus::InvalidArgument);

        let mut s: *mut ShsSpectrum = ptr::null_mut();
        assert_eq!(shs_spectrum_dirichlet_interval(-6.0, 6.0, 2000, 2, &mut s), ShsStatus::Ok);
        let (mut lambda, mut mult) = (0.0, 0);
        shs_spectrum_level(s, 1, &mut lambda, &mut mult);
        assert!((lambda - 1.0).abs() < 1e-3);
        shs_spectrum_free(s);

        assert_eq!(shs_spectrum_cylinder(1, 2, 2, &mut s), ShsStatus::Ok);
        shs_spectrum_level(s, 1, &mut lambda, &mut mult);
        assert_eq!((lambda, mult), (1.0, 3));
        shs_spectrum_free(s);
        assert_eq!(shs_spectrum_ou(2, 4, &mut s), ShsStatus::Ok);
        shs_spectrum_level(s, 3, &mut lambda, &mut mult);
        assert_eq!((lambda, mult), (3.0, 4));
        shs_spectrum_free(s);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "shrinker_spectra.h"

int main(void) {
    ShsSpectrum *s = NULL;
    if (shs_spectrum_sphere(3, 4, &s) != SHS_STATUS_OK) return 10;
    size_t levels = 0;
    shs_spectrum_num_levels(s, &levels);
    if (levels != 4) return 11;
    double lambda; size_t mult;
    shs_spectrum_level(s, 3, &lambda, &mult);
    if (lambda != 5.0 || mult != 16) return 12;
    ShsYangReport r;
    if (shs_yang_check(s, 3, 3.0, 2, &r) != SHS_STATUS_OK || !r.satisfied) return 13;
    if (shs_yang_check(s, 3, 3.0, 500, &r) != SHS_STATUS_INSUFFICIENT_DATA) return 14;
    if (shs_last_error() == NULL) return 15;
    char *json = NULL;
    shs_spectrum_to_json(s, &json);
    printf("%s\n", json);
    shs_string_free(json);
    shs_spectrum_free(s);
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!("no C compiler ({compiler}); skipping");
        return;
    }
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    // tests run from target/<profile>/deps
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    assert!(
        lib_dir.join("libshrinker_spectra_ffi.so").exists() || lib_dir.join("libshrinker_spectra_ffi.a").exists(),
        "library not found in {}",
        lib_dir.display()
    );
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(&compiler)
        .arg(&src)
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lshrinker_spectra_ffi")
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"mult\": 16"));
    std::fs::remove_dir_all(&dir).ok();
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shs-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
