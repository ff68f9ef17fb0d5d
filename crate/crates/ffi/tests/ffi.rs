use std::ffi::{CStr, CString};
use std::ptr;

use fgm_inaccuracy_ffi::*;

fn model(x: &str, alpha: f64) -> *mut FgmModelHandle {
    let x = CString::new(x).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { fgm_model_new(x.as_ptr(), ptr::null(), alpha, &mut h) };
    assert_eq!(st, FgmStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = fgm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

const OS_1_3: FgmGos = FgmGos { r: 1, n: 3, m: 0.0, k: 1.0 };
const RECORD_2: FgmGos = FgmGos { r: 2, n: 2, m: -1.0, k: 1.0 };

#[test]
fn c_star_values() {
    let mut c = 0.0;
    assert_eq!(unsafe { fgm_c_star(&OS_1_3, &mut c) }, FgmStatus::Ok);
    assert!((c - 0.5).abs() < 1e-15);
    assert_eq!(unsafe { fgm_c_star(&RECORD_2, &mut c) }, FgmStatus::Ok);
    assert!((c + 0.5).abs() < 1e-15);
    assert!(fgm_last_error_message().is_null());
}

#[test]
fn measures_through_handle() {
    let h = model("exponential:theta=1", 1.0);
    let mut m = FgmMeasure { value: 0.0, abs_error: 0.0, method: FgmMethod::Quadrature };
    assert_eq!(unsafe { fgm_inaccuracy(h, &OS_1_3, &mut m) }, FgmStatus::Ok);
    assert_eq!(m.value, 0.75);
    assert_eq!(m.method, FgmMethod::ClosedForm);

    assert_eq!(unsafe { fgm_inaccuracy_quantile_form(h, &OS_1_3, &mut m) }, FgmStatus::Ok);
    assert!((m.value - 0.75).abs() < 1e-8);
    assert_eq!(m.method, FgmMethod::QuantileForm);

    for f in [fgm_cpi, fgm_reversed_cpi, fgm_reversed_inaccuracy] {
        assert_eq!(unsafe { f(h, &RECORD_2, &mut m) }, FgmStatus::Ok);
        assert!(m.value.is_finite() && m.value > 0.0);
    }

    let mut b = FgmCpiBound::Equal;
    assert_eq!(unsafe { fgm_cpi_bound(h, &RECORD_2, &mut b) }, FgmStatus::Ok);
    assert_eq!(b, FgmCpiBound::BelowCe);

    let (mut pdf, mut cdf) = (0.0, 0.0);
    unsafe {
        assert_eq!(fgm_concomitant_pdf(h, &OS_1_3, 0.0, &mut pdf), FgmStatus::Ok);
        assert_eq!(fgm_concomitant_cdf(h, &OS_1_3, 0.0, &mut cdf), FgmStatus::Ok);
        fgm_model_free(h);
    }
    assert!((pdf - 1.5).abs() < 1e-15);
    assert_eq!(cdf, 0.0);
}

#[test]
fn sampling_is_reproducible() {
    let h = model("uniform:theta=1", -1.0);
    let mut a = vec![0.0; 64];
    let mut b = vec![0.0; 64];
    let mut c = vec![0.0; 64];
    unsafe {
        assert_eq!(fgm_sample_concomitants(h, &RECORD_2, 7, 0, a.as_mut_ptr(), a.len()), FgmStatus::Ok);
        assert_eq!(fgm_sample_concomitants(h, &RECORD_2, 7, 0, b.as_mut_ptr(), b.len()), FgmStatus::Ok);
        assert_eq!(fgm_sample_concomitants(h, &RECORD_2, 7, 1, c.as_mut_ptr(), c.len()), FgmStatus::Ok);
        fgm_model_free(h);
    }
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.iter().all(|v| (0.0..=1.0).contains(v)));
}

#[test]
fn empirical_and_moments() {
    let values = [0.2, 0.4, 0.6, 0.8];
    let mut v = 0.0;
    let gos = FgmGos { r: 2, n: 2, m: -1.0, k: 1.0 };
    assert_eq!(unsafe { fgm_empirical_cpi(values.as_ptr(), values.len(), 0.0, &gos, &mut v) }, FgmStatus::Ok);
    // independence: sum of 0.2·(j/4)(−ln(j/4)) for j = 1..3
    let expect: f64 = (1..4).map(|j| 0.2 * (j as f64 / 4.0) * -(j as f64 / 4.0).ln()).sum();
    assert!((v - expect).abs() < 1e-15);

    let mut m = FgmMoments { mean: 0.0, variance: 0.0 };
    assert_eq!(unsafe { fgm_moments_exponential(20, 1.0, 0.5, 2, &mut m) }, FgmStatus::Ok);
    assert!((m.mean - 0.557).abs() < 5e-4);
    let mut independent = m;
    let mut exact = m;
    unsafe {
        assert_eq!(fgm_moments_uniform(10, -1.0, 2, false, &mut independent), FgmStatus::Ok);
        assert_eq!(fgm_moments_uniform(10, -1.0, 2, true, &mut exact), FgmStatus::Ok);
    }
    assert_eq!(independent.mean, exact.mean);
    assert!(exact.variance < independent.variance);
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    let mut v = 0.0;
    let mut m = FgmMeasure { value: 0.0, abs_error: 0.0, method: FgmMethod::Quadrature };
    unsafe {
        let bad = CString::new("rayleigh:sigma=-1").unwrap();
        assert_eq!(fgm_model_new(bad.as_ptr(), ptr::null(), 0.5, &mut h), FgmStatus::Parse);
        assert!(last_error().contains(":16:"), "{}", last_error());
        assert!(h.is_null());

        let invalid = b"exp\xff\0";
        assert_eq!(
            fgm_model_new(invalid.as_ptr().cast(), ptr::null(), 0.5, &mut h),
            FgmStatus::InvalidUtf8
        );

        let ok = CString::new("logistic").unwrap();
        assert_eq!(fgm_model_new(ok.as_ptr(), ptr::null(), 2.0, &mut h), FgmStatus::Domain);
        assert_eq!(fgm_model_new(ptr::null(), ptr::null(), 0.5, &mut h), FgmStatus::NullPointer);
        assert_eq!(fgm_model_new(ok.as_ptr(), ptr::null(), 0.5, ptr::null_mut()), FgmStatus::NullPointer);

        assert_eq!(fgm_c_star(ptr::null(), &mut v), FgmStatus::NullPointer);
        assert_eq!(fgm_c_star(&OS_1_3, ptr::null_mut()), FgmStatus::NullPointer);
        let bad_gos = FgmGos { r: 4, n: 3, m: 0.0, k: 1.0 };
        assert_eq!(fgm_c_star(&bad_gos, &mut v), FgmStatus::Domain);
        assert_eq!(fgm_inaccuracy(ptr::null(), &OS_1_3, &mut m), FgmStatus::NullPointer);

        let h = model("rayleigh:sigma=1", 0.5);
        assert_eq!(fgm_sample_concomitants(h, &FgmGos { r: 2, n: 5, m: 1.0, k: 2.0 }, 1, 0, &mut v, 1), FgmStatus::Unsupported);
        let mut b = FgmCpiBound::Equal;
        assert_eq!(fgm_cpi_bound(h, &FgmGos { r: 3, n: 3, m: 0.0, k: 1.0 }, &mut b), FgmStatus::Domain);
        fgm_model_free(h);

        let one = [1.0];
        assert_eq!(fgm_empirical_cpi(one.as_ptr(), 1, 0.0, &RECORD_2, &mut v), FgmStatus::Domain);
        fgm_model_free(ptr::null_mut());
    }
    // a successful call clears the message
    unsafe { fgm_c_star(&OS_1_3, &mut v) };
    assert!(fgm_last_error_message().is_null());
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fgm_inaccuracy.h")).unwrap();
    for name in [
        "fgm_last_error_message",
        "fgm_model_new",
        "fgm_model_free",
        "fgm_c_star",
        "fgm_concomitant_pdf",
        "fgm_concomitant_cdf",
        "fgm_inaccuracy",
        "fgm_inaccuracy_quantile_form",
        "fgm_reversed_inaccuracy",
        "fgm_cpi",
        "fgm_reversed_cpi",
        "fgm_cpi_bound",
        "fgm_empirical_cpi",
        "fgm_sample_concomitants",
        "fgm_moments_exponential",
        "fgm_moments_uniform",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct FgmModel FgmModel;"));
    assert!(header.contains("FGM_STATUS_PANIC = 7"));
}
