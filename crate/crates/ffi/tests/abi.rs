use std::ffi::{CStr, CString};
use std::ptr;

use monetary_lens_ffi::*;

fn last_error() -> String {
    let p = ml_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn fisher_through_the_abi() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(ml_economy_fisher(&mut e), MlStatus::Ok);
        let mut s = MlSummary::default();
        assert_eq!(ml_economy_summarize(e, &mut s), MlStatus::Ok);
        assert_eq!(s.velocity, 20.0);
        assert_eq!(s.gdp, 50_000_000.0);

        let mut price = 0.0;
        let coal = CString::new("coal").unwrap();
        assert_eq!(ml_economy_price(e, coal.as_ptr(), &mut price), MlStatus::Ok);
        assert_eq!(price, 5.0);

        let tin = CString::new("tin").unwrap();
        assert_eq!(ml_economy_price(e, tin.as_ptr(), &mut price), MlStatus::UnknownGood);
        assert!(last_error().contains("tin"));

        let mut d = ptr::null_mut();
        assert_eq!(ml_economy_scale_production(e, -1.0, &mut d), MlStatus::Domain);
        assert!(d.is_null());
        ml_economy_free(e);
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        assert_eq!(ml_economy_fisher(ptr::null_mut()), MlStatus::NullPointer);
        let mut s = MlSummary::default();
        assert_eq!(ml_economy_summarize(ptr::null(), &mut s), MlStatus::NullPointer);
        assert_eq!(ml_series_len(ptr::null()), 0);
        let mut out = ptr::null_mut();
        let label = CString::new("x").unwrap();
        assert_eq!(
            ml_series_new(label.as_ptr(), label.as_ptr(), 1.0, ptr::null(), ptr::null(), 2, &mut out),
            MlStatus::NullPointer
        );
    }
}

#[test]
fn series_validation_maps_to_status() {
    unsafe {
        let label = CString::new("x").unwrap();
        let cur = CString::new("USD").unwrap();
        let years = [2001, 2000];
        let values = [1.0, 2.0];
        let mut out = ptr::null_mut();
        assert_eq!(
            ml_series_new(label.as_ptr(), cur.as_ptr(), 1.0, years.as_ptr(), values.as_ptr(), 2, &mut out),
            MlStatus::InvalidArgument
        );
        let missing = CString::new("/nonexistent/m2.csv").unwrap();
        assert_eq!(
            ml_series_load(missing.as_ptr(), label.as_ptr(), cur.as_ptr(), 1.0, &mut out),
            MlStatus::Io
        );
        assert!(last_error().contains("/nonexistent/m2.csv"));
    }
}

#[test]
fn loads_bundled_russia_fixture() {
    let path = CString::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/russia/m2.csv")).unwrap();
    let label = CString::new("M2").unwrap();
    let cur = CString::new("RUB").unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ml_series_load(path.as_ptr(), label.as_ptr(), cur.as_ptr(), 1e9, &mut s), MlStatus::Ok);
        let mut m = 0.0;
        assert_eq!(ml_series_growth_multiplier(s, 2000, 2010, &mut m), MlStatus::Ok);
        assert_eq!(m, 18.0);
        ml_series_free(s);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/monetary_lens.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}
