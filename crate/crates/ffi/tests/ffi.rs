use std::ffi::{CStr, CString};
use std::ptr;

use blobcell_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { blobcell_string_free(p) };
    s
}

fn poly_string(p: *const BlobcellPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { blobcell_poly_to_string(p, &mut s) },
        BlobcellStatus::Ok
    );
    take_string(s)
}

#[test]
fn beta_matches_closed_form() {
    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(blobcell_beta(2, 1, &mut a), BlobcellStatus::Ok);
        assert_eq!(blobcell_beta_closed(2, 1, &mut b), BlobcellStatus::Ok);
        let mut eq = 0;
        assert_eq!(blobcell_poly_equal(a, b, &mut eq), BlobcellStatus::Ok);
        assert_eq!(eq, 1);
        blobcell_poly_free(a);
        blobcell_poly_free(b);
    }
}

#[test]
fn poly_roundtrip() {
    let text = CString::new("xy+(1/2)y^2").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { blobcell_poly_parse(text.as_ptr(), &mut p) },
        BlobcellStatus::Ok
    );
    assert_eq!(poly_string(p), "xy+(1/2)y^2");
    unsafe { blobcell_poly_free(p) };

    let bad = CString::new("x+").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { blobcell_poly_parse(bad.as_ptr(), &mut q) },
        BlobcellStatus::ParseError
    );
    assert!(q.is_null());
    assert!(!blobcell_last_error_message().is_null());
}

#[test]
fn blocks() {
    let mut b = ptr::null_mut();
    let mut len = 0;
    unsafe {
        assert_eq!(blobcell_gram_blocks(5, -3, &mut b), BlobcellStatus::Ok);
        assert_eq!(blobcell_blocks_len(b, &mut len), BlobcellStatus::Ok);
        assert_eq!(len, 2);
        let (mut d, mut deg, mut c) = (0, 0, ptr::null_mut());
        assert_eq!(
            blobcell_blocks_get(b, 0, &mut d, &mut deg, &mut c),
            BlobcellStatus::Ok
        );
        assert_eq!((d, deg, poly_string(c)), (4, 1, "x".to_string()));
        blobcell_poly_free(c);
        assert_eq!(
            blobcell_blocks_get(b, 2, &mut d, &mut deg, &mut c),
            BlobcellStatus::InvalidArgument
        );
        blobcell_blocks_free(b);
    }
}

#[test]
fn errors_and_nulls() {
    let mut b = ptr::null_mut();
    assert_eq!(
        unsafe { blobcell_gram_blocks(4, 1, &mut b) },
        BlobcellStatus::InvalidArgument
    );
    let msg = unsafe { CStr::from_ptr(blobcell_last_error_message()) };
    assert!(msg.to_str().unwrap().contains("lambda"));
    assert_eq!(
        unsafe { blobcell_beta(1, 0, ptr::null_mut()) },
        BlobcellStatus::NullPointer
    );
    let mut len = 0;
    assert_eq!(
        unsafe { blobcell_blocks_len(ptr::null(), &mut len) },
        BlobcellStatus::NullPointer
    );
    unsafe {
        blobcell_poly_free(ptr::null_mut());
        blobcell_string_free(ptr::null_mut());
    }
}

#[test]
fn jones_wenzl() {
    let mut j = ptr::null_mut();
    let mut n = 0;
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(blobcell_jw(3, &mut j), BlobcellStatus::Ok);
        assert_eq!(blobcell_tl_num_terms(j, &mut n), BlobcellStatus::Ok);
        assert_eq!(n, 5);
        assert_eq!(blobcell_tl_to_json(j, &mut s), BlobcellStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        let one = v
            .as_array()
            .unwrap()
            .iter()
            .find(|t| t["word"] == "1")
            .unwrap();
        assert_eq!(one["coeff"], "1");
        blobcell_tl_free(j);
        assert_eq!(blobcell_jw(0, &mut j), BlobcellStatus::InvalidArgument);
    }
}

#[test]
fn sum_formula_and_dims() {
    let w = CString::new("ststs").unwrap();
    let v = CString::new("s").unwrap();
    let mut r = ptr::null_mut();
    let mut pass = 0;
    let (mut lhs, mut rhs, mut js) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(
            blobcell_sum_formula_check(w.as_ptr(), v.as_ptr(), &mut r),
            BlobcellStatus::Ok
        );
        assert_eq!(blobcell_report_pass(r, &mut pass), BlobcellStatus::Ok);
        assert_eq!(pass, 1);
        blobcell_report_lhs(r, &mut lhs);
        blobcell_report_rhs(r, &mut rhs);
        assert_eq!(take_string(lhs), take_string(rhs));
        blobcell_report_to_json(r, &mut js);
        let parsed: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
        assert_eq!(parsed["pass"], true);
        blobcell_report_free(r);

        let unreduced = CString::new("ss").unwrap();
        assert_eq!(
            blobcell_sum_formula_check(unreduced.as_ptr(), v.as_ptr(), &mut r),
            BlobcellStatus::InvalidArgument
        );
        let garbage = CString::new("sx").unwrap();
        assert_eq!(
            blobcell_sum_formula_check(garbage.as_ptr(), v.as_ptr(), &mut r),
            BlobcellStatus::ParseError
        );

        let mut d = ptr::null_mut();
        assert_eq!(blobcell_graded_dim_cell(5, -1, &mut d), BlobcellStatus::Ok);
        assert_eq!(take_string(d), "5q + 4q^3 + q^5");
    }
}

#[test]
fn gram_json_and_verify() {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { blobcell_gram_matrix_json(2, 0, &mut s) },
        BlobcellStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
    let mut failures = usize::MAX;
    assert_eq!(
        unsafe { blobcell_verify(2, &mut failures) },
        BlobcellStatus::Ok
    );
    assert_eq!(failures, 0);
}
