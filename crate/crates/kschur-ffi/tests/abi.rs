//! Exercises the C ABI from Rust: status codes, buffers, opaque handles,
//! JSON payloads, and error reporting.

use std::ffi::{CStr, CString};
use std::ptr;

use kschur_ffi::*;

fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { ks_string_free(ptr) };
    text
}

#[test]
fn version_is_present() {
    let version = take_string(ks_version());
    assert!(!version.is_empty());
}

#[test]
fn charge_word_abi() {
    let word: Vec<u32> = vec![3, 5, 1, 4, 2];
    let mut out = 0u64;
    let status = unsafe { ks_charge_word(word.as_ptr(), word.len(), &mut out) };
    assert_eq!(status, KsStatus::Ok);
    assert_eq!(out, 6);

    // invalid word: status 1 plus a readable message
    let bad: Vec<u32> = vec![2, 2, 1];
    let status = unsafe { ks_charge_word(bad.as_ptr(), bad.len(), &mut out) };
    assert_eq!(status, KsStatus::InvalidInput);
    let message = take_string(ks_last_error());
    assert!(message.contains("not a partition"), "{message}");

    // null pointers are reported, not dereferenced
    let status = unsafe { ks_charge_word(ptr::null(), 3, &mut out) };
    assert_eq!(status, KsStatus::NullPointer);
    let status = unsafe { ks_charge_word(word.as_ptr(), word.len(), ptr::null_mut()) };
    assert_eq!(status, KsStatus::NullPointer);
}

#[test]
fn core_conversion_abi() {
    let bounded: Vec<u32> = vec![6, 2, 2, 1];
    let mut buf = [0u32; 8];
    let mut len = 0usize;
    let status = unsafe {
        ks_core_from_bounded(
            6,
            bounded.as_ptr(),
            bounded.len(),
            buf.as_mut_ptr(),
            buf.len(),
            &mut len,
        )
    };
    assert_eq!(status, KsStatus::Ok);
    assert_eq!(&buf[..len], &[8, 2, 2, 1]);

    let mut back = [0u32; 8];
    let mut back_len = 0usize;
    let status = unsafe {
        ks_bounded_from_core(
            6,
            buf.as_ptr(),
            len,
            back.as_mut_ptr(),
            back.len(),
            &mut back_len,
        )
    };
    assert_eq!(status, KsStatus::Ok);
    assert_eq!(&back[..back_len], &[6, 2, 2, 1]);

    // a too-small buffer still reports the needed length
    let mut tiny = [0u32; 1];
    let status = unsafe {
        ks_core_from_bounded(
            6,
            bounded.as_ptr(),
            bounded.len(),
            tiny.as_mut_ptr(),
            1,
            &mut len,
        )
    };
    assert_eq!(status, KsStatus::BufferTooSmall);
    assert_eq!(len, 4);

    // bound violation maps to invalid input
    let wide: Vec<u32> = vec![4];
    let status = unsafe {
        ks_core_from_bounded(
            3,
            wide.as_ptr(),
            wide.len(),
            buf.as_mut_ptr(),
            buf.len(),
            &mut len,
        )
    };
    assert_eq!(status, KsStatus::InvalidInput);
}

#[test]
fn kostka_matrix_abi() {
    let mut handle: *mut KsKostkaMatrix = ptr::null_mut();
    let status = unsafe { ks_kostka_matrix_new(2, 2, &mut handle) };
    assert_eq!(status, KsStatus::Ok);
    assert!(!handle.is_null());
    assert_eq!(unsafe { ks_kostka_matrix_dim(handle) }, 2);
    let json = take_string(unsafe { ks_kostka_matrix_to_json(handle) });
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(
        value["matrix"],
        serde_json::json!([[[1], [0, 1]], [[0], [1]]])
    );
    unsafe { ks_kostka_matrix_free(handle) };
    // freeing null is a no-op
    unsafe { ks_kostka_matrix_free(ptr::null_mut()) };
}

#[test]
fn kschur_expand_abi() {
    let lambda: Vec<u32> = vec![1, 1];
    let basis = CString::new("hl").unwrap();
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe {
        ks_kschur_expand_json(2, lambda.as_ptr(), lambda.len(), basis.as_ptr(), &mut out)
    };
    assert_eq!(status, KsStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(value["basis"], "hall_littlewood");
    assert_eq!(value["terms"][0]["index"], serde_json::json!([2]));
    assert_eq!(value["terms"][0]["coeff"], serde_json::json!([0, -1]));

    let bogus = CString::new("fourier").unwrap();
    let status = unsafe {
        ks_kschur_expand_json(2, lambda.as_ptr(), lambda.len(), bogus.as_ptr(), &mut out)
    };
    assert_eq!(status, KsStatus::InvalidInput);
}

#[test]
fn abc_enumerate_abi() {
    let weight: Vec<u32> = vec![1, 1];
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { ks_abc_enumerate_json(2, weight.as_ptr(), weight.len(), true, &mut out) };
    assert_eq!(status, KsStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let items = value.as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert!(items.iter().any(|i| i["stats"]["k_charge"] == 1));

    // weight entries above k are rejected
    let bad: Vec<u32> = vec![3];
    let status = unsafe { ks_abc_enumerate_json(2, bad.as_ptr(), bad.len(), false, &mut out) };
    assert_eq!(status, KsStatus::InvalidInput);
}
