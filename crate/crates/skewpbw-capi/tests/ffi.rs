//! Exercises the C entry points the way a foreign caller would: through
//! raw pointers and status codes.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use skewpbw_capi::*;

fn cstr(text: &str) -> CString {
    CString::new(text).unwrap()
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { spbw_string_free(ptr) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(spbw_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn parse_render_round_trip() {
    let text = cstr("algebra jordan\nfield Q\ngen x:1 y:1\nrel y*x - x*y - x^2\n");
    let mut item: *mut SpbwItem = ptr::null_mut();
    assert_eq!(unsafe { spbw_parse(text.as_ptr(), &mut item) }, SPBW_OK);
    assert_eq!(unsafe { spbw_item_kind(item) }, 0);

    let mut rendered: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_render(item, &mut rendered) }, SPBW_OK);
    assert_eq!(
        take_string(rendered),
        "algebra jordan\nfield Q\ngen x:1 y:1\nrel y*x - x*y - x^2\n"
    );

    let mut hilbert: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_hilbert(item, 5, &mut hilbert) }, SPBW_OK);
    assert_eq!(take_string(hilbert), "1 2 3 4 5 6");

    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_validate(item, &mut report) }, SPBW_OK);
    assert_eq!(take_string(report), "valid\n");

    unsafe { spbw_item_free(item) };
}

#[test]
fn catalog_with_field_and_params() {
    let name = cstr("quantum_plane");
    let field = cstr("GF32003");
    let params = cstr("q=1/3");
    let mut item: *mut SpbwItem = ptr::null_mut();
    assert_eq!(
        unsafe { spbw_catalog(name.as_ptr(), field.as_ptr(), params.as_ptr(), &mut item) },
        SPBW_OK
    );
    assert_eq!(unsafe { spbw_item_kind(item) }, 1);

    let mut flags: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_classify(item, 5, &mut flags) }, SPBW_OK);
    let flags = take_string(flags);
    assert!(flags.contains("quasi_commutative=true"), "{flags}");

    let mut emitted: *mut SpbwItem = ptr::null_mut();
    assert_eq!(
        unsafe { spbw_extension_presentation(item, &mut emitted) },
        SPBW_OK
    );
    assert_eq!(unsafe { spbw_item_kind(emitted) }, 0);

    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_koszul(emitted, &mut report) }, SPBW_OK);
    let report = take_string(report);
    assert!(report.contains("overall=Pass"), "{report}");

    unsafe { spbw_item_free(emitted) };
    unsafe { spbw_item_free(item) };
}

#[test]
fn pbw_failure_carries_witness() {
    let name = cstr("remark_order_algebra");
    let mut item: *mut SpbwItem = ptr::null_mut();
    assert_eq!(
        unsafe { spbw_catalog(name.as_ptr(), ptr::null(), ptr::null(), &mut item) },
        SPBW_OK
    );
    let mut witness: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_pbw(item, 3, &mut witness) }, SPBW_FAIL);
    assert_eq!(take_string(witness), "y*x^2 - x^2*y");
    unsafe { spbw_item_free(item) };
}

#[test]
fn koszul_failure_is_reported() {
    let text = cstr("algebra zfix\nfield GF 32003\ngen x:1 y:1 z:1\nrel z^2\nrel z*y\nrel z*x - x^2\n");
    let mut item: *mut SpbwItem = ptr::null_mut();
    assert_eq!(unsafe { spbw_parse(text.as_ptr(), &mut item) }, SPBW_OK);
    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_koszul(item, &mut report) }, SPBW_FAIL);
    let report = take_string(report);
    assert!(report.contains("witness=(s,p)=(3,4)"), "{report}");
    unsafe { spbw_item_free(item) };
}

#[test]
fn dual_builds_a_new_handle() {
    let name = cstr("remark_v_algebra");
    let mut item: *mut SpbwItem = ptr::null_mut();
    assert_eq!(
        unsafe { spbw_catalog(name.as_ptr(), ptr::null(), ptr::null(), &mut item) },
        SPBW_OK
    );
    let mut dual: *mut SpbwItem = ptr::null_mut();
    assert_eq!(unsafe { spbw_dual(item, &mut dual) }, SPBW_OK);
    let mut rendered: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { spbw_render(dual, &mut rendered) }, SPBW_OK);
    let rendered = take_string(rendered);
    assert!(rendered.starts_with("algebra remark_v_algebra_dual\n"), "{rendered}");
    assert!(rendered.contains("rel y*x\n"), "{rendered}");
    assert!(rendered.contains("rel x^2\n"), "{rendered}");
    unsafe { spbw_item_free(dual) };
    unsafe { spbw_item_free(item) };
}

#[test]
fn errors_set_codes_and_messages() {
    let mut item: *mut SpbwItem = ptr::null_mut();
    assert_eq!(
        unsafe { spbw_parse(ptr::null(), &mut item) },
        SPBW_ERR_INVALID_ARG
    );
    assert_eq!(last_error(), "null pointer argument");

    let bad = cstr("algebra a\nfield GF 4\n");
    assert_eq!(unsafe { spbw_parse(bad.as_ptr(), &mut item) }, SPBW_ERR_PARSE);
    assert!(last_error().contains("not prime"), "{}", last_error());

    let name = cstr("nope");
    assert_eq!(
        unsafe { spbw_catalog(name.as_ptr(), ptr::null(), ptr::null(), &mut item) },
        SPBW_ERR_PARSE
    );
    assert!(last_error().contains("unknown catalog entry"), "{}", last_error());

    // Invalid UTF-8 in a parameter string.
    let raw = CString::new(vec![0xffu8, 0x20]).unwrap();
    assert_eq!(
        unsafe { spbw_parse(raw.as_ptr(), &mut item) },
        SPBW_ERR_INVALID_ARG
    );

    // A cubic relation is outside the quadratic toolkit.
    let cubic = cstr("algebra c\nfield Q\ngen x:1\nrel x^3\n");
    assert_eq!(unsafe { spbw_parse(cubic.as_ptr(), &mut item) }, SPBW_OK);
    let mut witness: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { spbw_pbw(item, 3, &mut witness) },
        SPBW_ERR_UNSUPPORTED
    );
    assert!(witness.is_null());
    let mut dual: *mut SpbwItem = ptr::null_mut();
    assert_eq!(unsafe { spbw_dual(item, &mut dual) }, SPBW_ERR_UNSUPPORTED);
    assert_eq!(
        unsafe { spbw_extension_presentation(item, &mut dual) },
        SPBW_ERR_UNSUPPORTED
    );
    unsafe { spbw_item_free(item) };

    unsafe { spbw_string_free(ptr::null_mut()) };
    unsafe { spbw_item_free(ptr::null_mut()) };
    assert_eq!(unsafe { spbw_item_kind(ptr::null()) }, SPBW_ERR_INVALID_ARG);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(spbw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
