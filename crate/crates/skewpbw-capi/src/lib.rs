//! C ABI over the skewpbw workbench.
//!
//! Handles are opaque; every function returns a status code. Codes >= 0
//! are verdicts (ok, definite failure with a witness, inconclusive);
//! codes < 0 are errors, with a message available from
//! `spbw_last_error()` until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! must be released with `spbw_string_free`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, c_int, c_uint, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skewpbw::catalog::{self, CatalogItem};
use skewpbw::koszul::{koszul_report, KoszulBounds};
use skewpbw::rewriting::{pbw_check, PbwStatus};
use skewpbw::scalar::FieldSpec;
use skewpbw::textio;
use skewpbw::ProbeStatus;

/// The check passed (or the call succeeded).
pub const SPBW_OK: c_int = 0;
/// The check found a definite counterexample; reports carry the witness.
pub const SPBW_FAIL: c_int = 1;
/// The bounded search could not decide either way.
pub const SPBW_INCONCLUSIVE: c_int = 2;
/// A pointer argument was null or not valid UTF-8.
pub const SPBW_ERR_INVALID_ARG: c_int = -1;
/// The input text or a parameter could not be parsed.
pub const SPBW_ERR_PARSE: c_int = -2;
/// The operation does not apply to this input (wrong kind, not quadratic).
pub const SPBW_ERR_UNSUPPORTED: c_int = -3;
/// An internal invariant broke; the handle is still safe to free.
pub const SPBW_ERR_PANIC: c_int = -4;

/// Opaque handle to a parsed presentation or extension.
pub struct SpbwItem {
    name: String,
    item: CatalogItem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).expect("nul bytes removed");
    });
}

fn error_code(e: &skewpbw::Error) -> c_int {
    use skewpbw::Error;
    match e {
        Error::Parse { .. } => SPBW_ERR_PARSE,
        Error::NotQuadratic(_) | Error::Extension(_) | Error::Precondition(_) => {
            SPBW_ERR_UNSUPPORTED
        }
        _ => SPBW_ERR_PARSE,
    }
}

fn fail(e: &skewpbw::Error) -> c_int {
    set_error(&e.to_string());
    error_code(e)
}

/// Runs `body` with panics converted to SPBW_ERR_PANIC.
fn guarded(body: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            SPBW_ERR_PANIC
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(SPBW_ERR_INVALID_ARG);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        SPBW_ERR_INVALID_ARG
    })
}

fn give_string(out: *mut *mut c_char, text: String) {
    if out.is_null() {
        return;
    }
    let cleaned: String = text.chars().filter(|&c| c != '\0').collect();
    let boxed = CString::new(cleaned).expect("nul bytes removed");
    unsafe {
        *out = boxed.into_raw();
    }
}

fn give_item(out: *mut *mut SpbwItem, name: String, item: CatalogItem) -> c_int {
    if out.is_null() {
        set_error("null out-parameter");
        return SPBW_ERR_INVALID_ARG;
    }
    unsafe {
        *out = Box::into_raw(Box::new(SpbwItem { name, item }));
    }
    SPBW_OK
}

/// # Safety
/// `item` must be a live handle or null.
unsafe fn borrow_item<'a>(item: *const SpbwItem) -> Result<&'a SpbwItem, c_int> {
    if item.is_null() {
        set_error("null item handle");
        return Err(SPBW_ERR_INVALID_ARG);
    }
    Ok(&*item)
}

/// The library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn spbw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The most recent error message on this thread; empty when no error has
/// occurred. The pointer is valid until the next failing call; do not
/// free.
#[no_mangle]
pub extern "C" fn spbw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string produced by this library.
///
/// # Safety
/// `s` must be null or a string returned through an out-parameter, and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spbw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses algebra or extension file text into a handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spbw_parse(text: *const c_char, out: *mut *mut SpbwItem) -> c_int {
    guarded(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match textio::parse_str(text) {
            Ok((name, item)) => give_item(out, name, item),
            Err(e) => fail(&e),
        }
    })
}

fn parse_field_name(text: &str) -> skewpbw::Result<FieldSpec> {
    if text.is_empty() || text == "Q" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(p) = text.strip_prefix("GF") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| skewpbw::Error::Field(format!("bad modulus in '{text}'")))?;
        return FieldSpec::prime_field(p);
    }
    Err(skewpbw::Error::Field(format!(
        "unknown field '{text}', expected Q or GF<p>"
    )))
}

/// Builds a catalog entry. `field` is "Q" or "GF<p>" (null means Q);
/// `params` is a comma-separated list like "q=1/3" (null means none).
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `field` and `params`
/// must each be null or valid NUL-terminated strings; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spbw_catalog(
    name: *const c_char,
    field: *const c_char,
    params: *const c_char,
    out: *mut *mut SpbwItem,
) -> c_int {
    guarded(|| {
        let name = match read_str(name) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let field = if field.is_null() {
            FieldSpec::rationals()
        } else {
            let text = match read_str(field) {
                Ok(t) => t,
                Err(code) => return code,
            };
            match parse_field_name(text) {
                Ok(f) => f,
                Err(e) => return fail(&e),
            }
        };
        let mut map = BTreeMap::new();
        if !params.is_null() {
            let text = match read_str(params) {
                Ok(t) => t,
                Err(code) => return code,
            };
            for piece in text.split(',').filter(|p| !p.trim().is_empty()) {
                let Some((k, v)) = piece.split_once('=') else {
                    set_error(&format!("expected NAME=VALUE in '{piece}'"));
                    return SPBW_ERR_PARSE;
                };
                match textio::parse_scalar_literal(field, v.trim()) {
                    Ok(s) => {
                        map.insert(k.trim().to_string(), s);
                    }
                    Err(e) => return fail(&e),
                }
            }
        }
        match catalog::build(name, field, &map) {
            Ok(item) => give_item(out, name.to_string(), item),
            Err(e) => fail(&e),
        }
    })
}

/// Releases a handle.
///
/// # Safety
/// `item` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spbw_item_free(item: *mut SpbwItem) {
    if !item.is_null() {
        drop(Box::from_raw(item));
    }
}

/// 0 for a presentation, 1 for an extension.
///
/// # Safety
/// `item` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spbw_item_kind(item: *const SpbwItem) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        match item.item {
            CatalogItem::Presentation(_) => 0,
            CatalogItem::Extension(_) => 1,
        }
    })
}

/// Renders the handle back to algebra file text.
///
/// # Safety
/// `item` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spbw_render(item: *const SpbwItem, out: *mut *mut c_char) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        give_string(out, textio::render_item(&item.name, &item.item));
        SPBW_OK
    })
}

/// Writes the Hilbert function h(0)..h(to) as a space-separated string.
///
/// # Safety
/// `item` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spbw_hilbert(
    item: *const SpbwItem,
    to: c_uint,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        let h = item.item.as_presentation().hilbert(to);
        let rendered: Vec<String> = h.iter().map(ToString::to_string).collect();
        give_string(out, rendered.join(" "));
        SPBW_OK
    })
}

/// Validates the handle. Returns SPBW_OK or SPBW_FAIL and writes the
/// report text either way.
///
/// # Safety
/// `item` must be a live handle; `report` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn spbw_validate(
    item: *const SpbwItem,
    report: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        let r = match &item.item {
            CatalogItem::Presentation(p) => p.validate(),
            CatalogItem::Extension(x) => {
                let mut r = x.validate_extension(5);
                r.merge(x.check_graded());
                r
            }
        };
        give_string(report, r.to_string());
        if r.is_valid() {
            SPBW_OK
        } else {
            SPBW_FAIL
        }
    })
}

/// PBW test at the given completion bound (3 certifies quadratic
/// systems). SPBW_OK means a PBW basis exists in the declared order;
/// SPBW_FAIL writes the witness dependence.
///
/// # Safety
/// `item` must be a live handle; `witness` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn spbw_pbw(
    item: *const SpbwItem,
    degree: c_uint,
    witness: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        if !witness.is_null() {
            *witness = ptr::null_mut();
        }
        match pbw_check(&item.item.as_presentation(), degree) {
            Ok(v) => match v.status {
                PbwStatus::IsPbw => SPBW_OK,
                PbwStatus::NotPbw => {
                    if let Some(w) = &v.witness {
                        give_string(witness, w.to_string());
                    }
                    SPBW_FAIL
                }
                PbwStatus::Inconclusive => SPBW_INCONCLUSIVE,
            },
            Err(e) => fail(&e),
        }
    })
}

/// Runs the Koszulness probes at default bounds and writes the report.
///
/// # Safety
/// `item` must be a live handle; `report` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn spbw_koszul(item: *const SpbwItem, report: *mut *mut c_char) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        let r = koszul_report(&item.item.as_presentation(), &KoszulBounds::default());
        give_string(report, r.to_string());
        match r.overall {
            ProbeStatus::Pass => SPBW_OK,
            ProbeStatus::Fail => SPBW_FAIL,
            ProbeStatus::Inconclusive => SPBW_INCONCLUSIVE,
        }
    })
}

/// Builds the quadratic dual as a new handle.
///
/// # Safety
/// `item` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spbw_dual(item: *const SpbwItem, out: *mut *mut SpbwItem) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        match item.item.as_presentation().quadratic_dual() {
            Ok(dual) => give_item(
                out,
                format!("{}_dual", item.name),
                CatalogItem::Presentation(dual),
            ),
            Err(e) => fail(&e),
        }
    })
}

/// For an extension handle, the presentation it generates as a new
/// handle. SPBW_ERR_UNSUPPORTED for presentations.
///
/// # Safety
/// `item` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spbw_extension_presentation(
    item: *const SpbwItem,
    out: *mut *mut SpbwItem,
) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        let CatalogItem::Extension(x) = &item.item else {
            set_error("input is not an extension");
            return SPBW_ERR_UNSUPPORTED;
        };
        give_item(
            out,
            item.name.clone(),
            CatalogItem::Presentation(x.emit_presentation()),
        )
    })
}

/// For an extension handle, the classification flags as `name=bool`
/// lines. SPBW_ERR_UNSUPPORTED for presentations.
///
/// # Safety
/// `item` must be a live handle; `flags` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn spbw_classify(
    item: *const SpbwItem,
    bound: c_uint,
    flags: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let item = match borrow_item(item) {
            Ok(i) => i,
            Err(code) => return code,
        };
        let CatalogItem::Extension(x) = &item.item else {
            set_error("input is not an extension");
            return SPBW_ERR_UNSUPPORTED;
        };
        let f = x.classify(bound);
        let text = format!(
            "pre_commutative={}\nquasi_commutative={}\nbijective_to_bound={}\nderivation_type={}\nendomorphism_type={}\nconstant={}\nsemi_commutative={}\n",
            f.pre_commutative,
            f.quasi_commutative,
            f.bijective_to_bound,
            f.derivation_type,
            f.endomorphism_type,
            f.constant,
            f.semi_commutative,
        );
        give_string(flags, text);
        SPBW_OK
    })
}
