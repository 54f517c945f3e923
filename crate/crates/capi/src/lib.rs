//! C ABI for bandkit: opaque band handles, integer verdict codes, and a
//! JSON request entry point mirroring the CLI subcommands.
//!
//! The matching header lives at `include/bandkit.h` and is maintained by
//! hand; keep the two in sync. Handles are reference counted internally
//! and safe to share across threads; every `*mut` returned by this
//! library must be released with the corresponding `_free` function.

use std::ffi::{c_char, CStr, CString};

use bandkit::cli::{run, Registry};
use bandkit::core::{standard_band, Band, ElementId, FormalSum, TriState, Verdict};

/// Opaque handle to a band.
pub struct BkBand(Band);

const BK_OUT: i32 = 0;
const BK_IN: i32 = 1;
const BK_UNKNOWN: i32 = 2;
const BK_ERROR: i32 = -1;

const BK_FALSE: i32 = 0;
const BK_TRUE: i32 = 1;

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Out => BK_OUT,
        Verdict::In => BK_IN,
        Verdict::Unknown => BK_UNKNOWN,
    }
}

fn tri_code(v: TriState) -> i32 {
    match v {
        TriState::False => BK_FALSE,
        TriState::True => BK_TRUE,
        TriState::Unknown => BK_UNKNOWN,
    }
}

unsafe fn cstr<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(s) }.to_str().ok()
}

fn to_cstring(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Looks up a band of the standard library (or a builtin algebra name
/// such as "A1", "SL2"). Returns null on unknown names.
///
/// # Safety
/// `name` must be a valid NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn bk_band_standard(name: *const c_char) -> *mut BkBand {
    let Some(name) = (unsafe { cstr(name) }) else { return std::ptr::null_mut() };
    let reg = Registry::new();
    let by_registry = reg.band(name).or_else(|_| standard_band(name));
    match by_registry {
        Ok(b) => Box::into_raw(Box::new(BkBand(b))),
        Err(_) => std::ptr::null_mut(),
    }
}

/// # Safety
/// `band` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bk_band_free(band: *mut BkBand) {
    if !band.is_null() {
        drop(unsafe { Box::from_raw(band) });
    }
}

/// Carrier size; -1 for infinite carriers.
///
/// # Safety
/// `band` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bk_band_element_count(band: *const BkBand) -> i64 {
    let Some(b) = (unsafe { band.as_ref() }) else { return BK_ERROR as i64 };
    b.0.elements().map(|e| e.len() as i64).unwrap_or(-1)
}

/// Product of two elements (by id). Element 0 is zero.
///
/// # Safety
/// `band` must be a live handle; ids must be in range.
#[no_mangle]
pub unsafe extern "C" fn bk_band_mul(band: *const BkBand, a: u32, b: u32) -> u32 {
    let Some(h) = (unsafe { band.as_ref() }) else { return 0 };
    h.0.mul(ElementId(a), ElementId(b)).0
}

/// Additive inverse of an element.
///
/// # Safety
/// `band` must be a live handle; the id must be in range.
#[no_mangle]
pub unsafe extern "C" fn bk_band_neg(band: *const BkBand, a: u32) -> u32 {
    let Some(h) = (unsafe { band.as_ref() }) else { return 0 };
    h.0.neg(ElementId(a)).0
}

/// Null membership of the formal sum given by `terms` (element ids with
/// multiplicity by repetition). Returns BK_IN, BK_OUT, BK_UNKNOWN or
/// BK_ERROR.
///
/// # Safety
/// `band` must be a live handle and `terms` must point to `len` ids.
#[no_mangle]
pub unsafe extern "C" fn bk_band_is_null(
    band: *const BkBand,
    terms: *const u32,
    len: usize,
    bound: u32,
) -> i32 {
    let Some(h) = (unsafe { band.as_ref() }) else { return BK_ERROR };
    if terms.is_null() && len > 0 {
        return BK_ERROR;
    }
    let ids = unsafe { std::slice::from_raw_parts(terms, len) };
    let sum = FormalSum::from_terms(ids.iter().map(|&i| (ElementId(i), 1)));
    verdict_code(h.0.is_null_bounded(&sum, bound))
}

/// Printed name of an element. Free with `bk_string_free`.
///
/// # Safety
/// `band` must be a live handle; the id must be in range.
#[no_mangle]
pub unsafe extern "C" fn bk_band_element_name(band: *const BkBand, a: u32) -> *mut c_char {
    let Some(h) = (unsafe { band.as_ref() }) else { return std::ptr::null_mut() };
    to_cstring(h.0.elem_name(ElementId(a)))
}

/// Bounded fusion-axiom check: BK_TRUE/BK_FALSE/BK_UNKNOWN.
///
/// # Safety
/// `band` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bk_band_check_fusion(band: *const BkBand, bound: u32) -> i32 {
    let Some(h) = (unsafe { band.as_ref() }) else { return BK_ERROR };
    tri_code(bandkit::core::check_fusion(&h.0, bound))
}

/// Number of prime m-ideals of the band, or BK_ERROR for unsupported
/// carriers.
///
/// # Safety
/// `band` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bk_spec_point_count(band: *const BkBand) -> i64 {
    let Some(h) = (unsafe { band.as_ref() }) else { return BK_ERROR as i64 };
    bandkit::spectrum::spec(&h.0).map(|s| s.len() as i64).unwrap_or(BK_ERROR as i64)
}

/// Number of K-points of Gr(r, n), i.e. rank-r matroids on {1..n}.
#[no_mangle]
pub extern "C" fn bk_grassmannian_point_count(r: usize, n: usize) -> i64 {
    let result = (|| -> bandkit::Result<i64> {
        let f1 = bandkit::core::standard::f1pm();
        let k = bandkit::core::standard::krasner();
        let gr = bandkit::schemes::grassmannian(r, n, &f1)?;
        Ok(bandkit::visualize::points(&gr, &k)?.len() as i64)
    })();
    result.unwrap_or(BK_ERROR as i64)
}

/// Runs one CLI-style command from a JSON request and returns the JSON
/// report (free with `bk_string_free`; null on malformed requests).
///
/// Request shape: {"command": "spec", "subject": "A2", "over": "K",
/// "bound": 6, "source": "band X { ... }"} with `over`, `bound` and
/// `source` optional.
///
/// # Safety
/// `request` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bk_eval(request: *const c_char) -> *mut c_char {
    let Some(req) = (unsafe { cstr(request) }) else { return std::ptr::null_mut() };
    match eval_json(req) {
        Ok(out) => to_cstring(out),
        Err(e) => to_cstring(format!("{{\"error\": \"{}\"}}\n", e.to_string().replace('"', "'"))),
    }
}

fn eval_json(req: &str) -> bandkit::Result<String> {
    let v: serde_json::Value = serde_json::from_str(req)
        .map_err(|e| bandkit::Error::Other(format!("bad request: {e}")))?;
    let cmd = v["command"].as_str().unwrap_or_default();
    let subject = v["subject"].as_str().unwrap_or_default();
    let bound = v["bound"].as_u64().unwrap_or(6) as u32;
    let mut reg = Registry::new();
    if let Some(src) = v["source"].as_str() {
        reg.load(&bandkit::cli::parse_presentation(src)?)?;
    }
    let outcome = match cmd {
        "check" => run::cmd_check(&reg, subject, bound)?,
        "spec" => run::cmd_spec(&reg, subject, false, bound)?,
        "points" => run::cmd_points(
            &reg,
            subject,
            v["over"].as_str().unwrap_or("K"),
            v["topology"].as_str(),
            bound,
        )?,
        "tits" => run::cmd_tits(&reg, subject, bound)?,
        "kernel" => run::cmd_kernel(&reg, subject, bound)?,
        "nullpoints" => run::cmd_nullpoints(&reg, subject, bound)?,
        "universal-ring" => run::cmd_universal_ring(&reg, subject, bound)?,
        "compare" => run::cmd_compare(&reg, subject, v["over"].as_str().unwrap_or("K"), bound)?,
        other => return Err(bandkit::Error::Other(format!("unknown command `{other}`"))),
    };
    Ok(outcome.text)
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a bandkit function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
