//! C ABI over `weakfree`.
//!
//! Every fallible call returns a [`WfStatus`]; on failure the message is
//! available from [`wf_last_error`] on the same thread. Strings handed out by
//! the library are NUL-terminated, owned by the caller and released with
//! [`wf_string_free`]. Handles are opaque and released with their `_free`
//! function. A session may be shared between threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weakfree::finite::{build_skeleton, full_transformation_monoid, FiniteSemigroup, Strategy};
use weakfree::landscape::validate_landscape;
use weakfree::model::{self, GreenRel, Mountain};
use weakfree::rewrite::DEFAULT_MAX_STATES;
use weakfree::terms::DEFAULT_HEIGHT_CAP;
use weakfree::{render, selftest, Error, ErrorClass, GWord, GenStore};

/// Status codes; the numeric values match the `weakfree` CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WfStatus {
    Ok = 0,
    Internal = 1,
    Syntax = 2,
    Validation = 3,
    Resource = 4,
    SelftestFailed = 5,
    NullArgument = 6,
    InvalidUtf8 = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WfFormat {
    Ascii = 0,
    Svg = 1,
    Json = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WfStrategy {
    First = 0,
    Seeded = 1,
}

/// A fixed alphabet with its generator store.
pub struct WfSession {
    store: GenStore,
    max_states: usize,
}

/// A finite semigroup given by its multiplication table.
pub struct WfTable {
    sg: FiniteSemigroup,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Fail(WfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let st = match e.class() {
            ErrorClass::Syntax => WfStatus::Syntax,
            ErrorClass::Validation => WfStatus::Validation,
            ErrorClass::Resource => WfStatus::Resource,
            ErrorClass::Internal => WfStatus::Internal,
        };
        Fail(st, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WfStatus {
    let (st, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (WfStatus::Ok, String::new()),
        Ok(Err(Fail(st, msg))) => (st, msg),
        Err(_) => (WfStatus::Internal, "panic inside weakfree".into()),
    };
    set_error(&msg);
    st
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(WfStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(WfStatus::NullArgument, format!("{what} is null")))
}

unsafe fn session<'a>(s: *const WfSession) -> Result<&'a WfSession, Fail> {
    s.as_ref().ok_or_else(|| Fail(WfStatus::NullArgument, "session is null".into()))
}

fn give_string(out: &mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(WfStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

impl WfSession {
    fn word(&self, t: &str) -> Result<GWord, Fail> {
        Ok(GWord::parse(&self.store, t)?)
    }

    fn mountain(&self, t: &str) -> Result<Mountain, Fail> {
        Ok(Mountain::of_word(&self.store, &self.word(t)?)?)
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn wf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opens a session over a comma-separated alphabet such as `"x,y"`.
/// `height_cap == 0` selects the default cap, `max_states == 0` the default
/// gorge search limit.
///
/// # Safety
/// `alphabet` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_session_new(
    alphabet: *const c_char,
    height_cap: u32,
    max_states: usize,
    out: *mut *mut WfSession,
) -> WfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let letters: Vec<&str> = text(alphabet, "alphabet")?.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let cap = if height_cap == 0 { DEFAULT_HEIGHT_CAP } else { height_cap };
        let store = GenStore::new(letters)?.with_height_cap(cap);
        let max_states = if max_states == 0 { DEFAULT_MAX_STATES } else { max_states };
        *out = Box::into_raw(Box::new(WfSession { store, max_states }));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a live session handle.
#[no_mangle]
pub unsafe extern "C" fn wf_session_free(s: *mut WfSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Normal form of a word, as landscape text.
///
/// # Safety
/// Pointers must be valid; `out` receives a string to free with `wf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wf_normalize(s: *const WfSession, word: *const c_char, out: *mut *mut c_char) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        let m = s.mountain(text(word, "word")?)?;
        give_string(out, m.to_string())
    })
}

/// Whether two words denote the same element.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wf_equivalent(
    s: *const WfSession,
    u: *const c_char,
    v: *const c_char,
    out: *mut bool,
) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        *out = s.mountain(text(u, "u")?)? == s.mountain(text(v, "v")?)?;
        Ok(())
    })
}

/// Normal form of the product `u v`.
///
/// # Safety
/// Pointers must be valid; `out` receives a string to free with `wf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wf_multiply(
    s: *const WfSession,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        let p = model::mul(&s.store, &s.mountain(text(u, "u")?)?, &s.mountain(text(v, "v")?)?)?;
        give_string(out, p.to_string())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wf_is_idempotent(s: *const WfSession, u: *const c_char, out: *mut bool) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        *out = model::is_idempotent(&s.store, &s.mountain(text(u, "u")?)?)?;
        Ok(())
    })
}

/// Green's relation test `u rel v`; `rel` is one of `R L J H D leqR leqL leqJ`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wf_green(
    s: *const WfSession,
    rel: *const c_char,
    u: *const c_char,
    v: *const c_char,
    out: *mut bool,
) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        let r: GreenRel = text(rel, "rel")?.parse()?;
        *out = model::green(r, &s.mountain(text(u, "u")?)?, &s.mountain(text(v, "v")?)?);
        Ok(())
    })
}

/// Natural partial order `v <= u`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wf_natural_leq(
    s: *const WfSession,
    v: *const c_char,
    u: *const c_char,
    out: *mut bool,
) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        *out = model::natural_leq(&s.store, &s.mountain(text(v, "v")?)?, &s.mountain(text(u, "u")?)?)?;
        Ok(())
    })
}

/// Gorge cross-check for idempotency: writes 1 (true), 0 (false) or -1 (unknown).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wf_is_idempotent_gorge(s: *const WfSession, u: *const c_char, out: *mut i32) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        *out = match model::is_idempotent_gorge(&s.store, &s.mountain(text(u, "u")?)?, s.max_states)? {
            model::Tri::True => 1,
            model::Tri::False => 0,
            model::Tri::Unknown => -1,
        };
        Ok(())
    })
}

/// Draws a landscape (validated as given, not normalised).
///
/// # Safety
/// Pointers must be valid; `out` receives a string to free with `wf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wf_render(
    s: *const WfSession,
    landscape: *const c_char,
    format: WfFormat,
    out: *mut *mut c_char,
) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        let l = validate_landscape(&s.word(text(landscape, "landscape")?)?)?;
        let r = match format {
            WfFormat::Ascii => render::ascii(&l),
            WfFormat::Svg => render::svg(&l),
            WfFormat::Json => render::json(&l),
        };
        give_string(out, r)
    })
}

/// Loads a table from JSON `{"size": m, "table": [[..]..], "identity": k?}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_table_load_json(json: *const c_char, out: *mut *mut WfTable) -> WfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let sg = FiniteSemigroup::from_json(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(WfTable { sg }));
        Ok(())
    })
}

/// The full transformation monoid on `n` points.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wf_table_transformations(n: usize, out: *mut *mut WfTable) -> WfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let sg = full_transformation_monoid(n)?;
        *out = Box::into_raw(Box::new(WfTable { sg }));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn wf_table_free(t: *mut WfTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn wf_table_size(t: *const WfTable) -> usize {
    t.as_ref().map_or(0, |t| t.sg.size())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wf_table_is_regular(t: *const WfTable, out: *mut bool) -> WfStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| Fail(WfStatus::NullArgument, "table is null".into()))?;
        *out_ptr(out, "out")? = t.sg.is_regular();
        Ok(())
    })
}

/// Builds a skeleton mapping into the table and writes its JSON report.
/// `map` lists letter images such as `"x=5,y=3"`.
///
/// # Safety
/// Pointers must be valid; `out` receives a string to free with `wf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wf_skeleton_report(
    s: *const WfSession,
    t: *const WfTable,
    map: *const c_char,
    strategy: WfStrategy,
    seed: u64,
    max_height: u32,
    out: *mut *mut c_char,
) -> WfStatus {
    guard(|| {
        let (s, out) = (session(s)?, out_ptr(out, "out")?);
        let t = t.as_ref().ok_or_else(|| Fail(WfStatus::NullArgument, "table is null".into()))?;
        let mut images = Vec::new();
        for entry in text(map, "map")?.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let bad = || Fail(WfStatus::Syntax, format!("map entry `{entry}` is not letter=element"));
            let (x, v) = entry.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            images.push((s.store.letter(x.trim())?, v));
        }
        let strategy = match strategy {
            WfStrategy::First => Strategy::First,
            WfStrategy::Seeded => Strategy::Seeded(seed),
        };
        let mut sk = build_skeleton(&t.sg, &images, strategy, max_height)?;
        give_string(out, sk.report(&s.store)?.to_string())
    })
}

/// Runs the property suite; `out` receives one `PASS`/`FAIL` line per property.
/// Returns `SelftestFailed` if any line fails.
///
/// # Safety
/// `out` must be writable; the string is freed with `wf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn wf_selftest(max_height: u32, seed: u64, out: *mut *mut c_char) -> WfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let lines = selftest::run(max_height, seed)?;
        let all = lines.iter().all(|l| l.pass);
        give_string(out, lines.iter().map(|l| format!("{l}\n")).collect())?;
        if all {
            Ok(())
        } else {
            Err(Fail(WfStatus::SelftestFailed, "selftest reported failures".into()))
        }
    })
}
