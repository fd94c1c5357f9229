//! C interface to `operad_forge`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`OfStatus`]; on failure the message is kept per thread and read back
//! with [`of_last_error`]. Strings handed out by the library are released
//! with [`of_string_free`]. Panics never unwind into C: they surface as
//! `OF_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use operad_forge::complex::{poset_homology, PosetHomology, DEFAULT_SIMPLEX_BUDGET};
use operad_forge::cubes::{min_cell, CubeConfig};
use operad_forge::graphs::{enumerate, PartialGraphLabel, DEFAULT_ENUMERATION_BUDGET};
use operad_forge::perm::Perm;
use operad_forge::poset::FinPoset;
use operad_forge::report::RunConfig;
use operad_forge::suites::run_suite;
use operad_forge::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    BudgetExceeded = 5,
    NoLeastCell = 6,
    UnknownSuite = 7,
    Io = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// A finite poset.
pub struct OfPoset(FinPoset);

/// Integer homology of the nerve of a poset.
pub struct OfHomology(PosetHomology);

/// An element of a complete-graphs operad: a partial labelling of the
/// complete graph on `k` vertices by oriented edges of colors `1..=n`.
pub struct OfGraph(PartialGraphLabel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> OfStatus {
    match e {
        Error::Parse(_) => OfStatus::Parse,
        Error::BudgetExceeded { .. } => OfStatus::BudgetExceeded,
        Error::NoLeastCell(_) => OfStatus::NoLeastCell,
        Error::UnknownSuite(_) => OfStatus::UnknownSuite,
        Error::Io(_) => OfStatus::Io,
        _ => OfStatus::InvalidInput,
    }
}

struct Fail(OfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Fail>;

/// Runs `f`, records any error or panic, and converts it to a status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> OfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            OfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            OfStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(OfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(OfStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn of_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn of_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn of_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- posets ----

/// Parses `{"size": n, "leq": [[i, j], ...]}` (reflexive and
/// transitive closure taken).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_poset_from_json(json: *const c_char, out: *mut *mut OfPoset) -> OfStatus {
    guard(|| {
        let p = FinPoset::from_json_str(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(OfPoset(p))))
    })
}

/// The carrier poset of `K̂⁽ⁿ⁾(k)`, or of `K⁽ⁿ⁾(k)` when `total` is true.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_poset_complete_graphs(n: u8, k: usize, total: bool, out: *mut *mut OfPoset) -> OfStatus {
    guard(|| {
        if n == 0 {
            return Err(Fail(OfStatus::OutOfRange, "n must be at least 1".into()));
        }
        let elements = enumerate(n, k, total, DEFAULT_ENUMERATION_BUDGET)?;
        let p = FinPoset::from_elements(&elements, |a, b| a.leq(b).unwrap_or(false))?;
        write_out(out, Box::into_raw(Box::new(OfPoset(p))))
    })
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live poset handle.
#[no_mangle]
pub unsafe extern "C" fn of_poset_size(p: *const OfPoset) -> usize {
    p.as_ref().map_or(0, |p| p.0.size())
}

/// # Safety
/// `p` must be a live poset handle.
#[no_mangle]
pub unsafe extern "C" fn of_poset_leq(p: *const OfPoset, i: usize, j: usize, out: *mut bool) -> OfStatus {
    guard(|| {
        let p = &ref_arg(p, "poset")?.0;
        if i >= p.size() || j >= p.size() {
            return Err(Fail(OfStatus::OutOfRange, format!("index outside 0..{}", p.size())));
        }
        write_out(out, p.leq(i, j))
    })
}

/// Number of connected components of the comparability graph.
///
/// # Safety
/// `p` must be a live poset handle.
#[no_mangle]
pub unsafe extern "C" fn of_poset_component_count(p: *const OfPoset, out: *mut usize) -> OfStatus {
    guard(|| write_out(out, ref_arg(p, "poset")?.0.components().len()))
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn of_poset_free(p: *mut OfPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

// ---- homology ----

/// Integer homology of the nerve. `simplex_budget` 0 selects the default;
/// over budget the nerve of the core is used, and if that is still too
/// large the call fails with `OF_STATUS_BUDGET_EXCEEDED`.
///
/// # Safety
/// `p` must be a live poset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_poset_homology(p: *const OfPoset, simplex_budget: u64, out: *mut *mut OfHomology) -> OfStatus {
    guard(|| {
        let budget = if simplex_budget == 0 { DEFAULT_SIMPLEX_BUDGET } else { simplex_budget };
        let h = poset_homology(&ref_arg(p, "poset")?.0, budget)?;
        write_out(out, Box::into_raw(Box::new(OfHomology(h))))
    })
}

/// Number of degrees with recorded groups; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live homology handle.
#[no_mangle]
pub unsafe extern "C" fn of_homology_degrees(h: *const OfHomology) -> usize {
    h.as_ref().map_or(0, |h| h.0.homology.betti.len())
}

/// Rank of `H_degree`; 0 past the top degree.
///
/// # Safety
/// `h` must be a live homology handle.
#[no_mangle]
pub unsafe extern "C" fn of_homology_betti(h: *const OfHomology, degree: usize, out: *mut usize) -> OfStatus {
    guard(|| {
        let h = &ref_arg(h, "homology")?.0.homology;
        write_out(out, h.betti.get(degree).copied().unwrap_or(0))
    })
}

/// # Safety
/// `h` must be a live homology handle.
#[no_mangle]
pub unsafe extern "C" fn of_homology_euler_characteristic(h: *const OfHomology, out: *mut i64) -> OfStatus {
    guard(|| write_out(out, ref_arg(h, "homology")?.0.homology.euler_characteristic()))
}

/// Betti numbers and torsion coefficients as JSON. Free with
/// [`of_string_free`].
///
/// # Safety
/// `h` must be a live homology handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_homology_to_json(h: *const OfHomology, out: *mut *mut c_char) -> OfStatus {
    guard(|| {
        let json = ref_arg(h, "homology")?.0.homology.to_json().to_string();
        write_out(out, into_c_string(json))
    })
}

/// # Safety
/// `h` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn of_homology_free(h: *mut OfHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

// ---- complete-graph labels ----

/// Parses `{"k": 3, "n": 2, "edges": [{"a": 1, "b": 2, "dir": "ab",
/// "color": 1}, ...]}`; vertices are 1-based, unlisted edges unlabelled.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_graph_from_json(json: *const c_char, out: *mut *mut OfGraph) -> OfStatus {
    guard(|| {
        let g = PartialGraphLabel::from_json_str(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(OfGraph(g))))
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_graph_to_json(g: *const OfGraph, out: *mut *mut c_char) -> OfStatus {
    guard(|| write_out(out, into_c_string(ref_arg(g, "graph")?.0.to_json_string())))
}

/// Arity `k`; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn of_graph_arity(g: *const OfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.k())
}

/// Whether every edge label of `a` is at or below the one of `b`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_graph_leq(a: *const OfGraph, b: *const OfGraph, out: *mut bool) -> OfStatus {
    guard(|| write_out(out, ref_arg(a, "a")?.0.leq(&ref_arg(b, "b")?.0)?))
}

/// Operadic composition `outer(inners[0], ..., inners[count-1])`.
///
/// # Safety
/// `inners` must point to `count` live graph handles.
#[no_mangle]
pub unsafe extern "C" fn of_graph_compose(
    outer: *const OfGraph,
    inners: *const *const OfGraph,
    count: usize,
    out: *mut *mut OfGraph,
) -> OfStatus {
    guard(|| {
        let outer = &ref_arg(outer, "outer")?.0;
        if inners.is_null() && count > 0 {
            return Err(null("inners"));
        }
        let slots = if count == 0 { &[][..] } else { std::slice::from_raw_parts(inners, count) };
        let inner: Vec<PartialGraphLabel> =
            slots.iter().map(|&p| ref_arg(p, "inner").map(|g| g.0.clone())).collect::<FfiResult<_>>()?;
        let g = outer.compose(&inner)?;
        write_out(out, Box::into_raw(Box::new(OfGraph(g))))
    })
}

/// Acts by the permutation sending vertex `i` to `images[i]` (0-based).
///
/// # Safety
/// `images` must point to `k` values where `k` is the arity of `g`.
#[no_mangle]
pub unsafe extern "C" fn of_graph_act(g: *const OfGraph, images: *const usize, out: *mut *mut OfGraph) -> OfStatus {
    guard(|| {
        let g = &ref_arg(g, "graph")?.0;
        if images.is_null() && g.k() > 0 {
            return Err(null("images"));
        }
        let images = if g.k() == 0 { Vec::new() } else { std::slice::from_raw_parts(images, g.k()).to_vec() };
        let perm = Perm::from_images(images)?;
        write_out(out, Box::into_raw(Box::new(OfGraph(g.act(&perm)))))
    })
}

/// The least total labelling whose cell contains the cube configuration
/// given as JSON (a list of cubes, each `{"n": .., "intervals": [[lo, hi],
/// ...]}` with rational endpoints written as strings).
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_min_cell(config_json: *const c_char, out: *mut *mut OfGraph) -> OfStatus {
    guard(|| {
        let cfg = CubeConfig::from_json_str(str_arg(config_json, "config_json")?, 1)?;
        let g = min_cell(&cfg)?;
        write_out(out, Box::into_raw(Box::new(OfGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn of_graph_free(g: *mut OfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

// ---- suites ----

/// Runs a verification suite and returns its JSON report. `config` holds
/// `key = value` lines (may be null). `exit_code` receives 0 when every
/// required check passed and 1 otherwise; the status only reports whether
/// the suite could run.
///
/// # Safety
/// String arguments must be NUL-terminated; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_run_suite(
    suite: *const c_char,
    config: *const c_char,
    report_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> OfStatus {
    guard(|| {
        let suite = str_arg(suite, "suite")?;
        let mut cfg = RunConfig::new(suite);
        if !config.is_null() {
            cfg.apply_config_str(str_arg(config, "config")?)?;
            cfg.suite = suite.to_string();
        }
        let report = run_suite(&cfg)?;
        write_out(exit_code, report.exit_code())?;
        write_out(report_json, into_c_string(report.to_json()))
    })
}
