//! C ABI over the hypercolor library.
//!
//! Every fallible call returns an [`HcStatus`] and writes its result through
//! an out-pointer. On failure, `hc_last_error_message` describes the error
//! on the calling thread. Handles are opaque and must be released with the
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypercolor::bounds::{
    alon_lower, as_optimize, limit_sequence, pluhar_threshold, thm1_threshold, AsExponent,
    AsVariant, LimitKind, Orientation,
};
use hypercolor::chains::{count_chains, exists_good_order};
use hypercolor::colorers::{run_trials, Algorithm, Params};
use hypercolor::frecursion::{best_bound, extend_table, FTable};
use hypercolor::inducibility::{aux_graph, count_induced_paths};
use hypercolor::{chromatic_number, is_proper, Coloring, CountMode, Error, Family, Hypergraph};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    CapExceeded = 4,
    Overflow = 5,
    Internal = 6,
}

/// Colorer selector for `hc_run_trials`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcAlgorithm {
    Alon = 0,
    Pluhar = 1,
    AkolzinShabanov = 2,
}

/// Sequence selector for `hc_limit_sequence`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcLimitKind {
    Alon = 0,
    Pluhar = 1,
    Chain = 2,
}

pub struct HcHypergraph(Hypergraph);

pub struct HcFTable(FTable);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HcAsOptimum {
    pub c: f64,
    pub p: f64,
    pub x: f64,
    pub certified_c: f64,
}

/// `mean_*` fields are NaN when the algorithm does not track them.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HcTrialSummary {
    pub trials: u64,
    pub successes: u64,
    pub mean_monochromatic: f64,
    pub mean_bad_edges: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HcSegmentBound {
    pub m: usize,
    pub window_start: usize,
    pub window_end: usize,
    pub argmax: usize,
    pub k: f64,
    pub l3: f64,
    pub l3_numerator: u64,
    pub l3_denominator: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => HcStatus::Parse,
            Error::CapExceeded { .. } => HcStatus::CapExceeded,
            Error::ImproperColoring(_) => HcStatus::Internal,
            _ => HcStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: HcStatus, msg: &str) -> Failure {
    Failure(status, msg.to_owned())
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_owned());
            HcStatus::Internal
        }
    }
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(HcStatus::NullPointer, "null output pointer"))
}

unsafe fn hypergraph<'a>(h: *const HcHypergraph) -> Result<&'a Hypergraph, Failure> {
    h.as_ref().map(|h| &h.0).ok_or_else(|| fail(HcStatus::NullPointer, "null hypergraph handle"))
}

unsafe fn ftable<'a>(t: *const HcFTable) -> Result<&'a FTable, Failure> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| fail(HcStatus::NullPointer, "null table handle"))
}

unsafe fn string<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(fail(HcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HcStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(fail(HcStatus::NullPointer, "null array"))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

fn to_u64(x: &num_bigint::BigUint) -> Result<u64, Failure> {
    x.to_u64().ok_or_else(|| fail(HcStatus::Overflow, "value does not fit in 64 bits"))
}

/// Library version, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses the text format: header `vertices edges uniformity`, then one edge per line.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_parse(text: *const c_char, out_h: *mut *mut HcHypergraph) -> HcStatus {
    guard(|| {
        let slot = out(out_h)?;
        let h = Hypergraph::parse(string(text)?)?;
        *slot = Box::into_raw(Box::new(HcHypergraph(h)));
        Ok(())
    })
}

/// Builds a hypergraph from `num_edges * uniformity` vertex ids laid out edge by edge.
///
/// # Safety
/// `vertices` must point to `num_edges * uniformity` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_from_edges(
    num_vertices: usize,
    uniformity: usize,
    vertices: *const usize,
    num_edges: usize,
    out_h: *mut *mut HcHypergraph,
) -> HcStatus {
    guard(|| {
        let slot = out(out_h)?;
        if uniformity == 0 {
            return Err(fail(HcStatus::InvalidArgument, "uniformity must be positive"));
        }
        let len = num_edges
            .checked_mul(uniformity)
            .ok_or_else(|| fail(HcStatus::Overflow, "edge array too large"))?;
        let flat = slice(vertices, len)?;
        let edges = flat.chunks(uniformity).map(<[usize]>::to_vec).collect();
        let h = Hypergraph::new(num_vertices, uniformity, edges)?;
        *slot = Box::into_raw(Box::new(HcHypergraph(h)));
        Ok(())
    })
}

/// Builds a named family: `fano`, `complete:V:N`, `random:V:M:N:SEED`, `chain:N:R`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_generate(family: *const c_char, out_h: *mut *mut HcHypergraph) -> HcStatus {
    guard(|| {
        let slot = out(out_h)?;
        let fam: Family = string(family)?.parse()?;
        *slot = Box::into_raw(Box::new(HcHypergraph(fam.generate()?)));
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_free(h: *mut HcHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_num_vertices(h: *const HcHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.num_vertices())
}

/// # Safety
/// `h` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_num_edges(h: *const HcHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.num_edges())
}

/// # Safety
/// `h` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_uniformity(h: *const HcHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.uniformity())
}

/// Text form of `h`; release with `hc_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_hypergraph_to_text(h: *const HcHypergraph, out_s: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let slot = out(out_s)?;
        let text = CString::new(hypergraph(h)?.to_text()).map_err(|_| fail(HcStatus::Internal, "NUL in text"))?;
        *slot = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_chromatic_number(h: *const HcHypergraph, out_chi: *mut usize) -> HcStatus {
    guard(|| {
        let slot = out(out_chi)?;
        *slot = chromatic_number(hypergraph(h)?)?;
        Ok(())
    })
}

/// Checks a coloring with colors in `1..=palette`.
///
/// # Safety
/// `colors` must point to `len` values; `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_is_proper(
    h: *const HcHypergraph,
    colors: *const u32,
    len: usize,
    palette: u32,
    out_proper: *mut bool,
) -> HcStatus {
    guard(|| {
        let slot = out(out_proper)?;
        let coloring = Coloring::new(slice(colors, len)?.to_vec(), palette)?;
        *slot = is_proper(hypergraph(h)?, &coloring)?;
        Ok(())
    })
}

/// Counts r-chains, as edge sequences or (when `sets` is true) up to reversal.
///
/// # Safety
/// `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_count_chains(h: *const HcHypergraph, r: usize, sets: bool, out_count: *mut u64) -> HcStatus {
    guard(|| {
        let slot = out(out_count)?;
        let mode = if sets { CountMode::Sets } else { CountMode::Sequences };
        *slot = count_chains(hypergraph(h)?, r, mode)?;
        Ok(())
    })
}

/// Searches for a vertex order on which greedy r-coloring succeeds.
/// `out_order` may be NULL; otherwise it receives `num_vertices` ids when found.
///
/// # Safety
/// `h` must be live; `out_found` writable; `out_order` NULL or `num_vertices` long.
#[no_mangle]
pub unsafe extern "C" fn hc_exists_good_order(
    h: *const HcHypergraph,
    r: usize,
    out_found: *mut bool,
    out_order: *mut usize,
) -> HcStatus {
    guard(|| {
        let slot = out(out_found)?;
        let found = exists_good_order(hypergraph(h)?, r)?;
        *slot = found.is_some();
        if let (Some(order), false) = (found, out_order.is_null()) {
            let dst = std::slice::from_raw_parts_mut(out_order, order.len());
            dst.copy_from_slice(order.vertices());
        }
        Ok(())
    })
}

/// Induced r-vertex paths in the one-point-intersection graph of `h`.
///
/// # Safety
/// `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_count_induced_paths_aux(h: *const HcHypergraph, r: usize, out_count: *mut u64) -> HcStatus {
    guard(|| {
        let slot = out(out_count)?;
        *slot = count_induced_paths(&aux_graph(hypergraph(h)?), r)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_alon_lower(n: usize, r: usize, out_edges: *mut u64) -> HcStatus {
    guard(|| {
        let slot = out(out_edges)?;
        *slot = to_u64(&alon_lower(n, r)?)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_pluhar_threshold(n: usize, r: usize, out_edges: *mut u64) -> HcStatus {
    guard(|| {
        let slot = out(out_edges)?;
        *slot = to_u64(&pluhar_threshold(n, r, Orientation::Corrected)?.edges)?;
        Ok(())
    })
}

/// Chain-based threshold; `corrected` selects the factor 8 charge per set-counted chain.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_chain_threshold(r: usize, corrected: bool, out_edges: *mut u64) -> HcStatus {
    guard(|| {
        let slot = out(out_edges)?;
        let orientation = if corrected { Orientation::Corrected } else { Orientation::AsPrinted };
        *slot = to_u64(&thm1_threshold(r, orientation)?.edges)?;
        Ok(())
    })
}

/// Finite-r term of a limit sequence; `kind` is an `HcLimitKind` value.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_limit_sequence(kind: u32, r: u64, out_value: *mut f64) -> HcStatus {
    guard(|| {
        let slot = out(out_value)?;
        let kind = match kind {
            0 => LimitKind::Alon,
            1 => LimitKind::Pluhar,
            2 => LimitKind::Thm1,
            _ => return Err(fail(HcStatus::InvalidArgument, "unknown limit kind")),
        };
        *slot = limit_sequence(kind, r)?;
        Ok(())
    })
}

/// Grid optimum of the weighted-colorer constraint pair.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_as_optimize(pure: bool, corrected: bool, grid: usize, out_opt: *mut HcAsOptimum) -> HcStatus {
    guard(|| {
        let slot = out(out_opt)?;
        let variant = if pure { AsVariant::Pure } else { AsVariant::Combined };
        let exponent = if corrected { AsExponent::Corrected } else { AsExponent::AsPrinted };
        let o = as_optimize(variant, exponent, grid)?;
        *slot = HcAsOptimum {
            c: o.c,
            p: o.p,
            x: o.x,
            certified_c: o.certified_c,
        };
        Ok(())
    })
}

/// Seeded colorer trials. `a == 0` and NaN `p` mean "not given".
///
/// # Safety
/// `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_run_trials(
    h: *const HcHypergraph,
    algorithm: u32,
    r: u32,
    a: u32,
    p: f64,
    trials: u64,
    seed: u64,
    out_summary: *mut HcTrialSummary,
) -> HcStatus {
    guard(|| {
        let slot = out(out_summary)?;
        let algorithm = match algorithm {
            0 => Algorithm::Alon,
            1 => Algorithm::Pluhar,
            2 => Algorithm::AkolzinShabanov,
            _ => return Err(fail(HcStatus::InvalidArgument, "unknown algorithm")),
        };
        let params = Params {
            r,
            a: (a != 0).then_some(a),
            p: (!p.is_nan()).then_some(p),
        };
        let rep = run_trials(algorithm, hypergraph(h)?, &params, trials, seed)?;
        *slot = HcTrialSummary {
            trials: rep.trials,
            successes: rep.successes,
            mean_monochromatic: rep.mean_monochromatic.unwrap_or(f64::NAN),
            mean_bad_edges: rep.mean_bad_edges.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Table holding the known small values.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_ftable_seed(out_t: *mut *mut HcFTable) -> HcStatus {
    guard(|| {
        let slot = out(out_t)?;
        *slot = Box::into_raw(Box::new(HcFTable(FTable::seed())));
        Ok(())
    })
}

/// New table extended to `n_max` with splitting factors `p_set`.
///
/// # Safety
/// `t` must be live; `p_set` must point to `p_len` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_ftable_extend(
    t: *const HcFTable,
    n_max: usize,
    p_set: *const u32,
    p_len: usize,
    out_t: *mut *mut HcFTable,
) -> HcStatus {
    guard(|| {
        let slot = out(out_t)?;
        let ext = extend_table(ftable(t)?, n_max, slice(p_set, p_len)?)?;
        *slot = Box::into_raw(Box::new(HcFTable(ext)));
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hc_ftable_len(t: *const HcFTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `t` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_ftable_get(t: *const HcFTable, n: usize, out_value: *mut u64) -> HcStatus {
    guard(|| {
        let slot = out(out_value)?;
        *slot = ftable(t)?
            .get(n)
            .ok_or_else(|| fail(HcStatus::InvalidArgument, "index beyond the table"))?;
        Ok(())
    })
}

/// Best window bound over window starts `m_min..=m_max`.
///
/// # Safety
/// `t` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_ftable_best_bound(
    t: *const HcFTable,
    m_min: usize,
    m_max: usize,
    out_bound: *mut HcSegmentBound,
) -> HcStatus {
    guard(|| {
        let slot = out(out_bound)?;
        let (b, _) = best_bound(ftable(t)?, m_min..=m_max)?;
        let num = b.l3_exact.numer().to_u64();
        let den = b.l3_exact.denom().to_u64();
        let (Some(l3_numerator), Some(l3_denominator)) = (num, den) else {
            return Err(fail(HcStatus::Overflow, "exact bound does not fit in 64 bits"));
        };
        *slot = HcSegmentBound {
            m: b.m,
            window_start: b.window.0,
            window_end: b.window.1,
            argmax: b.argmax,
            k: b.k,
            l3: b.l3,
            l3_numerator,
            l3_denominator,
        };
        Ok(())
    })
}

/// # Safety
/// `t` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_ftable_free(t: *mut HcFTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
