//! C ABI for the stardisc library.
//!
//! Objects cross the boundary as opaque handles created by `*_new`-style
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`StardiscStatus`]; on failure a message is available from
//! [`stardisc_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use stardisc::generators::{generate, GeneratorKind, GeneratorSpec};
use stardisc::geometry::{io, star_discrepancy, PointSet, WitnessKind};
use stardisc::milp::{build_model, write_lp};
use stardisc::solver::{
    bb_subset, brute_force_subset, greedy_subset, random_subset_search, BbOptions, Budget, Status,
    SubsetSelection,
};
use stardisc::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StardiscStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInput = 3,
    CapExceeded = 4,
    Io = 5,
    Panic = 6,
}

/// Subset solvers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StardiscSolver {
    BranchAndBound = 0,
    Greedy = 1,
    Random = 2,
    BruteForce = 3,
}

/// Quality of a selection's value.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StardiscSelectionStatus {
    Optimal = 0,
    BestFound = 1,
    Heuristic = 2,
}

/// Opaque point set.
pub struct StardiscPointSet(PointSet);

/// Opaque solver result.
pub struct StardiscSelection(SubsetSelection);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> StardiscStatus {
    match e {
        Error::InvalidArgument(_) | Error::InvalidSpec(_) => StardiscStatus::InvalidArgument,
        Error::CapExceeded { .. } => StardiscStatus::CapExceeded,
        Error::Io(_) => StardiscStatus::Io,
        _ => StardiscStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and panics.
fn guard<F>(f: F) -> StardiscStatus
where
    F: FnOnce() -> Result<(), (StardiscStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StardiscStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            StardiscStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (StardiscStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (StardiscStatus, String) {
    (StardiscStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (StardiscStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        (
            StardiscStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

fn store<T>(out: *mut *mut T, value: T) -> Result<(), (StardiscStatus, String)> {
    if out.is_null() {
        return Err(null("output handle"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stardisc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a point set from `n * dim` row-major coordinates in `[0, 1]`.
///
/// # Safety
/// `coords` must point to `n * dim` readable doubles (or be null when
/// `n == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_new(
    dim: usize,
    coords: *const f64,
    n: usize,
    out: *mut *mut StardiscPointSet,
) -> StardiscStatus {
    guard(|| {
        let len = n.checked_mul(dim).ok_or((
            StardiscStatus::InvalidArgument,
            "n * dim overflows".to_string(),
        ))?;
        let flat = if len == 0 {
            Vec::new()
        } else if coords.is_null() {
            return Err(null("coords"));
        } else {
            std::slice::from_raw_parts(coords, len).to_vec()
        };
        let set = PointSet::from_flat(dim, flat).map_err(lib_err)?;
        store(out, StardiscPointSet(set))
    })
}

/// Generates a point set. `kind` is one of `sobol`, `halton`, `revhalton`,
/// `faure`, `fibonacci`, `uniform`, `ilhs`; `seed` is used only by the
/// random kinds.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_generate(
    kind: *const c_char,
    dim: usize,
    n: usize,
    seed: u64,
    out: *mut *mut StardiscPointSet,
) -> StardiscStatus {
    guard(|| {
        let kind: GeneratorKind = str_arg(kind, "kind")?.parse().map_err(lib_err)?;
        let mut spec = GeneratorSpec::new(kind, dim, n);
        if kind.is_random() {
            spec.seed = Some(seed);
        }
        let set = generate(&spec).map_err(lib_err)?;
        store(out, StardiscPointSet(set))
    })
}

/// Reads a point-set file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_read(
    path: *const c_char,
    out: *mut *mut StardiscPointSet,
) -> StardiscStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let set = io::read_file(Path::new(path)).map_err(lib_err)?;
        store(out, StardiscPointSet(set))
    })
}

/// Releases a point set; null is ignored.
///
/// # Safety
/// `set` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_free(set: *mut StardiscPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of points; 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_len(set: *const StardiscPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Dimension; 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_dim(set: *const StardiscPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.dim())
}

/// Copies the `n * dim` row-major coordinates into `out`, which holds
/// `capacity` doubles.
///
/// # Safety
/// `set` must be a live handle; `out` must hold `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stardisc_pointset_coords(
    set: *const StardiscPointSet,
    out: *mut f64,
    capacity: usize,
) -> StardiscStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let flat = set.0.flat();
        if out.is_null() {
            return Err(null("out"));
        }
        if capacity < flat.len() {
            return Err((
                StardiscStatus::InvalidArgument,
                format!("capacity {capacity} below {}", flat.len()),
            ));
        }
        ptr::copy_nonoverlapping(flat.as_ptr(), out, flat.len());
        Ok(())
    })
}

/// Exact star discrepancy. `witness` (nullable) receives `dim` doubles;
/// `closed_witness` (nullable) is set to 1 when the maximum is attained by
/// a closed box.
///
/// # Safety
/// `set` must be a live handle; `value` must be writable; `witness`, when
/// not null, must hold `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn stardisc_discrepancy(
    set: *const StardiscPointSet,
    value: *mut f64,
    witness: *mut f64,
    closed_witness: *mut i32,
) -> StardiscStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        if value.is_null() {
            return Err(null("value"));
        }
        let r = star_discrepancy(&set.0).map_err(lib_err)?;
        *value = r.value;
        if !witness.is_null() {
            let c = r.witness.coords();
            ptr::copy_nonoverlapping(c.as_ptr(), witness, c.len());
        }
        if !closed_witness.is_null() {
            *closed_witness = i32::from(r.witness_kind == WitnessKind::Closed);
        }
        Ok(())
    })
}

/// Selects `m` points. `time_limit_ms` bounds the branch-and-bound (0 for
/// none) and, for the random solver, is the budget when `evaluations` is 0.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stardisc_subset(
    set: *const StardiscPointSet,
    m: usize,
    solver: StardiscSolver,
    time_limit_ms: u64,
    evaluations: u64,
    seed: u64,
    out: *mut *mut StardiscSelection,
) -> StardiscStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let limit = (time_limit_ms > 0).then(|| Duration::from_millis(time_limit_ms));
        let sel = match solver {
            StardiscSolver::BranchAndBound => bb_subset(
                &set.0,
                m,
                &BbOptions {
                    time_limit: limit,
                    ..BbOptions::default()
                },
            ),
            StardiscSolver::Greedy => greedy_subset(&set.0, m),
            StardiscSolver::BruteForce => brute_force_subset(&set.0, m),
            StardiscSolver::Random => {
                let budget = match (evaluations, limit) {
                    (0, Some(t)) => Budget::Time(t),
                    (0, None) => {
                        return Err((
                            StardiscStatus::InvalidArgument,
                            "random search needs evaluations or a time limit".into(),
                        ))
                    }
                    (k, _) => Budget::Evaluations(k),
                };
                random_subset_search(&set.0, m, budget, seed, 1)
            }
        }
        .map_err(lib_err)?;
        store(out, StardiscSelection(sel))
    })
}

/// Releases a selection; null is ignored.
///
/// # Safety
/// `sel` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stardisc_selection_free(sel: *mut StardiscSelection) {
    if !sel.is_null() {
        drop(Box::from_raw(sel));
    }
}

/// Star discrepancy of the selected subset; NaN for null.
///
/// # Safety
/// `sel` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stardisc_selection_value(sel: *const StardiscSelection) -> f64 {
    sel.as_ref().map_or(f64::NAN, |s| s.0.value)
}

/// # Safety
/// `sel` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn stardisc_selection_status(
    sel: *const StardiscSelection,
) -> StardiscSelectionStatus {
    match sel.as_ref().map(|s| s.0.status) {
        Some(Status::Optimal) => StardiscSelectionStatus::Optimal,
        Some(Status::BestFound) => StardiscSelectionStatus::BestFound,
        _ => StardiscSelectionStatus::Heuristic,
    }
}

/// Number of selected points; 0 for null.
///
/// # Safety
/// `sel` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stardisc_selection_len(sel: *const StardiscSelection) -> usize {
    sel.as_ref().map_or(0, |s| s.0.chosen.len())
}

/// Search nodes visited; 0 for null.
///
/// # Safety
/// `sel` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stardisc_selection_nodes(sel: *const StardiscSelection) -> u64 {
    sel.as_ref().map_or(0, |s| s.0.stats.nodes)
}

/// Copies the sorted zero-based indices into `out`, which holds `capacity`
/// entries.
///
/// # Safety
/// `sel` must be a live handle; `out` must hold `capacity` writable entries.
#[no_mangle]
pub unsafe extern "C" fn stardisc_selection_indices(
    sel: *const StardiscSelection,
    out: *mut usize,
    capacity: usize,
) -> StardiscStatus {
    guard(|| {
        let sel = sel.as_ref().ok_or_else(|| null("selection"))?;
        let c = &sel.0.chosen;
        if c.is_empty() {
            return Ok(());
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if capacity < c.len() {
            return Err((
                StardiscStatus::InvalidArgument,
                format!("capacity {capacity} below {}", c.len()),
            ));
        }
        ptr::copy_nonoverlapping(c.as_ptr(), out, c.len());
        Ok(())
    })
}

/// Writes the subset-selection MILP for `m` points as an LP file.
///
/// # Safety
/// `set` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn stardisc_lp_export(
    set: *const StardiscPointSet,
    m: usize,
    path: *const c_char,
) -> StardiscStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let path = str_arg(path, "path")?;
        let model = build_model(&set.0, m).map_err(lib_err)?;
        let file = std::fs::File::create(path).map_err(|e| lib_err(e.into()))?;
        write_lp(&model, std::io::BufWriter::new(file)).map_err(lib_err)
    })
}
