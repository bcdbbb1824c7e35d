//! C interface to the interval-dps library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns
//! an [`IdpsStatus`]; on failure [`idps_last_error`] describes the problem
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use interval_dps::das::build_das;
use interval_dps::dps::build_dps;
use interval_dps::instances::{gen_random, Flavor};
use interval_dps::io::{InstanceFile, Meta};
use interval_dps::{coord, verify_approx, Error, Graph, Instance, Interval, Subgraph};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdpsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInstance = 3,
    Disconnected = 4,
    BudgetExceeded = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

/// Interval graph with terminals.
pub struct IdpsInstance(Instance);

/// Subgraph of an instance.
pub struct IdpsSubgraph(Subgraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> IdpsStatus {
    match e {
        Error::Disconnected { .. } => IdpsStatus::Disconnected,
        Error::BudgetExceeded(_) => IdpsStatus::BudgetExceeded,
        Error::EmptyInstance
        | Error::LengthMismatch { .. }
        | Error::InvalidInterval { .. }
        | Error::Representation(_)
        | Error::NotUnitPoint { .. } => IdpsStatus::InvalidInstance,
        Error::Invariant(_) => IdpsStatus::Internal,
        _ => IdpsStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (IdpsStatus, String)>) -> IdpsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IdpsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library".into());
            IdpsStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (IdpsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (IdpsStatus, String) {
    (IdpsStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn idps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds an instance from `n` intervals. `coords` holds four integers per
/// interval: left numerator, left denominator, right numerator, right
/// denominator. `terminal[i]` is nonzero for terminals.
///
/// # Safety
/// `coords` must point to `4 * n` values and `terminal` to `n` bytes.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_new(
    coords: *const i64,
    terminal: *const u8,
    n: usize,
    out: *mut *mut IdpsInstance,
) -> IdpsStatus {
    guard(|| {
        if coords.is_null() || terminal.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let c = std::slice::from_raw_parts(coords, 4 * n);
        let t = std::slice::from_raw_parts(terminal, n);
        let mut ivs = Vec::with_capacity(n);
        for i in 0..n {
            let q = &c[4 * i..4 * i + 4];
            if q[1] == 0 || q[3] == 0 {
                return Err((IdpsStatus::InvalidInstance, format!("interval {i} has a zero denominator")));
            }
            let iv = Interval::new(coord(q[0], q[1]), coord(q[2], q[3]))
                .map_err(|_| lib_err(Error::InvalidInterval { index: i }))?;
            ivs.push(iv);
        }
        let flags: Vec<bool> = t.iter().map(|&b| b != 0).collect();
        let g = Instance::new(&ivs, &flags).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(IdpsInstance(g)));
        Ok(())
    })
}

/// Seeded random instance; `flavor` 0 is general, 1 is unit/point.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_random(
    n: usize,
    k: usize,
    seed: u64,
    flavor: u32,
    out: *mut *mut IdpsInstance,
) -> IdpsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flavor = match flavor {
            0 => Flavor::General,
            1 => Flavor::UnitPoint,
            f => return Err((IdpsStatus::InvalidArgument, format!("unknown flavor {f}"))),
        };
        let g = gen_random(n, k, seed, flavor).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(IdpsInstance(g)));
        Ok(())
    })
}

/// Parses the JSON instance schema.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_from_json(json: *const c_char, out: *mut *mut IdpsInstance) -> IdpsStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (IdpsStatus::InvalidArgument, e.to_string()))?;
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| (IdpsStatus::InvalidInstance, e.to_string()))?;
        let g = file.to_instance().map_err(lib_err)?;
        *out = Box::into_raw(Box::new(IdpsInstance(g)));
        Ok(())
    })
}

/// Serializes an instance; free the string with [`idps_string_free`].
///
/// # Safety
/// `g` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_to_json(g: *const IdpsInstance, out: *mut *mut c_char) -> IdpsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = serde_json::to_string(&InstanceFile::from_instance(&g.0, Meta::default()))
            .map_err(|e| (IdpsStatus::Internal, e.to_string()))?;
        *out = CString::new(text).map_err(|e| (IdpsStatus::Internal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn idps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_free(g: *mut IdpsInstance) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_len(g: *const IdpsInstance) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idps_instance_terminal_count(g: *const IdpsInstance) -> usize {
    g.as_ref().map_or(0, |g| g.0.terminals().len())
}

/// Shortest-path distance between canonical vertices `u` and `v`; writes
/// -1 when they are disconnected.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_distance(g: *const IdpsInstance, u: usize, v: usize, out: *mut i64) -> IdpsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = g.0.bfs_distance(u, v).map_err(lib_err)?;
        *out = d.map_or(-1, i64::from);
        Ok(())
    })
}

unsafe fn build_with(
    g: *const IdpsInstance,
    out: *mut *mut IdpsSubgraph,
    f: impl FnOnce(&Instance) -> interval_dps::Result<Subgraph>,
) -> IdpsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h = f(&g.0).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(IdpsSubgraph(h)));
        Ok(())
    })
}

/// Subgraph keeping every terminal distance within +1.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_build_das(g: *const IdpsInstance, out: *mut *mut IdpsSubgraph) -> IdpsStatus {
    build_with(g, out, |g| build_das(g).map(|r| r.subgraph))
}

/// Subgraph keeping every terminal distance exactly.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_build_dps(g: *const IdpsInstance, out: *mut *mut IdpsSubgraph) -> IdpsStatus {
    build_with(g, out, |g| build_dps(g).map(|r| r.subgraph))
}

/// # Safety
/// `h` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn idps_subgraph_free(h: *mut IdpsSubgraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idps_subgraph_edge_count(h: *const IdpsSubgraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.edge_count())
}

/// Vertices of degree at least three, terminals included.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idps_subgraph_branching_vertices(h: *const IdpsSubgraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.branching_vertices().0)
}

/// Copies edges as `(u, v)` pairs into `buf` (two entries per edge).
/// `written` receives the number of edges; if `capacity` edges do not fit
/// nothing is copied and `BufferTooSmall` is returned.
///
/// # Safety
/// `buf` must have room for `2 * capacity` values; `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn idps_subgraph_edges(
    h: *const IdpsSubgraph,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> IdpsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("subgraph"))?;
        if written.is_null() {
            return Err(null("written"));
        }
        let m = h.0.edge_count();
        *written = m;
        if m > capacity {
            return Err((IdpsStatus::BufferTooSmall, format!("{m} edges, room for {capacity}")));
        }
        if m > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, (u, v)) in h.0.edges().enumerate() {
            *buf.add(2 * i) = u;
            *buf.add(2 * i + 1) = v;
        }
        Ok(())
    })
}

/// Checks `d_G <= d_H <= d_G + slack` on every terminal pair.
///
/// # Safety
/// Handles must be live and `ok` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idps_verify(
    g: *const IdpsInstance,
    h: *const IdpsSubgraph,
    slack: u32,
    ok: *mut bool,
) -> IdpsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("instance"))?;
        let h = h.as_ref().ok_or_else(|| null("subgraph"))?;
        if ok.is_null() {
            return Err(null("ok"));
        }
        *ok = verify_approx(&g.0, &h.0, slack).map_err(lib_err)?.ok;
        Ok(())
    })
}
