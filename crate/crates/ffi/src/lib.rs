//! C ABI for `grassmann-core`.
//!
//! Conventions:
//! * every fallible function returns a [`GqStatus`]; results go through out
//!   pointers, which are written only on success;
//! * the message for the last failure on the calling thread is available
//!   from [`gq_last_error`];
//! * graphs and recognition reports are opaque handles released with their
//!   `_free` function; strings returned to the caller are released with
//!   [`gq_string_free`];
//! * panics never cross the boundary and surface as `GQ_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grassmann_core::cli::cmd_params;
use grassmann_core::exact::{bracket, chi, gaussian_binomial};
use grassmann_core::graphs::{
    clique_extension, grassmann_graph, grid_graph, local_graph, read_edge_list, shrikhande, verify_spectrum_exact,
    write_edge_list, Graph, MAX_VERTICES,
};
use grassmann_core::params::Spectrum;
use grassmann_core::recognize::{recognize_clique_ext_grid, RecognitionReport, RecognizeOptions};
use grassmann_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrimePower = 3,
    TooLarge = 4,
    Parse = 5,
    Io = 6,
    NotDistanceRegular = 7,
    Infeasible = 8,
    Utf8 = 9,
    Internal = 10,
}

/// Opaque graph handle.
pub struct GqGraph(Graph);

/// Opaque recognition report handle.
pub struct GqRecognition(RecognitionReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> GqStatus {
    match e {
        Error::NotPrimePower(_) | Error::UnsupportedOrder(_) => GqStatus::NotPrimePower,
        Error::TooLarge(_) | Error::CliqueExplosion(_) => GqStatus::TooLarge,
        Error::Parse { .. } => GqStatus::Parse,
        Error::Io(_) => GqStatus::Io,
        Error::NotDistanceRegular(_) | Error::Disconnected(_) => GqStatus::NotDistanceRegular,
        Error::Infeasible(_) | Error::InconsistentArray(_) | Error::NonIntegral(_) => GqStatus::Infeasible,
        _ => GqStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (GqStatus, String)>) -> GqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GqStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GqStatus::Internal
        }
    }
}

fn core(e: Error) -> (GqStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (GqStatus, String) {
    (GqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (GqStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn graph_ref<'a>(g: *const GqGraph) -> Result<&'a Graph, (GqStatus, String)> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn path_arg(p: *const c_char) -> Result<String, (GqStatus, String)> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p).to_str().map(str::to_owned).map_err(|e| (GqStatus::Utf8, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn boxed_graph(g: Graph) -> *mut GqGraph {
    Box::into_raw(Box::new(GqGraph(g)))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the last error message on this thread, or null if the last call
/// succeeded. Release with [`gq_string_free`].
#[no_mangle]
pub extern "C" fn gq_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `[j]_q = 1 + q + ... + q^(j-1)` as a decimal string.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_bracket(j: u32, q: u64, out: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if q < 2 {
            return Err((GqStatus::InvalidArgument, format!("need q >= 2, got {q}")));
        }
        *out = into_c_string(bracket(j, q).to_string());
        Ok(())
    })
}

/// Gaussian binomial `[n m]_q` as a decimal string.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_gaussian_binomial(n: u32, m: u32, q: u64, out: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = into_c_string(gaussian_binomial(n, m, q).map_err(core)?.to_string());
        Ok(())
    })
}

/// Smallest diameter covered by the characterization for this `q`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_chi(q: u64, out: *mut u32) -> GqStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = chi(q).map_err(core)?;
        Ok(())
    })
}

/// Parameter report for `J_q(n, D)` as JSON lines, one record per check.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_params_json(n: u32, d: u32, q: u64, out: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let rep = cmd_params(n, d, q).map_err(core)?;
        let stable: Vec<String> = rep.records().iter().map(ToString::to_string).collect();
        *out = into_c_string(stable.join("\n") + "\n");
        Ok(())
    })
}

/// The Grassmann graph `J_q(n, D)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_grassmann(n: u32, d: u32, q: u64, out: *mut *mut GqGraph) -> GqStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let v = gaussian_binomial(n, d, q).map_err(core)?;
        if v > MAX_VERTICES.into() {
            return Err((GqStatus::TooLarge, format!("J_{q}({n},{d}) has {v} vertices")));
        }
        *out = boxed_graph(grassmann_graph(n as usize, d as usize, q).map_err(core)?);
        Ok(())
    })
}

/// The `(s x t)`-grid.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_grid(s: usize, t: usize, out: *mut *mut GqGraph) -> GqStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if s == 0 || t == 0 || s.saturating_mul(t) > MAX_VERTICES {
            return Err((GqStatus::InvalidArgument, format!("bad grid size {s}x{t}")));
        }
        *out = boxed_graph(grid_graph(s, t));
        Ok(())
    })
}

/// The Shrikhande graph.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_shrikhande(out: *mut *mut GqGraph) -> GqStatus {
    guard(|| {
        *out_ptr(out, "out")? = boxed_graph(shrikhande());
        Ok(())
    })
}

/// The q-clique extension of `g`.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_clique_extension(g: *const GqGraph, q: usize, out: *mut *mut GqGraph) -> GqStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out_ptr(out, "out")?;
        if q == 0 || g.vertex_count().saturating_mul(q) > MAX_VERTICES {
            return Err((GqStatus::InvalidArgument, format!("bad extension factor {q}")));
        }
        *out = boxed_graph(clique_extension(g, q));
        Ok(())
    })
}

/// Subgraph induced on the neighbours of `x`.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_local(g: *const GqGraph, x: usize, out: *mut *mut GqGraph) -> GqStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out_ptr(out, "out")?;
        if x >= g.vertex_count() {
            return Err((GqStatus::InvalidArgument, format!("vertex {x} out of range")));
        }
        *out = boxed_graph(local_graph(g, x));
        Ok(())
    })
}

/// Reads an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_read(path: *const c_char, out: *mut *mut GqGraph) -> GqStatus {
    guard(|| {
        let path = path_arg(path)?;
        let out = out_ptr(out, "out")?;
        let f = File::open(&path).map_err(|e| (GqStatus::Io, format!("{path}: {e}")))?;
        *out = boxed_graph(read_edge_list(BufReader::new(f)).map_err(core)?);
        Ok(())
    })
}

/// Writes `g` as an edge-list file.
///
/// # Safety
/// `g` must be a live graph handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_write(g: *const GqGraph, path: *const c_char) -> GqStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let path = path_arg(path)?;
        let f = File::create(&path).map_err(|e| (GqStatus::Io, format!("{path}: {e}")))?;
        let mut w = BufWriter::new(f);
        write_edge_list(g, &mut w).map_err(core)?;
        w.flush().map_err(|e| (GqStatus::Io, e.to_string()))
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_free(g: *mut GqGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_vertex_count(g: *const GqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_edge_count(g: *const GqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Label-sensitive 64-bit digest of the adjacency, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_digest(g: *const GqGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.0.digest())
}

/// Writes the `n x n` 0/1 adjacency matrix, row-major, into `buf`.
///
/// # Safety
/// `g` must be a live graph handle and `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn gq_graph_adjacency(g: *const GqGraph, buf: *mut u8, len: usize) -> GqStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let n = g.vertex_count();
        if len < n * n {
            return Err((GqStatus::InvalidArgument, format!("buffer holds {len} bytes, need {}", n * n)));
        }
        let out = std::slice::from_raw_parts_mut(buf, n * n);
        for u in 0..n {
            for v in 0..n {
                out[u * n + v] = g.has_edge(u, v) as u8;
            }
        }
        Ok(())
    })
}

/// Exact check that `g` has spectrum `{(thetas[i], mults[i])}`.
///
/// # Safety
/// `g` must be a live graph handle, `thetas` and `mults` valid for `len`
/// reads, and `passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_verify_spectrum(
    g: *const GqGraph,
    thetas: *const i64,
    mults: *const i64,
    len: usize,
    passed: *mut bool,
) -> GqStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let passed = out_ptr(passed, "passed")?;
        if len > 0 && (thetas.is_null() || mults.is_null()) {
            return Err(null("eigenvalue arrays"));
        }
        let pairs: Vec<(i64, i64)> = (0..len).map(|i| (*thetas.add(i), *mults.add(i))).collect();
        if let Some(&(_, m)) = pairs.iter().find(|p| p.1 < 0) {
            return Err((GqStatus::InvalidArgument, format!("negative multiplicity {m}")));
        }
        *passed = verify_spectrum_exact(g, &Spectrum::from_i64(&pairs));
        Ok(())
    })
}

/// Runs recognition of `g` as the q-clique extension of the `(r x r)`-grid.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gq_recognize(
    g: *const GqGraph,
    q: usize,
    r: usize,
    spectral_precheck: bool,
    out: *mut *mut GqRecognition,
) -> GqStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out_ptr(out, "out")?;
        let rep = recognize_clique_ext_grid(g, q, r, RecognizeOptions { spectral_precheck });
        *out = Box::into_raw(Box::new(GqRecognition(rep)));
        Ok(())
    })
}

/// Whether the report accepts the graph; false for a null handle.
///
/// # Safety
/// `rec` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn gq_recognition_accepted(rec: *const GqRecognition) -> bool {
    rec.as_ref().is_some_and(|r| r.0.accepted())
}

/// The report as `key=value` lines. Release with [`gq_string_free`].
///
/// # Safety
/// `rec` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn gq_recognition_to_kv(rec: *const GqRecognition) -> *mut c_char {
    rec.as_ref().map_or(ptr::null_mut(), |r| into_c_string(r.0.to_kv()))
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `rec` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gq_recognition_free(rec: *mut GqRecognition) {
    if !rec.is_null() {
        drop(Box::from_raw(rec));
    }
}
