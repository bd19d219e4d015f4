//! C ABI over the tonnetz library.
//!
//! Graphs travel as opaque handles; bulk data (graph JSON, DOT, analysis
//! reports, tessellation SVG/JSON) crosses the boundary as NUL-terminated
//! UTF-8 strings owned by this library and released with
//! [`tonnetz_string_free`]. Every fallible call returns a [`TonnetzStatus`];
//! on failure [`tonnetz_last_error`] holds a message for the calling thread
//! until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tonnetz_core::analysis::{census, validate_progression, Progression};
use tonnetz_core::builders::{build_archimedean, build_eulerian, build_hexachordal, build_pentatonic};
use tonnetz_core::graph::LabeledGraph;
use tonnetz_core::tiling;

/// Result of a C-ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TonnetzStatus {
    Ok = 0,
    /// A pointer argument was null.
    NullArgument = 1,
    /// An argument failed validation (bad enum value, bad UTF-8, ...).
    InvalidArgument = 2,
    /// The operation itself failed; see `tonnetz_last_error`.
    DomainError = 3,
}

/// Which network to build.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TonnetzNetwork {
    Eulerian = 0,
    Pentatonic = 1,
    Hexachordal = 2,
    ArchimedeanMajor = 3,
    ArchimedeanMinor = 4,
}

/// Opaque graph handle.
pub struct TonnetzGraph {
    graph: LabeledGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) -> TonnetzStatus {
    let text = CString::new(message.into()).unwrap_or_else(|_| c"invalid error text".to_owned());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    TonnetzStatus::DomainError
}

fn leak_string(text: String) -> *mut c_char {
    CString::new(text)
        .unwrap_or_else(|_| c"output contained an interior NUL".to_owned())
        .into_raw()
}

/// Message of the last failing call on this thread, or null. The pointer is
/// owned by the library and stays valid until the next failing call.
#[no_mangle]
pub extern "C" fn tonnetz_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(text) => text.as_ptr(),
        None => ptr::null(),
    })
}

/// Frees a string returned by this library. Null is allowed.
/// # Safety
/// `text` must be null or a pointer previously returned by this library
/// and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Builds one of the five networks behind an opaque handle. The pentatonic
/// and hexachordal builds use their default labels (C D E G A and 1..6).
/// # Safety
/// `out_graph` must be null or a valid pointer to writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_build(
    network: TonnetzNetwork,
    out_graph: *mut *mut TonnetzGraph,
) -> TonnetzStatus {
    if out_graph.is_null() {
        return TonnetzStatus::NullArgument;
    }
    let graph = match network {
        TonnetzNetwork::Eulerian => build_eulerian().graph,
        TonnetzNetwork::Pentatonic => {
            let labels: Vec<String> =
                tonnetz_core::builders::PENTATONIC_LABELS.iter().map(|s| s.to_string()).collect();
            match build_pentatonic(&labels) {
                Ok(b) => b.graph,
                Err(e) => return set_error(e.to_string()),
            }
        }
        TonnetzNetwork::Hexachordal => {
            let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
            match build_hexachordal(&labels) {
                Ok(h) => h.graph,
                Err(e) => return set_error(e.to_string()),
            }
        }
        TonnetzNetwork::ArchimedeanMajor => build_archimedean().major,
        TonnetzNetwork::ArchimedeanMinor => build_archimedean().minor,
    };
    *out_graph = Box::into_raw(Box::new(TonnetzGraph { graph }));
    TonnetzStatus::Ok
}

/// Releases a graph handle. Null is allowed.
/// # Safety
/// `graph` must be null or a handle previously returned by
/// `tonnetz_graph_build` and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_free(graph: *mut TonnetzGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be null or a live handle from `tonnetz_graph_build`.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_vertex_count(graph: *const TonnetzGraph) -> u32 {
    if graph.is_null() {
        return 0;
    }
    (*graph).graph.vertex_count() as u32
}

/// # Safety
/// `graph` must be null or a live handle from `tonnetz_graph_build`.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_edge_count(graph: *const TonnetzGraph) -> u32 {
    if graph.is_null() {
        return 0;
    }
    (*graph).graph.edge_count() as u32
}

/// Girth of the graph, or -1 for a forest, or -2 on a null handle.
/// # Safety
/// `graph` must be null or a live handle from `tonnetz_graph_build`.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_girth(graph: *const TonnetzGraph) -> i32 {
    if graph.is_null() {
        return -2;
    }
    match (*graph).graph.girth() {
        Some(g) => g as i32,
        None => -1,
    }
}

/// # Safety
/// `graph` must be null or a live handle from `tonnetz_graph_build`.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_component_count(graph: *const TonnetzGraph) -> u32 {
    if graph.is_null() {
        return 0;
    }
    (*graph).graph.components().len() as u32
}

/// Graph JSON (vertices with labels and colors, edge list). Free with
/// `tonnetz_string_free`.
/// # Safety
/// `graph` must be null or a live handle; `out_json` must be null or point
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_to_json(
    graph: *const TonnetzGraph,
    out_json: *mut *mut c_char,
) -> TonnetzStatus {
    if graph.is_null() || out_json.is_null() {
        return TonnetzStatus::NullArgument;
    }
    *out_json = leak_string((*graph).graph.to_json());
    TonnetzStatus::Ok
}

/// DOT rendering with the white/black bipartition. Free with
/// `tonnetz_string_free`.
/// # Safety
/// `graph` must be null or a live handle; `out_dot` must be null or point
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_graph_to_dot(
    graph: *const TonnetzGraph,
    out_dot: *mut *mut c_char,
) -> TonnetzStatus {
    if graph.is_null() || out_dot.is_null() {
        return TonnetzStatus::NullArgument;
    }
    *out_dot = leak_string((*graph).graph.to_dot("tonnetz"));
    TonnetzStatus::Ok
}

/// Cycle census of the Eulerian tonnetz up to `max_length` (at most 14), as
/// a JSON array of {length, parallel_count, count} rows.
/// # Safety
/// `out_json` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_census_json(
    max_length: u32,
    out_json: *mut *mut c_char,
) -> TonnetzStatus {
    if out_json.is_null() {
        return TonnetzStatus::NullArgument;
    }
    let t = build_eulerian();
    match census(&t, max_length as usize) {
        Ok(rows) => {
            *out_json = leak_string(serde_json::to_string_pretty(&rows).unwrap());
            TonnetzStatus::Ok
        }
        Err(e) => set_error(e.to_string()),
    }
}

/// Validates a whitespace-separated chord progression against the Eulerian
/// tonnetz and returns the full report as JSON.
/// # Safety
/// `progression` must be null or a NUL-terminated string; `out_json` must
/// be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_analyze_progression_json(
    progression: *const c_char,
    out_json: *mut *mut c_char,
) -> TonnetzStatus {
    if progression.is_null() || out_json.is_null() {
        return TonnetzStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(progression).to_str() else {
        return TonnetzStatus::InvalidArgument;
    };
    let t = build_eulerian();
    let report = Progression::parse(text)
        .and_then(|prog| validate_progression(&t, &prog));
    match report {
        Ok(report) => {
            *out_json = leak_string(serde_json::to_string_pretty(&report).unwrap());
            TonnetzStatus::Ok
        }
        Err(e) => set_error(e.to_string()),
    }
}

/// Generates the {4,6,12} tessellation patch for one Archimedean component
/// and returns it as JSON (`as_svg` false) or as an SVG document (`as_svg`
/// true).
/// # Safety
/// `out_text` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tonnetz_tessellation(
    network: TonnetzNetwork,
    rings: u32,
    as_svg: bool,
    out_text: *mut *mut c_char,
) -> TonnetzStatus {
    if out_text.is_null() {
        return TonnetzStatus::NullArgument;
    }
    let nets = build_archimedean();
    let component = match network {
        TonnetzNetwork::ArchimedeanMajor => nets.major,
        TonnetzNetwork::ArchimedeanMinor => nets.minor,
        _ => return TonnetzStatus::InvalidArgument,
    };
    match tiling::generate(&component, rings) {
        Ok(patch) => {
            *out_text = leak_string(if as_svg { patch.to_svg() } else { patch.to_json() });
            TonnetzStatus::Ok
        }
        Err(e) => set_error(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let text = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        tonnetz_string_free(ptr);
        text
    }

    #[test]
    fn build_and_query_through_the_abi() {
        unsafe {
            let mut handle: *mut TonnetzGraph = ptr::null_mut();
            let status = tonnetz_graph_build(TonnetzNetwork::Eulerian, &mut handle);
            assert_eq!(status, TonnetzStatus::Ok);
            assert_eq!(tonnetz_graph_vertex_count(handle), 24);
            assert_eq!(tonnetz_graph_edge_count(handle), 36);
            assert_eq!(tonnetz_graph_girth(handle), 6);
            assert_eq!(tonnetz_graph_component_count(handle), 1);
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(tonnetz_graph_to_json(handle, &mut json), TonnetzStatus::Ok);
            let text = take_string(json);
            let parsed = LabeledGraph::from_json(&text).unwrap();
            assert_eq!(parsed.vertex_count(), 24);
            tonnetz_graph_free(handle);
        }
    }

    #[test]
    fn archimedean_has_girth_four() {
        unsafe {
            let mut handle: *mut TonnetzGraph = ptr::null_mut();
            tonnetz_graph_build(TonnetzNetwork::ArchimedeanMinor, &mut handle);
            assert_eq!(tonnetz_graph_girth(handle), 4);
            tonnetz_graph_free(handle);
        }
    }

    #[test]
    fn census_and_analysis_return_json() {
        unsafe {
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(tonnetz_census_json(8, &mut json), TonnetzStatus::Ok);
            let rows: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert!(rows.as_array().unwrap().len() >= 4);

            let progression = c"G#m EM";
            let mut report: *mut c_char = ptr::null_mut();
            let status = tonnetz_analyze_progression_json(progression.as_ptr(), &mut report);
            assert_eq!(status, TonnetzStatus::Ok);
            let value: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
            assert_eq!(value["is_path"], true);
        }
    }

    #[test]
    fn errors_set_a_message() {
        unsafe {
            let bad = c"CM not-a-chord";
            let mut out: *mut c_char = ptr::null_mut();
            let status = tonnetz_analyze_progression_json(bad.as_ptr(), &mut out);
            assert_eq!(status, TonnetzStatus::DomainError);
            let message = CStr::from_ptr(tonnetz_last_error()).to_str().unwrap();
            assert!(message.contains("chord"), "message: {message}");
            // Census above 14 is a domain error too.
            assert_eq!(tonnetz_census_json(20, &mut out), TonnetzStatus::DomainError);
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            assert_eq!(
                tonnetz_graph_build(TonnetzNetwork::Eulerian, ptr::null_mut()),
                TonnetzStatus::NullArgument
            );
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                tonnetz_analyze_progression_json(ptr::null(), &mut out),
                TonnetzStatus::NullArgument
            );
            assert_eq!(tonnetz_graph_girth(ptr::null()), -2);
            tonnetz_graph_free(ptr::null_mut());
            tonnetz_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn tessellation_through_the_abi() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            let status =
                tonnetz_tessellation(TonnetzNetwork::ArchimedeanMajor, 1, false, &mut out);
            assert_eq!(status, TonnetzStatus::Ok);
            let patch = tiling::TilingPatch::from_json(&take_string(out)).unwrap();
            assert_eq!(patch.faces.len(), 25);
            let status = tonnetz_tessellation(TonnetzNetwork::ArchimedeanMajor, 0, true, &mut out);
            assert_eq!(status, TonnetzStatus::Ok);
            assert!(take_string(out).contains("</svg>"));
            // Only the Archimedean components tessellate.
            let status = tonnetz_tessellation(TonnetzNetwork::Eulerian, 1, false, &mut out);
            assert_eq!(status, TonnetzStatus::InvalidArgument);
        }
    }
}
