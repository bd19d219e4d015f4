//! Chord-progression analysis over the Eulerian tonnetz: path validation,
//! the cycle census classified by parallel-edge count, polar opposition and
//! equal spacing along cycles, and tetrachord reduction to underlying
//! triads.
//!
//! Cycle families are keyed by (length, parallel count): a 6-cycle with
//! three parallel edges is a 3p-hexacycle, with two a 2p-hexacycle, an
//! 8-cycle with four a 4p-octacycle, and so on. The nicknames attached to
//! some keys are display strings only.

use serde::Serialize;
use thiserror::Error;

use crate::builders::{classify_edge, EdgeClass, EulerianTonnetz};
use crate::graph::{Cycle, VertexId};
use crate::pitch::{ChordParseError, PitchClassSet, Triad};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AnalysisError {
    #[error("unknown chord: {0}")]
    UnknownChord(#[from] ChordParseError),
    #[error("progression is empty")]
    EmptyProgression,
    #[error("progression repeats `{0}` consecutively")]
    ConsecutiveRepeat(String),
    #[error("cycle does not lie in the Eulerian tonnetz")]
    ForeignCycle,
    #[error("vertex is not on the cycle")]
    VertexNotOnCycle,
    #[error("polar opposition needs an even cycle, got length {0}")]
    OddCycle(usize),
    #[error("tetrachord must have 4 pitch classes, got {0}")]
    WrongTetrachordSize(usize),
    #[error("census is capped at length 14, got {0}")]
    MaxLengthTooLarge(usize),
}

/// An ordered chord sequence. Consecutive repeats are rejected; repeats at
/// a distance are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub triads: Vec<Triad>,
}

impl Progression {
    pub fn new(triads: Vec<Triad>) -> Result<Self, AnalysisError> {
        if triads.is_empty() {
            return Err(AnalysisError::EmptyProgression);
        }
        for pair in triads.windows(2) {
            if pair[0] == pair[1] {
                return Err(AnalysisError::ConsecutiveRepeat(pair[0].name()));
            }
        }
        Ok(Progression { triads })
    }

    /// Parses whitespace-separated chord names, e.g. `"G#m BM Ebm"`.
    /// Enharmonic spellings are canonicalized on the way in.
    pub fn parse(text: &str) -> Result<Self, AnalysisError> {
        let triads = text
            .split_whitespace()
            .map(|w| w.parse::<Triad>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(triads)
    }
}

/// Number of parallel (same-root) edges in a cycle of the Eulerian tonnetz.
pub fn p_count(tonnetz: &EulerianTonnetz, cycle: &Cycle) -> Result<usize, AnalysisError> {
    let mut count = 0;
    for &e in cycle.edge_ids() {
        match classify_edge(tonnetz, e) {
            Ok(EdgeClass::Parallel) => count += 1,
            Ok(_) => {}
            Err(_) => return Err(AnalysisError::ForeignCycle),
        }
    }
    Ok(count)
}

/// One row of the cycle census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub length: usize,
    pub parallel_count: usize,
    pub count: usize,
}

/// Exhaustive cycle census of the tonnetz by (length, parallel count), for
/// all cycle lengths up to `max_length` (at most 14).
pub fn census(
    tonnetz: &EulerianTonnetz,
    max_length: usize,
) -> Result<Vec<CensusEntry>, AnalysisError> {
    let detailed = census_cycles(tonnetz, max_length)?;
    let mut counts: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for (cycle, p) in &detailed {
        *counts.entry((cycle.len(), *p)).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|((length, parallel_count), count)| CensusEntry { length, parallel_count, count })
        .collect())
}

/// Every simple cycle of the tonnetz up to `max_length`, with its parallel
/// count.
pub fn census_cycles(
    tonnetz: &EulerianTonnetz,
    max_length: usize,
) -> Result<Vec<(Cycle, usize)>, AnalysisError> {
    if max_length > 14 {
        return Err(AnalysisError::MaxLengthTooLarge(max_length));
    }
    let girth = tonnetz.graph.girth().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut length = girth;
    while length <= max_length {
        for cycle in tonnetz.graph.enumerate_cycles(length).expect("tonnetz is simple and small") {
            let p = p_count(tonnetz, &cycle)?;
            out.push((cycle, p));
        }
        length += 1;
    }
    Ok(out)
}

/// Display name of a cycle family.
pub fn family_name(length: usize, parallel_count: usize) -> String {
    match (length, parallel_count) {
        (6, 3) => "3p-hexacycle".into(),
        (6, 2) => "2p-hexacycle (straight bow-tie)".into(),
        (8, 4) => "4p-octacycle (four-cornered hat)".into(),
        (8, 1) => "1p-octacycle (octabeanie)".into(),
        (10, 2) => "2p-decacycle (floppy bow-tie)".into(),
        (10, 4) => "4p-decacycle".into(),
        (14, 2) => "2p-tetrakaidecacycle".into(),
        (18, 1) => "1p-octakaidecacycle (fishbowl)".into(),
        (24, 0) => "perimeter Hamiltonian".into(),
        (l, p) => format!("{p}p-{l}-cycle"),
    }
}

/// A cycle with its classification, ready for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub vertices: Vec<String>,
    pub length: usize,
    pub parallel_count: usize,
    pub family: String,
}

impl CycleReport {
    pub fn new(tonnetz: &EulerianTonnetz, cycle: &Cycle) -> Result<Self, AnalysisError> {
        let p = p_count(tonnetz, cycle)?;
        Ok(CycleReport {
            vertices: cycle.labels(&tonnetz.graph),
            length: cycle.len(),
            parallel_count: p,
            family: family_name(cycle.len(), p),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub from: String,
    pub to: String,
    pub adjacent: bool,
}

/// Outcome of validating a progression against the tonnetz.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProgressionReport {
    pub chords: Vec<String>,
    pub steps: Vec<StepReport>,
    /// True when every consecutive pair is adjacent.
    pub is_path: bool,
    /// Census cycles (length <= 14) containing every edge of the path.
    /// Empty unless the progression is a path with at least one step.
    pub path_cycles: Vec<CycleReport>,
    /// Census cycles containing every chord of the progression as a vertex,
    /// whether or not the traversal follows cycle edges.
    pub supporting_cycles: Vec<CycleReport>,
}

/// Marks each consecutive pair adjacent or not; when the whole progression
/// is a path, lists every census cycle containing it.
pub fn validate_progression(
    tonnetz: &EulerianTonnetz,
    progression: &Progression,
) -> Result<ProgressionReport, AnalysisError> {
    let vertices: Vec<VertexId> =
        progression.triads.iter().map(|&t| tonnetz.vertex_of(t)).collect();
    let mut steps = Vec::new();
    let mut path_edges = Vec::new();
    let mut is_path = true;
    for pair in vertices.windows(2) {
        let edge = tonnetz.graph.edge_between(pair[0], pair[1]);
        steps.push(StepReport {
            from: tonnetz.graph.label(pair[0]).to_string(),
            to: tonnetz.graph.label(pair[1]).to_string(),
            adjacent: edge.is_some(),
        });
        match edge {
            Some(e) => path_edges.push(e),
            None => is_path = false,
        }
    }
    let mut path_cycles = Vec::new();
    let mut supporting_cycles = Vec::new();
    if is_path {
        for (cycle, _) in census_cycles(tonnetz, 14)? {
            if vertices.iter().all(|&v| cycle.contains_vertex(v)) {
                supporting_cycles.push(CycleReport::new(tonnetz, &cycle)?);
                if !path_edges.is_empty() && path_edges.iter().all(|&e| cycle.contains_edge(e)) {
                    path_cycles.push(CycleReport::new(tonnetz, &cycle)?);
                }
            }
        }
    }
    Ok(ProgressionReport {
        chords: progression.triads.iter().map(|t| t.name()).collect(),
        steps,
        is_path,
        path_cycles,
        supporting_cycles,
    })
}

/// The vertex diametrically opposite `v` on an even cycle.
pub fn polar_opposite(cycle: &Cycle, v: VertexId) -> Result<VertexId, AnalysisError> {
    if !cycle.len().is_multiple_of(2) {
        return Err(AnalysisError::OddCycle(cycle.len()));
    }
    let pos = cycle.position_of(v).ok_or(AnalysisError::VertexNotOnCycle)?;
    Ok(cycle.vertex_at(pos + cycle.len() / 2))
}

/// True when the vertices sit at equal gaps along the cycle (in cyclic
/// position order, including the wrap-around gap).
pub fn equally_spaced(cycle: &Cycle, vs: &[VertexId]) -> Result<bool, AnalysisError> {
    let mut positions = Vec::with_capacity(vs.len());
    for &v in vs {
        positions.push(cycle.position_of(v).ok_or(AnalysisError::VertexNotOnCycle)?);
    }
    if positions.len() <= 1 {
        return Ok(true);
    }
    positions.sort_unstable();
    let n = cycle.len();
    let gaps: Vec<usize> = (0..positions.len())
        .map(|i| {
            let next = positions[(i + 1) % positions.len()];
            (next + n - positions[i]) % n
        })
        .collect();
    Ok(gaps.iter().all(|&g| g == gaps[0]))
}

/// The ten-chord fanfare cycle from the third act of Parsifal:
/// Bbm, GbM, F#m, AM, C#m, EM, Em, GM, Gm, BbM and back to Bbm.
pub const PARSIFAL_CHORDS: [&str; 10] =
    ["Bbm", "GbM", "F#m", "AM", "C#m", "EM", "Em", "GM", "Gm", "BbM"];

/// Validates the Parsifal sequence as a simple 10-cycle of the tonnetz and
/// reports its family (a 4p-decacycle).
pub fn parsifal_cycle(tonnetz: &EulerianTonnetz) -> (Cycle, CycleReport) {
    let vertices: Vec<VertexId> = PARSIFAL_CHORDS
        .iter()
        .map(|name| tonnetz.vertex_of(name.parse().expect("fixture chord names parse")))
        .collect();
    let cycle = tonnetz
        .graph
        .cycle_from_vertices(&vertices)
        .expect("the Parsifal sequence closes a simple cycle");
    let report = CycleReport::new(tonnetz, &cycle).expect("cycle lies in the tonnetz");
    (cycle, report)
}

/// All major and minor triads contained in a four-note chord.
pub fn triads_in_tetrachord(s: PitchClassSet) -> Result<Vec<Triad>, AnalysisError> {
    if s.len() != 4 {
        return Err(AnalysisError::WrongTetrachordSize(s.len()));
    }
    Ok(crate::pitch::triads_in_set(s))
}
