//! Combinatorial incidence structures: labeled points and lines with an
//! incidence relation obeying the partial-linear-space axioms (two lines
//! meet in at most one point, two points lie on at most one common line),
//! their `{m_r, n_k}` configuration types, the Levi-graph correspondence,
//! and duality with an exhaustive self-duality search.

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::graph::{Color, LabeledGraph, VertexId};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum IncidenceError {
    #[error("point id {0} out of range")]
    InvalidPoint(usize),
    #[error("incidence axioms violated by {0} pair(s); see validate() for the list")]
    AxiomsViolated(usize),
    #[error("not a configuration: point degrees {0:?}, line degrees {1:?} are not uniform")]
    NotTactical(Vec<usize>, Vec<usize>),
    #[error("Levi graph needs a proper white/black bipartition coloring")]
    NotBipartite,
    #[error("not a configuration: Levi graph girth {0} is below six")]
    GirthBelowSix(usize),
    #[error("configuration JSON is malformed: {0}")]
    BadJson(String),
}

/// A point-line incidence structure. Lines are stored as sorted point-id
/// lists; the point-side view is kept in sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    point_labels: Vec<String>,
    line_labels: Vec<String>,
    points_on_line: Vec<Vec<usize>>,
    lines_through_point: Vec<Vec<usize>>,
}

/// An incident point-line pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag {
    pub point: usize,
    pub line: usize,
}

impl IncidenceStructure {
    pub fn new(
        point_labels: Vec<String>,
        lines: Vec<(String, Vec<usize>)>,
    ) -> Result<Self, IncidenceError> {
        let m = point_labels.len();
        let mut line_labels = Vec::with_capacity(lines.len());
        let mut points_on_line = Vec::with_capacity(lines.len());
        let mut lines_through_point = vec![Vec::new(); m];
        for (l, (label, mut pts)) in lines.into_iter().enumerate() {
            pts.sort_unstable();
            pts.dedup();
            for &p in &pts {
                if p >= m {
                    return Err(IncidenceError::InvalidPoint(p));
                }
                lines_through_point[p].push(l);
            }
            line_labels.push(label);
            points_on_line.push(pts);
        }
        Ok(IncidenceStructure { point_labels, line_labels, points_on_line, lines_through_point })
    }

    pub fn point_count(&self) -> usize {
        self.point_labels.len()
    }

    pub fn line_count(&self) -> usize {
        self.line_labels.len()
    }

    pub fn point_label(&self, p: usize) -> &str {
        &self.point_labels[p]
    }

    pub fn line_label(&self, l: usize) -> &str {
        &self.line_labels[l]
    }

    pub fn point_by_label(&self, label: &str) -> Option<usize> {
        self.point_labels.iter().position(|s| s == label)
    }

    pub fn line_by_label(&self, label: &str) -> Option<usize> {
        self.line_labels.iter().position(|s| s == label)
    }

    pub fn points_on(&self, line: usize) -> &[usize] {
        &self.points_on_line[line]
    }

    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.lines_through_point[point]
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.points_on_line[line].binary_search(&point).is_ok()
    }

    /// All flags, sorted by (point, line).
    pub fn flags(&self) -> Vec<Flag> {
        let mut out = Vec::new();
        for p in 0..self.point_count() {
            for &l in &self.lines_through_point[p] {
                out.push(Flag { point: p, line: l });
            }
        }
        out.sort_unstable();
        out
    }

    pub fn flag_count(&self) -> usize {
        self.points_on_line.iter().map(|pts| pts.len()).sum()
    }

    /// Checks the partial-linear-space axioms and reports every violating
    /// pair.
    pub fn validate(&self) -> ValidationReport {
        let mut line_pairs = Vec::new();
        for l1 in 0..self.line_count() {
            for l2 in (l1 + 1)..self.line_count() {
                let shared: Vec<usize> = self.points_on_line[l1]
                    .iter()
                    .filter(|p| self.points_on_line[l2].binary_search(p).is_ok())
                    .copied()
                    .collect();
                if shared.len() > 1 {
                    line_pairs.push((l1, l2, shared));
                }
            }
        }
        let mut point_pairs = Vec::new();
        for p1 in 0..self.point_count() {
            for p2 in (p1 + 1)..self.point_count() {
                let shared: Vec<usize> = self.lines_through_point[p1]
                    .iter()
                    .filter(|l| self.lines_through_point[p2].binary_search(l).is_ok())
                    .copied()
                    .collect();
                if shared.len() > 1 {
                    point_pairs.push((p1, p2, shared));
                }
            }
        }
        ValidationReport { line_pairs, point_pairs }
    }

    /// The `{m_r, n_k}` signature of a valid tactical structure.
    pub fn configuration_type(&self) -> Result<ConfigurationType, IncidenceError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(IncidenceError::AxiomsViolated(
                report.line_pairs.len() + report.point_pairs.len(),
            ));
        }
        let point_degrees: Vec<usize> =
            self.lines_through_point.iter().map(|ls| ls.len()).collect();
        let line_degrees: Vec<usize> = self.points_on_line.iter().map(|ps| ps.len()).collect();
        let uniform = |d: &[usize]| d.first().filter(|_| d.iter().all(|x| x == &d[0])).copied();
        match (uniform(&point_degrees), uniform(&line_degrees)) {
            (Some(r), Some(k)) => Ok(ConfigurationType {
                points: self.point_count(),
                lines_per_point: r,
                lines: self.line_count(),
                points_per_line: k,
            }),
            _ => Err(IncidenceError::NotTactical(point_degrees, line_degrees)),
        }
    }

    /// The bipartite incidence graph: white vertices are points, black are
    /// lines, edges are flags.
    pub fn to_levi(&self) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for label in &self.point_labels {
            g.add_vertex(label.clone(), Some(Color::White));
        }
        for label in &self.line_labels {
            g.add_vertex(label.clone(), Some(Color::Black));
        }
        let m = self.point_count();
        for p in 0..m {
            for &l in &self.lines_through_point[p] {
                g.add_edge(p, m + l).expect("vertex ids in range");
            }
        }
        g
    }

    /// Reads a structure back off a properly bicolored Levi graph. Requires
    /// girth at least six (the configuration condition); a girth-4 graph is
    /// rejected because two of its lines would share two points.
    pub fn from_levi(g: &LabeledGraph) -> Result<Self, IncidenceError> {
        if !g.is_properly_bicolored() {
            return Err(IncidenceError::NotBipartite);
        }
        if let Some(girth) = g.girth() {
            if girth < 6 {
                return Err(IncidenceError::GirthBelowSix(girth));
            }
        }
        let whites: Vec<VertexId> =
            (0..g.vertex_count()).filter(|&v| g.vertex(v).color == Some(Color::White)).collect();
        let blacks: Vec<VertexId> =
            (0..g.vertex_count()).filter(|&v| g.vertex(v).color == Some(Color::Black)).collect();
        let point_index: std::collections::BTreeMap<VertexId, usize> =
            whites.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let point_labels = whites.iter().map(|&v| g.label(v).to_string()).collect();
        let lines = blacks
            .iter()
            .map(|&b| {
                let pts = g.neighbors(b).into_iter().map(|w| point_index[&w]).collect();
                (g.label(b).to_string(), pts)
            })
            .collect();
        Self::new(point_labels, lines)
    }

    /// The dual structure: points and lines interchanged, incidence
    /// transposed.
    pub fn dual(&self) -> IncidenceStructure {
        let lines = self
            .point_labels
            .iter()
            .enumerate()
            .map(|(p, label)| (label.clone(), self.lines_through_point[p].clone()))
            .collect();
        IncidenceStructure::new(self.line_labels.clone(), lines)
            .expect("transpose of a valid structure is valid")
    }

    /// Searches for a self-duality witness: bijections point->line and
    /// line->point preserving incidence (a color-swapping isomorphism of the
    /// Levi graph). Backtracking with degree and distance-profile pruning.
    pub fn self_duality_witness(&self) -> Option<DualityWitness> {
        let m = self.point_count();
        let n = self.line_count();
        if m != n {
            return None;
        }
        let levi = self.to_levi();
        let sigma = color_swapping_isomorphism(&levi)?;
        let point_to_line: Vec<usize> = (0..m).map(|p| sigma[p] - m).collect();
        let line_to_point: Vec<usize> = (0..n).map(|l| sigma[m + l]).collect();
        Some(DualityWitness { point_to_line, line_to_point })
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_duality_witness().is_some()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let lines: Vec<serde_json::Value> = (0..self.line_count())
            .map(|l| {
                serde_json::json!({
                    "label": self.line_labels[l],
                    "points": self.points_on_line[l],
                })
            })
            .collect();
        serde_json::json!({ "points": self.point_labels, "lines": lines })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, IncidenceError> {
        #[derive(Deserialize)]
        struct LineJson {
            label: String,
            points: Vec<usize>,
        }
        #[derive(Deserialize)]
        struct ConfigJson {
            points: Vec<String>,
            lines: Vec<LineJson>,
        }
        let parsed: ConfigJson =
            serde_json::from_str(text).map_err(|e| IncidenceError::BadJson(e.to_string()))?;
        Self::new(parsed.points, parsed.lines.into_iter().map(|l| (l.label, l.points)).collect())
    }
}

/// Axiom check outcome; empty pair lists mean the structure is valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    /// Line pairs sharing two or more points, with the shared points.
    pub line_pairs: Vec<(usize, usize, Vec<usize>)>,
    /// Point pairs lying on two or more common lines, with the shared lines.
    pub point_pairs: Vec<(usize, usize, Vec<usize>)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.line_pairs.is_empty() && self.point_pairs.is_empty()
    }
}

/// The `{m_r, n_k}` signature of a tactical incidence structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigurationType {
    pub points: usize,
    pub lines_per_point: usize,
    pub lines: usize,
    pub points_per_line: usize,
}

impl ConfigurationType {
    /// Flag count; equals both `m*r` and `n*k`.
    pub fn flag_count(&self) -> usize {
        self.points * self.lines_per_point
    }

    /// The double-count identity `m*r = n*k`.
    pub fn is_balanced_count(&self) -> bool {
        self.points * self.lines_per_point == self.lines * self.points_per_line
    }

    /// The fundamental inequality `m >= r(k-1) + 1`.
    pub fn satisfies_fundamental_inequality(&self) -> bool {
        self.points > self.lines_per_point * (self.points_per_line - 1)
    }

    /// A structure with two points per line is just a regular graph.
    pub fn is_graph_like(&self) -> bool {
        self.points_per_line == 2
    }

    pub fn is_symmetric(&self) -> bool {
        self.points == self.lines && self.lines_per_point == self.points_per_line
    }
}

impl fmt::Display for ConfigurationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_symmetric() {
            write!(f, "{{{}_{}}}", self.points, self.lines_per_point)
        } else {
            write!(
                f,
                "{{{}_{}, {}_{}}}",
                self.points, self.lines_per_point, self.lines, self.points_per_line
            )
        }
    }
}

/// A self-duality witness: the point->line and line->point bijections of a
/// color-swapping Levi-graph isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityWitness {
    pub point_to_line: Vec<usize>,
    pub line_to_point: Vec<usize>,
}

/// Finds an adjacency-preserving bijection of a properly bicolored graph
/// mapping every white vertex to a black one and vice versa.
fn color_swapping_isomorphism(g: &LabeledGraph) -> Option<Vec<VertexId>> {
    if !g.is_properly_bicolored() {
        return None;
    }
    let n = g.vertex_count();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let profiles: Vec<Vec<usize>> = (0..n).map(|v| distance_profile(g, v)).collect();
    // Assign vertices in BFS order so each new vertex (after the first in its
    // component) has an already-mapped neighbor to anchor its candidates.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut sigma: Vec<Option<VertexId>> = vec![None; n];
    let mut used = vec![false; n];
    if !assign(g, &order, 0, &degrees, &profiles, &mut sigma, &mut used) {
        return None;
    }
    let sigma: Vec<VertexId> = sigma.into_iter().map(|s| s.unwrap()).collect();
    // Full verification: bijective, color-swapping, edge-preserving in both
    // directions (degree equality makes one direction sufficient, but the
    // check is cheap).
    for v in 0..n {
        let nv: BTreeSet<VertexId> = g.neighbors(v).into_iter().map(|u| sigma[u]).collect();
        let actual: BTreeSet<VertexId> = g.neighbors(sigma[v]).into_iter().collect();
        if nv != actual {
            return None;
        }
    }
    Some(sigma)
}

fn assign(
    g: &LabeledGraph,
    order: &[VertexId],
    idx: usize,
    degrees: &[usize],
    profiles: &[Vec<usize>],
    sigma: &mut Vec<Option<VertexId>>,
    used: &mut Vec<bool>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let want_color = match g.vertex(v).color {
        Some(Color::White) => Color::Black,
        Some(Color::Black) => Color::White,
        None => return false,
    };
    for candidate in 0..g.vertex_count() {
        if used[candidate]
            || g.vertex(candidate).color != Some(want_color)
            || degrees[candidate] != degrees[v]
            || profiles[candidate] != profiles[v]
        {
            continue;
        }
        let mut consistent = true;
        for u in g.neighbors(v) {
            if let Some(img) = sigma[u] {
                if g.edge_between(candidate, img).is_none() {
                    consistent = false;
                    break;
                }
            }
        }
        if !consistent {
            continue;
        }
        sigma[v] = Some(candidate);
        used[candidate] = true;
        if assign(g, order, idx + 1, degrees, profiles, sigma, used) {
            return true;
        }
        sigma[v] = None;
        used[candidate] = false;
    }
    false
}

fn distance_profile(g: &LabeledGraph, from: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let mut profile: Vec<usize> = dist.into_iter().filter(|&d| d != usize::MAX).collect();
    profile.sort_unstable();
    profile
}
