//! Undirected labeled graphs with dense vertex and edge indices, plus the
//! small-graph toolkit used throughout: connected components, girth,
//! exhaustive simple-cycle enumeration, all-geodesic shortest paths,
//! deterministic spanning trees, and Hamiltonian cycle search.
//!
//! Everything is deterministic: vertices and edges keep their insertion
//! index, adjacency lists are iterated in edge-index order, and cycles are
//! reported in a canonical form (rotated to the smallest vertex id, the
//! lexicographically smaller direction), so repeated runs produce identical
//! output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Bipartition color for Levi graphs: white vertices are points, black
/// vertices are lines.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GraphError {
    #[error("vertex id {0} out of range")]
    InvalidVertex(VertexId),
    #[error("edge id {0} out of range")]
    InvalidEdge(EdgeId),
    #[error("cycle length {0} below 3 on a simple graph")]
    CycleLengthTooShort(usize),
    #[error("graph has {0} vertices, above the limit {1} for this search")]
    TooLarge(usize, usize),
    #[error("operation requires a simple graph (no loops or multi-edges)")]
    NotSimple,
    #[error("graph is disconnected after dropping the requested edges")]
    DisconnectedAfterDrops,
    #[error("edge set does not form a single simple cycle")]
    NotACycle,
    #[error("vertex sequence is not a cycle of this graph")]
    NotAClosedWalk,
    #[error("declared coloring is missing or not a proper bipartition")]
    BadColoring,
    #[error("graph JSON is malformed: {0}")]
    BadJson(String),
}

/// An undirected graph with string-labeled vertices, optional bipartition
/// colors, and stable dense edge indices. Loops and multi-edges are
/// representable; the cycle machinery requires a simple graph.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl LabeledGraph {
    pub fn new() -> Self {
        LabeledGraph { vertices: Vec::new(), edges: Vec::new(), adjacency: Vec::new() }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, color: Option<Color>) -> VertexId {
        self.vertices.push(Vertex { label: label.into(), color });
        self.adjacency.push(Vec::new());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let n = self.vertices.len();
        if u >= n {
            return Err(GraphError::InvalidVertex(u));
        }
        if v >= n {
            return Err(GraphError::InvalidVertex(v));
        }
        let id = self.edges.len();
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.push((a, b));
        self.adjacency[a].push((b, id));
        if a != b {
            self.adjacency[b].push((a, id));
        }
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.vertices[v].label
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbors of `v` with the connecting edge id, in insertion order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    /// Neighbor vertex ids of `v`, ascending, deduplicated.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.adjacency[v].iter().map(|&(u, _)| u).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        // A loop contributes 2 to the degree of its vertex.
        self.adjacency[v].len() + self.adjacency[v].iter().filter(|&&(u, _)| u == v).count()
    }

    /// The lowest-indexed edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency[u]
            .iter()
            .filter(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .min()
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.adjacency[u].iter().filter(|&&(w, _)| w == v).count()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v || !seen.insert((u, v)) {
                return false;
            }
        }
        true
    }

    pub fn is_regular(&self) -> Option<usize> {
        let mut degrees = (0..self.vertex_count()).map(|v| self.degree(v));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when every vertex carries a color and every edge joins white to
    /// black.
    pub fn is_properly_bicolored(&self) -> bool {
        if self.vertices.iter().any(|v| v.color.is_none()) {
            return false;
        }
        self.edges
            .iter()
            .all(|&(u, v)| self.vertices[u].color != self.vertices[v].color)
    }

    /// Connected components as sorted vertex-id lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut component = vec![start];
            let mut queue = vec![start];
            seen[start] = true;
            while let Some(v) = queue.pop() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        component.push(u);
                        queue.push(u);
                    }
                }
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }

    /// Length of the shortest cycle; `None` for forests. Loops are
    /// 1-cycles and parallel edge pairs are 2-cycles.
    pub fn girth(&self) -> Option<usize> {
        if self.edges.iter().any(|&(u, v)| u == v) {
            return Some(1);
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if !seen.insert((u, v)) {
                return Some(2);
            }
        }
        // For each edge, the shortest u-v path avoiding that edge closes the
        // shortest cycle through it.
        let mut best: Option<usize> = None;
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if let Some(d) = self.distance_avoiding(u, v, e) {
                let len = d + 1;
                if best.is_none_or(|b| len < b) {
                    best = Some(len);
                }
            }
        }
        best
    }

    fn distance_avoiding(&self, from: VertexId, to: VertexId, skip: EdgeId) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[from] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                return Some(dist[v]);
            }
            for &(u, e) in &self.adjacency[v] {
                if e != skip && dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// Every simple cycle of exactly `length` edges, canonical and sorted.
    ///
    /// Exhaustive DFS anchored at each cycle's smallest vertex id; intended
    /// for graphs of at most 64 vertices.
    pub fn enumerate_cycles(&self, length: usize) -> Result<Vec<Cycle>, GraphError> {
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        if length < 3 {
            return Err(GraphError::CycleLengthTooShort(length));
        }
        if self.vertex_count() > 64 {
            return Err(GraphError::TooLarge(self.vertex_count(), 64));
        }
        let mut cycles = Vec::new();
        let n = self.vertex_count();
        let mut on_path = vec![false; n];
        for start in 0..n {
            let mut path = vec![start];
            on_path[start] = true;
            self.cycle_dfs(start, length, &mut path, &mut on_path, &mut cycles);
            on_path[start] = false;
        }
        cycles.sort_by(|a, b| a.vertices().cmp(b.vertices()));
        Ok(cycles)
    }

    fn cycle_dfs(
        &self,
        start: VertexId,
        length: usize,
        path: &mut Vec<VertexId>,
        on_path: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        let v = *path.last().unwrap();
        if path.len() == length {
            // Close the cycle; take each direction once.
            if path[1] < path[length - 1] && self.edge_between(v, start).is_some() {
                out.push(self.cycle_from_vertices(path).expect("closed simple walk"));
            }
            return;
        }
        for u in self.neighbors(v) {
            // Anchoring at the minimum vertex id kills rotations.
            if u > start && !on_path[u] {
                path.push(u);
                on_path[u] = true;
                self.cycle_dfs(start, length, path, on_path, out);
                on_path[u] = false;
                path.pop();
            }
        }
    }

    /// Builds a canonical [`Cycle`] from a closed vertex sequence (without
    /// the repeated endpoint).
    pub fn cycle_from_vertices(&self, vertices: &[VertexId]) -> Result<Cycle, GraphError> {
        let k = vertices.len();
        if k < 3 {
            return Err(GraphError::NotAClosedWalk);
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != k {
            return Err(GraphError::NotAClosedWalk);
        }
        let mut edges = Vec::with_capacity(k);
        for i in 0..k {
            let u = vertices[i];
            let v = vertices[(i + 1) % k];
            if u >= self.vertex_count() {
                return Err(GraphError::InvalidVertex(u));
            }
            edges.push(self.edge_between(u, v).ok_or(GraphError::NotAClosedWalk)?);
        }
        edges.sort_unstable();
        Ok(Cycle { vertices: canonical_rotation(vertices), edges })
    }

    /// Reassembles a single simple cycle from its edge set.
    pub fn cycle_from_edge_set(&self, edges: &BTreeSet<EdgeId>) -> Result<Cycle, GraphError> {
        for &e in edges {
            if e >= self.edge_count() {
                return Err(GraphError::InvalidEdge(e));
            }
        }
        let first = *edges.iter().next().ok_or(GraphError::NotACycle)?;
        let (anchor, mut current) = self.edges[first];
        let mut sequence = vec![anchor];
        let mut used = BTreeSet::from([first]);
        while current != anchor {
            sequence.push(current);
            let next = self.adjacency[current]
                .iter()
                .filter(|&&(_, e)| edges.contains(&e) && !used.contains(&e))
                .min_by_key(|&&(_, e)| e);
            match next {
                Some(&(w, e)) => {
                    used.insert(e);
                    current = w;
                }
                None => return Err(GraphError::NotACycle),
            }
        }
        if used.len() != edges.len() {
            return Err(GraphError::NotACycle);
        }
        self.cycle_from_vertices(&sequence)
    }

    /// All shortest paths between two vertices, as vertex sequences in
    /// lexicographic order.
    pub fn shortest_paths(&self, from: VertexId, to: VertexId) -> Result<PathSearch, GraphError> {
        let n = self.vertex_count();
        if from >= n {
            return Err(GraphError::InvalidVertex(from));
        }
        if to >= n {
            return Err(GraphError::InvalidVertex(to));
        }
        let mut dist = vec![usize::MAX; n];
        dist[from] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        if dist[to] == usize::MAX {
            return Ok(PathSearch::Unreachable);
        }
        let mut paths = Vec::new();
        let mut prefix = vec![from];
        self.geodesic_dfs(from, to, &dist, &mut prefix, &mut paths);
        Ok(PathSearch::Found { length: dist[to], paths })
    }

    fn geodesic_dfs(
        &self,
        v: VertexId,
        to: VertexId,
        dist: &[usize],
        prefix: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if v == to {
            out.push(prefix.clone());
            return;
        }
        for u in self.neighbors(v) {
            if dist[u] == dist[v] + 1 && dist[u] <= dist[to] {
                prefix.push(u);
                self.geodesic_dfs(u, to, dist, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Deterministic lowest-edge-index DFS spanning tree of the component of
    /// `root`, avoiding `drop_edges`. Errors if the drops disconnect that
    /// component.
    pub fn spanning_tree(
        &self,
        root: VertexId,
        drop_edges: &BTreeSet<EdgeId>,
    ) -> Result<SpanningTree, GraphError> {
        if root >= self.vertex_count() {
            return Err(GraphError::InvalidVertex(root));
        }
        let mut parent_edge = vec![None; self.vertex_count()];
        let mut visited = vec![false; self.vertex_count()];
        visited[root] = true;
        let mut tree_edges = Vec::new();
        self.tree_dfs(root, drop_edges, &mut visited, &mut parent_edge, &mut tree_edges);
        let full_component: BTreeSet<VertexId> = self
            .components()
            .into_iter()
            .find(|c| c.contains(&root))
            .unwrap()
            .into_iter()
            .collect();
        let reached: BTreeSet<VertexId> =
            (0..self.vertex_count()).filter(|&v| visited[v]).collect();
        if reached != full_component {
            return Err(GraphError::DisconnectedAfterDrops);
        }
        tree_edges.sort_unstable();
        Ok(SpanningTree { root, tree_edges, parent_edge, vertices: reached })
    }

    fn tree_dfs(
        &self,
        v: VertexId,
        drop: &BTreeSet<EdgeId>,
        visited: &mut [bool],
        parent_edge: &mut [Option<EdgeId>],
        tree_edges: &mut Vec<EdgeId>,
    ) {
        let mut incident: Vec<(VertexId, EdgeId)> = self.adjacency[v].clone();
        incident.sort_by_key(|&(_, e)| e);
        for (u, e) in incident {
            if !visited[u] && !drop.contains(&e) {
                visited[u] = true;
                parent_edge[u] = Some(e);
                tree_edges.push(e);
                self.tree_dfs(u, drop, visited, parent_edge, tree_edges);
            }
        }
    }

    /// Hamiltonian cycles by backtracking, up to `limit`, in lexicographic
    /// order of their canonical vertex sequence. Empty when none exist.
    pub fn hamiltonian_cycles(&self, limit: usize) -> Result<Vec<Cycle>, GraphError> {
        if self.vertex_count() > 32 {
            return Err(GraphError::TooLarge(self.vertex_count(), 32));
        }
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        let n = self.vertex_count();
        let mut out = Vec::new();
        if n < 3 || limit == 0 {
            return Ok(out);
        }
        if self.components().len() != 1 {
            return Ok(out);
        }
        let mut path = vec![0];
        let mut on_path = vec![false; n];
        on_path[0] = true;
        self.hamiltonian_dfs(&mut path, &mut on_path, limit, &mut out);
        Ok(out)
    }

    fn hamiltonian_dfs(
        &self,
        path: &mut Vec<VertexId>,
        on_path: &mut [bool],
        limit: usize,
        out: &mut Vec<Cycle>,
    ) {
        if out.len() >= limit {
            return;
        }
        let n = self.vertex_count();
        let v = *path.last().unwrap();
        if path.len() == n {
            if path[1] < path[n - 1] && self.edge_between(v, 0).is_some() {
                out.push(self.cycle_from_vertices(path).expect("hamiltonian closure"));
            }
            return;
        }
        for u in self.neighbors(v) {
            if u != 0 && !on_path[u] {
                path.push(u);
                on_path[u] = true;
                self.hamiltonian_dfs(path, on_path, limit, out);
                on_path[u] = false;
                path.pop();
            }
        }
    }

    /// Subgraph on the same vertex set, deleting every edge the predicate
    /// selects. Edge ids are re-densified.
    pub fn delete_edges<F>(&self, delete: F) -> LabeledGraph
    where
        F: Fn(EdgeId, VertexId, VertexId) -> bool,
    {
        let mut g = LabeledGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.label.clone(), v.color);
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if !delete(e, u, v) {
                g.add_edge(u, v).expect("vertex ids preserved");
            }
        }
        g
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| {
                let mut obj = serde_json::json!({ "id": id, "label": v.label });
                if let Some(c) = v.color {
                    obj["color"] = serde_json::to_value(c).unwrap();
                }
                obj
            })
            .collect();
        serde_json::json!({ "vertices": vertices, "edges": self.edges })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).unwrap()
    }

    pub fn from_json(text: &str) -> Result<LabeledGraph, GraphError> {
        #[derive(Deserialize)]
        struct VertexJson {
            id: usize,
            label: String,
            color: Option<Color>,
        }
        #[derive(Deserialize)]
        struct GraphJson {
            vertices: Vec<VertexJson>,
            edges: Vec<(usize, usize)>,
        }
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::BadJson(e.to_string()))?;
        let mut g = LabeledGraph::new();
        for (i, v) in parsed.vertices.iter().enumerate() {
            if v.id != i {
                return Err(GraphError::BadJson(format!(
                    "vertex ids must be dense and ascending, got {} at position {i}",
                    v.id
                )));
            }
            g.add_vertex(v.label.clone(), v.color);
        }
        for &(u, v) in &parsed.edges {
            g.add_edge(u, v).map_err(|e| GraphError::BadJson(e.to_string()))?;
        }
        Ok(g)
    }

    /// DOT export with white/black fill by bipartition color.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        writeln!(out, "  node [shape=circle, style=filled];").unwrap();
        for (id, v) in self.vertices.iter().enumerate() {
            match v.color {
                Some(Color::Black) => writeln!(
                    out,
                    "  v{id} [label=\"{}\", fillcolor=\"black\", fontcolor=\"white\"];",
                    v.label
                )
                .unwrap(),
                _ => writeln!(out, "  v{id} [label=\"{}\", fillcolor=\"white\"];", v.label).unwrap(),
            }
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  v{u} -- v{v};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

impl Default for LabeledGraph {
    fn default() -> Self {
        Self::new()
    }
}

/// Result of a shortest-path query: either every geodesic, or an explicit
/// unreachable marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathSearch {
    Found { length: usize, paths: Vec<Vec<VertexId>> },
    Unreachable,
}

/// A simple cycle stored in canonical form: the vertex sequence rotated to
/// start at the smallest id, in the lexicographically smaller direction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Canonical vertex sequence (closing edge back to the first implied).
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Sorted edge ids.
    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn position_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    pub fn vertex_at(&self, index: usize) -> VertexId {
        self.vertices[index % self.vertices.len()]
    }

    pub fn labels(&self, g: &LabeledGraph) -> Vec<String> {
        self.vertices.iter().map(|&v| g.label(v).to_string()).collect()
    }
}

fn canonical_rotation(vertices: &[VertexId]) -> Vec<VertexId> {
    let k = vertices.len();
    let min_pos = vertices
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap();
    let forward: Vec<VertexId> = (0..k).map(|i| vertices[(min_pos + i) % k]).collect();
    let backward: Vec<VertexId> = (0..k).map(|i| vertices[(min_pos + k - i) % k]).collect();
    if forward <= backward {
        forward
    } else {
        backward
    }
}

impl SpanningTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Tree edge ids, ascending.
    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.tree_edges
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.tree_edges.binary_search(&e).is_ok()
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// Non-tree edges of the spanned component, ascending.
    pub fn chords(&self, g: &LabeledGraph) -> Vec<EdgeId> {
        (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.edge(e);
                !self.contains_edge(e) && self.vertices.contains(&u) && self.vertices.contains(&v)
            })
            .collect()
    }

    /// Edge set of the unique tree path between two spanned vertices,
    /// obtained by cancelling the two root paths.
    pub fn path_edge_set(&self, g: &LabeledGraph, u: VertexId, v: VertexId) -> BTreeSet<EdgeId> {
        let mut edges = BTreeSet::new();
        for endpoint in [u, v] {
            for e in self.root_path_edges(g, endpoint) {
                if !edges.remove(&e) {
                    edges.insert(e);
                }
            }
        }
        edges
    }

    fn root_path_edges(&self, g: &LabeledGraph, mut v: VertexId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        while let Some(e) = self.parent_edge[v] {
            out.push(e);
            let (a, b) = g.edge(e);
            v = if v == a { b } else { a };
        }
        out
    }
}

/// A rooted spanning tree of one component, recorded as tree edge ids plus
/// parent pointers.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    root: VertexId,
    tree_edges: Vec<EdgeId>,
    parent_edge: Vec<Option<EdgeId>>,
    vertices: BTreeSet<VertexId>,
}
