//! The cycle space of a graph over GF(2): edge-indexed bit vectors whose
//! induced subgraph has even degree everywhere, added by symmetric
//! difference. A spanning tree yields the fundamental system of cycles (one
//! per non-tree edge), which is a basis; any cycle vector decomposes in it by
//! Gaussian elimination.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Cycle, EdgeId, LabeledGraph, SpanningTree, VertexId};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CycleSpaceError {
    #[error("cycle vectors belong to graphs of different sizes ({0} vs {1} edges)")]
    GraphMismatch(usize, usize),
    #[error("edge set induces odd degree at vertex {0}")]
    OddDegree(VertexId),
    #[error("cycles share no edge; disjoint unions are formed with add, not splice")]
    DisjointCycles,
    #[error("vector is outside the span of the basis")]
    NotInSpan,
    #[error("expected {0} coefficients, got {1}")]
    CoefficientCount(usize, usize),
}

/// An element of the cycle space: a set of edges inducing even degree at
/// every vertex, stored as a dense bit vector over the graph's edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleVector {
    bits: Vec<u64>,
    edge_count: usize,
}

impl CycleVector {
    pub fn zero(g: &LabeledGraph) -> Self {
        CycleVector { bits: vec![0; g.edge_count().div_ceil(64)], edge_count: g.edge_count() }
    }

    pub fn from_cycle(g: &LabeledGraph, cycle: &Cycle) -> Self {
        let mut v = Self::zero(g);
        for &e in cycle.edge_ids() {
            v.set(e);
        }
        v
    }

    /// Builds a vector from explicit edge ids, enforcing the even-degree
    /// invariant.
    pub fn from_edge_ids<I>(g: &LabeledGraph, edges: I) -> Result<Self, CycleSpaceError>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let mut v = Self::zero(g);
        for e in edges {
            v.set(e);
        }
        v.check_even_degree(g)?;
        Ok(v)
    }

    fn set(&mut self, e: EdgeId) {
        self.bits[e / 64] ^= 1 << (e % 64);
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.bits[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of edges carried by the vector.
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sorted edge ids with coefficient 1.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        (0..self.edge_count).filter(|&e| self.contains(e)).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edge_ids().into_iter().collect()
    }

    fn check_even_degree(&self, g: &LabeledGraph) -> Result<(), CycleSpaceError> {
        let mut degree = vec![0usize; g.vertex_count()];
        for e in self.edge_ids() {
            let (u, v) = g.edge(e);
            degree[u] += 1;
            degree[v] += 1;
        }
        match degree.iter().position(|d| d % 2 == 1) {
            Some(v) => Err(CycleSpaceError::OddDegree(v)),
            None => Ok(()),
        }
    }

    /// Splits the vector into its edge-disjoint simple cycles by repeated
    /// walk extraction starting from the lowest-indexed edge.
    pub fn decompose_cycles(&self, g: &LabeledGraph) -> Vec<Cycle> {
        let mut remaining = self.edge_set();
        let mut out = Vec::new();
        while let Some(&first) = remaining.iter().next() {
            remaining.remove(&first);
            let (a, b) = g.edge(first);
            let mut walk = vec![a, b];
            loop {
                let tip = *walk.last().unwrap();
                if let Some(i) = walk[..walk.len() - 1].iter().position(|&x| x == tip) {
                    // The walk closed on itself: extract the simple cycle.
                    let cycle_vertices = walk[i..walk.len() - 1].to_vec();
                    out.push(
                        g.cycle_from_vertices(&cycle_vertices)
                            .expect("even-degree walk closes a simple cycle"),
                    );
                    walk.truncate(i + 1);
                    if walk.len() == 1 {
                        let rest_here = g
                            .incident(walk[0])
                            .iter()
                            .any(|(_, e)| remaining.contains(e));
                        if !rest_here {
                            break;
                        }
                    }
                }
                let tip = *walk.last().unwrap();
                let next = g
                    .incident(tip)
                    .iter()
                    .filter(|(_, e)| remaining.contains(e))
                    .min_by_key(|&&(_, e)| e)
                    .copied();
                match next {
                    Some((w, e)) => {
                        remaining.remove(&e);
                        walk.push(w);
                    }
                    None => {
                        assert!(walk.len() == 1, "even-degree invariant violated");
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn to_json_value(&self, g: &LabeledGraph) -> serde_json::Value {
        let cycles: Vec<Vec<String>> =
            self.decompose_cycles(g).iter().map(|c| c.labels(g)).collect();
        serde_json::json!({ "edges": self.edge_ids(), "cycles": cycles })
    }
}

/// Edge-by-edge GF(2) sum (symmetric difference) of two cycle vectors.
pub fn add(a: &CycleVector, b: &CycleVector) -> Result<CycleVector, CycleSpaceError> {
    if a.edge_count != b.edge_count {
        return Err(CycleSpaceError::GraphMismatch(a.edge_count, b.edge_count));
    }
    let bits = a.bits.iter().zip(&b.bits).map(|(x, y)| x ^ y).collect();
    Ok(CycleVector { bits, edge_count: a.edge_count })
}

/// Result of snipping two cycles at their shared edges and gluing the rest.
#[derive(Clone, Debug)]
pub enum SpliceOutcome {
    /// The symmetric difference is a single simple cycle.
    Cycle(Cycle),
    /// The symmetric difference splits into several edge-disjoint cycles.
    Vector { vector: CycleVector, cycles: Vec<Cycle> },
}

/// Snip-and-insert: XOR of the edge sets of two cycles sharing at least one
/// edge. Errors on edge-disjoint inputs, where plain addition is meant.
pub fn splice(g: &LabeledGraph, a: &Cycle, b: &Cycle) -> Result<SpliceOutcome, CycleSpaceError> {
    if a.edge_set().is_disjoint(&b.edge_set()) {
        return Err(CycleSpaceError::DisjointCycles);
    }
    let sum = add(&CycleVector::from_cycle(g, a), &CycleVector::from_cycle(g, b))?;
    let cycles = sum.decompose_cycles(g);
    if cycles.len() == 1 && cycles[0].edge_set() == sum.edge_set() {
        Ok(SpliceOutcome::Cycle(cycles.into_iter().next().unwrap()))
    } else {
        Ok(SpliceOutcome::Vector { vector: sum, cycles })
    }
}

/// The fundamental system of cycles of a spanning tree: for each non-tree
/// edge, the unique cycle inside tree + edge, ordered by edge index.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    chord_edges: Vec<EdgeId>,
    vectors: Vec<CycleVector>,
    cycles: Vec<Cycle>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn chord_edges(&self) -> &[EdgeId] {
        &self.chord_edges
    }

    pub fn vectors(&self) -> &[CycleVector] {
        &self.vectors
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }
}

/// Builds the fundamental basis for the component spanned by `tree`.
pub fn fundamental_basis(g: &LabeledGraph, tree: &SpanningTree) -> CycleBasis {
    let mut chord_edges = Vec::new();
    let mut vectors = Vec::new();
    let mut cycles = Vec::new();
    for chord in tree.chords(g) {
        let (u, v) = g.edge(chord);
        let mut edges = tree.path_edge_set(g, u, v);
        edges.insert(chord);
        let cycle = g
            .cycle_from_edge_set(&edges)
            .expect("tree path plus chord closes a simple cycle");
        vectors.push(CycleVector::from_cycle(g, &cycle));
        cycles.push(cycle);
        chord_edges.push(chord);
    }
    CycleBasis { chord_edges, vectors, cycles }
}

/// GF(2) coefficients expressing `target` in `basis`, found by Gaussian
/// elimination with pivots taken in ascending edge order.
pub fn decompose(
    target: &CycleVector,
    basis: &CycleBasis,
) -> Result<Vec<bool>, CycleSpaceError> {
    let k = basis.len();
    let m = target.edge_count;
    for v in basis.vectors() {
        if v.edge_count != m {
            return Err(CycleSpaceError::GraphMismatch(v.edge_count, m));
        }
    }
    // Row = (edge bits, coefficient bits over the basis).
    let words = target.bits.len();
    let coeff_words = k.div_ceil(64).max(1);
    let mut rows: Vec<(Vec<u64>, Vec<u64>)> = basis
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut coeff = vec![0u64; coeff_words];
            coeff[i / 64] |= 1 << (i % 64);
            (v.bits.clone(), coeff)
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..m {
        let word = col / 64;
        let mask = 1u64 << (col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].0[word] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (pivot_bits, pivot_coeff) = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0[word] & mask != 0 {
                for (x, y) in row.0.iter_mut().zip(&pivot_bits) {
                    *x ^= *y;
                }
                for (x, y) in row.1.iter_mut().zip(&pivot_coeff) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut residue = target.bits.clone();
    let mut coeff = vec![0u64; coeff_words];
    for (bits, row_coeff) in rows.iter().take(rank) {
        let lead = (0..m).find(|&e| bits[e / 64] & (1 << (e % 64)) != 0);
        if let Some(e) = lead {
            if residue[e / 64] & (1 << (e % 64)) != 0 {
                for w in 0..words {
                    residue[w] ^= bits[w];
                }
                for w in 0..coeff_words {
                    coeff[w] ^= row_coeff[w];
                }
            }
        }
    }
    if residue.iter().any(|&w| w != 0) {
        return Err(CycleSpaceError::NotInSpan);
    }
    Ok((0..k).map(|i| coeff[i / 64] & (1 << (i % 64)) != 0).collect())
}

/// Recombines basis vectors according to coefficients.
pub fn combine(
    g: &LabeledGraph,
    basis: &CycleBasis,
    coefficients: &[bool],
) -> Result<CycleVector, CycleSpaceError> {
    if coefficients.len() != basis.len() {
        return Err(CycleSpaceError::CoefficientCount(basis.len(), coefficients.len()));
    }
    let mut acc = CycleVector::zero(g);
    for (v, &on) in basis.vectors().iter().zip(coefficients) {
        if on {
            acc = add(&acc, v)?;
        }
    }
    Ok(acc)
}
