//! Constructors for the four tone networks as labeled Levi graphs and
//! incidence structures:
//!
//! * [`build_eulerian`]: 12 major chords (white points) against 12 minor
//!   chords (black lines), adjacent when they share two pitch classes;
//! * [`build_pentatonic`]: the ten duads and ten triples of a five-tone
//!   scale under containment (the Desargues `{10_3}`);
//! * [`build_hexachordal`]: the fifteen duads and fifteen synthemes of a
//!   six-element set (the Cremona-Richmond `{15_3}`), together with the six
//!   totals and the letter-duad tables;
//! * [`build_archimedean`]: the two components of the share-one-tone rule.
//!
//! All edges are derived from the rules, never transcribed from a table, so
//! the published adjacency data can serve as an independent check.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Color, Cycle, EdgeId, LabeledGraph, SpanningTree, VertexId};
use crate::incidence::IncidenceStructure;
use crate::pitch::{PitchClass, Quality, Triad};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BuildError {
    #[error("expected {expected} labels, got {got}")]
    WrongLabelCount { expected: usize, got: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("edge {0} is not a major/minor edge of the Eulerian tonnetz")]
    NotEulerianEdge(EdgeId),
    #[error("unknown tonnetz kind `{0}`")]
    UnknownKind(String),
}

/// Discriminant for the networks this crate can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TonnetzKind {
    Eulerian,
    Pentatonic,
    Hexachordal,
    ArchimedeanMajor,
    ArchimedeanMinor,
}

impl FromStr for TonnetzKind {
    type Err = BuildError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eulerian" => Ok(TonnetzKind::Eulerian),
            "pentatonic" => Ok(TonnetzKind::Pentatonic),
            "hexachordal" => Ok(TonnetzKind::Hexachordal),
            "archimedean-major" => Ok(TonnetzKind::ArchimedeanMajor),
            "archimedean-minor" => Ok(TonnetzKind::ArchimedeanMinor),
            other => Err(BuildError::UnknownKind(other.to_string())),
        }
    }
}

impl fmt::Display for TonnetzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TonnetzKind::Eulerian => "eulerian",
            TonnetzKind::Pentatonic => "pentatonic",
            TonnetzKind::Hexachordal => "hexachordal",
            TonnetzKind::ArchimedeanMajor => "archimedean-major",
            TonnetzKind::ArchimedeanMinor => "archimedean-minor",
        };
        f.write_str(name)
    }
}

/// How a major/minor edge of the Eulerian tonnetz moves the chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    /// Same root, e.g. CM-Cm.
    Parallel,
    /// Minor root a major sixth above, e.g. CM-Am.
    Relative,
    /// Minor root a major third above, e.g. CM-Em.
    LeadingTone,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EdgeClass::Parallel => "parallel",
            EdgeClass::Relative => "relative",
            EdgeClass::LeadingTone => "leading-tone",
        };
        f.write_str(name)
    }
}

/// The Eulerian tonnetz with both of its faces: the bipartite graph and the
/// point-line structure (majors are points, minors are lines).
#[derive(Clone, Debug)]
pub struct EulerianTonnetz {
    pub graph: LabeledGraph,
    pub structure: IncidenceStructure,
    triad_by_vertex: Vec<Triad>,
}

impl EulerianTonnetz {
    pub fn vertex_of(&self, t: Triad) -> VertexId {
        self.triad_by_vertex.iter().position(|&u| u == t).expect("all 24 triads present")
    }

    pub fn triad_of(&self, v: VertexId) -> Triad {
        self.triad_by_vertex[v]
    }

    /// The Hamiltonian cycle running around the perimeter of the drawing:
    /// vertices 0..24 in construction order.
    pub fn perimeter_cycle(&self) -> Cycle {
        let vertices: Vec<VertexId> = (0..24).collect();
        self.graph.cycle_from_vertices(&vertices).expect("perimeter ordering is a cycle")
    }

    /// Edge ids of the twelve parallel (same-root) edges.
    pub fn parallel_edges(&self) -> Vec<EdgeId> {
        (0..self.graph.edge_count())
            .filter(|&e| matches!(classify_edge(self, e), Ok(EdgeClass::Parallel)))
            .collect()
    }

    /// The 23-edge spanning path of the perimeter: the perimeter Hamiltonian
    /// with the edge between the minor at index 0 and the major at index 1
    /// removed, all cross edges avoided.
    pub fn perimeter_tree(&self) -> SpanningTree {
        let mut drops: BTreeSet<EdgeId> = self.parallel_edges().into_iter().collect();
        let top = self.graph.edge_between(0, 1).expect("perimeter edge");
        drops.insert(top);
        self.graph.spanning_tree(1, &drops).expect("perimeter path spans")
    }
}

/// Builds the Eulerian tonnetz. Vertices follow the perimeter ordering of
/// the standard circular drawing: alternating minor/major around a circle of
/// fourths (Em, CM, Am, FM, ..., Bm, GM); edges join chords sharing exactly
/// two pitch classes.
pub fn build_eulerian() -> EulerianTonnetz {
    let mut graph = LabeledGraph::new();
    let mut triad_by_vertex = Vec::with_capacity(24);
    for k in 0..12i64 {
        let major_root = PitchClass::new(5 * k);
        let minor = Triad::new(major_root.transpose(4), Quality::Minor);
        let major = Triad::new(major_root, Quality::Major);
        graph.add_vertex(minor.name(), Some(Color::Black));
        triad_by_vertex.push(minor);
        graph.add_vertex(major.name(), Some(Color::White));
        triad_by_vertex.push(major);
    }
    for i in 0..24 {
        for j in (i + 1)..24 {
            let (a, b) = (triad_by_vertex[i], triad_by_vertex[j]);
            if a.quality != b.quality && a.shared_tones(b) == 2 {
                graph.add_edge(i, j).expect("vertices exist");
            }
        }
    }
    let majors: Vec<Triad> =
        triad_by_vertex.iter().copied().filter(|t| t.quality == Quality::Major).collect();
    let minors: Vec<Triad> =
        triad_by_vertex.iter().copied().filter(|t| t.quality == Quality::Minor).collect();
    let lines = minors
        .iter()
        .map(|&minor| {
            let pts = majors
                .iter()
                .enumerate()
                .filter(|(_, &major)| major.shared_tones(minor) == 2)
                .map(|(i, _)| i)
                .collect();
            (minor.name(), pts)
        })
        .collect();
    let structure = IncidenceStructure::new(majors.iter().map(|t| t.name()).collect(), lines)
        .expect("point ids in range");
    EulerianTonnetz { graph, structure, triad_by_vertex }
}

/// Classifies an edge of the Eulerian tonnetz by the root relation of its
/// major and minor endpoints. Exactly one class applies to every edge.
pub fn classify_edge(tonnetz: &EulerianTonnetz, edge: EdgeId) -> Result<EdgeClass, BuildError> {
    if edge >= tonnetz.graph.edge_count() {
        return Err(BuildError::NotEulerianEdge(edge));
    }
    let (u, v) = tonnetz.graph.edge(edge);
    let (a, b) = (tonnetz.triad_of(u), tonnetz.triad_of(v));
    let (major, minor) = match (a.quality, b.quality) {
        (Quality::Major, Quality::Minor) => (a, b),
        (Quality::Minor, Quality::Major) => (b, a),
        _ => return Err(BuildError::NotEulerianEdge(edge)),
    };
    let offset = (minor.root.value() + 12 - major.root.value()) % 12;
    match offset {
        0 => Ok(EdgeClass::Parallel),
        9 => Ok(EdgeClass::Relative),
        4 => Ok(EdgeClass::LeadingTone),
        _ => Err(BuildError::NotEulerianEdge(edge)),
    }
}

/// A built network carrying both graph and structure forms.
#[derive(Clone, Debug)]
pub struct TonnetzBuild {
    pub graph: LabeledGraph,
    pub structure: IncidenceStructure,
}

pub const PENTATONIC_LABELS: [&str; 5] = ["C", "D", "E", "G", "A"];

fn check_distinct(labels: &[String], expected: usize) -> Result<(), BuildError> {
    if labels.len() != expected {
        return Err(BuildError::WrongLabelCount { expected, got: labels.len() });
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(BuildError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Cluster labels concatenate plainly when every scale label is a single
/// character ("CD", "CDE"); otherwise they hyphenate throughout ("F-Bb").
pub(crate) fn label_joiner(labels: &[String]) -> impl Fn(&[usize]) -> String + '_ {
    let hyphenate = labels.iter().any(|l| l.chars().count() > 1);
    move |indices: &[usize]| {
        let parts: Vec<&str> = indices.iter().map(|&i| labels[i].as_str()).collect();
        if hyphenate {
            parts.join("-")
        } else {
            parts.concat()
        }
    }
}

/// Builds the pentatonic tonnetz on five labels: points are the ten
/// two-note clusters, lines the ten three-note clusters, incidence is
/// containment. Combinatorially the Desargues configuration.
pub fn build_pentatonic(labels: &[String]) -> Result<TonnetzBuild, BuildError> {
    check_distinct(labels, 5)?;
    let mut duads = Vec::new();
    for i in 0..5usize {
        for j in (i + 1)..5 {
            duads.push((i, j));
        }
    }
    let mut triples = Vec::new();
    for i in 0..5usize {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                triples.push((i, j, k));
            }
        }
    }
    let join = label_joiner(labels);
    let point_labels: Vec<String> = duads.iter().map(|&(i, j)| join(&[i, j])).collect();
    let lines = triples
        .iter()
        .map(|&(i, j, k)| {
            let label = join(&[i, j, k]);
            let pts = duads
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| [i, j, k].contains(&a) && [i, j, k].contains(&b))
                .map(|(p, _)| p)
                .collect();
            (label, pts)
        })
        .collect();
    let structure = IncidenceStructure::new(point_labels, lines).expect("ids in range");
    let graph = structure.to_levi();
    Ok(TonnetzBuild { graph, structure })
}

/// An unordered pair of distinct elements of `1..=6` (or `1..=5` for the
/// pentatonic case), kept sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Duad(u8, u8);

impl Duad {
    pub fn new(a: u8, b: u8) -> Self {
        assert!(a != b, "duad elements must differ");
        if a < b {
            Duad(a, b)
        } else {
            Duad(b, a)
        }
    }

    pub fn low(self) -> u8 {
        self.0
    }

    pub fn high(self) -> u8 {
        self.1
    }

    pub fn contains(self, x: u8) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for Duad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// Three duads exhausting the six elements: a perfect matching of the
/// hexachord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Syntheme {
    duads: [Duad; 3],
}

impl Syntheme {
    pub fn new(mut duads: [Duad; 3]) -> Self {
        duads.sort_unstable();
        let mut seen = [false; 7];
        for d in &duads {
            for x in [d.low(), d.high()] {
                assert!(
                    (1..=6).contains(&x) && !seen[x as usize],
                    "syntheme must partition 1..=6"
                );
                seen[x as usize] = true;
            }
        }
        Syntheme { duads }
    }

    pub fn duads(&self) -> &[Duad; 3] {
        &self.duads
    }

    pub fn contains(&self, d: Duad) -> bool {
        self.duads.contains(&d)
    }

    pub fn shares_duad(&self, other: &Syntheme) -> bool {
        self.duads.iter().any(|d| other.contains(*d))
    }
}

impl fmt::Display for Syntheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.duads[0], self.duads[1], self.duads[2])
    }
}

/// Five pairwise duad-disjoint synthemes covering all fifteen duads: a
/// one-factorization of the hexachord.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Total {
    synthemes: [Syntheme; 5],
}

impl Total {
    fn new(mut synthemes: [Syntheme; 5]) -> Self {
        synthemes.sort_unstable();
        Total { synthemes }
    }

    pub fn synthemes(&self) -> &[Syntheme; 5] {
        &self.synthemes
    }

    pub fn contains_syntheme(&self, s: &Syntheme) -> bool {
        self.synthemes.contains(s)
    }

    /// The unique syntheme of this total containing the given duad.
    pub fn syntheme_through(&self, d: Duad) -> Syntheme {
        *self.synthemes.iter().find(|s| s.contains(d)).expect("totals cover every duad")
    }
}

/// An unordered pair of total letters, e.g. `ab`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LetterDuad(char, char);

impl LetterDuad {
    pub fn new(a: char, b: char) -> Self {
        assert!(a != b);
        if a < b {
            LetterDuad(a, b)
        } else {
            LetterDuad(b, a)
        }
    }

    pub fn low(self) -> char {
        self.0
    }

    pub fn high(self) -> char {
        self.1
    }

    pub fn contains(self, x: char) -> bool {
        self.0 == x || self.1 == x
    }
}

impl fmt::Display for LetterDuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// Three letter-duads exhausting the letters a..f.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LetterSyntheme {
    duads: [LetterDuad; 3],
}

impl LetterSyntheme {
    fn new(mut duads: [LetterDuad; 3]) -> Self {
        duads.sort_unstable();
        LetterSyntheme { duads }
    }

    pub fn duads(&self) -> &[LetterDuad; 3] {
        &self.duads
    }
}

impl fmt::Display for LetterSyntheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.duads[0], self.duads[1], self.duads[2])
    }
}

/// The fifteen duads of `1..=6` in lexicographic order.
pub fn all_duads() -> Vec<Duad> {
    let mut out = Vec::with_capacity(15);
    for a in 1..=6u8 {
        for b in (a + 1)..=6 {
            out.push(Duad::new(a, b));
        }
    }
    out
}

/// The fifteen synthemes in lexicographic order of their sorted duads.
pub fn all_synthemes() -> Vec<Syntheme> {
    let mut out = Vec::new();
    // The duad containing 1 determines the partner of the least remaining
    // element; enumerate directly.
    for b in 2..=6u8 {
        let first = Duad::new(1, b);
        let rest: Vec<u8> = (2..=6).filter(|&x| x != b).collect();
        // rest has 4 elements; 3 matchings of 4 elements.
        let [p, q, r, s] = [rest[0], rest[1], rest[2], rest[3]];
        for (d2, d3) in [
            (Duad::new(p, q), Duad::new(r, s)),
            (Duad::new(p, r), Duad::new(q, s)),
            (Duad::new(p, s), Duad::new(q, r)),
        ] {
            out.push(Syntheme::new([first, d2, d3]));
        }
    }
    out.sort_unstable();
    out
}

/// The three synthemes containing a given duad.
pub fn synthemes_containing(d: Duad) -> Vec<Syntheme> {
    all_synthemes().into_iter().filter(|s| s.contains(d)).collect()
}

/// The six totals, in the order produced by lexicographic backtracking over
/// the sorted syntheme list.
pub fn all_totals() -> Vec<Total> {
    let synthemes = all_synthemes();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn extend(synthemes: &[Syntheme], chosen: &mut Vec<usize>, out: &mut Vec<Total>) {
        if chosen.len() == 5 {
            let picked: Vec<Syntheme> = chosen.iter().map(|&i| synthemes[i]).collect();
            out.push(Total::new(picked.try_into().unwrap()));
            return;
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        for i in start..synthemes.len() {
            let ok = chosen.iter().all(|&j| !synthemes[i].shares_duad(&synthemes[j]));
            if ok {
                chosen.push(i);
                extend(synthemes, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(&synthemes, &mut chosen, &mut out);
    out
}

/// The six totals with their letters a..f.
///
/// Letter `a` goes to the lexicographically least total. For k = 2..6 the
/// letter (b..f) goes to the other total sharing with `a` the syntheme of
/// `a` that contains the duad (1,k); this pins the classical table layout.
pub fn labeled_totals() -> Vec<(char, Total)> {
    let totals = all_totals();
    let a = totals.iter().min().expect("six totals exist").clone();
    let mut out = vec![('a', a.clone())];
    for k in 2..=6u8 {
        let shared = a.syntheme_through(Duad::new(1, k));
        let partner = totals
            .iter()
            .find(|t| **t != a && t.contains_syntheme(&shared))
            .expect("each syntheme lies in exactly two totals");
        out.push(((b'a' + k - 1) as char, partner.clone()));
    }
    out
}

/// The four classical tables relating duads, synthemes, totals and letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthemeTables {
    /// Letter-duad -> number-syntheme, 15 rows in letter-duad order.
    pub duads_of_letters: Vec<(LetterDuad, Syntheme)>,
    /// Number-duad -> letter-syntheme, 15 rows in duad order.
    pub duads_of_numbers: Vec<(Duad, LetterSyntheme)>,
    /// Letter -> its total of five synthemes; each row lists the synthemes
    /// shared with the other letters in alphabetical partner order.
    pub letters_as_totals: Vec<(char, Vec<Syntheme>)>,
    /// Number -> its five letter-synthemes, one per duad containing the
    /// number, in ascending duad order.
    pub numbers_as_letter_totals: Vec<(u8, Vec<LetterSyntheme>)>,
}

/// Computes the four tables from the labeled totals.
pub fn syntheme_tables() -> SynthemeTables {
    let labeled = labeled_totals();
    let letters: Vec<char> = labeled.iter().map(|(c, _)| *c).collect();
    let mut duads_of_letters = Vec::new();
    for (i, (x, tx)) in labeled.iter().enumerate() {
        for (y, ty) in labeled.iter().skip(i + 1) {
            let shared: Vec<&Syntheme> =
                tx.synthemes().iter().filter(|s| ty.contains_syntheme(s)).collect();
            assert_eq!(shared.len(), 1, "two totals share exactly one syntheme");
            duads_of_letters.push((LetterDuad::new(*x, *y), *shared[0]));
        }
    }
    duads_of_letters.sort_by_key(|(ld, _)| *ld);

    let letter_syntheme_of = |d: Duad| -> LetterSyntheme {
        let pairs: Vec<LetterDuad> = duads_of_letters
            .iter()
            .filter(|(_, s)| s.contains(d))
            .map(|(ld, _)| *ld)
            .collect();
        assert_eq!(pairs.len(), 3, "a duad lies in exactly three synthemes");
        LetterSyntheme::new(pairs.try_into().unwrap())
    };
    let duads_of_numbers: Vec<(Duad, LetterSyntheme)> =
        all_duads().into_iter().map(|d| (d, letter_syntheme_of(d))).collect();

    let letters_as_totals = labeled
        .iter()
        .map(|(x, _)| {
            let row: Vec<Syntheme> = letters
                .iter()
                .filter(|y| *y != x)
                .map(|y| {
                    let ld = LetterDuad::new(*x, *y);
                    duads_of_letters.iter().find(|(d, _)| *d == ld).unwrap().1
                })
                .collect();
            (*x, row)
        })
        .collect();

    let numbers_as_letter_totals = (1..=6u8)
        .map(|k| {
            let row: Vec<LetterSyntheme> = duads_of_numbers
                .iter()
                .filter(|(d, _)| d.contains(k))
                .map(|(_, ls)| *ls)
                .collect();
            (k, row)
        })
        .collect();

    SynthemeTables {
        duads_of_letters,
        duads_of_numbers,
        letters_as_totals,
        numbers_as_letter_totals,
    }
}

/// The hexachordal tonnetz with its full combinatorial apparatus.
#[derive(Clone, Debug)]
pub struct HexachordalSystem {
    pub graph: LabeledGraph,
    pub structure: IncidenceStructure,
    pub duads: Vec<Duad>,
    pub synthemes: Vec<Syntheme>,
    pub totals: Vec<(char, Total)>,
    pub tables: SynthemeTables,
}

/// Builds the hexachordal tonnetz on six labels: points are the fifteen
/// duads, lines the fifteen synthemes (labeled by their letter-duads),
/// incidence is membership. Combinatorially the Cremona-Richmond `{15_3}`;
/// its Levi graph is the Tutte 8-cage.
///
/// ```
/// use tonnetz_core::builders::build_hexachordal;
///
/// let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
/// let system = build_hexachordal(&labels).unwrap();
/// assert_eq!(system.totals.len(), 6);
/// assert_eq!(system.graph.girth(), Some(8));
/// // The duad 12 lies on the three synthemes splitting the other four.
/// let p = system.structure.point_by_label("12").unwrap();
/// assert_eq!(system.structure.lines_through(p).len(), 3);
/// ```
pub fn build_hexachordal(labels: &[String]) -> Result<HexachordalSystem, BuildError> {
    check_distinct(labels, 6)?;
    let duads = all_duads();
    let synthemes = all_synthemes();
    let totals = labeled_totals();
    let tables = syntheme_tables();
    let join = label_joiner(labels);
    let point_labels: Vec<String> =
        duads.iter().map(|d| join(&[d.low() as usize - 1, d.high() as usize - 1])).collect();
    let lines = synthemes
        .iter()
        .map(|s| {
            let letter_duad = tables
                .duads_of_letters
                .iter()
                .find(|(_, t)| t == s)
                .map(|(ld, _)| ld.to_string())
                .expect("every syntheme carries a letter-duad");
            let pts = duads
                .iter()
                .enumerate()
                .filter(|(_, d)| s.contains(**d))
                .map(|(i, _)| i)
                .collect();
            (letter_duad, pts)
        })
        .collect();
    let structure = IncidenceStructure::new(point_labels, lines).expect("ids in range");
    let graph = structure.to_levi();
    Ok(HexachordalSystem { graph, structure, duads, synthemes, totals, tables })
}

/// The two Archimedean tonnetze: components of the share-exactly-one-tone
/// rule, each twelve chords, named after the component containing CM (major)
/// and the one containing Cm (minor).
#[derive(Clone, Debug)]
pub struct ArchimedeanTonnetze {
    pub major: LabeledGraph,
    pub minor: LabeledGraph,
}

/// Builds both Archimedean components. Vertices follow the circular drawing
/// order: repeatedly transpose up a fourth and toggle quality (CM, Fm, BbM,
/// Ebm, ... for the major component; DbM, F#m, BM, Em, ... for the minor).
pub fn build_archimedean() -> ArchimedeanTonnetze {
    let component = |start: i64| -> LabeledGraph {
        let mut g = LabeledGraph::new();
        let mut triads = Vec::with_capacity(12);
        for i in 0..12i64 {
            let quality = if i % 2 == 0 { Quality::Major } else { Quality::Minor };
            let t = Triad::new(PitchClass::new(start + 5 * i), quality);
            let color = if quality == Quality::Major { Color::White } else { Color::Black };
            g.add_vertex(t.name(), Some(color));
            triads.push(t);
        }
        for i in 0..12 {
            for j in (i + 1)..12 {
                if triads[i].quality != triads[j].quality && triads[i].shared_tones(triads[j]) == 1
                {
                    g.add_edge(i, j).expect("vertices exist");
                }
            }
        }
        g
    };
    ArchimedeanTonnetze { major: component(0), minor: component(1) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eulerian_counts_and_adjacency() {
        let t = build_eulerian();
        assert_eq!(t.graph.vertex_count(), 24);
        assert_eq!(t.graph.edge_count(), 36);
        assert_eq!(t.graph.is_regular(), Some(3));
        assert!(t.graph.is_properly_bicolored());
        assert_eq!(t.graph.components().len(), 1);
        assert_eq!(t.graph.girth(), Some(6));
        let cm = t.vertex_of("CM".parse().unwrap());
        let mut names: Vec<String> =
            t.graph.neighbors(cm).into_iter().map(|v| t.graph.label(v).to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["Am", "Cm", "Em"]);
        // Handshake: 3 * 24 = 2 * 36.
        assert_eq!(3 * t.graph.vertex_count(), 2 * t.graph.edge_count());
    }

    #[test]
    fn eulerian_structure_is_12_3() {
        let t = build_eulerian();
        assert!(t.structure.validate().is_valid());
        let ct = t.structure.configuration_type().unwrap();
        assert_eq!(ct.to_string(), "{12_3}");
        assert_eq!(ct.flag_count(), 36);
    }

    #[test]
    fn perimeter_and_parallel_edges() {
        let t = build_eulerian();
        assert_eq!(t.perimeter_cycle().len(), 24);
        let parallels = t.parallel_edges();
        assert_eq!(parallels.len(), 12);
        // The parallel edges form a perfect matching.
        let mut seen = BTreeSet::new();
        for e in parallels {
            let (u, v) = t.graph.edge(e);
            assert!(seen.insert(u));
            assert!(seen.insert(v));
        }
        assert_eq!(seen.len(), 24);
        let tree = t.perimeter_tree();
        assert_eq!(tree.tree_edges().len(), 23);
    }

    #[test]
    fn edge_classification_fixtures() {
        let t = build_eulerian();
        let class_of = |a: &str, b: &str| {
            let u = t.vertex_of(a.parse().unwrap());
            let v = t.vertex_of(b.parse().unwrap());
            classify_edge(&t, t.graph.edge_between(u, v).unwrap()).unwrap()
        };
        assert_eq!(class_of("CM", "Cm"), EdgeClass::Parallel);
        assert_eq!(class_of("CM", "Am"), EdgeClass::Relative);
        assert_eq!(class_of("CM", "Em"), EdgeClass::LeadingTone);
        assert_eq!(class_of("AbM", "G#m"), EdgeClass::Parallel);
        // Each vertex meets one edge of each class.
        for v in 0..24 {
            let mut classes: Vec<EdgeClass> = t
                .graph
                .incident(v)
                .iter()
                .map(|&(_, e)| classify_edge(&t, e).unwrap())
                .collect();
            classes.sort_by_key(|c| format!("{c}"));
            assert_eq!(classes.len(), 3);
            assert!(classes.contains(&EdgeClass::Parallel));
            assert!(classes.contains(&EdgeClass::Relative));
            assert!(classes.contains(&EdgeClass::LeadingTone));
        }
    }

    #[test]
    fn pentatonic_fixtures() {
        let labels: Vec<String> = PENTATONIC_LABELS.iter().map(|s| s.to_string()).collect();
        let p = build_pentatonic(&labels).unwrap();
        let ct = p.structure.configuration_type().unwrap();
        assert_eq!(ct.to_string(), "{10_3}");
        assert_eq!(ct.flag_count(), 30);
        let cd = p.structure.point_by_label("CD").unwrap();
        let mut through: Vec<&str> =
            p.structure.lines_through(cd).iter().map(|&l| p.structure.line_label(l)).collect();
        through.sort();
        assert_eq!(through, vec!["CDA", "CDE", "CDG"]);
        let cde = p.structure.line_by_label("CDE").unwrap();
        let mut on: Vec<&str> =
            p.structure.points_on(cde).iter().map(|&q| p.structure.point_label(q)).collect();
        on.sort();
        assert_eq!(on, vec!["CD", "CE", "DE"]);
        assert!(build_pentatonic(&labels[..4]).is_err());
        let dup = vec!["C".into(), "C".into(), "E".into(), "G".into(), "A".into()];
        assert_eq!(build_pentatonic(&dup).unwrap_err(), BuildError::DuplicateLabel("C".into()));
    }

    #[test]
    fn syntheme_counts() {
        assert_eq!(all_duads().len(), 15);
        assert_eq!(all_synthemes().len(), 15);
        let through = synthemes_containing(Duad::new(1, 2));
        let shown: Vec<String> = through.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, vec!["12,34,56", "12,35,46", "12,36,45"]);
        assert_eq!(all_totals().len(), 6);
    }

    #[test]
    fn table_one_fixtures() {
        let tables = syntheme_tables();
        let cell = |ld: &str| {
            let key = LetterDuad::new(ld.chars().next().unwrap(), ld.chars().nth(1).unwrap());
            tables.duads_of_letters.iter().find(|(d, _)| *d == key).unwrap().1.to_string()
        };
        assert_eq!(cell("ab"), "12,34,56");
        assert_eq!(cell("ac"), "13,25,46");
        assert_eq!(cell("cf"), "15,26,34");
        assert_eq!(cell("ef"), "12,35,46");
        let row12 = &tables.duads_of_numbers[0];
        assert_eq!(row12.0, Duad::new(1, 2));
        assert_eq!(row12.1.to_string(), "ab,cd,ef");
        assert_eq!(tables.duads_of_letters.len(), 15);
        assert_eq!(tables.duads_of_numbers.len(), 15);
        assert_eq!(tables.letters_as_totals.len(), 6);
        assert_eq!(tables.numbers_as_letter_totals.len(), 6);
    }

    #[test]
    fn total_a_is_the_cyclic_total() {
        let labeled = labeled_totals();
        assert_eq!(labeled[0].0, 'a');
        let row: Vec<String> = labeled[0].1.synthemes().iter().map(|s| s.to_string()).collect();
        assert_eq!(row, vec!["12,34,56", "13,25,46", "14,26,35", "15,24,36", "16,23,45"]);
    }

    #[test]
    fn multi_character_labels_hyphenate_consistently() {
        let labels: Vec<String> =
            ["F", "G", "A", "Bb", "B", "C#"].iter().map(|s| s.to_string()).collect();
        let h = build_hexachordal(&labels).unwrap();
        assert!(h.structure.point_by_label("F-G").is_some());
        assert!(h.structure.point_by_label("F-Bb").is_some());
        assert!(h.structure.point_by_label("FG").is_none());
    }

    #[test]
    fn hexachordal_build() {
        let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
        let h = build_hexachordal(&labels).unwrap();
        let ct = h.structure.configuration_type().unwrap();
        assert_eq!(ct.to_string(), "{15_3}");
        assert_eq!(ct.flag_count(), 45);
        assert_eq!(h.graph.vertex_count(), 30);
        assert_eq!(h.graph.edge_count(), 45);
        assert_eq!(h.graph.girth(), Some(8));
        // Duad 12 lies in the three synthemes 12,34,56 / 12,35,46 / 12,36,45.
        let p12 = h.structure.point_by_label("12").unwrap();
        assert_eq!(h.structure.lines_through(p12).len(), 3);
        // Any two synthemes share at most one duad.
        assert!(h.structure.validate().is_valid());
    }

    #[test]
    fn archimedean_components() {
        let a = build_archimedean();
        for g in [&a.major, &a.minor] {
            assert_eq!(g.vertex_count(), 12);
            assert_eq!(g.edge_count(), 18);
            assert_eq!(g.is_regular(), Some(3));
            assert_eq!(g.components().len(), 1);
            assert_eq!(g.girth(), Some(4));
        }
        // A witness quadracycle under the share-one-tone rule.
        let v = |name: &str| a.major.vertex_by_label(name).unwrap();
        let square = [v("Fm"), v("BbM"), v("Bm"), v("EM")];
        assert!(a.major.cycle_from_vertices(&square).is_ok());
        // Alongside the quadracycles there are hexa-, octa- and
        // dodecacycles.
        for length in [4, 6, 8, 12] {
            assert!(
                !a.major.enumerate_cycles(length).unwrap().is_empty(),
                "no cycle of length {length}"
            );
        }
        assert_eq!(a.major.label(0), "CM");
        let expected = ["CM", "Fm", "BbM", "Ebm", "AbM", "C#m", "GbM", "Bm", "EM", "Am", "DM", "Gm"];
        let labels: Vec<&str> = (0..12).map(|v| a.major.label(v)).collect();
        assert_eq!(labels, expected);
        let minor_labels: Vec<&str> = (0..12).map(|v| a.minor.label(v)).collect();
        assert_eq!(
            minor_labels,
            ["DbM", "F#m", "BM", "Em", "AM", "Dm", "GM", "Cm", "FM", "Bbm", "EbM", "G#m"]
        );
    }

    /// Sorted counts of vertices at each distance from `from`.
    fn distance_histogram(g: &LabeledGraph, from: VertexId) -> Vec<usize> {
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
        let mut hist = vec![0; dist.iter().max().unwrap() + 1];
        for d in dist {
            hist[d] += 1;
        }
        hist
    }

    #[test]
    fn distance_distributions_fingerprint_the_networks() {
        // Every network is distance-distribution regular: each vertex sees
        // the same histogram. The pentatonic and hexachordal Levi graphs
        // show the distributions of the Desargues graph and of the Tutte
        // 8-cage respectively.
        let labels5: Vec<String> = PENTATONIC_LABELS.iter().map(|s| s.to_string()).collect();
        let labels6: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
        let nets = build_archimedean();
        let cases: [(LabeledGraph, Vec<usize>); 5] = [
            (build_pentatonic(&labels5).unwrap().graph, vec![1, 3, 6, 6, 3, 1]),
            (build_hexachordal(&labels6).unwrap().graph, vec![1, 3, 6, 12, 8]),
            (build_eulerian().graph, vec![1, 3, 6, 8, 5, 1]),
            (nets.major, vec![1, 3, 5, 3]),
            (nets.minor, vec![1, 3, 5, 3]),
        ];
        for (graph, expected) in cases {
            for v in 0..graph.vertex_count() {
                assert_eq!(distance_histogram(&graph, v), expected);
            }
        }
    }

    #[test]
    fn share_one_tone_rule_splits_into_the_two_components() {
        // Apply the rule to all 24 triads at once and check the graph falls
        // apart into exactly the two built components.
        let mut joint = LabeledGraph::new();
        let triads = Triad::all();
        for t in &triads {
            joint.add_vertex(t.name(), None);
        }
        for i in 0..24 {
            for j in (i + 1)..24 {
                if triads[i].quality != triads[j].quality
                    && triads[i].shared_tones(triads[j]) == 1
                {
                    joint.add_edge(i, j).unwrap();
                }
            }
        }
        let components = joint.components();
        assert_eq!(components.len(), 2);
        let built = build_archimedean();
        let to_labels = |ids: &[VertexId], g: &LabeledGraph| -> BTreeSet<String> {
            ids.iter().map(|&v| g.label(v).to_string()).collect()
        };
        let major_labels: BTreeSet<String> =
            (0..12).map(|v| built.major.label(v).to_string()).collect();
        let minor_labels: BTreeSet<String> =
            (0..12).map(|v| built.minor.label(v).to_string()).collect();
        let found: BTreeSet<BTreeSet<String>> =
            components.iter().map(|c| to_labels(c, &joint)).collect();
        assert_eq!(found, BTreeSet::from([major_labels, minor_labels]));
    }
}
