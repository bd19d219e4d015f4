//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass line (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Counts and tables are checked against frozen fixtures and, where
//! an independent route exists, against a second algorithm: cycle counts
//! are cross-checked by exhaustive vertex-subset enumeration, adjacency by
//! a golden file, and the syntheme tables cell by cell.

use std::collections::BTreeSet;

use tonnetz_core::analysis::{
    census_cycles, equally_spaced, parsifal_cycle, polar_opposite, validate_progression,
    Progression,
};
use tonnetz_core::builders::{
    all_totals, build_archimedean, build_eulerian, build_hexachordal, build_pentatonic,
    classify_edge, syntheme_tables, EdgeClass, EulerianTonnetz, PENTATONIC_LABELS,
};
use tonnetz_core::cyclespace::{
    add, combine, decompose, fundamental_basis, splice, CycleVector, SpliceOutcome,
};
use tonnetz_core::geometry::{
    cremona_richmond, desargues_instance, pentatonic_section_realization, project_to_plane,
    realize_d222_numeric, seeded_point, standard_frame, verify_realization, GeometryError,
    ProjFlat, SplitMix64, VerifyMode,
};
use tonnetz_core::graph::{Cycle, LabeledGraph, VertexId};
use tonnetz_core::incidence::IncidenceStructure;
use tonnetz_core::pitch::{
    augmented_and_wholetone, diminished_sevenths, octatonic_scales, triads_in_set, PitchClassSet,
    Triad,
};
use tonnetz_core::tiling::{self, FaceKind};

fn pass(number: u32, detail: &str) {
    println!("criterion {number:02}: PASS - {detail}");
}

fn vertex_of(t: &EulerianTonnetz, name: &str) -> VertexId {
    t.vertex_of(name.parse().expect("fixture chord name"))
}

fn cycle_of(t: &EulerianTonnetz, names: &[&str]) -> Cycle {
    let vs: Vec<VertexId> = names.iter().map(|n| vertex_of(t, n)).collect();
    t.graph.cycle_from_vertices(&vs).expect("fixture cycle closes")
}

fn label_set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|n| n.parse::<Triad>().unwrap().name()).collect()
}

fn cycle_label_set(g: &LabeledGraph, c: &Cycle) -> BTreeSet<String> {
    c.labels(g).into_iter().collect()
}

/// Independent cycle oracle: counts k-vertex subsets whose induced subgraph
/// is connected and 2-regular. On a bipartite graph of girth 6 every cycle
/// of length 6 or 8 is chordless, so this equals the cycle count.
fn induced_cycle_vertex_sets(g: &LabeledGraph, k: usize) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut adjacency = vec![0u32; n];
    for &(u, v) in g.edges() {
        adjacency[u] |= 1 << v;
        adjacency[v] |= 1 << u;
    }
    let mut out = Vec::new();
    let mut subset: Vec<VertexId> = (0..k).collect();
    loop {
        let mask: u32 = subset.iter().fold(0, |m, &v| m | 1 << v);
        let degrees_ok =
            subset.iter().all(|&v| (adjacency[v] & mask).count_ones() == 2);
        if degrees_ok {
            // Connectivity of the induced 2-regular subgraph.
            let mut seen = 1u32 << subset[0];
            let mut frontier = vec![subset[0]];
            while let Some(v) = frontier.pop() {
                let mut next = adjacency[v] & mask & !seen;
                while next != 0 {
                    let u = next.trailing_zeros() as usize;
                    next &= next - 1;
                    seen |= 1 << u;
                    frontier.push(u);
                }
            }
            if seen == mask {
                out.push(subset.clone());
            }
        }
        // Next k-combination of 0..n.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Parallel count computed from chord names alone (independent of the
/// builders' edge classification).
fn oracle_parallel_count(g: &LabeledGraph, vertices: &[VertexId]) -> usize {
    let k = vertices.len();
    let triad = |v: VertexId| g.label(v).parse::<Triad>().unwrap();
    (0..k)
        .filter(|&i| {
            let (a, b) = (triad(vertices[i]), triad(vertices[(i + 1) % k]));
            a.root == b.root
        })
        .count()
}

#[test]
fn criterion_01_eulerian_structure() {
    let t = build_eulerian();
    assert_eq!(t.graph.vertex_count(), 24);
    assert_eq!(t.graph.edge_count(), 36);
    assert_eq!(t.graph.is_regular(), Some(3));
    assert!(t.graph.is_properly_bicolored());
    assert_eq!(t.graph.components().len(), 1);
    assert_eq!(t.graph.girth(), Some(6));
    let golden = include_str!("data/eulerian_adjacency.golden");
    let mut produced = String::new();
    for v in 0..t.graph.vertex_count() {
        let mut neighbors: Vec<&str> =
            t.graph.neighbors(v).into_iter().map(|u| t.graph.label(u)).collect();
        neighbors.sort_unstable();
        produced.push_str(&format!("{}: {}\n", t.graph.label(v), neighbors.join(" ")));
    }
    assert_eq!(produced, golden, "adjacency differs from the golden drawing");
    pass(1, "24 vertices, 36 edges, 3-regular bipartite, girth 6, golden adjacency");
}

#[test]
fn criterion_02_cycle_census() {
    let t = build_eulerian();
    let cycles = census_cycles(&t, 8).unwrap();
    let by_family = |length: usize, p: usize| -> Vec<&Cycle> {
        cycles.iter().filter(|(c, cp)| c.len() == length && *cp == p).map(|(c, _)| c).collect()
    };

    // The four thrice-parallel hexacycles, as sets.
    let hexa3: Vec<BTreeSet<String>> =
        by_family(6, 3).iter().map(|c| cycle_label_set(&t.graph, c)).collect();
    let expected3 = [
        label_set(&["CM", "Cm", "AbM", "G#m", "EM", "Em"]),
        label_set(&["FM", "Fm", "DbM", "C#m", "AM", "Am"]),
        label_set(&["BbM", "Bbm", "GbM", "F#m", "DM", "Dm"]),
        label_set(&["EbM", "Ebm", "BM", "Bm", "GM", "Gm"]),
    ];
    assert_eq!(hexa3.len(), 4);
    for want in &expected3 {
        assert!(hexa3.contains(want), "missing 3p-hexacycle {want:?}");
    }
    // The four hexacycles partition the 24 chords.
    let hexa_cover: BTreeSet<&String> = hexa3.iter().flatten().collect();
    assert_eq!(hexa_cover.len(), 24);

    let hexa2 = by_family(6, 2);
    assert_eq!(hexa2.len(), 12);
    let eq2 = label_set(&["CM", "Am", "FM", "Fm", "AbM", "Cm"]);
    assert!(hexa2.iter().any(|c| cycle_label_set(&t.graph, c) == eq2));

    let octa4 = by_family(8, 4);
    assert_eq!(octa4.len(), 3);
    let hat = label_set(&["CM", "Am", "AM", "F#m", "GbM", "Ebm", "EbM", "Cm"]);
    assert!(octa4.iter().any(|c| cycle_label_set(&t.graph, c) == hat));
    // Vertex-disjoint and jointly covering all 24 chords.
    let mut covered = BTreeSet::new();
    for c in &octa4 {
        for &v in c.vertices() {
            assert!(covered.insert(v), "octacycles must be vertex-disjoint");
        }
    }
    assert_eq!(covered.len(), 24);

    assert_eq!(by_family(8, 1).len(), 12);

    // Independent oracle: induced-subset enumeration with name-derived
    // parallel counts.
    for (k, expected_counts) in [(6usize, vec![(2, 12), (3, 4)]), (8, vec![(1, 12), (3, 24), (4, 3)])]
    {
        let sets = induced_cycle_vertex_sets(&t.graph, k);
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for set in &sets {
            // Order the subset into a cycle before counting crossings.
            let cycle = cycles
                .iter()
                .find(|(c, _)| {
                    c.len() == k && set.iter().all(|v| c.contains_vertex(*v))
                })
                .map(|(c, _)| c)
                .expect("subset oracle found a cycle the census missed");
            *counts.entry(oracle_parallel_count(&t.graph, cycle.vertices())).or_default() += 1;
        }
        let counts: Vec<(usize, usize)> = counts.into_iter().collect();
        assert_eq!(counts, expected_counts, "oracle disagrees at length {k}");
    }
    pass(2, "hexacycles 4+12 matching the fixtures, octacycles 3+12, oracle agrees");
}

#[test]
fn criterion_03_each_triad_in_three_2p_hexacycles() {
    let t = build_eulerian();
    let cycles = census_cycles(&t, 6).unwrap();
    let hexa2: Vec<&Cycle> =
        cycles.iter().filter(|(c, p)| c.len() == 6 && *p == 2).map(|(c, _)| c).collect();
    assert_eq!(hexa2.len(), 12);
    for v in 0..24 {
        let member_of = hexa2.iter().filter(|c| c.contains_vertex(v)).count();
        assert_eq!(member_of, 3, "{} sits in {member_of} 2p-hexacycles", t.graph.label(v));
    }
    pass(3, "all 24 triads lie in exactly three 2p-hexacycles");
}

#[test]
fn criterion_04_splice_algebra() {
    let t = build_eulerian();
    let eq2 = cycle_of(&t, &["CM", "Am", "FM", "Fm", "AbM", "Cm"]);
    let eq3 = cycle_of(&t, &["FM", "Dm", "BbM", "Bbm", "DbM", "Fm"]);
    let eq4 = cycle_of(&t, &["CM", "Am", "FM", "Dm", "BbM", "Bbm", "DbM", "Fm", "AbM", "Cm"]);
    let eq5 = cycle_of(&t, &["BbM", "Gm", "EbM", "Ebm", "GbM", "Bbm"]);
    let eq6 = cycle_of(
        &t,
        &[
            "CM", "Am", "FM", "Dm", "BbM", "Gm", "EbM", "Ebm", "GbM", "Bbm", "DbM", "Fm", "AbM",
            "Cm",
        ],
    );
    match splice(&t.graph, &eq2, &eq3).unwrap() {
        SpliceOutcome::Cycle(c) => assert_eq!(c.edge_set(), eq4.edge_set()),
        SpliceOutcome::Vector { .. } => panic!("splice should close a single decacycle"),
    }
    match splice(&t.graph, &eq4, &eq5).unwrap() {
        SpliceOutcome::Cycle(c) => assert_eq!(c.edge_set(), eq6.edge_set()),
        SpliceOutcome::Vector { .. } => panic!("splice should close a single 14-cycle"),
    }
    // The same identities as plain GF(2) sums.
    let sum = add(&CycleVector::from_cycle(&t.graph, &eq2), &CycleVector::from_cycle(&t.graph, &eq3))
        .unwrap();
    assert_eq!(sum.edge_set(), eq4.edge_set());
    // Two of the disjoint thrice-parallel hexacycles refuse to splice.
    let hexa_a = cycle_of(&t, &["CM", "Cm", "AbM", "G#m", "EM", "Em"]);
    let hexa_b = cycle_of(&t, &["FM", "Fm", "DbM", "C#m", "AM", "Am"]);
    assert!(matches!(
        splice(&t.graph, &hexa_a, &hexa_b),
        Err(tonnetz_core::cyclespace::CycleSpaceError::DisjointCycles)
    ));
    pass(4, "splices reproduce the decacycle and the 14-cycle edge-exactly");
}

#[test]
fn criterion_05_cycle_space_basis() {
    let t = build_eulerian();
    let tree = t.perimeter_tree();
    let basis = fundamental_basis(&t.graph, &tree);
    // dim V = M - N + C = 36 - 24 + 1.
    assert_eq!(basis.len(), 13);
    let mut lengths: Vec<usize> = basis.cycles().iter().map(|c| c.len()).collect();
    lengths.sort_unstable();
    let mut expected = vec![8; 9];
    expected.extend([18, 18, 18, 24]);
    assert_eq!(lengths, expected);
    // Every census cycle decomposes and recombines exactly.
    for (cycle, _) in census_cycles(&t, 8).unwrap() {
        let v = CycleVector::from_cycle(&t.graph, &cycle);
        let coefficients = decompose(&v, &basis).unwrap();
        let back = combine(&t.graph, &basis, &coefficients).unwrap();
        assert_eq!(back, v, "recombination failed for {:?}", cycle.labels(&t.graph));
    }
    pass(5, "dimension 13; nine 8-cycles, three 18-cycles, one 24-cycle; census decomposes");
}

// Supporting check for the Hamiltonian search: exhaustive enumeration on
// the Eulerian tonnetz finds the drawing's perimeter among its cycles.
#[test]
fn hamiltonian_search_finds_the_perimeter() {
    let t = build_eulerian();
    let all = t.graph.hamiltonian_cycles(usize::MAX).unwrap();
    assert!(all.contains(&t.perimeter_cycle()), "perimeter missing from the search");
    assert_eq!(all.len(), 62);
}

#[test]
fn criterion_06_perimeter_property() {
    let t = build_eulerian();
    let stripped = t.graph.delete_edges(|e, _, _| {
        matches!(classify_edge(&t, e), Ok(EdgeClass::Parallel))
    });
    assert_eq!(stripped.edge_count(), 24);
    assert_eq!(stripped.is_regular(), Some(2));
    assert_eq!(stripped.components().len(), 1);
    let all_edges: BTreeSet<usize> = (0..stripped.edge_count()).collect();
    let cycle = stripped.cycle_from_edge_set(&all_edges).unwrap();
    assert_eq!(cycle.len(), 24);
    assert_eq!(cycle.vertices(), t.perimeter_cycle().vertices());
    pass(6, "deleting the 12 parallel edges leaves exactly the perimeter 24-cycle");
}

#[test]
fn criterion_07_scale_material() {
    let t = build_eulerian();
    let [x, y, z] = diminished_sevenths();
    assert_eq!(x, PitchClassSet::from_values([0, 3, 6, 9]));
    assert_eq!(y, PitchClassSet::from_values([1, 4, 7, 10]));
    assert_eq!(z, PitchClassSet::from_values([2, 5, 8, 11]));
    let [o12, o23, o31] = octatonic_scales();
    assert_eq!(o12, x.union(y));
    assert_eq!(o23, y.union(z));
    assert_eq!(o31, z.union(x));
    let (_, hexachords, [w1, w2]) = augmented_and_wholetone();
    assert_eq!(w1, PitchClassSet::from_values([0, 2, 4, 6, 8, 10]));
    assert_eq!(w2, PitchClassSet::from_values([1, 3, 5, 7, 9, 11]));

    // triads_in_set(O12) equals the chords of the 4p-octacycle through CM.
    let cycles = census_cycles(&t, 8).unwrap();
    let cm = vertex_of(&t, "CM");
    let cm_octa = cycles
        .iter()
        .find(|(c, p)| c.len() == 8 && *p == 4 && c.contains_vertex(cm))
        .map(|(c, _)| c)
        .expect("CM lies on a 4p-octacycle");
    let octa_names = cycle_label_set(&t.graph, cm_octa);
    let triad_names: BTreeSet<String> =
        triads_in_set(o12).into_iter().map(|tr| tr.name()).collect();
    assert_eq!(triad_names, octa_names);

    // The four hexachords that are not whole-tone scales are the pitch
    // unions of the four 3p-hexacycles.
    let hexa3: Vec<PitchClassSet> = cycles
        .iter()
        .map(|(c, _)| c)
        .chain([])
        .filter(|c| c.len() == 6)
        .filter(|c| oracle_parallel_count(&t.graph, c.vertices()) == 3)
        .map(|c| {
            c.labels(&t.graph)
                .iter()
                .map(|n| n.parse::<Triad>().unwrap().pitch_classes())
                .fold(PitchClassSet::empty(), PitchClassSet::union)
        })
        .collect();
    assert_eq!(hexa3.len(), 4);
    let others: Vec<PitchClassSet> =
        hexachords.iter().copied().filter(|h| *h != w1 && *h != w2).collect();
    assert_eq!(others.len(), 4);
    for h in &others {
        assert!(hexa3.contains(h), "hexachord {h} is not a 3p-hexacycle pitch union");
    }
    pass(7, "diminished sevenths, octatonics, whole tones, and hexachord unions all line up");
}

#[test]
fn criterion_08_pentatonic() {
    let labels: Vec<String> = PENTATONIC_LABELS.iter().map(|s| s.to_string()).collect();
    let p = build_pentatonic(&labels).unwrap();
    let ct = p.structure.configuration_type().unwrap();
    assert_eq!(ct.to_string(), "{10_3}");
    assert_eq!(ct.flag_count(), 30);
    assert_eq!(p.graph.girth(), Some(6));
    assert_eq!(p.graph.enumerate_cycles(6).unwrap().len(), 20);
    assert!(!p.graph.hamiltonian_cycles(1).unwrap().is_empty());
    let witness = p.structure.self_duality_witness().expect("Desargues {10_3} is self-dual");
    for point in 0..10 {
        for line in 0..10 {
            assert_eq!(
                p.structure.incident(point, line),
                p.structure
                    .incident(witness.line_to_point[line], witness.point_to_line[point])
            );
        }
    }
    pass(8, "{10_3}, 30 flags, girth 6, 20 hexacycles, Hamiltonian, self-dual witness");
}

#[test]
fn criterion_09_hexachordal() {
    let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    let h = build_hexachordal(&labels).unwrap();
    assert_eq!(h.duads.len(), 15);
    assert_eq!(h.synthemes.len(), 15);
    assert_eq!(h.totals.len(), 6);
    assert_eq!(all_totals().len(), 6);

    // Any two totals share exactly one syntheme.
    for (i, (_, t1)) in h.totals.iter().enumerate() {
        for (_, t2) in h.totals.iter().skip(i + 1) {
            let shared =
                t1.synthemes().iter().filter(|s| t2.contains_syntheme(s)).count();
            assert_eq!(shared, 1);
        }
    }

    let tables = syntheme_tables();
    // Table I cell for cell.
    let expected_t1: [(&str, &str); 15] = [
        ("ab", "12,34,56"),
        ("ac", "13,25,46"),
        ("ad", "14,26,35"),
        ("ae", "15,24,36"),
        ("af", "16,23,45"),
        ("bc", "16,24,35"),
        ("bd", "15,23,46"),
        ("be", "13,26,45"),
        ("bf", "14,25,36"),
        ("cd", "12,36,45"),
        ("ce", "14,23,56"),
        ("cf", "15,26,34"),
        ("de", "16,25,34"),
        ("df", "13,24,56"),
        ("ef", "12,35,46"),
    ];
    assert_eq!(tables.duads_of_letters.len(), 15);
    for ((ld, s), (want_ld, want_s)) in tables.duads_of_letters.iter().zip(expected_t1) {
        assert_eq!(ld.to_string(), want_ld);
        assert_eq!(s.to_string(), want_s, "table I cell {want_ld}");
    }
    // Table II cell for cell.
    let expected_t2: [(&str, &str); 15] = [
        ("12", "ab,cd,ef"),
        ("13", "ac,be,df"),
        ("14", "ad,bf,ce"),
        ("15", "ae,bd,cf"),
        ("16", "af,bc,de"),
        ("23", "af,bd,ce"),
        ("24", "ae,bc,df"),
        ("25", "ac,bf,de"),
        ("26", "ad,be,cf"),
        ("34", "ab,cf,de"),
        ("35", "ad,bc,ef"),
        ("36", "ae,bf,cd"),
        ("45", "af,be,cd"),
        ("46", "ac,bd,ef"),
        ("56", "ab,ce,df"),
    ];
    for ((d, ls), (want_d, want_ls)) in tables.duads_of_numbers.iter().zip(expected_t2) {
        assert_eq!(d.to_string(), want_d);
        assert_eq!(ls.to_string(), want_ls, "table II cell {want_d}");
    }
    // Table III rows in partner-alphabetical cell order.
    let expected_t3: [(&str, [&str; 5]); 6] = [
        ("a", ["12,34,56", "13,25,46", "14,26,35", "15,24,36", "16,23,45"]),
        ("b", ["12,34,56", "16,24,35", "15,23,46", "13,26,45", "14,25,36"]),
        ("c", ["13,25,46", "16,24,35", "12,36,45", "14,23,56", "15,26,34"]),
        ("d", ["14,26,35", "15,23,46", "12,36,45", "16,25,34", "13,24,56"]),
        ("e", ["15,24,36", "13,26,45", "14,23,56", "16,25,34", "12,35,46"]),
        ("f", ["16,23,45", "14,25,36", "15,26,34", "13,24,56", "12,35,46"]),
    ];
    for ((letter, row), (want_letter, want_row)) in
        tables.letters_as_totals.iter().zip(expected_t3)
    {
        assert_eq!(letter.to_string(), want_letter);
        let shown: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, want_row, "table III row {want_letter}");
    }
    // Table IV rows as cell sets (the printed cell order is not uniform
    // across rows; the cells themselves are exact).
    let expected_t4: [(u8, [&str; 5]); 6] = [
        (1, ["ab,cd,ef", "ac,be,df", "ad,bf,ce", "ae,bd,cf", "af,bc,de"]),
        (2, ["ab,cd,ef", "af,bd,ce", "ae,bc,df", "ac,bf,de", "ad,be,cf"]),
        (3, ["ab,cf,de", "ad,bc,ef", "ae,bf,cd", "ac,be,df", "af,bd,ce"]),
        (4, ["af,be,cd", "ac,bd,ef", "ad,bf,ce", "ae,bc,df", "ab,cf,de"]),
        (5, ["ab,ce,df", "ae,bd,cf", "ac,bf,de", "ad,bc,ef", "af,be,cd"]),
        (6, ["af,bc,de", "ad,be,cf", "ae,bf,cd", "ac,bd,ef", "ab,ce,df"]),
    ];
    for ((number, row), (want_number, want_row)) in
        tables.numbers_as_letter_totals.iter().zip(expected_t4)
    {
        assert_eq!(*number, want_number);
        let got: BTreeSet<String> = row.iter().map(|s| s.to_string()).collect();
        let want: BTreeSet<String> = want_row.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want, "table IV row {want_number}");
    }

    assert_eq!(h.graph.vertex_count(), 30);
    assert_eq!(h.graph.edge_count(), 45);
    assert_eq!(h.graph.girth(), Some(8));
    assert_eq!(h.graph.is_regular(), Some(3));
    let witness = h.structure.self_duality_witness().expect("{15_3} is self-dual");
    for point in 0..15 {
        for line in 0..15 {
            assert_eq!(
                h.structure.incident(point, line),
                h.structure
                    .incident(witness.line_to_point[line], witness.point_to_line[point])
            );
        }
    }
    pass(9, "15 duads / 15 synthemes / 6 totals; tables I-IV exact; 8-cage Levi; self-dual");
}

#[test]
fn criterion_10_exact_geometry() {
    // One hundred seeded exact Desargues instances.
    let mut rng = SplitMix64::new(2024);
    let mut done = 0u32;
    let mut draws = 0u32;
    while done < 100 {
        draws += 1;
        assert!(draws < 2000, "too many degenerate draws");
        let v = seeded_point(2, &mut rng);
        let p = seeded_point(2, &mut rng);
        let q = seeded_point(2, &mut rng);
        let r = seeded_point(2, &mut rng);
        let s = num_rational::BigRational::new(rng.int_in(1, 7).into(), 8.into());
        let t = num_rational::BigRational::new(rng.int_in(1, 7).into(), 8.into());
        let u = num_rational::BigRational::new(rng.int_in(1, 7).into(), 8.into());
        match desargues_instance(&v, &p, &q, &r, &s, &t, &u) {
            Ok(real) => {
                let report = verify_realization(&real, VerifyMode::Exact).unwrap();
                assert!(report.all_ok());
                assert_eq!(report.flags_ok, 30);
                done += 1;
            }
            Err(GeometryError::Degenerate(_)) => continue,
            Err(e) => panic!("unexpected: {e}"),
        }
    }

    // Section construction matches the combinatorial pentatonic build.
    let labels5: Vec<String> = PENTATONIC_LABELS.iter().map(|s| s.to_string()).collect();
    let cayley = pentatonic_section_realization(&labels5, 0).unwrap();
    let pentatonic = build_pentatonic(&labels5).unwrap();
    assert_eq!(cayley.structure, pentatonic.structure);
    let report = verify_realization(&cayley, VerifyMode::Exact).unwrap();
    assert!(report.all_ok());
    assert_eq!(report.flags_ok, 30);

    // RP^4 construction matches the combinatorial hexachordal build.
    let labels6: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    let frame: [ProjFlat; 6] = standard_frame(4).try_into().unwrap();
    let cr = cremona_richmond(&frame, &labels6).unwrap();
    let hexachordal = build_hexachordal(&labels6).unwrap();
    assert_eq!(cr.structure, hexachordal.structure);
    let report = verify_realization(&cr, VerifyMode::Exact).unwrap();
    assert!(report.all_ok());
    assert_eq!(report.flags_ok, 45);

    // Exact-faithful projections to the plane.
    for (real, flags) in [(&cayley, 30), (&cr, 45)] {
        let plane = project_to_plane(real, 0).unwrap();
        assert_eq!(plane.ambient, 2);
        let report = verify_realization(&plane, VerifyMode::Exact).unwrap();
        assert!(report.all_ok());
        assert_eq!(report.flags_ok, flags);
    }
    pass(10, "100 Desargues instances exact; section/RP^4 builds label-identical; projections faithful");
}

#[test]
fn criterion_11_d222_numeric() {
    let (real, stats) = realize_d222_numeric(0).expect("default seed schedule must succeed");
    assert!(stats.max_flag_residual <= 1e-8, "max flag residual {}", stats.max_flag_residual);
    assert!(
        stats.min_nonflag_residual >= 1e-3,
        "min non-flag residual {}",
        stats.min_nonflag_residual
    );
    let report = verify_realization(
        &real,
        VerifyMode::Approximate { flag_tol: 1e-8, separation: 1e-3 },
    )
    .unwrap();
    assert!(report.all_ok());
    assert_eq!(report.flags_ok, 36);
    assert_eq!(report.nonflags_ok, 108);
    pass(
        11,
        &format!(
            "numeric {{12_3}} on seed {} (max flag {:.2e}, min non-flag {:.2e})",
            stats.seed_used, stats.max_flag_residual, stats.min_nonflag_residual
        ),
    );
}

#[test]
fn criterion_12_archimedean() {
    let nets = build_archimedean();
    for g in [&nets.major, &nets.minor] {
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 18);
        assert_eq!(g.is_regular(), Some(3));
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.girth(), Some(4));
    }
    // The component of CM carries exactly the drawn chords.
    let major_set: BTreeSet<String> =
        (0..12).map(|v| nets.major.label(v).to_string()).collect();
    let expected = label_set(&[
        "CM", "Fm", "BbM", "Ebm", "AbM", "C#m", "F#M", "Bm", "EM", "Am", "DM", "Gm",
    ]);
    assert_eq!(major_set, expected);

    // Neighbor fixtures under the share-one-tone rule.
    let fixtures: [(&str, [&str; 3]); 3] = [
        ("CM", ["Fm", "Gm", "C#m"]),
        ("Cm", ["FM", "GM", "BM"]),
        ("Em", ["AM", "BM", "EbM"]),
    ];
    for (chord, expected) in fixtures {
        let t: Triad = chord.parse().unwrap();
        let got: BTreeSet<String> = tonnetz_core::pitch::archimedean_neighbors(t)
            .into_iter()
            .map(|n| n.name())
            .collect();
        assert_eq!(got, label_set(&expected), "neighbors of {chord}");
    }

    // Not the Levi graph of any configuration: girth four.
    match IncidenceStructure::from_levi(&nets.major) {
        Err(tonnetz_core::incidence::IncidenceError::GirthBelowSix(4)) => {}
        other => panic!("expected the girth error, got {other:?}"),
    }
    pass(12, "two 12-vertex 18-edge cubic components of girth 4; fixtures and girth error hold");
}

#[test]
fn criterion_13_analysis_fixtures() {
    let t = build_eulerian();

    // Wagner: one step inside the 3p-hexacycle.
    let wagner = validate_progression(&t, &Progression::parse("G#m EM").unwrap()).unwrap();
    assert!(wagner.is_path);
    assert!(wagner.path_cycles.iter().any(|c| c.length == 6 && c.parallel_count == 3));

    // Chopin: a five-step path; all six chords sit on a 2p-decacycle with
    // the end points in polar opposition. (The edge-carrying decacycles of
    // this path have three parallel edges; the 2p-decacycle carries the
    // chords, not the literal steps.)
    let chopin =
        validate_progression(&t, &Progression::parse("G#m BM Ebm EbM Gm BbM").unwrap()).unwrap();
    assert!(chopin.is_path);
    assert!(!chopin.path_cycles.is_empty());
    assert!(chopin.path_cycles.iter().all(|c| c.length >= 10));
    let supporting_2p_deca = chopin
        .supporting_cycles
        .iter()
        .find(|c| c.length == 10 && c.parallel_count == 2)
        .expect("a 2p-decacycle supports all six chords");
    let chopin_deca = cycle_of(
        &t,
        &supporting_2p_deca.vertices.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
    );
    assert_eq!(
        polar_opposite(&chopin_deca, vertex_of(&t, "G#m")).unwrap(),
        vertex_of(&t, "BbM")
    );

    // Tchaikovsky: a three-step path inside a 2p-hexacycle.
    let tchaikovsky =
        validate_progression(&t, &Progression::parse("G#m AbM Cm EbM").unwrap()).unwrap();
    assert!(tchaikovsky.is_path);
    assert!(tchaikovsky.path_cycles.iter().any(|c| c.length == 6 && c.parallel_count == 2));

    // The Parsifal fanfare is a simple 4p-decacycle.
    let (parsifal, report) = parsifal_cycle(&t);
    assert_eq!(parsifal.len(), 10);
    assert_eq!(report.parallel_count, 4);
    assert!(parsifal.position_of(vertex_of(&t, "Bbm")).is_some());

    // Polar fixtures.
    let perimeter = t.perimeter_cycle();
    assert_eq!(polar_opposite(&perimeter, vertex_of(&t, "Bbm")).unwrap(), vertex_of(&t, "Em"));
    assert_eq!(polar_opposite(&perimeter, vertex_of(&t, "Gm")).unwrap(), vertex_of(&t, "C#m"));

    // Equally spaced minors spelling a diminished seventh.
    let minors = ["Bbm", "C#m", "Em", "Gm"].map(|n| vertex_of(&t, n));
    assert!(equally_spaced(&perimeter, &minors).unwrap());
    for pair in minors.windows(2) {
        let a = perimeter.position_of(pair[0]).unwrap() as i64;
        let b = perimeter.position_of(pair[1]).unwrap() as i64;
        assert_eq!((b - a).rem_euclid(24), 6, "gap must be six steps");
    }
    let roots = PitchClassSet::from_values(
        minors.map(|v| i64::from(t.triad_of(v).root.value())).to_vec(),
    );
    assert!(
        diminished_sevenths().contains(&roots),
        "the four polar minors' roots must spell a diminished seventh"
    );
    pass(13, "Wagner/Chopin/Tchaikovsky, Parsifal, polar opposition and spacing fixtures hold");
}

#[test]
fn criterion_14_tiling() {
    let nets = build_archimedean();
    let patch = tiling::generate(&nets.major, 1).unwrap();
    assert_eq!(patch.face_count(FaceKind::Dodecagon), 7);
    // Every interior vertex meets one square, one hexagon, one dodecagon.
    let interior = patch.interior_vertex_configurations();
    assert!(!interior.is_empty());
    for (_, kinds) in &interior {
        assert_eq!(kinds, &[FaceKind::Square, FaceKind::Hexagon, FaceKind::Dodecagon]);
    }
    // Unit edges within 1e-9 relative.
    for face in &patch.faces {
        let k = face.vertices.len();
        for e in 0..k {
            let u = &patch.vertices[face.vertices[e]];
            let v = &patch.vertices[face.vertices[(e + 1) % k]];
            let d = ((u.x - v.x).powi(2) + (u.y - v.y).powi(2)).sqrt();
            assert!((d - 1.0).abs() <= 1e-9);
        }
    }
    // Lossless round trips.
    let json = patch.to_json();
    assert_eq!(tiling::TilingPatch::from_json(&json).unwrap(), patch);
    let svg = patch.to_svg();
    assert!(svg.contains("<svg") && svg.contains("</svg>"));
    assert_eq!(svg.matches("<polygon").count(), patch.faces.len());
    pass(14, "rings-1 patch: 7 dodecagons, (4,6,12) interior corners, unit edges, lossless JSON");
}
