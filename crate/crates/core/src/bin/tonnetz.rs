//! Command-line front end: builds the tone networks, runs the cycle census
//! and progression analysis, drives the projective constructions, and
//! generates the tessellation. Exit codes: 0 success, 1 domain error,
//! 2 usage error. All output is deterministic for fixed arguments and seeds.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tonnetz_core::analysis::{census, family_name, p_count, validate_progression, Progression};
use tonnetz_core::builders::{
    build_archimedean, build_eulerian, build_hexachordal, build_pentatonic, syntheme_tables,
    PENTATONIC_LABELS,
};
use tonnetz_core::cyclespace::fundamental_basis;
use tonnetz_core::geometry::{
    cremona_richmond, desargues_instance, pentatonic_section_realization, project_to_plane,
    realization_to_json, realize_d222_numeric, seeded_point, standard_frame, verify_realization,
    GeometryError, ProjFlat, Realization, RealizationCoords, SplitMix64, VerifyMode,
};
use tonnetz_core::graph::{LabeledGraph, PathSearch};
use tonnetz_core::incidence::IncidenceStructure;
use tonnetz_core::tiling;

#[derive(Parser)]
#[command(
    name = "tonnetz",
    version,
    about = "Tone networks as graphs, incidence configurations, and exact projective geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Eulerian,
    Pentatonic,
    Hexachordal,
    ArchimedeanMajor,
    ArchimedeanMinor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComponentArg {
    Major,
    Minor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    /// A seeded exact Desargues {10_3} instance in RP^2.
    Desargues,
    /// The five-point section construction in RP^3 (pentatonic {10_3}).
    Pentatonic,
    /// The six-point duad/syntheme construction in RP^4 ({15_3}).
    CremonaRichmond,
    /// Numeric realization of the Eulerian {12_3} in the plane.
    D222,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tonnetz and print it (summary, --json graph, --dot, --config).
    Build {
        #[arg(value_enum)]
        kind: KindArg,
        /// Comma-separated scale labels (5 for pentatonic, 6 for hexachordal).
        #[arg(long)]
        labels: Option<String>,
        /// Graph JSON on stdout.
        #[arg(long)]
        json: bool,
        /// DOT text on stdout.
        #[arg(long)]
        dot: bool,
        /// Configuration JSON on stdout (errors for the Archimedean graphs).
        #[arg(long)]
        config: bool,
    },
    /// Enumerate all simple cycles of one length.
    Cycles {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        labels: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Cycle census of the Eulerian tonnetz by (length, parallel count).
    Census {
        /// Only the Eulerian tonnetz has a census.
        #[arg(value_enum, default_value_t = KindArg::Eulerian)]
        kind: KindArg,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Fundamental cycle basis for the perimeter spanning tree.
    Basis {
        #[arg(long)]
        json: bool,
    },
    /// All shortest paths between two chords on the Eulerian tonnetz.
    Path {
        from: String,
        to: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate a chord progression and list its containing cycles.
    Analyze {
        /// Whitespace-separated chord names, e.g. "G#m EM".
        #[arg(long)]
        progression: String,
        #[arg(long)]
        json: bool,
    },
    /// Duads, synthemes, totals, and the four letter tables.
    Synthemes {
        /// Comma-separated hexachord labels (default 1,2,3,4,5,6).
        #[arg(long)]
        labels: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exact and numeric projective constructions.
    Geometry {
        #[arg(value_enum)]
        construction: ConstructionArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra verification pass at this flag tolerance (numeric only).
        #[arg(long)]
        tol: Option<f64>,
        /// Project the RP^3/RP^4 result down to the plane.
        #[arg(long)]
        project: bool,
        /// Full realization JSON on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Generate the {4,6,12} tessellation patch for an Archimedean tonnetz.
    Tessellate {
        #[arg(long, default_value_t = 1)]
        rings: u32,
        #[arg(long, value_enum, default_value_t = ComponentArg::Major)]
        component: ComponentArg,
        /// Write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`tonnetz ... | head`) instead of
    // panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn parse_labels(arg: Option<String>, defaults: &[&str]) -> Vec<String> {
    match arg {
        Some(s) => s.split(',').map(|p| p.trim().to_string()).collect(),
        None => defaults.iter().map(|s| s.to_string()).collect(),
    }
}

fn build_kind(
    kind: KindArg,
    labels: Option<String>,
) -> Result<(LabeledGraph, Option<IncidenceStructure>), String> {
    match kind {
        KindArg::Eulerian => {
            let t = build_eulerian();
            Ok((t.graph, Some(t.structure)))
        }
        KindArg::Pentatonic => {
            let labels = parse_labels(labels, &PENTATONIC_LABELS);
            let b = build_pentatonic(&labels).map_err(|e| e.to_string())?;
            Ok((b.graph, Some(b.structure)))
        }
        KindArg::Hexachordal => {
            let labels = parse_labels(labels, &["1", "2", "3", "4", "5", "6"]);
            let h = build_hexachordal(&labels).map_err(|e| e.to_string())?;
            Ok((h.graph, Some(h.structure)))
        }
        KindArg::ArchimedeanMajor => Ok((build_archimedean().major, None)),
        KindArg::ArchimedeanMinor => Ok((build_archimedean().minor, None)),
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Build { kind, labels, json, dot, config } => {
            let (graph, structure) = build_kind(kind, labels)?;
            if dot {
                print!("{}", graph.to_dot("tonnetz"));
            } else if config {
                let structure = match structure {
                    Some(s) => s,
                    // The share-one-tone graphs have girth 4; from_levi
                    // reports why they are not configurations.
                    None => IncidenceStructure::from_levi(&graph).map_err(|e| e.to_string())?,
                };
                println!("{}", structure.to_json());
            } else if json {
                println!("{}", graph.to_json());
            } else {
                let girth =
                    graph.girth().map_or_else(|| "infinite".to_string(), |g| g.to_string());
                println!(
                    "{} vertices, {} edges, girth {girth}",
                    graph.vertex_count(),
                    graph.edge_count()
                );
                if let Some(s) = &structure {
                    if let Ok(ct) = s.configuration_type() {
                        println!("configuration type {ct}, {} flags", ct.flag_count());
                    }
                }
                for v in 0..graph.vertex_count() {
                    let mut neighbors: Vec<&str> =
                        graph.neighbors(v).into_iter().map(|u| graph.label(u)).collect();
                    neighbors.sort_unstable();
                    println!("{}: {}", graph.label(v), neighbors.join(" "));
                }
            }
            Ok(())
        }
        Command::Cycles { kind, length, labels, json } => {
            let is_eulerian = kind == KindArg::Eulerian;
            let (graph, _) = build_kind(kind, labels)?;
            let cycles = graph.enumerate_cycles(length).map_err(|e| e.to_string())?;
            let eulerian = is_eulerian.then(build_eulerian);
            if json {
                let rows: Vec<serde_json::Value> = cycles
                    .iter()
                    .map(|c| {
                        let mut row = serde_json::json!({ "vertices": c.labels(&graph) });
                        if let Some(t) = &eulerian {
                            let p = p_count(t, c).expect("cycle lies in the tonnetz");
                            row["parallel_count"] = p.into();
                            row["family"] = family_name(c.len(), p).into();
                        }
                        row
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("{} cycle(s) of length {length}", cycles.len());
                for c in &cycles {
                    let tag = eulerian
                        .as_ref()
                        .map(|t| {
                            let p = p_count(t, c).expect("cycle lies in the tonnetz");
                            format!("  [{}]", family_name(c.len(), p))
                        })
                        .unwrap_or_default();
                    println!("{}{}", c.labels(&graph).join(" "), tag);
                }
            }
            Ok(())
        }
        Command::Census { kind, max_length, json } => {
            if kind != KindArg::Eulerian {
                return Err("the cycle census is defined for the Eulerian tonnetz".into());
            }
            let t = build_eulerian();
            let rows = census(&t, max_length).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("length  p  count  family");
                for r in rows {
                    println!(
                        "{:<6}  {:<1}  {:<5}  {}",
                        r.length,
                        r.parallel_count,
                        r.count,
                        family_name(r.length, r.parallel_count)
                    );
                }
            }
            Ok(())
        }
        Command::Basis { json } => {
            let t = build_eulerian();
            let tree = t.perimeter_tree();
            let basis = fundamental_basis(&t.graph, &tree);
            if json {
                let rows: Vec<serde_json::Value> = basis
                    .cycles()
                    .iter()
                    .zip(basis.chord_edges())
                    .map(|(c, &e)| {
                        let (u, v) = t.graph.edge(e);
                        serde_json::json!({
                            "chord": [t.graph.label(u), t.graph.label(v)],
                            "length": c.len(),
                            "vertices": c.labels(&t.graph),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("{} basis cycles for the perimeter spanning tree", basis.len());
                for (c, &e) in basis.cycles().iter().zip(basis.chord_edges()) {
                    let (u, v) = t.graph.edge(e);
                    println!(
                        "chord ({}, {}): length {:<2} {}",
                        t.graph.label(u),
                        t.graph.label(v),
                        c.len(),
                        c.labels(&t.graph).join(" ")
                    );
                }
            }
            Ok(())
        }
        Command::Path { from, to, json } => {
            let t = build_eulerian();
            let parse = |name: &str| {
                name.parse::<tonnetz_core::pitch::Triad>()
                    .map(|triad| t.vertex_of(triad))
                    .map_err(|e| e.to_string())
            };
            let (u, v) = (parse(&from)?, parse(&to)?);
            match t.graph.shortest_paths(u, v).map_err(|e| e.to_string())? {
                PathSearch::Found { length, paths } => {
                    let labeled: Vec<Vec<&str>> = paths
                        .iter()
                        .map(|p| p.iter().map(|&w| t.graph.label(w)).collect())
                        .collect();
                    if json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(
                                &serde_json::json!({ "length": length, "paths": labeled })
                            )
                            .unwrap()
                        );
                    } else {
                        println!("distance {length}, {} geodesic(s)", labeled.len());
                        for p in labeled {
                            println!("{}", p.join(" "));
                        }
                    }
                }
                PathSearch::Unreachable => {
                    if json {
                        println!("{}", serde_json::json!({ "length": null, "paths": [] }));
                    } else {
                        println!("no path");
                    }
                }
            }
            Ok(())
        }
        Command::Analyze { progression, json } => {
            let t = build_eulerian();
            let prog = Progression::parse(&progression).map_err(|e| e.to_string())?;
            let report = validate_progression(&t, &prog).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for step in &report.steps {
                    let mark = if step.adjacent { "adjacent" } else { "NOT adjacent" };
                    println!("{} -> {}: {mark}", step.from, step.to);
                }
                if report.is_path {
                    println!("path cycles ({}):", report.path_cycles.len());
                    for c in &report.path_cycles {
                        println!("  {}  [{}]", c.vertices.join(" "), c.family);
                    }
                    println!("on-cycle support ({}):", report.supporting_cycles.len());
                    for c in &report.supporting_cycles {
                        println!("  {}  [{}]", c.vertices.join(" "), c.family);
                    }
                } else {
                    println!("not a path on the tonnetz");
                }
            }
            Ok(())
        }
        Command::Synthemes { labels, json } => {
            let labels = parse_labels(labels, &["1", "2", "3", "4", "5", "6"]);
            let system = build_hexachordal(&labels).map_err(|e| e.to_string())?;
            let tables = syntheme_tables();
            if json {
                let t1: Vec<serde_json::Value> = tables
                    .duads_of_letters
                    .iter()
                    .map(|(ld, s)| {
                        serde_json::json!({ "letters": ld.to_string(), "syntheme": s.to_string() })
                    })
                    .collect();
                let t2: Vec<serde_json::Value> = tables
                    .duads_of_numbers
                    .iter()
                    .map(|(d, ls)| {
                        serde_json::json!({ "duad": d.to_string(), "letter_syntheme": ls.to_string() })
                    })
                    .collect();
                let t3: Vec<serde_json::Value> = tables
                    .letters_as_totals
                    .iter()
                    .map(|(c, row)| {
                        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                        serde_json::json!({ "letter": c.to_string(), "synthemes": cells })
                    })
                    .collect();
                let t4: Vec<serde_json::Value> = tables
                    .numbers_as_letter_totals
                    .iter()
                    .map(|(k, row)| {
                        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                        serde_json::json!({ "number": k, "letter_synthemes": cells })
                    })
                    .collect();
                let value = serde_json::json!({
                    "configuration": system.structure.to_json_value(),
                    "duads_of_letters": t1,
                    "duads_of_numbers": t2,
                    "letters_as_totals": t3,
                    "numbers_as_letter_totals": t4,
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("duads of letters as synthemes of numbers:");
                for (ld, s) in &tables.duads_of_letters {
                    println!("  {ld}: {s}");
                }
                println!("duads of numbers as synthemes of letters:");
                for (d, ls) in &tables.duads_of_numbers {
                    println!("  {d}: {ls}");
                }
                println!("letters as totals of synthemes:");
                for (c, row) in &tables.letters_as_totals {
                    let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                    println!("  {c}: {}", cells.join(" | "));
                }
                println!("numbers as totals of letter-synthemes:");
                for (k, row) in &tables.numbers_as_letter_totals {
                    let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                    println!("  {k}: {}", cells.join(" | "));
                }
            }
            Ok(())
        }
        Command::Geometry { construction, seed, tol, project, json } => {
            let realization = build_construction(construction, seed)?;
            let realization = if project {
                match construction {
                    ConstructionArg::Pentatonic | ConstructionArg::CremonaRichmond => {
                        project_to_plane(&realization, seed).map_err(|e| e.to_string())?
                    }
                    _ => return Err("--project applies to RP^3/RP^4 constructions".into()),
                }
            } else {
                realization
            };
            let mode = match (&realization.coords, tol) {
                (RealizationCoords::Exact { .. }, None) => VerifyMode::Exact,
                (_, Some(t)) => VerifyMode::Approximate { flag_tol: t, separation: 1e-3 },
                (RealizationCoords::Numeric { .. }, None) => {
                    VerifyMode::Approximate { flag_tol: 1e-8, separation: 1e-3 }
                }
            };
            let report = verify_realization(&realization, mode).map_err(|e| e.to_string())?;
            if json {
                let mut value = realization_to_json(&realization);
                value["verification"] = serde_json::json!({
                    "flags_ok": report.flags_ok,
                    "flags_total": report.flags_total,
                    "nonflags_ok": report.nonflags_ok,
                    "nonflags_total": report.nonflags_total,
                    "max_flag_residual": report.max_flag_residual,
                    "min_nonflag_residual": report.min_nonflag_residual,
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                let ct = realization
                    .structure
                    .configuration_type()
                    .map(|c| c.to_string())
                    .unwrap_or_else(|_| "irregular".into());
                println!(
                    "{} in RP^{}: flags {}/{}, non-flags {}/{}",
                    ct,
                    realization.ambient,
                    report.flags_ok,
                    report.flags_total,
                    report.nonflags_ok,
                    report.nonflags_total
                );
                if let Some(r) = report.max_flag_residual {
                    println!("max flag residual {r:.3e}");
                }
                if let Some(r) = report.min_nonflag_residual {
                    println!("min non-flag residual {r:.3e}");
                }
                if !report.all_ok() {
                    return Err("realization failed verification".into());
                }
            }
            Ok(())
        }
        Command::Tessellate { rings, component, svg, json } => {
            let nets = build_archimedean();
            let graph = match component {
                ComponentArg::Major => nets.major,
                ComponentArg::Minor => nets.minor,
            };
            let patch = tiling::generate(&graph, rings).map_err(|e| e.to_string())?;
            if let Some(path) = svg {
                std::fs::write(&path, patch.to_svg())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
            if json {
                println!("{}", patch.to_json());
            } else {
                println!(
                    "rings {rings}: {} dodecagons, {} squares, {} hexagons, {} vertices",
                    patch.face_count(tiling::FaceKind::Dodecagon),
                    patch.face_count(tiling::FaceKind::Square),
                    patch.face_count(tiling::FaceKind::Hexagon),
                    patch.vertices.len()
                );
            }
            Ok(())
        }
    }
}

fn build_construction(construction: ConstructionArg, seed: u64) -> Result<Realization, String> {
    match construction {
        ConstructionArg::Desargues => {
            // Draw seeded instances until one is non-degenerate.
            let mut rng = SplitMix64::new(seed);
            for _ in 0..64 {
                let v = seeded_point(2, &mut rng);
                let p = seeded_point(2, &mut rng);
                let q = seeded_point(2, &mut rng);
                let r = seeded_point(2, &mut rng);
                let param = num_rational::BigRational::new(1.into(), 2.into());
                match desargues_instance(&v, &p, &q, &r, &param, &param, &param) {
                    Ok(real) => return Ok(real),
                    Err(GeometryError::Degenerate(_)) => continue,
                    Err(e) => return Err(e.to_string()),
                }
            }
            Err("no non-degenerate instance in 64 draws".into())
        }
        ConstructionArg::Pentatonic => {
            let labels: Vec<String> = PENTATONIC_LABELS.iter().map(|s| s.to_string()).collect();
            pentatonic_section_realization(&labels, seed).map_err(|e| e.to_string())
        }
        ConstructionArg::CremonaRichmond => {
            let frame: [ProjFlat; 6] =
                standard_frame(4).try_into().expect("frame of RP^4 has six points");
            let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
            cremona_richmond(&frame, &labels).map_err(|e| e.to_string())
        }
        ConstructionArg::D222 => {
            let (real, stats) = realize_d222_numeric(seed).map_err(|e| e.to_string())?;
            eprintln!(
                "seed {} accepted after {} attempt(s); max flag residual {:.3e}, min non-flag residual {:.3e}",
                stats.seed_used, stats.attempts, stats.max_flag_residual, stats.min_nonflag_residual
            );
            Ok(real)
        }
    }
}
