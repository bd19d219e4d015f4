//! Tone networks as labeled graphs, combinatorial configurations, and exact
//! projective geometry.
//!
//! The crate constructs four networks of chords linked by parsimonious
//! transformations:
//!
//! * the Eulerian tonnetz of the twenty-four major and minor triads, where
//!   neighboring chords share two pitch classes;
//! * the pentatonic network of two-note and three-note clusters over a
//!   five-tone scale, combinatorially the Desargues configuration;
//! * the hexachordal network of duads and synthemes over a six-tone set,
//!   combinatorially the Cremona-Richmond configuration;
//! * the two Archimedean tonnetze, where neighboring chords share exactly
//!   one pitch class, realized as a `{4, 6, 12}` tessellation of the plane.
//!
//! Supporting machinery: generic labeled graphs with cycle enumeration and
//! Hamiltonian search ([`graph`]), the GF(2) cycle space with fundamental
//! bases and splicing ([`cyclespace`]), point-line incidence structures with
//! Levi graphs and duality ([`incidence`]), exact rational projective
//! geometry in RP^2..RP^4 ([`geometry`]), chord-progression analysis
//! ([`analysis`]), and the tessellation generator ([`tiling`]).
//!
//! ```
//! use tonnetz_core::analysis::{census, validate_progression, Progression};
//! use tonnetz_core::builders::build_eulerian;
//!
//! let tonnetz = build_eulerian();
//! assert_eq!(tonnetz.graph.vertex_count(), 24);
//! assert_eq!(tonnetz.graph.girth(), Some(6));
//!
//! // Sixteen hexacycles: four thrice-parallel, twelve twice-parallel.
//! let rows = census(&tonnetz, 6).unwrap();
//! let hexacycles: usize = rows.iter().map(|r| r.count).sum();
//! assert_eq!(hexacycles, 16);
//!
//! // A single parsimonious step, and the hexacycle it lives on.
//! let progression = Progression::parse("G#m EM").unwrap();
//! let report = validate_progression(&tonnetz, &progression).unwrap();
//! assert!(report.is_path);
//! assert!(report.path_cycles.iter().any(|c| c.family == "3p-hexacycle"));
//! ```

pub mod analysis;
pub mod builders;
pub mod cyclespace;
pub mod geometry;
pub mod graph;
pub mod incidence;
pub mod pitch;
pub mod tiling;
