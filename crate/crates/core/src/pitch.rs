//! Pitch classes, triads, and the scale material of the equal-tempered
//! chromatic system.
//!
//! Pitch classes are integers mod 12 with C = 0; enharmonic spellings are
//! identified. Triads are unordered: a `Triad` is just a root and a quality,
//! and its pitch-class set is `{root, root+4, root+7}` for major or
//! `{root, root+3, root+7}` for minor. Canonical chord names follow one fixed
//! spelling per root (majors prefer flats, minors mix as is conventional:
//! C#, F#, G# but Eb, Bb); the parser accepts any enharmonic spelling.

use std::fmt;
use std::str::FromStr;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Canonical major-triad root spellings, indexed by pitch class.
pub const MAJOR_NAMES: [&str; 12] = [
    "C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B",
];

/// Canonical minor-triad root spellings, indexed by pitch class.
pub const MINOR_NAMES: [&str; 12] = [
    "C", "C#", "D", "Eb", "E", "F", "F#", "G", "G#", "A", "Bb", "B",
];

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ChordParseError {
    #[error("malformed chord name `{0}`: expected <A-G><# or b><M or m>")]
    Malformed(String),
    #[error("unknown note letter `{0}`")]
    UnknownLetter(char),
    #[error("unknown accidental `{0}`")]
    UnknownAccidental(char),
}

/// A pitch class: an integer in `0..12`, semitones above C.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PitchClass(u8);

impl PitchClass {
    /// Reduces any integer mod 12.
    pub fn new(value: i64) -> Self {
        PitchClass(value.rem_euclid(12) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn transpose(self, semitones: i64) -> Self {
        Self::new(self.0 as i64 + semitones)
    }

    /// All twelve pitch classes in ascending order.
    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MAJOR_NAMES[self.0 as usize])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Quality {
    Major,
    Minor,
}

impl Quality {
    pub fn opposite(self) -> Quality {
        match self {
            Quality::Major => Quality::Minor,
            Quality::Minor => Quality::Major,
        }
    }
}

/// An unordered major or minor triad, identified by root and quality.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Triad {
    pub root: PitchClass,
    pub quality: Quality,
}

impl Triad {
    pub fn new(root: PitchClass, quality: Quality) -> Self {
        Triad { root, quality }
    }

    pub fn major(root: i64) -> Self {
        Triad::new(PitchClass::new(root), Quality::Major)
    }

    pub fn minor(root: i64) -> Self {
        Triad::new(PitchClass::new(root), Quality::Minor)
    }

    /// The pitch-class set: root, third (4 or 3 semitones), fifth (7).
    pub fn pitch_classes(self) -> PitchClassSet {
        let third = match self.quality {
            Quality::Major => 4,
            Quality::Minor => 3,
        };
        let mut set = PitchClassSet::empty();
        set.insert(self.root);
        set.insert(self.root.transpose(third));
        set.insert(self.root.transpose(7));
        set
    }

    /// Canonical name, e.g. `"CM"`, `"G#m"`, `"BbM"`.
    pub fn name(self) -> String {
        let idx = self.root.value() as usize;
        match self.quality {
            Quality::Major => format!("{}M", MAJOR_NAMES[idx]),
            Quality::Minor => format!("{}m", MINOR_NAMES[idx]),
        }
    }

    /// All 24 triads: the 12 majors then the 12 minors, by ascending root.
    pub fn all() -> Vec<Triad> {
        let mut out: Vec<Triad> = PitchClass::all().map(|r| Triad::new(r, Quality::Major)).collect();
        out.extend(PitchClass::all().map(|r| Triad::new(r, Quality::Minor)));
        out
    }

    /// Number of pitch classes shared with another triad.
    pub fn shared_tones(self, other: Triad) -> usize {
        self.pitch_classes().intersection(other.pitch_classes()).len()
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Triad {
    type Err = ChordParseError;

    /// Parses `<letter A-G><optional # or b><M or m>`; any enharmonic
    /// spelling is accepted and mapped to the canonical root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ChordParseError::Malformed(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(malformed)?;
        let base: i64 = match letter {
            'C' => 0,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            c if c.is_ascii_alphabetic() && !matches!(c, 'M' | 'm') => {
                return Err(ChordParseError::UnknownLetter(c))
            }
            _ => return Err(malformed()),
        };
        let mut next = chars.next().ok_or_else(malformed)?;
        let mut offset = 0i64;
        if next != 'M' && next != 'm' {
            offset = match next {
                '#' => 1,
                'b' => -1,
                c => return Err(ChordParseError::UnknownAccidental(c)),
            };
            next = chars.next().ok_or_else(malformed)?;
        }
        let quality = match next {
            'M' => Quality::Major,
            'm' => Quality::Minor,
            _ => return Err(malformed()),
        };
        if chars.next().is_some() {
            return Err(malformed());
        }
        Ok(Triad::new(PitchClass::new(base + offset), quality))
    }
}

/// A set of pitch classes, stored as a 12-bit mask. Serializes as a sorted
/// JSON array of integers 0-11.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct PitchClassSet(u16);

impl PitchClassSet {
    pub fn empty() -> Self {
        PitchClassSet(0)
    }

    pub fn full() -> Self {
        PitchClassSet(0x0FFF)
    }

    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut set = Self::empty();
        for v in values {
            set.insert(PitchClass::new(v));
        }
        set
    }

    pub fn insert(&mut self, pc: PitchClass) {
        self.0 |= 1 << pc.value();
    }

    pub fn contains(self, pc: PitchClass) -> bool {
        self.0 & (1 << pc.value()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        PitchClassSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PitchClassSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PitchClass> {
        (0..12).filter(move |i| self.0 & (1 << i) != 0).map(PitchClass)
    }

    /// Cyclic interval pattern of the set listed in ascending order, the last
    /// entry wrapping around the octave. Empty for sets of size < 2.
    pub fn interval_pattern(self) -> Vec<u8> {
        let values: Vec<u8> = self.iter().map(|pc| pc.value()).collect();
        if values.len() < 2 {
            return Vec::new();
        }
        let mut pattern = Vec::with_capacity(values.len());
        for i in 0..values.len() {
            let next = values[(i + 1) % values.len()];
            pattern.push((next + 12 - values[i]) % 12);
        }
        pattern
    }
}

impl fmt::Display for PitchClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(|pc| MAJOR_NAMES[pc.value() as usize]).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Serialize for PitchClassSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for pc in self.iter() {
            seq.serialize_element(&pc.value())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PitchClassSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SetVisitor;
        impl<'de> Visitor<'de> for SetVisitor {
            type Value = PitchClassSet;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of integers 0-11")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut set = PitchClassSet::empty();
                while let Some(v) = seq.next_element::<u8>()? {
                    if v > 11 {
                        return Err(serde::de::Error::custom(format!("pitch class {v} out of range")));
                    }
                    set.insert(PitchClass::new(v as i64));
                }
                Ok(set)
            }
        }
        deserializer.deserialize_seq(SetVisitor)
    }
}

/// One tone of five-tone equal temperament: the frequency ratio `2^(k/5)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FrequencyRatio {
    /// Exponent numerator `k` with the ratio `2^(k/5)`, `k` in `0..=4`.
    pub fifth_exponent: u8,
}

impl FrequencyRatio {
    const LABELS: [&'static str; 5] = ["C", "D", "E", "G", "A"];

    pub fn new(fifth_exponent: u8) -> Self {
        assert!(fifth_exponent < 5, "exponent must be in 0..=4");
        FrequencyRatio { fifth_exponent }
    }

    pub fn value(self) -> f64 {
        2f64.powf(self.fifth_exponent as f64 / 5.0)
    }

    pub fn label(self) -> &'static str {
        Self::LABELS[self.fifth_exponent as usize]
    }
}

/// The three minor chords reachable from a major chord (and vice versa) by
/// holding two tones fixed and moving the third: the neighbor rule of the
/// Eulerian tonnetz. Returned sorted by root.
///
/// ```
/// use tonnetz_core::pitch::{eulerian_neighbors, Triad};
///
/// let neighbors = eulerian_neighbors("CM".parse().unwrap());
/// let names: Vec<String> = neighbors.iter().map(|t| t.name()).collect();
/// assert_eq!(names, ["Cm", "Em", "Am"]);
/// ```
pub fn eulerian_neighbors(t: Triad) -> Vec<Triad> {
    neighbors_sharing(t, 2)
}

/// The three opposite-quality chords sharing exactly one tone: the neighbor
/// rule of the Archimedean tonnetze. Returned sorted by root.
pub fn archimedean_neighbors(t: Triad) -> Vec<Triad> {
    neighbors_sharing(t, 1)
}

fn neighbors_sharing(t: Triad, shared: usize) -> Vec<Triad> {
    PitchClass::all()
        .map(|root| Triad::new(root, t.quality.opposite()))
        .filter(|u| t.shared_tones(*u) == shared)
        .collect()
}

/// The three diminished seventh chords X, Y, Z partitioning the twelve
/// pitch classes.
pub fn diminished_sevenths() -> [PitchClassSet; 3] {
    let chord = |r: i64| PitchClassSet::from_values([r, r + 3, r + 6, r + 9]);
    [chord(0), chord(1), chord(2)]
}

/// The three octatonic scales as unions of pairs of diminished sevenths:
/// O12 = X u Y, O23 = Y u Z, O31 = Z u X.
pub fn octatonic_scales() -> [PitchClassSet; 3] {
    let [x, y, z] = diminished_sevenths();
    [x.union(y), y.union(z), z.union(x)]
}

/// The four augmented triads `{r, r+4, r+8}`, r = 0..3.
pub fn augmented_triads() -> [PitchClassSet; 4] {
    let aug = |r: i64| PitchClassSet::from_values([r, r + 4, r + 8]);
    [aug(0), aug(1), aug(2), aug(3)]
}

/// The two whole-tone scales.
pub fn whole_tone_scales() -> [PitchClassSet; 2] {
    [
        PitchClassSet::from_values([0, 2, 4, 6, 8, 10]),
        PitchClassSet::from_values([1, 3, 5, 7, 9, 11]),
    ]
}

/// The four augmented triads, their six pairwise-union hexachords (in
/// lexicographic pair order), and the two of those unions that are the
/// whole-tone scales.
pub fn augmented_and_wholetone() -> ([PitchClassSet; 4], Vec<PitchClassSet>, [PitchClassSet; 2]) {
    let triads = augmented_triads();
    let mut hexachords = Vec::with_capacity(6);
    for i in 0..4 {
        for j in (i + 1)..4 {
            hexachords.push(triads[i].union(triads[j]));
        }
    }
    (triads, hexachords, whole_tone_scales())
}

/// All major and minor triads whose pitch classes lie inside `s`.
pub fn triads_in_set(s: PitchClassSet) -> Vec<Triad> {
    Triad::all().into_iter().filter(|t| t.pitch_classes().is_subset(s)).collect()
}

/// The five tones of pentatonic equal temperament, `2^(k/5)` for k = 0..4,
/// labeled C, D, E, G, A.
pub fn pentatonic_ratios() -> [FrequencyRatio; 5] {
    [0, 1, 2, 3, 4].map(FrequencyRatio::new)
}
