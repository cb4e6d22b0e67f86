//! S-packing colorings: the coloring type, its checker, and the subdivision
//! coloring derived from a (1,1,2,2) coloring.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Subdivision, Vertex};

/// A non-empty, non-decreasing sequence of positive radii.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackingSequence(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("packing sequence is empty")]
    Empty,
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("packing sequence is not non-decreasing")]
    Decreasing,
    #[error("cannot parse radius {0:?}")]
    Parse(String),
}

impl PackingSequence {
    pub fn new(radii: Vec<u32>) -> Result<Self, SequenceError> {
        if radii.is_empty() {
            return Err(SequenceError::Empty);
        }
        if radii.contains(&0) {
            return Err(SequenceError::ZeroRadius);
        }
        if radii.windows(2).any(|w| w[0] > w[1]) {
            return Err(SequenceError::Decreasing);
        }
        Ok(Self(radii))
    }

    /// `(1, 2, ..., k)`, the sequence behind the packing chromatic number.
    pub fn packing(k: u32) -> Self {
        Self((1..=k).collect())
    }

    pub fn radii(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_radius(&self) -> u32 {
        *self.0.last().unwrap()
    }

    /// Labels `1_a, 1_b, 2_a, ...`: the radius and a letter counting repeats.
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.0.len());
        for (i, &r) in self.0.iter().enumerate() {
            let repeat = self.0[..i].iter().filter(|&&s| s == r).count();
            out.push(format!("{r}_{}", repeat_letter(repeat)));
        }
        out
    }
}

fn repeat_letter(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            return s;
        }
        i = i / 26 - 1;
    }
}

impl std::str::FromStr for PackingSequence {
    type Err = SequenceError;

    /// Parses `"1,1,2,2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let radii = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| SequenceError::Parse(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(radii)
    }
}

impl fmt::Display for PackingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClass {
    pub label: String,
    pub radius: u32,
    pub vertices: Vec<Vertex>,
}

/// A partition of `0..n` into labelled classes, each with a packing radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingColoring {
    pub n: usize,
    pub classes: Vec<ColorClass>,
}

impl PackingColoring {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            classes: Vec::new(),
        }
    }

    /// Empty classes with the given labels and radii.
    pub fn with_classes<'a>(n: usize, classes: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        Self {
            n,
            classes: classes
                .into_iter()
                .map(|(label, radius)| ColorClass {
                    label: label.to_string(),
                    radius,
                    vertices: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn class(&self, label: &str) -> Option<&ColorClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Per-vertex class index, or `None` for uncovered vertices (first class wins on overlap).
    pub fn assignment(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.n];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in &class.vertices {
                if v < self.n && out[v].is_none() {
                    out[v] = Some(i);
                }
            }
        }
        out
    }

    /// Class radii, sorted.
    pub fn radii(&self) -> Vec<u32> {
        let mut r: Vec<u32> = self.classes.iter().map(|c| c.radius).collect();
        r.sort_unstable();
        r
    }

    pub fn sort_vertices(&mut self) {
        for class in &mut self.classes {
            class.vertices.sort_unstable();
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Two same-class vertices closer than the class radius allows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    pub radius: u32,
    pub pair: (Vertex, Vertex),
    pub distance: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
    /// Vertices of the graph in no class.
    pub missing: Vec<Vertex>,
    /// Vertices in more than one class (or twice in one).
    pub duplicated: Vec<Vertex>,
    /// Class members that are not vertices of the graph.
    pub out_of_range: Vec<Vertex>,
    /// Set when the coloring's `n` disagrees with the graph.
    pub size_mismatch: Option<(usize, usize)>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
            && self.missing.is_empty()
            && self.duplicated.is_empty()
            && self.out_of_range.is_empty()
            && self.size_mismatch.is_none()
    }

    pub fn is_partition(&self) -> bool {
        self.missing.is_empty() && self.duplicated.is_empty() && self.out_of_range.is_empty()
    }
}

/// One entry of a [`VerificationReport`], flattened for machine-readable output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Problem {
    Distance {
        label: String,
        radius: u32,
        pair: (Vertex, Vertex),
        distance: usize,
    },
    Missing {
        vertex: Vertex,
    },
    Duplicated {
        vertex: Vertex,
    },
    OutOfRange {
        vertex: Vertex,
    },
    SizeMismatch {
        coloring: usize,
        graph: usize,
    },
}

impl VerificationReport {
    pub fn problems(&self) -> Vec<Problem> {
        let mut out = Vec::new();
        if let Some((coloring, graph)) = self.size_mismatch {
            out.push(Problem::SizeMismatch { coloring, graph });
        }
        out.extend(
            self.missing
                .iter()
                .map(|&vertex| Problem::Missing { vertex }),
        );
        out.extend(
            self.duplicated
                .iter()
                .map(|&vertex| Problem::Duplicated { vertex }),
        );
        out.extend(
            self.out_of_range
                .iter()
                .map(|&vertex| Problem::OutOfRange { vertex }),
        );
        out.extend(self.violations.iter().map(|v| Problem::Distance {
            label: v.label.clone(),
            radius: v.radius,
            pair: v.pair,
            distance: v.distance,
        }));
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, g)) = self.size_mismatch {
            writeln!(f, "coloring is for {c} vertices, graph has {g}")?;
        }
        if !self.missing.is_empty() {
            writeln!(f, "uncolored vertices: {:?}", self.missing)?;
        }
        if !self.duplicated.is_empty() {
            writeln!(f, "vertices colored twice: {:?}", self.duplicated)?;
        }
        if !self.out_of_range.is_empty() {
            writeln!(f, "unknown vertices: {:?}", self.out_of_range)?;
        }
        for v in &self.violations {
            writeln!(
                f,
                "class {} (radius {}): {}-{} at distance {}",
                v.label, v.radius, v.pair.0, v.pair.1, v.distance
            )?;
        }
        Ok(())
    }
}

/// Checks that `coloring` partitions `V(g)` and every class respects its radius.
///
/// All problems are reported, not just the first. Each class member runs a
/// breadth-first search truncated at the class radius.
pub fn verify(g: &Graph, coloring: &PackingColoring) -> Result<(), VerificationReport> {
    let n = g.vertex_count();
    let mut report = VerificationReport::default();
    if coloring.n != n {
        report.size_mismatch = Some((coloring.n, n));
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut duplicated = vec![false; n];
    for (i, class) in coloring.classes.iter().enumerate() {
        for &v in &class.vertices {
            if v >= n {
                report.out_of_range.push(v);
            } else if owner[v].is_some() {
                duplicated[v] = true;
            } else {
                owner[v] = Some(i);
            }
        }
    }
    report.out_of_range.sort_unstable();
    report.out_of_range.dedup();
    report.missing = (0..n).filter(|&v| owner[v].is_none()).collect();
    report.duplicated = (0..n).filter(|&v| duplicated[v]).collect();

    let mut members = vec![false; n];
    for class in &coloring.classes {
        let in_range: Vec<Vertex> = class.vertices.iter().copied().filter(|&v| v < n).collect();
        for &v in &in_range {
            members[v] = true;
        }
        let mut found = Vec::new();
        for &x in &in_range {
            for (y, d) in g.ball(x, class.radius as usize) {
                if members[y] && x < y {
                    found.push((x, y, d));
                }
            }
        }
        for &v in &in_range {
            members[v] = false;
        }
        found.sort_unstable();
        found.dedup();
        report
            .violations
            .extend(found.into_iter().map(|(x, y, distance)| Violation {
                label: class.label.clone(),
                radius: class.radius,
                pair: (x, y),
                distance,
            }));
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("class radii {found:?} do not match the sequence {expected:?}")]
pub struct RadiusMismatch {
    pub found: Vec<u32>,
    pub expected: Vec<u32>,
}

/// The multiset of class radii must equal the sequence; labels are free.
pub fn verify_sequence_shape(
    coloring: &PackingColoring,
    seq: &PackingSequence,
) -> Result<(), RadiusMismatch> {
    let found = coloring.radii();
    if found == seq.radii() {
        Ok(())
    } else {
        Err(RadiusMismatch {
            found,
            expected: seq.radii().to_vec(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("input is not a valid packing coloring:\n{0}")]
    InvalidInputColoring(VerificationReport),
    #[error("input radii {0:?} are not a sub-multiset of (1,1,2,2)")]
    WrongRadii(Vec<u32>),
}

/// Lifts a (1,1,2,2) coloring of `g` to a (1,2,3,4,5) coloring of its subdivision.
///
/// Subdivision vertices form the radius-1 class. The two radius-1 classes of the
/// input become radii 2 and 3, and its two radius-2 classes become radii 4 and 5,
/// in class order. Distances between original vertices double under subdivision.
pub fn derive_subdivision_coloring(
    g: &Graph,
    coloring: &PackingColoring,
) -> Result<(Subdivision, PackingColoring), DeriveError> {
    verify(g, coloring).map_err(DeriveError::InvalidInputColoring)?;
    let ones: Vec<&ColorClass> = coloring.classes.iter().filter(|c| c.radius == 1).collect();
    let twos: Vec<&ColorClass> = coloring.classes.iter().filter(|c| c.radius == 2).collect();
    if ones.len() + twos.len() != coloring.classes.len() || ones.len() > 2 || twos.len() > 2 {
        return Err(DeriveError::WrongRadii(coloring.radii()));
    }
    let subdivision = g.subdivide();
    let mut derived = PackingColoring::with_classes(
        subdivision.graph.vertex_count(),
        [("1", 1), ("2", 2), ("3", 3), ("4", 4), ("5", 5)],
    );
    derived.classes[0].vertices = subdivision.subdivision_vertices().collect();
    for (i, class) in ones.iter().enumerate() {
        derived.classes[1 + i].vertices = class.vertices.clone();
    }
    for (i, class) in twos.iter().enumerate() {
        derived.classes[3 + i].vertices = class.vertices.clone();
    }
    derived.sort_vertices();
    Ok((subdivision, derived))
}
