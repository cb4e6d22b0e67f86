//! Vertex weights measuring distance to the nearest low-degree vertex, and the
//! lexicographic potential `(edges inside S, weight of S)` that the colorer climbs.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("graph has no vertex of degree at most 2")]
    CubicGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parts overlap at vertex {0}")]
    OverlappingParts(Vertex),
}

/// `w(x) = 1 + dist(x, nearest vertex of degree <= 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap(Vec<u32>);

impl WeightMap {
    /// Wraps raw weights without checking them; used to build faulty fixtures.
    pub fn from_raw(weights: Vec<u32>) -> Self {
        Self(weights)
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn set(&mut self, v: Vertex, weight: u32) {
        self.0[v] = weight;
    }
}

/// One multi-source breadth-first pass seeded at every vertex of degree at most 2.
pub fn compute_weights(g: &Graph) -> Result<WeightMap, WeightError> {
    if !g.is_connected() {
        return Err(WeightError::Disconnected);
    }
    let n = g.vertex_count();
    let mut weight = vec![0u32; n];
    let mut queue: VecDeque<Vertex> = g.vertices().filter(|&v| g.degree(v) <= 2).collect();
    if n > 0 && queue.is_empty() {
        return Err(WeightError::CubicGraph);
    }
    for &v in &queue {
        weight[v] = 1;
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if weight[v] == 0 {
                weight[v] = weight[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(WeightMap(weight))
}

/// An edge whose endpoint weights differ by more than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadViolation {
    pub edge: (Vertex, Vertex),
    pub weights: (u32, u32),
}

/// Edges `(x, y)` with `|w(x) - w(y)| > 1`.
pub fn spread_violations(g: &Graph, w: &WeightMap) -> Vec<SpreadViolation> {
    g.edges()
        .filter(|&(x, y)| w.get(x).abs_diff(w.get(y)) > 1)
        .map(|(x, y)| SpreadViolation {
            edge: (x, y),
            weights: (w.get(x), w.get(y)),
        })
        .collect()
}

/// A degree-3 vertex whose weight is not one more than its lightest neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentViolation {
    pub vertex: Vertex,
    pub weight: u32,
    pub min_neighbor_weight: u32,
}

/// Degree-3 vertices `x` with `w(x) != 1 + min w(N(x))`.
pub fn descent_violations(g: &Graph, w: &WeightMap) -> Vec<DescentViolation> {
    g.vertices()
        .filter(|&x| g.degree(x) == 3)
        .filter_map(|x| {
            let min = g.neighbors(x).iter().map(|&y| w.get(y)).min()?;
            (w.get(x) != min + 1).then_some(DescentViolation {
                vertex: x,
                weight: w.get(x),
                min_neighbor_weight: min,
            })
        })
        .collect()
}

pub fn subgraph_weight(w: &WeightMap, set: &VertexSet) -> u64 {
    set.iter().map(|v| u64::from(w.get(v))).sum()
}

/// Ordered lexicographically: edge count first, then weight sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Potential {
    pub edge_count: u64,
    pub weight_sum: u64,
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.edge_count, self.weight_sum)
    }
}

pub fn potential(
    g: &Graph,
    w: &WeightMap,
    s1: &VertexSet,
    s2: &VertexSet,
) -> Result<Potential, WeightError> {
    if let Some(v) = s1.iter().find(|&v| s2.contains(v)) {
        return Err(WeightError::OverlappingParts(v));
    }
    let mut inside = s1.mask();
    for v in s2 {
        inside[v] = true;
    }
    let edge_count = g.edges().filter(|&(x, y)| inside[x] && inside[y]).count() as u64;
    Ok(Potential {
        edge_count,
        weight_sum: subgraph_weight(w, s1) + subgraph_weight(w, s2),
    })
}
