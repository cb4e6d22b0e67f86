use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::weights::{potential, Potential, WeightMap};

/// Where a vertex sits in the search: one of the two independent sides, or outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    S1,
    S2,
    Outside,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::S1 => Side::S2,
            Side::S2 => Side::S1,
            Side::Outside => Side::Outside,
        }
    }

    pub fn is_inside(self) -> bool {
        self != Side::Outside
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::S1 => "S1",
            Side::S2 => "S2",
            Side::Outside => "out",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is cubic")]
    Cubic,
    #[error("vertex {0} has degree below 2")]
    LowDegree(Vertex),
}

/// Connected, non-cubic, minimum degree at least 2.
pub fn check_core_preconditions(g: &Graph) -> Result<(), PreconditionError> {
    if g.vertex_count() == 0 {
        return Err(PreconditionError::Empty);
    }
    if !g.is_connected() {
        return Err(PreconditionError::Disconnected);
    }
    if g.is_cubic() {
        return Err(PreconditionError::Cubic);
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 2) {
        return Err(PreconditionError::LowDegree(v));
    }
    Ok(())
}

/// The two independent sides `S1`, `S2` of the induced bipartite subgraph `S`,
/// the remaining `outside` vertices, and the cached potential of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionState {
    side: Vec<Side>,
    outside: BTreeSet<Vertex>,
    potential: Potential,
}

impl BipartitionState {
    /// Builds a state from explicit sides, checking independence of both sides.
    pub fn from_sides(g: &Graph, w: &WeightMap, side: Vec<Side>) -> Result<Self, String> {
        if side.len() != g.vertex_count() {
            return Err(format!(
                "{} sides for {} vertices",
                side.len(),
                g.vertex_count()
            ));
        }
        if let Some((u, v)) = g
            .edges()
            .find(|&(u, v)| side[u] == side[v] && side[u].is_inside())
        {
            return Err(format!("edge {u}-{v} inside side {}", side[u]));
        }
        let mut state = Self {
            outside: (0..side.len())
                .filter(|&v| side[v] == Side::Outside)
                .collect(),
            side,
            potential: Potential::default(),
        };
        state.potential = state.recompute_potential(g, w);
        Ok(state)
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn potential(&self) -> Potential {
        self.potential
    }

    pub fn outside_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.outside.iter().copied()
    }

    pub fn outside_count(&self) -> usize {
        self.outside.len()
    }

    pub fn members(&self, which: Side) -> VertexSet {
        VertexSet::from_mask(&self.side.iter().map(|&s| s == which).collect::<Vec<_>>())
    }

    pub fn s1(&self) -> VertexSet {
        self.members(Side::S1)
    }

    pub fn s2(&self) -> VertexSet {
        self.members(Side::S2)
    }

    pub fn outside(&self) -> VertexSet {
        VertexSet::from_unsorted(self.side.len(), self.outside.iter().copied().collect())
    }

    /// Neighbors of `v` on `which`.
    pub fn neighbors_on<'g>(
        &'g self,
        g: &'g Graph,
        v: Vertex,
        which: Side,
    ) -> impl Iterator<Item = Vertex> + 'g {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| self.side[u] == which)
    }

    pub fn count_on(&self, g: &Graph, v: Vertex, which: Side) -> usize {
        self.neighbors_on(g, v, which).count()
    }

    /// Number of neighbors of `v` in `S1 ∪ S2`.
    pub fn inside_degree(&self, g: &Graph, v: Vertex) -> usize {
        g.neighbors(v)
            .iter()
            .filter(|&&u| self.side[u].is_inside())
            .count()
    }

    pub fn recompute_potential(&self, g: &Graph, w: &WeightMap) -> Potential {
        potential(g, w, &self.s1(), &self.s2()).expect("sides are disjoint")
    }

    /// Everything that must hold of any state, recomputed from scratch.
    pub fn consistency_errors(&self, g: &Graph, w: &WeightMap) -> Vec<String> {
        let mut errors = Vec::new();
        for (u, v) in g.edges() {
            if self.side[u] == self.side[v] && self.side[u].is_inside() {
                errors.push(format!("edge {u}-{v} inside {}", self.side[u]));
            }
        }
        let outside: BTreeSet<Vertex> = (0..self.side.len())
            .filter(|&v| self.side[v] == Side::Outside)
            .collect();
        if outside != self.outside {
            errors.push("outside index out of sync".to_string());
        }
        let fresh = self.recompute_potential(g, w);
        if fresh != self.potential {
            errors.push(format!(
                "cached potential {} but actual {}",
                self.potential, fresh
            ));
        }
        errors
    }

    pub(crate) fn commit(&mut self, changes: &[(Vertex, Side)], after: Potential) {
        for &(v, s) in changes {
            if self.side[v] == Side::Outside {
                self.outside.remove(&v);
            }
            if s == Side::Outside {
                self.outside.insert(v);
            }
            self.side[v] = s;
        }
        self.potential = after;
    }
}

/// Greedy starting point: vertices by descending weight (ties by id) join `S1`
/// if no neighbor is there yet, else `S2` if none is there, else stay outside.
pub fn initial_state(g: &Graph, w: &WeightMap) -> Result<BipartitionState, PreconditionError> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(w.get(v)), v));
    greedy_state(g, w, order)
}

/// Greedy start over a seeded random vertex order, for restarts after a stuck run.
pub fn shuffled_initial_state(
    g: &Graph,
    w: &WeightMap,
    seed: u64,
) -> Result<BipartitionState, PreconditionError> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    greedy_state(g, w, order)
}

fn greedy_state(
    g: &Graph,
    w: &WeightMap,
    order: Vec<Vertex>,
) -> Result<BipartitionState, PreconditionError> {
    check_core_preconditions(g)?;
    let mut side = vec![Side::Outside; g.vertex_count()];
    let mut placed = vec![false; g.vertex_count()];
    for v in order {
        let (mut on1, mut on2) = (0, 0);
        for &u in g.neighbors(v) {
            if placed[u] {
                match side[u] {
                    Side::S1 => on1 += 1,
                    Side::S2 => on2 += 1,
                    Side::Outside => {}
                }
            }
        }
        // when both sides are open neither gains a cross edge, so S1 wins the tie
        side[v] = if on1 == 0 {
            Side::S1
        } else if on2 == 0 {
            Side::S2
        } else {
            Side::Outside
        };
        placed[v] = true;
    }
    Ok(BipartitionState::from_sides(g, w, side).expect("greedy keeps sides independent"))
}
