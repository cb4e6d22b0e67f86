use std::fmt;

use thiserror::Error;

use super::moves::{
    apply_in_place, find_cycle_move, find_local_move, find_region_move, InvalidMove, Move,
};
use super::state::{BipartitionState, Side};
use crate::graph::{Bipartiteness, Graph, Vertex, VertexSet};
use crate::weights::{Potential, WeightMap};

/// Two sets partitioning the outside vertices, each at pairwise distance at least 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareBipartition {
    pub h1: VertexSet,
    pub h2: VertexSet,
}

/// One committed move with the potential before and after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub mv: Move,
    pub before: Potential,
    pub after: Potential,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {}", self.mv, self.before, self.after)
    }
}

/// A structural property that should hold whenever no local move applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixpointViolation {
    /// Outside vertex without a neighbor on `side` that itself touches the other side.
    UnsupportedOutside { x: Vertex, side: Side },
    /// Outside vertex with more than one outside neighbor.
    LargeOutsideComponent { x: Vertex },
    /// Inside vertex with three outside neighbors.
    CrowdedInside { z: Vertex },
    /// Outside vertex whose lone neighbor on one side could be exchanged.
    ExchangeableLone { x: Vertex, lone: Vertex },
    /// The state itself is inconsistent.
    Inconsistent(String),
}

impl fmt::Display for FixpointViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixpointViolation::UnsupportedOutside { x, side } => {
                write!(f, "outside {x} has no supported neighbor on {side}")
            }
            FixpointViolation::LargeOutsideComponent { x } => {
                write!(f, "outside {x} has two outside neighbors")
            }
            FixpointViolation::CrowdedInside { z } => {
                write!(f, "inside {z} has three outside neighbors")
            }
            FixpointViolation::ExchangeableLone { x, lone } => {
                write!(f, "outside {x} could replace its lone neighbor {lone}")
            }
            FixpointViolation::Inconsistent(s) => write!(f, "inconsistent state: {s}"),
        }
    }
}

/// Checks the structure a state must have once no local move applies.
pub fn fixpoint_violations(
    g: &Graph,
    w: &WeightMap,
    state: &BipartitionState,
) -> Vec<FixpointViolation> {
    let mut out = Vec::new();
    for x in state.outside_vertices() {
        for side in [Side::S1, Side::S2] {
            let supported = state
                .neighbors_on(g, x, side)
                .any(|u| state.count_on(g, u, side.opposite()) > 0);
            if !supported {
                out.push(FixpointViolation::UnsupportedOutside { x, side });
            }
        }
        if state.count_on(g, x, Side::Outside) > 1 {
            out.push(FixpointViolation::LargeOutsideComponent { x });
        }
        if state.inside_degree(g, x) == 3 {
            let lone_side = [Side::S1, Side::S2]
                .into_iter()
                .find(|&s| state.count_on(g, x, s) == 1);
            if let Some(s) = lone_side {
                let lone = state.neighbors_on(g, x, s).next().unwrap();
                if state.inside_degree(g, lone) != 2 || w.get(lone) < w.get(x) {
                    out.push(FixpointViolation::ExchangeableLone { x, lone });
                }
            }
        }
    }
    let mut crowded: Vec<Vertex> = state
        .outside_vertices()
        .flat_map(|x| g.neighbors(x).iter().copied())
        .filter(|&z| state.side(z).is_inside() && state.count_on(g, z, Side::Outside) >= 3)
        .collect();
    crowded.sort_unstable();
    crowded.dedup();
    out.extend(
        crowded
            .into_iter()
            .map(|z| FixpointViolation::CrowdedInside { z }),
    );
    out
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Overrides the default budget of `4 |E| n max(w)` committed moves per run.
    pub max_moves: Option<u64>,
    /// Re-derive state consistency after each move and fixpoint structure at each local fixpoint.
    pub audit: bool,
    /// Fresh runs from shuffled greedy starts after a stuck run.
    pub restarts: u32,
}

pub const DEFAULT_RESTARTS: u32 = 16;

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_moves: None,
            audit: false,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

pub fn default_move_budget(g: &Graph, w: &WeightMap) -> u64 {
    4u64.saturating_mul(g.edge_count() as u64)
        .saturating_mul(g.vertex_count() as u64)
        .saturating_mul(u64::from(w.max()))
        .max(1)
}

#[derive(Debug, Clone)]
pub struct Fixpoint {
    pub state: BipartitionState,
    pub split: SquareBipartition,
    pub trace: Vec<TraceEntry>,
    /// Filled only when auditing.
    pub audit_failures: Vec<String>,
    /// Stuck runs that preceded this one.
    pub restarts: u32,
}

/// No legal swap was found for an odd cycle of the outside square graph.
#[derive(Debug, Clone)]
pub struct Stuck {
    pub state: BipartitionState,
    pub odd_cycle: Vec<Vertex>,
    pub rejected: Vec<(Move, InvalidMove)>,
    pub trace: Vec<TraceEntry>,
}

impl fmt::Display for Stuck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no swap for odd cycle {:?} after {} moves ({} candidates rejected)",
            self.odd_cycle,
            self.trace.len(),
            self.rejected.len()
        )
    }
}

#[derive(Debug, Clone, Error)]
pub enum FixpointError {
    #[error("stuck: {0}")]
    Stuck(Box<Stuck>),
    #[error("move budget of {0} exceeded")]
    BudgetExceeded(u64),
}

/// Climbs the potential until the square graph on the outside vertices is bipartite.
///
/// Local moves are applied until none is left; then an odd cycle of the outside
/// square graph, if any, is removed by a swap and the scan starts over. Every
/// committed move strictly increases the bounded potential, so the loop ends.
pub fn run_to_fixpoint(
    g: &Graph,
    w: &WeightMap,
    mut state: BipartitionState,
    config: &RunConfig,
) -> Result<Fixpoint, FixpointError> {
    let budget = config
        .max_moves
        .unwrap_or_else(|| default_move_budget(g, w));
    let mut trace = Vec::new();
    let mut audit_failures = Vec::new();
    let commit = |state: &mut BipartitionState,
                  mv: Move,
                  trace: &mut Vec<TraceEntry>,
                  audit_failures: &mut Vec<String>| {
        if trace.len() as u64 >= budget {
            return Err(FixpointError::BudgetExceeded(budget));
        }
        let (before, after) =
            apply_in_place(g, w, state, &mv).expect("moves are checked before they are returned");
        if config.audit {
            audit_failures.extend(
                state
                    .consistency_errors(g, w)
                    .into_iter()
                    .map(|e| format!("after {mv}: {e}")),
            );
        }
        trace.push(TraceEntry { mv, before, after });
        Ok(())
    };
    loop {
        if let Some(mv) = find_local_move(g, w, &state) {
            commit(&mut state, mv, &mut trace, &mut audit_failures)?;
            continue;
        }
        if config.audit {
            audit_failures.extend(
                fixpoint_violations(g, w, &state)
                    .into_iter()
                    .map(|v| format!("at local fixpoint: {v}")),
            );
        }
        let outside = state.outside();
        let square = g.square_induced(&outside);
        match square.graph.bipartition_or_odd_cycle() {
            Bipartiteness::Bipartite(a, b) => {
                let lift = |set: VertexSet| {
                    VertexSet::from_unsorted(
                        g.vertex_count(),
                        set.iter().map(|v| square.to_host[v]).collect(),
                    )
                };
                return Ok(Fixpoint {
                    state,
                    split: SquareBipartition {
                        h1: lift(a),
                        h2: lift(b),
                    },
                    trace,
                    audit_failures,
                    restarts: 0,
                });
            }
            Bipartiteness::OddCycle(c) => {
                let cycle: Vec<Vertex> = c.vertices().iter().map(|&v| square.to_host[v]).collect();
                let (found, rejected) = find_cycle_move(g, w, &state, &cycle);
                match found.or_else(|| find_region_move(g, w, &state, &cycle)) {
                    Some(mv) => commit(&mut state, mv, &mut trace, &mut audit_failures)?,
                    None => {
                        return Err(FixpointError::Stuck(Box::new(Stuck {
                            state,
                            odd_cycle: cycle,
                            rejected,
                            trace,
                        })))
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorer::state::initial_state;
    use crate::weights::compute_weights;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn run(g: &Graph) -> Fixpoint {
        let w = compute_weights(g).unwrap();
        let config = RunConfig {
            audit: true,
            ..RunConfig::default()
        };
        run_to_fixpoint(g, &w, initial_state(g, &w).unwrap(), &config).unwrap()
    }

    #[test]
    fn even_cycle_needs_no_outside() {
        let fp = run(&cycle(6));
        assert_eq!(fp.state.outside_count(), 0);
        assert!(fp.trace.is_empty());
    }

    #[test]
    fn c5_keeps_one_outside_vertex() {
        let fp = run(&cycle(5));
        assert_eq!(fp.state.outside_count(), 1);
        assert_eq!(fp.split.h1.len(), 1);
        assert!(fp.split.h2.is_empty());
        assert!(fp.audit_failures.is_empty(), "{:?}", fp.audit_failures);
    }

    #[test]
    fn budget_is_a_hard_error() {
        // two absorbable outside vertices on C6
        let g = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let w = compute_weights(&g).unwrap();
        let sides = [
            Side::S1,
            Side::S2,
            Side::Outside,
            Side::Outside,
            Side::S1,
            Side::S2,
        ];
        let state = BipartitionState::from_sides(&g, &w, sides.to_vec()).unwrap();
        let config = |max_moves| RunConfig {
            max_moves: Some(max_moves),
            ..RunConfig::default()
        };
        assert!(matches!(
            run_to_fixpoint(&g, &w, state.clone(), &config(1)),
            Err(FixpointError::BudgetExceeded(1))
        ));
        let fp = run_to_fixpoint(&g, &w, state, &config(2)).unwrap();
        assert_eq!(fp.trace.len(), 2);
        assert_eq!(fp.state.outside_count(), 0);
    }
}
