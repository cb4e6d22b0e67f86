//! Constructive (1,1,2,2)-packing coloring of subcubic graphs.
//!
//! For a connected non-cubic component the pipeline is:
//!
//! 1. peel vertices of degree at most 1, leaving a core of minimum degree 2;
//! 2. grow an induced bipartite subgraph `S = S1 ∪ S2` of the core by exchange
//!    moves that strictly increase `(|E(S)|, w(S))` until the square graph on
//!    the remaining vertices is bipartite with parts `H1`, `H2`;
//! 3. color `S1, S2, H1, H2` with `1_a, 1_b, 2_a, 2_b`;
//! 4. put the peeled vertices back into whichever radius-1 class their
//!    neighbor avoids.
//!
//! Cubic components have no constructive route and go to the exact search when allowed.

mod fixpoint;
mod moves;
mod peel;
mod state;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use fixpoint::{
    default_move_budget, fixpoint_violations, run_to_fixpoint, Fixpoint, FixpointError,
    FixpointViolation, RunConfig, SquareBipartition, Stuck, TraceEntry, DEFAULT_RESTARTS,
};
pub use moves::{
    apply_move, cycle_candidates, evaluate, find_cycle_move, find_local_move, find_move,
    find_region_move, InvalidMove, Move, MoveKind, Orientation, REGION_CAP,
};
pub use peel::{extend_coloring, peel, PeelTrace};
pub use state::{
    check_core_preconditions, initial_state, shuffled_initial_state, BipartitionState,
    PreconditionError, Side,
};

use crate::exact::{decide, DecisionStatus, DEFAULT_NODE_BUDGET};
use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::verify::{PackingColoring, PackingSequence};
use crate::weights::{compute_weights, WeightError, WeightMap};

pub const LABELS: [&str; 4] = ["1_a", "1_b", "2_a", "2_b"];

fn empty_coloring(n: usize) -> PackingColoring {
    PackingColoring::with_classes(n, LABELS.iter().copied().zip([1, 1, 2, 2]))
}

#[derive(Debug, Clone)]
pub struct ColorOptions {
    /// Try the exact search on cubic components (and on stuck runs).
    pub fallback_exact: bool,
    /// Node budget for each exact search.
    pub exact_budget: u64,
    /// Cubic components larger than this are not handed to the exact search.
    pub fallback_max_vertices: usize,
    pub max_moves: Option<u64>,
    pub audit: bool,
    /// Shuffled restarts allowed after a stuck exchange search.
    pub restarts: u32,
}

impl Default for ColorOptions {
    fn default() -> Self {
        Self {
            fallback_exact: false,
            exact_budget: DEFAULT_NODE_BUDGET,
            fallback_max_vertices: 64,
            max_moves: None,
            audit: false,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicReason {
    FallbackDisabled,
    OracleUnsat,
    OracleTimeout,
}

impl fmt::Display for CubicReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicReason::FallbackDisabled => "fallback-disabled",
            CubicReason::OracleUnsat => "oracle-UNSAT",
            CubicReason::OracleTimeout => "oracle-timeout",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicComponent {
    pub vertices: Vec<Vertex>,
    pub reason: CubicReason,
}

#[derive(Debug, Clone, Error)]
pub enum ColorError {
    #[error(transparent)]
    NotSubcubic(#[from] GraphError),
    #[error("precondition failed: {0}")]
    Precondition(#[from] PreconditionError),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Fixpoint(#[from] FixpointError),
    #[error("{} cubic component(s) left uncolored", .0.len())]
    CubicComponents(Vec<CubicComponent>),
}

/// How one component was colored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Peeling, exchange search, and re-insertion.
    Constructive,
    /// Exact search on a cubic component.
    Exact,
    /// Exact search after the exchange search got stuck.
    ExactAfterStuck,
}

#[derive(Debug, Clone)]
pub struct ComponentRun {
    /// Host ids of the component, ascending.
    pub vertices: Vec<Vertex>,
    pub method: Method,
    /// Committed moves, with vertex ids local to the component's core.
    pub trace: Vec<TraceEntry>,
    pub audit_failures: Vec<String>,
    /// Shuffled restarts used after stuck runs.
    pub restarts: u32,
    /// Set when the exchange search got stuck on this component for good.
    pub stuck: Option<Box<Stuck>>,
}

impl ComponentRun {
    fn exact(vertices: Vec<Vertex>, method: Method, stuck: Option<Box<Stuck>>) -> Self {
        Self {
            vertices,
            method,
            trace: stuck.as_ref().map(|s| s.trace.clone()).unwrap_or_default(),
            audit_failures: Vec::new(),
            restarts: 0,
            stuck,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ColorRun {
    pub coloring: PackingColoring,
    pub components: Vec<ComponentRun>,
}

impl ColorRun {
    pub fn moves(&self) -> usize {
        self.components.iter().map(|c| c.trace.len()).sum()
    }
}

/// The (1,1,2,2) coloring read off a fixpoint: sides get radius 1, the square bipartition radius 2.
pub fn coloring_from_fixpoint(n: usize, fixpoint: &Fixpoint) -> PackingColoring {
    let mut coloring = empty_coloring(n);
    coloring.classes[0].vertices = fixpoint.state.s1().as_slice().to_vec();
    coloring.classes[1].vertices = fixpoint.state.s2().as_slice().to_vec();
    coloring.classes[2].vertices = fixpoint.split.h1.as_slice().to_vec();
    coloring.classes[3].vertices = fixpoint.split.h2.as_slice().to_vec();
    coloring
}

/// Colors a connected non-cubic graph of minimum degree at least 2.
pub fn color_core(g: &Graph, w: &WeightMap) -> Result<PackingColoring, ColorError> {
    let (coloring, _) = color_core_with(g, w, &RunConfig::default())?;
    Ok(coloring)
}

pub fn color_core_with(
    g: &Graph,
    w: &WeightMap,
    config: &RunConfig,
) -> Result<(PackingColoring, Fixpoint), ColorError> {
    let fixpoint = run_with_restarts(g, w, config)?;
    Ok((
        coloring_from_fixpoint(g.vertex_count(), &fixpoint),
        fixpoint,
    ))
}

/// Runs from the greedy start and, while stuck, from up to `config.restarts`
/// shuffled greedy starts. Each run climbs the potential on its own; the
/// returned trace belongs to the successful run, or to the last stuck one.
pub fn run_with_restarts(
    g: &Graph,
    w: &WeightMap,
    config: &RunConfig,
) -> Result<Fixpoint, ColorError> {
    let mut result = run_to_fixpoint(g, w, initial_state(g, w)?, config);
    for attempt in 1..=config.restarts {
        if !matches!(result, Err(FixpointError::Stuck(_))) {
            break;
        }
        let start = shuffled_initial_state(g, w, u64::from(attempt))?;
        result = run_to_fixpoint(g, w, start, config).map(|mut fp| {
            fp.restarts = attempt;
            fp
        });
    }
    Ok(result?)
}

struct Constructed {
    coloring: PackingColoring,
    trace: Vec<TraceEntry>,
    audit_failures: Vec<String>,
    restarts: u32,
}

/// Peel, color the core, re-insert. `g` is connected and non-cubic.
fn color_component(g: &Graph, config: &RunConfig) -> Result<Constructed, ColorError> {
    let (core, trace) = peel(g);
    let mut coloring = empty_coloring(g.vertex_count());
    let mut moves = Vec::new();
    let mut audit_failures = Vec::new();
    let mut restarts = 0;
    if !core.is_empty() {
        let sub = g.induced(&core);
        let w = compute_weights(&sub.graph)?;
        if config.audit {
            audit_failures.extend(
                crate::weights::spread_violations(&sub.graph, &w)
                    .iter()
                    .map(|v| format!("weight spread {v:?}")),
            );
            audit_failures.extend(
                crate::weights::descent_violations(&sub.graph, &w)
                    .iter()
                    .map(|v| format!("weight descent {v:?}")),
            );
        }
        let (core_coloring, fixpoint) = color_core_with(&sub.graph, &w, config)?;
        for (class, local) in coloring.classes.iter_mut().zip(&core_coloring.classes) {
            class.vertices = local.vertices.iter().map(|&v| sub.to_host[v]).collect();
        }
        moves = fixpoint.trace;
        restarts = fixpoint.restarts;
        audit_failures.extend(fixpoint.audit_failures);
    }
    Ok(Constructed {
        coloring: extend_coloring(coloring, &trace),
        trace: moves,
        audit_failures,
        restarts,
    })
}

fn exact_coloring(g: &Graph, budget: u64) -> Result<PackingColoring, CubicReason> {
    let seq = PackingSequence::new(vec![1, 1, 2, 2]).expect("valid sequence");
    match decide(g, &seq, budget).status {
        DecisionStatus::Sat(c) => Ok(c),
        DecisionStatus::Unsat => Err(CubicReason::OracleUnsat),
        DecisionStatus::BudgetExceeded => Err(CubicReason::OracleTimeout),
    }
}

/// Colors every component of a subcubic graph with classes `1_a, 1_b, 2_a, 2_b`.
///
/// Non-cubic components always succeed unless the exchange search gets stuck.
/// Cubic components on at most four vertices are colored exactly; larger ones
/// need `fallback_exact` and fail with [`ColorError::CubicComponents`] otherwise.
pub fn color_graph(g: &Graph, options: &ColorOptions) -> Result<ColorRun, ColorError> {
    g.assert_subcubic()?;
    let n = g.vertex_count();
    let config = RunConfig {
        max_moves: options.max_moves,
        audit: options.audit,
        restarts: options.restarts,
    };
    let mut coloring = empty_coloring(n);
    let mut components = Vec::new();
    let mut failures = Vec::new();
    for component in g.components() {
        let sub = g.induced(&component);
        let vertices = component.as_slice().to_vec();
        let (local, run) = if sub.graph.is_cubic() {
            let attempt = if component.len() <= 4 {
                exact_coloring(&sub.graph, options.exact_budget)
            } else if !options.fallback_exact {
                Err(CubicReason::FallbackDisabled)
            } else if component.len() > options.fallback_max_vertices {
                Err(CubicReason::OracleTimeout)
            } else {
                exact_coloring(&sub.graph, options.exact_budget)
            };
            match attempt {
                Ok(c) => (c, ComponentRun::exact(vertices, Method::Exact, None)),
                Err(reason) => {
                    failures.push(CubicComponent { vertices, reason });
                    continue;
                }
            }
        } else {
            match color_component(&sub.graph, &config) {
                Ok(done) => (
                    done.coloring,
                    ComponentRun {
                        vertices,
                        method: Method::Constructive,
                        trace: done.trace,
                        audit_failures: done.audit_failures,
                        restarts: done.restarts,
                        stuck: None,
                    },
                ),
                Err(ColorError::Fixpoint(FixpointError::Stuck(stuck)))
                    if options.fallback_exact =>
                {
                    let c = exact_coloring(&sub.graph, options.exact_budget)
                        .map_err(|_| ColorError::Fixpoint(FixpointError::Stuck(stuck.clone())))?;
                    (
                        c,
                        ComponentRun::exact(vertices, Method::ExactAfterStuck, Some(stuck)),
                    )
                }
                Err(e) => return Err(e),
            }
        };
        merge(&mut coloring, &local, &sub.to_host);
        components.push(run);
    }
    if !failures.is_empty() {
        return Err(ColorError::CubicComponents(failures));
    }
    coloring.sort_vertices();
    Ok(ColorRun {
        coloring,
        components,
    })
}

/// Unions component classes into the host classes by position; components are
/// infinitely far apart, so no radius is violated.
fn merge(host: &mut PackingColoring, local: &PackingColoring, to_host: &[Vertex]) {
    for (class, part) in host.classes.iter_mut().zip(&local.classes) {
        class
            .vertices
            .extend(part.vertices.iter().map(|&v| to_host[v]));
    }
}

/// Vertices of `g` lying in no class of `coloring`; handy for diagnostics.
pub fn uncovered(g: &Graph, coloring: &PackingColoring) -> VertexSet {
    let owner = coloring.assignment();
    VertexSet::from_unsorted(
        g.vertex_count(),
        g.vertices()
            .filter(|&v| owner.get(v).copied().flatten().is_none())
            .collect(),
    )
}
