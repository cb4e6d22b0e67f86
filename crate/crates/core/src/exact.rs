//! Backtracking decision procedure for S-packing colorability of small graphs.

use crate::graph::{Graph, Vertex};
use crate::verify::{PackingColoring, PackingSequence};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionStatus {
    Sat(PackingColoring),
    Unsat,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub status: DecisionStatus,
    pub nodes_explored: u64,
}

impl DecisionOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, DecisionStatus::Sat(_))
    }

    pub fn coloring(&self) -> Option<&PackingColoring> {
        match &self.status {
            DecisionStatus::Sat(c) => Some(c),
            _ => None,
        }
    }
}

struct Search<'a> {
    radii: &'a [u32],
    order: Vec<Vertex>,
    /// `balls[v]`: vertices within `max radius` of `v`, ordered by distance.
    balls: Vec<Vec<(Vertex, u32)>>,
    assigned: Vec<Option<usize>>,
    class_sizes: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn fits(&self, v: Vertex, class: usize) -> bool {
        let r = self.radii[class];
        self.balls[v]
            .iter()
            .take_while(|&&(_, d)| d <= r)
            .all(|&(u, _)| self.assigned[u] != Some(class))
    }

    fn run(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let v = self.order[depth];
        for class in 0..self.radii.len() {
            // equal-radius classes are interchangeable: open them in order
            if class > 0
                && self.radii[class] == self.radii[class - 1]
                && self.class_sizes[class] == 0
                && self.class_sizes[class - 1] == 0
            {
                continue;
            }
            if !self.fits(v, class) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.assigned[v] = Some(class);
            self.class_sizes[class] += 1;
            match self.run(depth + 1) {
                Step::Exhausted => {}
                done => return done,
            }
            self.assigned[v] = None;
            self.class_sizes[class] -= 1;
        }
        Step::Exhausted
    }
}

/// Decides whether `g` has an S-packing coloring for `seq`, exploring at most `budget` nodes.
///
/// Vertices are tried in descending degree order (ties by id) and classes in
/// sequence order, so identical inputs give identical colorings.
pub fn decide(g: &Graph, seq: &PackingSequence, budget: u64) -> DecisionOutcome {
    let max_radius = seq.max_radius();
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let balls = g
        .vertices()
        .map(|v| {
            g.ball(v, max_radius as usize)
                .into_iter()
                .map(|(u, d)| (u, d as u32))
                .collect()
        })
        .collect();
    let mut search = Search {
        radii: seq.radii(),
        order,
        balls,
        assigned: vec![None; g.vertex_count()],
        class_sizes: vec![0; seq.len()],
        nodes: 0,
        budget,
    };
    let status = match search.run(0) {
        Step::Found => {
            let labels = seq.labels();
            let mut coloring = PackingColoring::with_classes(
                g.vertex_count(),
                labels
                    .iter()
                    .map(String::as_str)
                    .zip(seq.radii().iter().copied()),
            );
            for v in g.vertices() {
                let class = search.assigned[v].expect("complete assignment");
                coloring.classes[class].vertices.push(v);
            }
            DecisionStatus::Sat(coloring)
        }
        Step::Exhausted => DecisionStatus::Unsat,
        Step::OutOfBudget => DecisionStatus::BudgetExceeded,
    };
    DecisionOutcome {
        status,
        nodes_explored: search.nodes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiRho {
    Known { k: u32, coloring: PackingColoring },
    Unknown,
}

/// Smallest `k <= k_max` such that `g` is `(1, 2, ..., k)`-packing colorable.
pub fn chi_rho(g: &Graph, k_max: u32, budget: u64) -> ChiRho {
    for k in 1..=k_max {
        match decide(g, &PackingSequence::packing(k), budget).status {
            DecisionStatus::Sat(coloring) => return ChiRho::Known { k, coloring },
            DecisionStatus::Unsat => {}
            DecisionStatus::BudgetExceeded => return ChiRho::Unknown,
        }
    }
    ChiRho::Unknown
}
