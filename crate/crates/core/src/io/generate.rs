//! Deterministic generators for the graph families used in tests and benchmarks.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

/// A graph family with its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Petersen,
    /// The cycle `C_n` times `K_2`.
    Prism(usize),
    RandomTree(usize),
    /// Connected and subcubic; never cubic when `non_cubic` is set.
    RandomSubcubic {
        n: usize,
        target_m: usize,
        non_cubic: bool,
    },
}

/// Family names as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    Cycle,
    Path,
    Petersen,
    Prism,
    RandomTree,
    RandomSubcubic,
}

impl FromStr for FamilyName {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.replace('-', "_").as_str() {
            "cycle" => FamilyName::Cycle,
            "path" => FamilyName::Path,
            "petersen" => FamilyName::Petersen,
            "prism" => FamilyName::Prism,
            "random_tree" => FamilyName::RandomTree,
            "random_subcubic" => FamilyName::RandomSubcubic,
            _ => return Err(GenerateError::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::Cycle => "cycle",
            FamilyName::Path => "path",
            FamilyName::Petersen => "petersen",
            FamilyName::Prism => "prism",
            FamilyName::RandomTree => "random-tree",
            FamilyName::RandomSubcubic => "random-subcubic",
        })
    }
}

impl Family {
    /// Family from its command-line name. `m` only matters for random subcubic
    /// graphs and defaults to `n + n / 4`.
    pub fn from_name(name: FamilyName, n: usize, m: Option<usize>, non_cubic: bool) -> Family {
        match name {
            FamilyName::Cycle => Family::Cycle(n),
            FamilyName::Path => Family::Path(n),
            FamilyName::Petersen => Family::Petersen,
            FamilyName::Prism => Family::Prism(n),
            FamilyName::RandomTree => Family::RandomTree(n),
            FamilyName::RandomSubcubic => Family::RandomSubcubic {
                n,
                target_m: m.unwrap_or(n + n / 4),
                non_cubic,
            },
        }
    }
}

/// Maximum edge count of a subcubic graph on `n` vertices.
pub fn max_subcubic_edges(n: usize) -> usize {
    3 * n / 2
}

/// Builds a member of `family`; only the random families consume `seed`.
pub fn generate(family: Family, seed: u64) -> Result<Graph, GenerateError> {
    let infeasible = |msg: String| Err(GenerateError::InfeasibleParams(msg));
    match family {
        Family::Cycle(n) => {
            if n < 3 {
                return infeasible(format!("cycle needs n >= 3, got {n}"));
            }
            Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
        }
        Family::Path(n) => Ok(Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()),
        Family::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            Ok(Graph::new(10, outer.chain(inner).chain(spokes)).unwrap())
        }
        Family::Prism(n) => {
            if n < 3 {
                return infeasible(format!("prism needs n >= 3, got {n}"));
            }
            let top = (0..n).map(|i| (i, (i + 1) % n));
            let bottom = (0..n).map(|i| (n + i, n + (i + 1) % n));
            let rungs = (0..n).map(|i| (i, n + i));
            Ok(Graph::new(2 * n, top.chain(bottom).chain(rungs)).unwrap())
        }
        Family::RandomTree(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Graph::new(n, subcubic_tree(n, &mut rng)).unwrap())
        }
        Family::RandomSubcubic {
            n,
            target_m,
            non_cubic,
        } => {
            if n == 0 {
                return infeasible("random subcubic graph needs n >= 1".into());
            }
            let cap = max_subcubic_edges(n) - usize::from(non_cubic && n % 2 == 0);
            if target_m > cap {
                return infeasible(format!("target_m = {target_m} exceeds {cap} for n = {n}"));
            }
            if target_m + 1 < n {
                return infeasible(format!(
                    "connected graph on {n} vertices needs {} edges",
                    n - 1
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let g = random_subcubic(n, target_m, &mut rng);
                if !(non_cubic && g.is_cubic()) {
                    return Ok(g);
                }
            }
        }
    }
}

/// Random tree of maximum degree 3: each new vertex attaches to a uniform earlier
/// vertex with spare degree, then labels are shuffled.
fn subcubic_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![0usize; n];
    let mut open: Vec<Vertex> = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        if v > 0 {
            let slot = rng.random_range(0..open.len());
            let u = open[slot];
            edges.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
            if degree[u] == 3 {
                open.swap_remove(slot);
            }
        }
        open.push(v);
    }
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(rng);
    edges
        .into_iter()
        .map(|(u, v)| (label[u], label[v]))
        .collect()
}

/// Adds uniformly random admissible non-edges to a random subcubic spanning tree.
///
/// Pairs are drawn by rejection from the vertices of spare degree; near
/// saturation the remaining candidates are listed explicitly.
fn random_subcubic(n: usize, target_m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = subcubic_tree(n, rng);
    let mut degree = vec![0usize; n];
    let mut present = HashSet::new();
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
        present.insert((u.min(v), u.max(v)));
    }
    let mut open: Vec<Vertex> = (0..n).filter(|&v| degree[v] < 3).collect();
    while edges.len() < target_m && open.len() >= 2 {
        let mut pick = None;
        for _ in 0..64 {
            let a = open[rng.random_range(0..open.len())];
            let b = open[rng.random_range(0..open.len())];
            if a != b && !present.contains(&(a.min(b), a.max(b))) {
                pick = Some((a.min(b), a.max(b)));
                break;
            }
        }
        if pick.is_none() {
            let mut candidates = Vec::new();
            for (i, &a) in open.iter().enumerate() {
                for &b in &open[i + 1..] {
                    if !present.contains(&(a.min(b), a.max(b))) {
                        candidates.push((a.min(b), a.max(b)));
                    }
                }
            }
            pick = candidates.choose(rng).copied();
        }
        let Some((u, v)) = pick else {
            break;
        };
        edges.push((u, v));
        present.insert((u, v));
        degree[u] += 1;
        degree[v] += 1;
        open.retain(|&x| degree[x] < 3);
    }
    Graph::new(n, edges).unwrap()
}
