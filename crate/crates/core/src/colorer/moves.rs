//! Exchange moves that strictly increase the potential of a [`BipartitionState`].
//!
//! Every move is checked before it is returned or committed: both sides must
//! stay independent and the potential must strictly increase.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::state::{BipartitionState, Side};
use crate::graph::{Graph, Vertex};
use crate::weights::{Potential, WeightMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Absorb,
    Flip,
    Deg3Exchange,
    SameSideExchange,
    CycleSwap,
    PathSwap,
    RegionExchange,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Absorb => "absorb",
            MoveKind::Flip => "flip",
            MoveKind::Deg3Exchange => "deg3-exchange",
            MoveKind::SameSideExchange => "same-side-exchange",
            MoveKind::CycleSwap => "cycle-swap",
            MoveKind::PathSwap => "path-swap",
            MoveKind::RegionExchange => "region-exchange",
        })
    }
}

/// Direction in which an odd cycle of the outside square graph is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// `x` has no neighbor on `side` and joins it.
    Absorb { x: Vertex, side: Side },
    /// `x` joins `side`; its neighbors there, none of which touch the other
    /// side, cross over.
    Flip {
        x: Vertex,
        side: Side,
        moved: Vec<Vertex>,
    },
    /// `z` is inside with three outside neighbors; `x` (lighter than `z`)
    /// replaces its lighter neighbor `y`. If `z` shares `y`'s side it first
    /// crosses to the other one.
    Deg3Exchange { z: Vertex, x: Vertex, y: Vertex },
    /// `x` replaces `lone`, its only inside neighbor on `lone`'s side.
    SameSideExchange { x: Vertex, lone: Vertex },
    /// The odd cycle `cycle` of outside vertices takes the place of the common
    /// neighbors `commons[i]` of `cycle[i]` and `cycle[i + 1]`, all on `side`.
    CycleSwap {
        cycle: Vec<Vertex>,
        commons: Vec<Vertex>,
        side: Side,
        orientation: Orientation,
    },
    /// Like `CycleSwap` on a segment `path` of an odd cycle whose two ends have
    /// exactly two inside neighbors; `commons` has one fewer entry than `path`.
    PathSwap {
        path: Vec<Vertex>,
        commons: Vec<Vertex>,
        side: Side,
    },
    /// Arbitrary reassignment of a few vertices near an odd cycle that no swap
    /// above removes; found by exhaustive search over the region.
    RegionExchange { changes: Vec<(Vertex, Side)> },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Absorb { .. } => MoveKind::Absorb,
            Move::Flip { .. } => MoveKind::Flip,
            Move::Deg3Exchange { .. } => MoveKind::Deg3Exchange,
            Move::SameSideExchange { .. } => MoveKind::SameSideExchange,
            Move::CycleSwap { .. } => MoveKind::CycleSwap,
            Move::PathSwap { .. } => MoveKind::PathSwap,
            Move::RegionExchange { .. } => MoveKind::RegionExchange,
        }
    }

    /// The side assignments the move performs on `state`.
    pub fn changes(&self, state: &BipartitionState) -> Result<Vec<(Vertex, Side)>, InvalidMove> {
        let expect = |v: Vertex, ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(InvalidMove::Witness(format!(
                    "vertex {v} is {} but should be {what}",
                    state.side(v)
                )))
            }
        };
        let changes = match self {
            Move::Absorb { x, side } => {
                expect(*x, state.side(*x) == Side::Outside, "outside")?;
                vec![(*x, *side)]
            }
            Move::Flip { x, side, moved } => {
                expect(*x, state.side(*x) == Side::Outside, "outside")?;
                let mut out = vec![(*x, *side)];
                for &u in moved {
                    expect(u, state.side(u) == *side, "on the flip side")?;
                    out.push((u, side.opposite()));
                }
                out
            }
            Move::Deg3Exchange { z, x, y } => {
                expect(*x, state.side(*x) == Side::Outside, "outside")?;
                expect(*y, state.side(*y).is_inside(), "inside")?;
                expect(*z, state.side(*z).is_inside(), "inside")?;
                let target = state.side(*y);
                let mut out = vec![(*y, Side::Outside), (*x, target)];
                if state.side(*z) == target {
                    out.push((*z, target.opposite()));
                }
                out
            }
            Move::SameSideExchange { x, lone } => {
                expect(*x, state.side(*x) == Side::Outside, "outside")?;
                expect(*lone, state.side(*lone).is_inside(), "inside")?;
                vec![(*lone, Side::Outside), (*x, state.side(*lone))]
            }
            Move::CycleSwap {
                cycle: xs,
                commons,
                side,
                ..
            }
            | Move::PathSwap {
                path: xs,
                commons,
                side,
            } => {
                let mut out = Vec::new();
                let mut removed: Vec<Vertex> = commons.clone();
                removed.sort_unstable();
                removed.dedup();
                for &y in &removed {
                    expect(y, state.side(y) == *side, "on the swap side")?;
                    out.push((y, Side::Outside));
                }
                for &x in xs {
                    expect(x, state.side(x) == Side::Outside, "outside")?;
                    out.push((x, *side));
                }
                out
            }
            Move::RegionExchange { changes } => {
                for &(v, s) in changes {
                    expect(v, state.side(v) != s, "changed")?;
                }
                changes.clone()
            }
        };
        Ok(changes)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Absorb { x, side } => write!(f, "absorb x={x} side={side}"),
            Move::Flip { x, side, moved } => write!(f, "flip x={x} side={side} moved={moved:?}"),
            Move::Deg3Exchange { z, x, y } => write!(f, "deg3-exchange z={z} x={x} y={y}"),
            Move::SameSideExchange { x, lone } => write!(f, "same-side-exchange x={x} lone={lone}"),
            Move::CycleSwap {
                cycle,
                commons,
                side,
                orientation,
            } => write!(
                f,
                "cycle-swap side={side} {orientation:?} cycle={cycle:?} commons={commons:?}"
            ),
            Move::PathSwap {
                path,
                commons,
                side,
            } => write!(f, "path-swap side={side} path={path:?} commons={commons:?}"),
            Move::RegionExchange { changes } => {
                let list: Vec<String> = changes.iter().map(|(v, s)| format!("{v}:{s}")).collect();
                write!(f, "region-exchange {}", list.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidMove {
    #[error("bad witness: {0}")]
    Witness(String),
    #[error("vertex {0} is assigned twice")]
    Repeated(Vertex),
    #[error("{0} and {1} would share a side")]
    NotIndependent(Vertex, Vertex),
    #[error("potential {before} would become {after}")]
    NoIncrease { before: Potential, after: Potential },
}

/// Potential after applying `changes`, provided the move is legal and improving.
pub fn evaluate(
    g: &Graph,
    w: &WeightMap,
    state: &BipartitionState,
    changes: &[(Vertex, Side)],
) -> Result<Potential, InvalidMove> {
    let mut target: HashMap<Vertex, Side> = HashMap::with_capacity(changes.len());
    for &(v, s) in changes {
        if target.insert(v, s).is_some() {
            return Err(InvalidMove::Repeated(v));
        }
    }
    let after = |u: Vertex| target.get(&u).copied().unwrap_or_else(|| state.side(u));
    let mut edges = state.potential().edge_count as i64;
    let mut weight = state.potential().weight_sum as i64;
    for &(v, s) in changes {
        if s.is_inside() {
            if let Some(&u) = g.neighbors(v).iter().find(|&&u| after(u) == s) {
                return Err(InvalidMove::NotIndependent(v, u));
            }
        }
        for &u in g.neighbors(v) {
            if u < v && target.contains_key(&u) {
                continue;
            }
            let was = state.side(v).is_inside() && state.side(u).is_inside();
            let now = s.is_inside() && after(u).is_inside();
            edges += i64::from(now) - i64::from(was);
        }
        let wv = i64::from(w.get(v));
        weight += wv * (i64::from(s.is_inside()) - i64::from(state.side(v).is_inside()));
    }
    let before = state.potential();
    let after = Potential {
        edge_count: edges as u64,
        weight_sum: weight as u64,
    };
    if after > before {
        Ok(after)
    } else {
        Err(InvalidMove::NoIncrease { before, after })
    }
}

/// Checked application: returns the successor state or why the move is rejected.
pub fn apply_move(
    g: &Graph,
    w: &WeightMap,
    state: &BipartitionState,
    mv: &Move,
) -> Result<BipartitionState, InvalidMove> {
    let mut next = state.clone();
    apply_in_place(g, w, &mut next, mv)?;
    Ok(next)
}

pub(crate) fn apply_in_place(
    g: &Graph,
    w: &WeightMap,
    state: &mut BipartitionState,
    mv: &Move,
) -> Result<(Potential, Potential), InvalidMove> {
    let changes = mv.changes(state)?;
    let after = evaluate(g, w, state, &changes)?;
    let before = state.potential();
    state.commit(&changes, after);
    Ok((before, after))
}

fn checked(g: &Graph, w: &WeightMap, state: &BipartitionState, mv: Move) -> Option<Move> {
    let changes = mv.changes(state).ok()?;
    evaluate(g, w, state, &changes).ok().map(|_| mv)
}

/// First legal local move in the order absorb, flip, deg3-exchange,
/// same-side-exchange, each scanning vertices by ascending id.
pub fn find_local_move(g: &Graph, w: &WeightMap, state: &BipartitionState) -> Option<Move> {
    find_absorb(g, w, state)
        .or_else(|| find_flip(g, w, state))
        .or_else(|| find_deg3_exchange(g, w, state))
        .or_else(|| find_same_side_exchange(g, w, state))
}

fn find_absorb(g: &Graph, w: &WeightMap, state: &BipartitionState) -> Option<Move> {
    state.outside_vertices().find_map(|x| {
        [Side::S1, Side::S2]
            .into_iter()
            .find(|&side| state.count_on(g, x, side) == 0)
            .and_then(|side| checked(g, w, state, Move::Absorb { x, side }))
    })
}

fn find_flip(g: &Graph, w: &WeightMap, state: &BipartitionState) -> Option<Move> {
    state.outside_vertices().find_map(|x| {
        [Side::S1, Side::S2].into_iter().find_map(|side| {
            let moved: Vec<Vertex> = state.neighbors_on(g, x, side).collect();
            let free = moved
                .iter()
                .all(|&u| state.count_on(g, u, side.opposite()) == 0);
            if moved.is_empty() || !free {
                return None;
            }
            checked(g, w, state, Move::Flip { x, side, moved })
        })
    })
}

fn find_deg3_exchange(g: &Graph, w: &WeightMap, state: &BipartitionState) -> Option<Move> {
    let mut centers: Vec<Vertex> = state
        .outside_vertices()
        .flat_map(|x| g.neighbors(x).iter().copied())
        .filter(|&z| state.side(z).is_inside() && state.count_on(g, z, Side::Outside) == 3)
        .collect();
    centers.sort_unstable();
    centers.dedup();
    centers.into_iter().find_map(|z| {
        g.neighbors(z)
            .iter()
            .copied()
            .filter(|&x| w.get(x) < w.get(z))
            .find_map(|x| {
                g.neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&y| y != z && state.side(y).is_inside() && w.get(y) < w.get(x))
                    .find_map(|y| checked(g, w, state, Move::Deg3Exchange { z, x, y }))
            })
    })
}

fn find_same_side_exchange(g: &Graph, w: &WeightMap, state: &BipartitionState) -> Option<Move> {
    state.outside_vertices().find_map(|x| {
        if state.inside_degree(g, x) != 3 {
            return None;
        }
        let lone_side = [Side::S1, Side::S2]
            .into_iter()
            .find(|&s| state.count_on(g, x, s) == 1)?;
        let lone = state.neighbors_on(g, x, lone_side).next()?;
        if state.inside_degree(g, lone) <= 1 || w.get(lone) < w.get(x) {
            checked(g, w, state, Move::SameSideExchange { x, lone })
        } else {
            None
        }
    })
}

/// Smallest common neighbor of `a` and `b` on `side`.
fn common_on(
    g: &Graph,
    state: &BipartitionState,
    a: Vertex,
    b: Vertex,
    side: Side,
) -> Option<Vertex> {
    g.neighbors(a)
        .iter()
        .copied()
        .find(|&y| state.side(y) == side && g.has_edge(y, b))
}

/// Candidate swaps for an odd cycle of the outside square graph, in search order.
///
/// When every cycle vertex has three inside neighbors the whole cycle is swapped;
/// otherwise every segment between consecutive vertices with two inside
/// neighbors is tried, over both orientations and both sides.
pub fn cycle_candidates(g: &Graph, state: &BipartitionState, cycle: &[Vertex]) -> Vec<Move> {
    let k = cycle.len();
    let forward = cycle.to_vec();
    let mut reverse = forward.clone();
    reverse.reverse();
    let orientations = [
        (Orientation::Forward, forward),
        (Orientation::Reverse, reverse),
    ];
    let mut out = Vec::new();
    if cycle.iter().all(|&x| state.inside_degree(g, x) == 3) {
        for (orientation, seq) in &orientations {
            for side in [Side::S1, Side::S2] {
                let commons: Option<Vec<Vertex>> = (0..k)
                    .map(|i| common_on(g, state, seq[i], seq[(i + 1) % k], side))
                    .collect();
                if let Some(commons) = commons {
                    out.push(Move::CycleSwap {
                        cycle: seq.clone(),
                        commons,
                        side,
                        orientation: *orientation,
                    });
                }
            }
        }
        return out;
    }
    for (_, seq) in &orientations {
        let ends: Vec<usize> = (0..k)
            .filter(|&i| state.inside_degree(g, seq[i]) == 2)
            .collect();
        if ends.len() < 2 {
            continue;
        }
        for (idx, &start) in ends.iter().enumerate() {
            let stop = ends[(idx + 1) % ends.len()];
            let len = (stop + k - start) % k + 1;
            let path: Vec<Vertex> = (0..len).map(|j| seq[(start + j) % k]).collect();
            for side in [Side::S1, Side::S2] {
                let commons: Option<Vec<Vertex>> = path
                    .windows(2)
                    .map(|p| common_on(g, state, p[0], p[1], side))
                    .collect();
                if let Some(commons) = commons {
                    out.push(Move::PathSwap {
                        path: path.clone(),
                        commons,
                        side,
                    });
                }
            }
        }
    }
    out
}

/// First legal swap for `cycle`, plus every rejected candidate with its reason.
pub fn find_cycle_move(
    g: &Graph,
    w: &WeightMap,
    state: &BipartitionState,
    cycle: &[Vertex],
) -> (Option<Move>, Vec<(Move, InvalidMove)>) {
    let mut rejected = Vec::new();
    for mv in cycle_candidates(g, state, cycle) {
        let verdict = mv.changes(state).and_then(|c| evaluate(g, w, state, &c));
        match verdict {
            Ok(_) => return (Some(mv), rejected),
            Err(e) => rejected.push((mv, e)),
        }
    }
    (None, rejected)
}

/// Largest region searched by [`find_region_move`].
pub const REGION_CAP: usize = 18;

/// Vertices within distance 2 of `cycle` in breadth-first order, truncated to `cap`.
fn region_around(g: &Graph, cycle: &[Vertex], cap: usize) -> Vec<Vertex> {
    let mut region: Vec<Vertex> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &x in cycle {
        if seen.insert(x) {
            region.push(x);
        }
    }
    let mut start = 0;
    for _ in 0..2 {
        let end = region.len();
        for i in start..end {
            for &u in g.neighbors(region[i]) {
                if seen.insert(u) {
                    region.push(u);
                }
            }
        }
        start = end;
    }
    region.truncate(cap);
    region
}

/// Best strictly improving reassignment of the vertices near `cycle`, with
/// everything else held fixed.
///
/// Used when no swap along the cycle is legal: if the cycle closes through an
/// edge between two outside vertices, moving the whole path would put adjacent
/// vertices on one side.
pub fn find_region_move(
    g: &Graph,
    w: &WeightMap,
    state: &BipartitionState,
    cycle: &[Vertex],
) -> Option<Move> {
    struct Search<'a> {
        g: &'a Graph,
        w: &'a WeightMap,
        state: &'a BipartitionState,
        region: Vec<Vertex>,
        slot: HashMap<Vertex, usize>,
        assigned: Vec<Side>,
        best: Option<(Potential, Vec<(Vertex, Side)>)>,
    }
    impl Search<'_> {
        fn side_now(&self, u: Vertex, depth: usize) -> Option<Side> {
            match self.slot.get(&u) {
                Some(&i) if i < depth => Some(self.assigned[i]),
                Some(_) => None,
                None => Some(self.state.side(u)),
            }
        }

        fn go(&mut self, depth: usize) {
            if depth == self.region.len() {
                let changes: Vec<(Vertex, Side)> = self
                    .region
                    .iter()
                    .zip(&self.assigned)
                    .filter(|(&v, &s)| self.state.side(v) != s)
                    .map(|(&v, &s)| (v, s))
                    .collect();
                if let Ok(after) = evaluate(self.g, self.w, self.state, &changes) {
                    if self.best.as_ref().is_none_or(|(b, _)| after > *b) {
                        self.best = Some((after, changes));
                    }
                }
                return;
            }
            let v = self.region[depth];
            for side in [Side::S1, Side::S2, Side::Outside] {
                let clash = side.is_inside()
                    && self
                        .g
                        .neighbors(v)
                        .iter()
                        .any(|&u| self.side_now(u, depth) == Some(side));
                if !clash {
                    self.assigned[depth] = side;
                    self.go(depth + 1);
                }
            }
        }
    }
    let region = region_around(g, cycle, REGION_CAP);
    let slot = region.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut search = Search {
        g,
        w,
        state,
        assigned: vec![Side::Outside; region.len()],
        region,
        slot,
        best: None,
    };
    search.go(0);
    search.best.map(|(_, mut changes)| {
        changes.sort_unstable_by_key(|&(v, _)| v);
        Move::RegionExchange { changes }
    })
}

/// First legal move of any kind: local moves, then a swap along an odd cycle of
/// the square graph restricted to the outside vertices.
pub fn find_move(g: &Graph, w: &WeightMap, state: &BipartitionState) -> Option<Move> {
    if let Some(mv) = find_local_move(g, w, state) {
        return Some(mv);
    }
    let outside = state.outside();
    let square = g.square_induced(&outside);
    match square.graph.bipartition_or_odd_cycle() {
        crate::graph::Bipartiteness::Bipartite(..) => None,
        crate::graph::Bipartiteness::OddCycle(c) => {
            let cycle: Vec<Vertex> = c.vertices().iter().map(|&v| square.to_host[v]).collect();
            find_cycle_move(g, w, state, &cycle)
                .0
                .or_else(|| find_region_move(g, w, state, &cycle))
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

    fn sides(spec: &str) -> Vec<Side> {
        spec.chars()
            .map(|c| match c {
                '1' => Side::S1,
                '2' => Side::S2,
                _ => Side::Outside,
            })
            .collect()
    }

    #[test]
    fn absorb_when_side_is_free() {
        let g = cycle(6);
        let w = WeightMap::from_raw(vec![1; 6]);
        // vertex 2 touches only S2 and an outside vertex
        let state = BipartitionState::from_sides(&g, &w, sides("12..12")).unwrap();
        let mv = find_move(&g, &w, &state).unwrap();
        assert_eq!(
            mv,
            Move::Absorb {
                x: 2,
                side: Side::S1
            }
        );
        let next = apply_move(&g, &w, &state, &mv).unwrap();
        assert!(next.potential() > state.potential());
    }

    #[test]
    fn c5_after_greedy_has_no_move() {
        let g = cycle(5);
        let w = compute_weights(&g).unwrap();
        let state = initial_state(&g, &w).unwrap();
        assert_eq!(find_move(&g, &w, &state), None);
    }

    #[test]
    fn flip_with_one_free_neighbor() {
        // x = 0 outside; its S1 neighbor 1 has no S2 neighbor, its S2
        // neighbor 2 touches 3 in S1
        let g = Graph::new(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let w = WeightMap::from_raw(vec![1; 4]);
        let err = BipartitionState::from_sides(&g, &w, sides("1121")).unwrap_err();
        assert!(err.contains("0-1"));
        let state = BipartitionState::from_sides(&g, &w, sides(".121")).unwrap();
        assert_eq!(state.potential().edge_count, 1);
        let mv = find_local_move(&g, &w, &state).unwrap();
        assert!(
            matches!(
                mv,
                Move::Flip {
                    x: 0,
                    side: Side::S1,
                    ..
                }
            ),
            "{mv}"
        );
        let next = apply_move(&g, &w, &state, &mv).unwrap();
        // x brings its S2 edge, the flipped neighbor keeps its edge to x
        assert_eq!(next.potential().edge_count, 3);
        assert!(next.consistency_errors(&g, &w).is_empty());
    }

    #[test]
    fn rejects_dependent_or_flat_moves() {
        let g = cycle(5);
        let w = compute_weights(&g).unwrap();
        let state = initial_state(&g, &w).unwrap();
        let err = apply_move(
            &g,
            &w,
            &state,
            &Move::Absorb {
                x: 4,
                side: Side::S1,
            },
        )
        .unwrap_err();
        assert!(matches!(err, InvalidMove::NotIndependent(4, _)));
        let err = apply_move(
            &g,
            &w,
            &state,
            &Move::Absorb {
                x: 0,
                side: Side::S1,
            },
        )
        .unwrap_err();
        assert!(matches!(err, InvalidMove::Witness(_)));
        let flat = Move::SameSideExchange { x: 4, lone: 0 };
        assert!(apply_move(&g, &w, &state, &flat).is_err());
    }

    #[test]
    fn region_exchange_raises_the_potential() {
        let g = cycle(5);
        let w = compute_weights(&g).unwrap();
        let state = BipartitionState::from_sides(&g, &w, sides(".....")).unwrap();
        let mv = find_region_move(&g, &w, &state, &[0, 1, 2]).unwrap();
        assert!(matches!(mv, Move::RegionExchange { .. }));
        let next = apply_move(&g, &w, &state, &mv).unwrap();
        assert!(next.potential() > state.potential());
        assert!(next.consistency_errors(&g, &w).is_empty());
        // the best reachable state on C5 leaves a single vertex outside
        assert_eq!(next.outside_count(), 1);
    }

    #[test]
    fn region_exchange_is_none_when_nothing_improves() {
        let g = cycle(4);
        let w = compute_weights(&g).unwrap();
        let state = BipartitionState::from_sides(&g, &w, sides("1212")).unwrap();
        assert_eq!(find_region_move(&g, &w, &state, &[0, 1, 2]), None);
    }
}
