use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::verify::PackingColoring;

/// Removal order of low-degree vertices, each with its neighbor remaining at removal time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeelTrace {
    pub steps: Vec<(Vertex, Option<Vertex>)>,
}

/// Repeatedly deletes the smallest vertex of current degree at most 1.
///
/// Returns the remaining core (minimum degree at least 2, possibly empty) and the
/// removal trace. Trees peel away completely.
pub fn peel(g: &Graph) -> (VertexSet, PeelTrace) {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<Vertex>> = g
        .vertices()
        .filter(|&v| degree[v] <= 1)
        .map(Reverse)
        .collect();
    let mut trace = PeelTrace::default();
    while let Some(Reverse(v)) = heap.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        let attach = g.neighbors(v).iter().copied().find(|&u| !removed[u]);
        if let Some(u) = attach {
            degree[u] -= 1;
            if degree[u] == 1 || degree[u] == 0 {
                heap.push(Reverse(u));
            }
        }
        trace.steps.push((v, attach));
    }
    let core = VertexSet::from_mask(&removed.iter().map(|&r| !r).collect::<Vec<_>>());
    (core, trace)
}

/// Re-inserts peeled vertices in reverse order into the first radius-1 class
/// that does not contain their remaining neighbor.
///
/// `coloring` must already have two radius-1 classes; the first two found are used.
pub fn extend_coloring(mut coloring: PackingColoring, trace: &PeelTrace) -> PackingColoring {
    let ones: Vec<usize> = coloring
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.radius == 1)
        .map(|(i, _)| i)
        .take(2)
        .collect();
    assert_eq!(ones.len(), 2, "extension needs two radius-1 classes");
    let mut owner = coloring.assignment();
    for &(v, attach) in trace.steps.iter().rev() {
        let class = if attach.is_some_and(|u| owner[u] == Some(ones[0])) {
            ones[1]
        } else {
            ones[0]
        };
        coloring.classes[class].vertices.push(v);
        owner[v] = Some(class);
    }
    coloring.sort_vertices();
    coloring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify;

    fn four_classes(n: usize) -> PackingColoring {
        PackingColoring::with_classes(n, [("1_a", 1), ("1_b", 1), ("2_a", 2), ("2_b", 2)])
    }

    #[test]
    fn trees_peel_completely() {
        let tree = Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let (core, trace) = peel(&tree);
        assert!(core.is_empty());
        assert_eq!(trace.steps.len(), 6);
        assert_eq!(trace.steps[0], (0, Some(1)));
        assert_eq!(trace.steps.last().unwrap().1, None);
    }

    #[test]
    fn pendant_triangle() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let (core, trace) = peel(&g);
        assert_eq!(core.as_slice(), [0, 1, 2]);
        assert_eq!(trace.steps, [(3, Some(2))]);
    }

    #[test]
    fn cycles_do_not_peel() {
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let (core, trace) = peel(&c5);
        assert_eq!(core.len(), 5);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn pendant_takes_the_free_radius_one_class() {
        let mut c = four_classes(2);
        c.classes[0].vertices.push(0);
        let trace = PeelTrace {
            steps: vec![(1, Some(0))],
        };
        let out = extend_coloring(c, &trace);
        assert_eq!(out.classes[1].vertices, [1]);
    }

    #[test]
    fn path_gets_a_proper_two_coloring() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (core, trace) = peel(&p4);
        assert!(core.is_empty());
        let out = extend_coloring(four_classes(4), &trace);
        assert_eq!(verify(&p4, &out), Ok(()));
    }

    #[test]
    fn pendant_on_radius_two_vertex() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let mut c = four_classes(4);
        c.classes[0].vertices.push(0);
        c.classes[1].vertices.push(1);
        c.classes[2].vertices.push(2);
        let out = extend_coloring(
            c,
            &PeelTrace {
                steps: vec![(3, Some(2))],
            },
        );
        assert_eq!(out.classes[0].vertices, [0, 3]);
        assert_eq!(verify(&g, &out), Ok(()));
    }
}
