//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's distance, search or coloring code; the
//! library types are used only as containers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use spack_core::graph::Graph;
use spack_core::verify::PackingColoring;

pub const UNREACHABLE: usize = usize::MAX / 4;

/// All-pairs distances by Floyd-Warshall on the adjacency matrix.
pub fn distance_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            if u < v {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn graph_distances(g: &Graph) -> Vec<Vec<usize>> {
    distance_matrix(g.vertex_count(), &edges_of(g))
}

/// Checks a coloring straight from the definition with a precomputed distance matrix.
pub fn is_packing_coloring(d: &[Vec<usize>], c: &PackingColoring) -> bool {
    let n = d.len();
    let mut seen = vec![0usize; n];
    for class in &c.classes {
        for &v in &class.vertices {
            if v >= n {
                return false;
            }
            seen[v] += 1;
        }
        for (i, &u) in class.vertices.iter().enumerate() {
            for &v in &class.vertices[i + 1..] {
                if d[u][v] <= class.radius as usize {
                    return false;
                }
            }
        }
    }
    c.n == n && seen.iter().all(|&s| s == 1)
}

/// Plain depth-first enumeration of class assignments in vertex order 0, 1, ...
/// Returns the color of each vertex for the first packing coloring found.
pub fn naive_packing_coloring(d: &[Vec<usize>], radii: &[u32]) -> Option<Vec<usize>> {
    fn go(d: &[Vec<usize>], radii: &[u32], color: &mut Vec<usize>) -> bool {
        let v = color.len();
        if v == d.len() {
            return true;
        }
        for (c, &r) in radii.iter().enumerate() {
            if (0..v).all(|u| color[u] != c || d[u][v] > r as usize) {
                color.push(c);
                if go(d, radii, color) {
                    return true;
                }
                color.pop();
            }
        }
        false
    }
    let mut color = Vec::with_capacity(d.len());
    go(d, radii, &mut color).then_some(color)
}

/// Smallest k <= k_max with a (1, 2, ..., k)-packing coloring, by naive enumeration.
pub fn naive_chi_rho(d: &[Vec<usize>], k_max: u32) -> Option<u32> {
    (1..=k_max).find(|&k| naive_packing_coloring(d, &(1..=k).collect::<Vec<_>>()).is_some())
}

/// Canonical form: the lexicographically smallest sorted edge list over all
/// leaves of an individualization-refinement search.
pub fn canonical_form(n: usize, adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    fn refine(adj: &[Vec<usize>], mut color: Vec<usize>) -> Vec<usize> {
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..color.len())
                .map(|v| {
                    let mut around: Vec<usize> = adj[v].iter().map(|&u| color[u]).collect();
                    around.sort_unstable();
                    (color[v], around)
                })
                .collect();
            let ranks: BTreeSet<&(usize, Vec<usize>)> = keys.iter().collect();
            let ranks: Vec<_> = ranks.into_iter().collect();
            let next: Vec<usize> = keys
                .iter()
                .map(|k| ranks.binary_search(&k).unwrap())
                .collect();
            let before = color.iter().collect::<BTreeSet<_>>().len();
            if ranks.len() == before {
                return next;
            }
            color = next;
        }
    }
    fn search(adj: &[Vec<usize>], color: Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
        let color = refine(adj, color);
        let n = color.len();
        let mut sizes = vec![0usize; n];
        for &c in &color {
            sizes[c] += 1;
        }
        match (0..n).find(|&c| sizes[c] > 1) {
            None => {
                let mut edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| adj[u].iter().map(move |&v| (u, v)))
                    .filter(|&(u, v)| u < v)
                    .map(|(u, v)| (color[u].min(color[v]), color[u].max(color[v])))
                    .collect();
                edges.sort_unstable();
                if best.as_ref().is_none_or(|b| edges < *b) {
                    *best = Some(edges);
                }
            }
            Some(cell) => {
                for v in (0..n).filter(|&v| color[v] == cell) {
                    // individualize v ahead of its cell-mates
                    let split: Vec<usize> = (0..n)
                        .map(|u| 2 * color[u] + usize::from(color[u] == cell && u != v))
                        .collect();
                    search(adj, split, best);
                }
            }
        }
    }
    let mut best = None;
    search(adj, vec![0; n], &mut best);
    best.unwrap_or_default()
}

/// Every connected graph with maximum degree at most 3 on `n` vertices, one per
/// isomorphism class.
///
/// Each connected graph on `n` vertices arises from one on `n - 1` vertices by
/// adding a vertex joined to between one and three existing vertices (delete a
/// non-cut vertex to see this), so extension from the single vertex is complete.
pub fn connected_subcubic(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        for edges in &level {
            let m = size - 1;
            let mut degree = vec![0usize; m];
            for &(u, v) in edges {
                degree[u] += 1;
                degree[v] += 1;
            }
            let open: Vec<usize> = (0..m).filter(|&v| degree[v] < 3).collect();
            for mask in 1u32..(1 << open.len()) {
                if mask.count_ones() > 3 {
                    continue;
                }
                let mut grown = edges.clone();
                for (i, &u) in open.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        grown.push((u, m));
                    }
                }
                let mut adj = vec![Vec::new(); size];
                for &(u, v) in &grown {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                seen.insert(canonical_form(size, &adj));
            }
        }
        level = seen.into_iter().collect();
    }
    level
        .into_iter()
        .map(|edges| Graph::new(n, edges).unwrap())
        .collect()
}

/// Connected subcubic graphs with `1 <= n <= max_n` that are not cubic.
pub fn connected_noncubic_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(connected_subcubic)
        .filter(|g| !(0..g.vertex_count()).all(|v| g.degree(v) == 3))
        .collect()
}

/// Small deterministic generator so that randomized tests do not share the
/// library's generator code.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

/// Random connected subcubic graph that is not cubic: a random tree with degree
/// cap 3 plus up to `extra` random admissible edges, leaving at least one vertex
/// of degree at most 2.
pub fn random_noncubic(rng: &mut SplitMix, n: usize, extra: usize) -> Graph {
    let mut degree = vec![0usize; n];
    let mut edges = BTreeSet::new();
    for v in 1..n {
        loop {
            let u = rng.below(v);
            if degree[u] < 3 {
                edges.insert((u, v));
                degree[u] += 1;
                degree[v] += 1;
                break;
            }
        }
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 20 * extra + 100 {
        attempts += 1;
        let (a, b) = (rng.below(n), rng.below(n));
        let (u, v) = (a.min(b), a.max(b));
        if u == v || degree[u] >= 3 || degree[v] >= 3 || edges.contains(&(u, v)) {
            continue;
        }
        let low = degree.iter().filter(|&&d| d <= 2).count();
        let lost = usize::from(degree[u] == 2) + usize::from(degree[v] == 2);
        if low <= lost {
            continue;
        }
        edges.insert((u, v));
        degree[u] += 1;
        degree[v] += 1;
        added += 1;
    }
    Graph::new(n, edges).unwrap()
}

/// Checks a coloring from the definition with one breadth-first search per
/// colored vertex, cut off at the class radius; for graphs too large for the matrix.
pub fn is_packing_coloring_by_search(g: &Graph, c: &PackingColoring) -> bool {
    let n = g.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (i, class) in c.classes.iter().enumerate() {
        for &v in &class.vertices {
            if v >= n || owner[v] != usize::MAX {
                return false;
            }
            owner[v] = i;
        }
    }
    if c.n != n || owner.contains(&usize::MAX) {
        return false;
    }
    let mut depth = vec![usize::MAX; n];
    for s in 0..n {
        let radius = c.classes[owner[s]].radius as usize;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut touched = vec![s];
        depth[s] = 0;
        let mut ok = true;
        while let Some(u) = queue.pop_front() {
            if u != s && owner[u] == owner[s] {
                ok = false;
                break;
            }
            if depth[u] == radius {
                continue;
            }
            for &v in g.neighbors(u) {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    touched.push(v);
                    queue.push_back(v);
                }
            }
        }
        for v in touched {
            depth[v] = usize::MAX;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Every graph on `n` vertices, one per isomorphism class, from all labeled edge subsets.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        seen.insert(canonical_form(n, &adj));
    }
    seen.into_iter()
        .map(|edges| Graph::new(n, edges).unwrap())
        .collect()
}
