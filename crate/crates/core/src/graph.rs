//! Immutable simple undirected graphs and the distance primitives built on them.
//!
//! Vertices are dense `0..n` ids. Adjacency lists are kept sorted so that every
//! traversal in the crate is deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {vertex} has degree {degree} > 3")]
    DegreeExceeded { vertex: Vertex, degree: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds the canonical graph on `n` vertices with exactly the given edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adjacency,
            edge_count,
        })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.adjacency
            .iter()
            .map(Vec::len)
            .min()
            .ok_or(GraphError::EmptyGraph)
    }

    /// True iff the graph is non-empty and every vertex has degree exactly 3.
    pub fn is_cubic(&self) -> bool {
        self.vertex_count() > 0 && self.adjacency.iter().all(|list| list.len() == 3)
    }

    /// Fails on the first vertex (by id) of degree greater than 3.
    pub fn assert_subcubic(&self) -> Result<(), GraphError> {
        match self.vertices().find(|&v| self.degree(v) > 3) {
            Some(vertex) => Err(GraphError::DegreeExceeded {
                vertex,
                degree: self.degree(vertex),
            }),
            None => Ok(()),
        }
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertices at distance `1..=radius` from `source`, with their distances.
    pub fn ball(&self, source: Vertex, radius: usize) -> Vec<(Vertex, usize)> {
        let mut seen: HashMap<Vertex, usize> = HashMap::from([(source, 0)]);
        let mut frontier = vec![source];
        let mut out = Vec::new();
        for depth in 1..=radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in self.neighbors(u) {
                    if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(v) {
                        e.insert(depth);
                        next.push(v);
                        out.push((v, depth));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out
    }

    /// The square graph: `x ~ y` iff their distance is 1 or 2.
    pub fn square(&self) -> Graph {
        let mut adjacency = vec![Vec::new(); self.vertex_count()];
        let mut edge_count = 0;
        for x in self.vertices() {
            let mut near: Vec<Vertex> = Vec::new();
            for &a in self.neighbors(x) {
                near.push(a);
                near.extend(self.neighbors(a).iter().copied().filter(|&b| b != x));
            }
            near.sort_unstable();
            near.dedup();
            edge_count += near.iter().filter(|&&y| y > x).count();
            adjacency[x] = near;
        }
        Graph {
            adjacency,
            edge_count,
        }
    }

    /// The square graph restricted to `set`, built without materialising the full square.
    pub fn square_induced(&self, set: &VertexSet) -> InducedSubgraph {
        let (to_host, from_host) = set.id_maps(self.vertex_count());
        let mut adjacency = vec![Vec::new(); to_host.len()];
        let mut edge_count = 0;
        for (local, &x) in to_host.iter().enumerate() {
            let mut near: Vec<Vertex> = Vec::new();
            for &a in self.neighbors(x) {
                if let Some(la) = from_host[a] {
                    near.push(la);
                }
                for &b in self.neighbors(a) {
                    if b != x {
                        if let Some(lb) = from_host[b] {
                            near.push(lb);
                        }
                    }
                }
            }
            near.sort_unstable();
            near.dedup();
            edge_count += near.iter().filter(|&&y| y > local).count();
            adjacency[local] = near;
        }
        InducedSubgraph {
            graph: Graph {
                adjacency,
                edge_count,
            },
            to_host,
            from_host,
        }
    }

    /// The subgraph induced by `set`, relabelled to `0..set.len()` in ascending host order.
    pub fn induced(&self, set: &VertexSet) -> InducedSubgraph {
        let (to_host, from_host) = set.id_maps(self.vertex_count());
        let mut edge_count = 0;
        let adjacency: Vec<Vec<Vertex>> = to_host
            .iter()
            .enumerate()
            .map(|(local, &x)| {
                let list: Vec<Vertex> = self
                    .neighbors(x)
                    .iter()
                    .filter_map(|&y| from_host[y])
                    .collect();
                edge_count += list.iter().filter(|&&y| y > local).count();
                list
            })
            .collect();
        InducedSubgraph {
            graph: Graph {
                adjacency,
                edge_count,
            },
            to_host,
            from_host,
        }
    }

    /// Replaces every edge by a path of length two.
    ///
    /// Original vertices keep their ids; the `i`-th edge of [`Graph::edges`] becomes vertex `n + i`.
    pub fn subdivide(&self) -> Subdivision {
        let n = self.vertex_count();
        let original_edges: Vec<(Vertex, Vertex)> = self.edges().collect();
        let new_edges = original_edges
            .iter()
            .enumerate()
            .flat_map(|(i, &(u, v))| [(u, n + i), (v, n + i)]);
        let graph = Graph::new(n + original_edges.len(), new_edges)
            .expect("subdivision of a simple graph is simple");
        Subdivision {
            graph,
            original_vertices: n,
            original_edges,
        }
    }

    /// Connected components ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for root in self.vertices() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut members = vec![root];
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            out.push(VertexSet::from_unsorted(n, members));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Breadth-first 2-colouring, or a chordless odd cycle when none exists.
    ///
    /// Each component is rooted at its smallest vertex, which lands in the first part.
    pub fn bipartition_or_odd_cycle(&self) -> Bipartiteness {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<Option<Vertex>> = vec![None; n];
        let mut depth = vec![0usize; n];
        for root in self.vertices() {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            parent[v] = Some(u);
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            let cycle = tree_cycle(u, v, &parent, &depth);
                            return Bipartiteness::OddCycle(OddCycleCertificate::chordless(
                                self, cycle,
                            ));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut first, mut second) = (Vec::new(), Vec::new());
        for v in self.vertices() {
            if color[v] == Some(false) {
                first.push(v);
            } else {
                second.push(v);
            }
        }
        Bipartiteness::Bipartite(
            VertexSet::from_sorted(n, first),
            VertexSet::from_sorted(n, second),
        )
    }
}

/// The cycle closed by the non-tree edge `u-v` in a breadth-first tree.
fn tree_cycle(u: Vertex, v: Vertex, parent: &[Option<Vertex>], depth: &[usize]) -> Vec<Vertex> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].unwrap();
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap();
        right.push(b);
    }
    while a != b {
        a = parent[a].unwrap();
        b = parent[b].unwrap();
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// A set of vertices of a host graph, stored as a sorted id list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    universe: usize,
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        Self {
            universe,
            members: Vec::new(),
        }
    }

    pub fn full(universe: usize) -> Self {
        Self {
            universe,
            members: (0..universe).collect(),
        }
    }

    /// Panics if a member is out of range.
    pub fn from_unsorted(universe: usize, mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        assert!(
            members.last().is_none_or(|&v| v < universe),
            "vertex out of range"
        );
        Self { universe, members }
    }

    fn from_sorted(universe: usize, members: Vec<Vertex>) -> Self {
        Self { universe, members }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self {
            universe: mask.len(),
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(v, &m)| m.then_some(v))
                .collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// True iff no two members are adjacent in `g`.
    pub fn is_independent_in(&self, g: &Graph) -> bool {
        self.members
            .iter()
            .all(|&u| g.neighbors(u).iter().all(|&v| !self.contains(v)))
    }

    fn id_maps(&self, host_n: usize) -> (Vec<Vertex>, Vec<Option<Vertex>>) {
        let mut from_host = vec![None; host_n];
        for (local, &v) in self.members.iter().enumerate() {
            from_host[v] = Some(local);
        }
        (self.members.clone(), from_host)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

/// An induced subgraph together with the id mapping back to its host.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_host[local]` is the host id of local vertex `local`.
    pub to_host: Vec<Vertex>,
    /// `from_host[host]` is the local id, if the host vertex was kept.
    pub from_host: Vec<Option<Vertex>>,
}

/// The subdivision of a graph with its edge-to-vertex mapping.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Graph,
    pub original_vertices: usize,
    /// Edge `original_edges[i]` is subdivided by vertex `original_vertices + i`.
    pub original_edges: Vec<(Vertex, Vertex)>,
}

impl Subdivision {
    pub fn edge_vertex(&self, index: usize) -> Vertex {
        self.original_vertices + index
    }

    pub fn subdivision_vertices(&self) -> std::ops::Range<Vertex> {
        self.original_vertices..self.graph.vertex_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite(VertexSet, VertexSet),
    OddCycle(OddCycleCertificate),
}

/// A simple odd cycle, listed in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycleCertificate {
    vertices: Vec<Vertex>,
}

impl OddCycleCertificate {
    /// Repeatedly cuts `cycle` along a chord, keeping the odd half, until no chord is left.
    fn chordless(g: &Graph, mut cycle: Vec<Vertex>) -> Self {
        debug_assert!(cycle.len() % 2 == 1);
        'shorten: loop {
            let k = cycle.len();
            if k == 3 {
                break;
            }
            let position: HashMap<Vertex, usize> =
                cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            for (i, &u) in cycle.iter().enumerate() {
                for &v in g.neighbors(u) {
                    let Some(&j) = position.get(&v) else { continue };
                    if j <= i + 1 || (i == 0 && j == k - 1) {
                        continue;
                    }
                    // chord i-j splits the cycle into lengths j-i+1 and k-(j-i)+1
                    cycle = if (j - i + 1) % 2 == 1 {
                        cycle[i..=j].to_vec()
                    } else {
                        cycle[j..].iter().chain(&cycle[..=i]).copied().collect()
                    };
                    continue 'shorten;
                }
            }
            break;
        }
        Self { vertices: cycle }
    }

    /// Checks the certificate against `g`: odd length, distinct vertices, cyclic adjacency.
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Option<Self> {
        let k = vertices.len();
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let valid = k >= 3
            && k % 2 == 1
            && sorted.len() == k
            && sorted.last().is_some_and(|&v| v < g.vertex_count())
            && (0..k).all(|i| g.has_edge(vertices[i], vertices[(i + 1) % k]));
        valid.then_some(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_chordless_in(&self, g: &Graph) -> bool {
        let k = self.vertices.len();
        (0..k).all(|i| {
            (i + 2..k)
                .all(|j| (i == 0 && j == k - 1) || !g.has_edge(self.vertices[i], self.vertices[j]))
        })
    }
}
