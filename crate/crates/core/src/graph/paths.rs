use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};
use std::ops::Add;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

/// A path length made unique by an integer tie-breaker.
///
/// Lengths compare by `base` (the true weight sum) first and `tie` second,
/// so the base of a lexicographic minimum is the true shortest distance.
/// Ties are exact integers; summing them never rounds.
#[derive(Debug, Clone, Copy, Default)]
pub struct PerturbedLength {
    pub base: f64,
    pub tie: u128,
}

impl PerturbedLength {
    pub const ZERO: Self = Self { base: 0.0, tie: 0 };

    pub fn new(base: f64, tie: u128) -> Self {
        Self { base, tie }
    }
}

impl Add for PerturbedLength {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            base: self.base + rhs.base,
            tie: self.tie + rhs.tie,
        }
    }
}

impl Ord for PerturbedLength {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .total_cmp(&other.base)
            .then(self.tie.cmp(&other.tie))
    }
}

impl PartialOrd for PerturbedLength {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for PerturbedLength {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PerturbedLength {}

/// A graph with a pseudorandom 64-bit tie value on every edge.
#[derive(Debug, Clone)]
pub struct PerturbedGraph {
    graph: Graph,
    ties: Vec<u64>,
    seed: u64,
}

impl PerturbedGraph {
    /// Assigns each edge a tie drawn from a ChaCha stream selected by the
    /// edge's `(min, max)` endpoint key, so edge order does not matter.
    pub fn new(graph: &Graph, seed: u64) -> Self {
        let ties = graph
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.key();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(((a as u64) << 32) ^ b as u64);
                rng.next_u64()
            })
            .collect();
        Self {
            graph: graph.clone(),
            ties,
            seed,
        }
    }

    /// Explicit tie values, one per edge in edge order.
    #[cfg(test)]
    pub(crate) fn with_ties(graph: &Graph, ties: Vec<u64>) -> Self {
        assert_eq!(ties.len(), graph.m());
        Self {
            graph: graph.clone(),
            ties,
            seed: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn tie(&self, edge: usize) -> u64 {
        self.ties[edge]
    }

    pub fn edge_length(&self, edge: usize) -> PerturbedLength {
        PerturbedLength::new(self.graph.edge(edge).w, self.ties[edge] as u128)
    }
}

impl Graph {
    pub fn perturb(&self, seed: u64) -> PerturbedGraph {
        PerturbedGraph::new(self, seed)
    }
}

/// Single-source shortest paths under perturbed lengths.
#[derive(Debug, Clone)]
pub struct ShortestPathForest {
    pub source: usize,
    /// `None` marks an unreachable vertex.
    pub dist: Vec<Option<PerturbedLength>>,
    pub parent: Vec<Option<usize>>,
}

impl ShortestPathForest {
    /// True distance to `v`, `f64::INFINITY` if unreachable.
    pub fn base(&self, v: usize) -> f64 {
        self.dist[v].map_or(f64::INFINITY, |d| d.base)
    }

    /// Vertices of the tree path from the source to `target`, in order.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.dist[target]?;
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

pub fn sssp(pg: &PerturbedGraph, source: usize) -> Result<ShortestPathForest, GraphError> {
    let g = pg.graph();
    g.check_vertex(source)?;
    let n = g.n();
    let mut dist: Vec<Option<PerturbedLength>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(PerturbedLength::ZERO);
    heap.push(Reverse((PerturbedLength::ZERO, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(w, e) in g.neighbors(v) {
            if done[w] {
                continue;
            }
            let cand = d + pg.edge_length(e);
            if dist[w].is_none_or(|cur| cand < cur) {
                dist[w] = Some(cand);
                parent[w] = Some(v);
                heap.push(Reverse((cand, w)));
            }
        }
    }
    Ok(ShortestPathForest {
        source,
        dist,
        parent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct MinKey(pub(crate) f64);

impl Eq for MinKey {}

impl Ord for MinKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for MinKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Plain Dijkstra on true weights; unreachable vertices get `f64::INFINITY`.
pub fn dijkstra(graph: &Graph, source: usize) -> Result<Vec<f64>, GraphError> {
    graph.check_vertex(source)?;
    Ok(dijkstra_from(graph, &[source]).0)
}

/// Multi-source Dijkstra. Returns distances and, per vertex, a source
/// realizing the minimum.
pub(crate) fn dijkstra_from(graph: &Graph, sources: &[usize]) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut origin = vec![None; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = 0.0;
        origin[s] = Some(s);
        heap.push(Reverse((MinKey(0.0), s)));
    }
    while let Some(Reverse((MinKey(d), v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(w, e) in graph.neighbors(v) {
            let cand = d + graph.edge(e).w;
            if cand < dist[w] {
                dist[w] = cand;
                origin[w] = origin[v];
                heap.push(Reverse((MinKey(cand), w)));
            }
        }
    }
    (dist, origin)
}

/// Hop distances from `source`; `None` marks unreachable vertices.
pub fn bfs_hops(graph: &Graph, source: usize) -> Result<Vec<Option<u32>>, GraphError> {
    graph.check_vertex(source)?;
    let mut hops = vec![None; graph.n()];
    hops[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = hops[v].map(|h| h + 1);
        for &(w, _) in graph.neighbors(v) {
            if hops[w].is_none() {
                hops[w] = next;
                queue.push_back(w);
            }
        }
    }
    Ok(hops)
}
