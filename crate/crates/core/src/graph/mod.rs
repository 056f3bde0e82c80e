//! Undirected weighted graphs, exact unique shortest paths and the
//! brute-force all-pairs tables the rest of the crate is checked against.

mod apsp;
mod io;
mod paths;

pub use apsp::{apsp, DistanceMatrix};
pub use io::ParseError;
pub use paths::{bfs_hops, dijkstra, sssp, PerturbedGraph, PerturbedLength, ShortestPathForest};
pub(crate) use paths::{dijkstra_from, MinKey};

use thiserror::Error;

/// Errors raised while building or querying graphs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("edge ({u}, {v}) has invalid weight {w}; weights must be positive and finite")]
    InvalidWeight { u: usize, v: usize, w: f64 },
    #[error("vertex {vertex} has {parents} optimal parents from source {origin}; reseed required")]
    ReseedRequired {
        origin: usize,
        vertex: usize,
        parents: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    /// Endpoints ordered as `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        if self.u < self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// A simple undirected graph on vertices `0..n` with positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // (neighbor, edge index)
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (idx, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            if !(e.w.is_finite() && e.w > 0.0) {
                return Err(GraphError::InvalidWeight {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                });
            }
            let key = e.key();
            if !seen.insert(key) {
                return Err(GraphError::ParallelEdge(key.0, key.1));
            }
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        Ok(Self { n, edges, adj })
    }

    /// Builds an unweighted graph (all weights 1).
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(
            n,
            pairs.iter().map(|&(u, v)| Edge { u, v, w: 1.0 }).collect(),
        )
    }

    pub fn from_weighted(n: usize, triples: &[(usize, usize, f64)]) -> Result<Self, GraphError> {
        Self::new(
            n,
            triples.iter().map(|&(u, v, w)| Edge { u, v, w }).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    pub(crate) fn check_vertex(&self, vertex: usize) -> Result<(), GraphError> {
        if vertex < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex, n: self.n })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_parallel_edges() {
        assert_eq!(
            Graph::unweighted(3, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            Graph::unweighted(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::ParallelEdge(0, 1)
        );
        assert!(matches!(
            Graph::unweighted(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn rejects_bad_weights() {
        for w in [0.0, -1.0, f64::INFINITY, f64::NAN] {
            assert!(matches!(
                Graph::from_weighted(2, &[(0, 1, w)]),
                Err(GraphError::InvalidWeight { .. })
            ));
        }
    }

    #[test]
    fn unweighted_detection() {
        assert!(Graph::unweighted(3, &[(0, 1), (1, 2)])
            .unwrap()
            .is_unweighted());
        assert!(!Graph::from_weighted(2, &[(0, 1, 2.0)])
            .unwrap()
            .is_unweighted());
    }
}
