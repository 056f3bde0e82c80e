use rayon::prelude::*;

use crate::graph::{dijkstra, Graph};
use crate::net::{EpsNet, NetError};

use super::OracleError;

/// Exact distances from every landmark to every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleOracle {
    pub(crate) eps: f64,
    pub(crate) n: usize,
    pub(crate) landmarks: Vec<usize>,
    // landmarks.len() rows of n true distances
    pub(crate) table: Vec<f64>,
}

impl SimpleOracle {
    /// One Dijkstra per landmark. Rejects nets that are not certified.
    pub fn build(graph: &Graph, net: &EpsNet) -> Result<Self, OracleError> {
        if !net.certified {
            return Err(OracleError::Uncertified);
        }
        let n = graph.n();
        if let Some(&vertex) = net.vertices.iter().find(|&&u| u >= n) {
            return Err(NetError::VertexOutOfRange { vertex, n }.into());
        }
        let rows: Vec<Vec<f64>> = net
            .vertices
            .par_iter()
            .map(|&u| dijkstra(graph, u))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            eps: net.eps,
            n,
            landmarks: net.vertices.clone(),
            table: rows.concat(),
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn landmarks(&self) -> &[usize] {
        &self.landmarks
    }

    /// Distances from the `i`-th landmark.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.table[i * self.n..(i + 1) * self.n]
    }

    /// `min_u d(v1, u) + d(u, v2)` over the landmarks; `f64::INFINITY` when
    /// there are none. Never below the true distance, and equal to it on
    /// every pair the net certifies.
    ///
    /// # Panics
    ///
    /// If `v1` or `v2` is not a vertex.
    pub fn query(&self, v1: usize, v2: usize) -> f64 {
        assert!(v1 < self.n && v2 < self.n, "vertex out of range");
        self.table
            .chunks_exact(self.n.max(1))
            .map(|row| row[v1] + row[v2])
            .fold(f64::INFINITY, f64::min)
    }

    /// Number of stored distances.
    pub fn size(&self) -> usize {
        self.table.len()
    }
}
