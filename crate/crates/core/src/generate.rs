//! Seeded graph families used by the CLI and the test suites.
//!
//! Every random family draws from a ChaCha8 stream seeded with the given
//! seed, so the same parameters always produce the same graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    Probability(f64),
    #[error("radius must be positive and finite, got {0}")]
    Radius(f64),
    #[error("maximum weight must be at least 1")]
    MaxWeight,
}

pub fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::unweighted(n, &pairs).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::CycleTooSmall(n));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::unweighted(n, &pairs).expect("cycle edges are valid"))
}

/// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                pairs.push((v, v + 1));
            }
            if r + 1 < rows {
                pairs.push((v, v + cols));
            }
        }
    }
    Graph::unweighted(rows * cols, &pairs).expect("grid edges are valid")
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Ok(Graph::unweighted(n, &pairs).expect("gnp edges are valid"))
}

/// Random geometric graph: `n` uniform points in the unit square, joined
/// when their Euclidean distance is at most `radius`.
pub fn geometric(n: usize, radius: f64, seed: u64) -> Result<Graph, GenError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(GenError::Radius(radius));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
            if (dx * dx + dy * dy).sqrt() <= radius {
                pairs.push((u, v));
            }
        }
    }
    Ok(Graph::unweighted(n, &pairs).expect("geometric edges are valid"))
}

/// Replaces every weight by a uniform integer in `1..=max_weight`.
pub fn random_weights(graph: &Graph, max_weight: u32, seed: u64) -> Result<Graph, GenError> {
    if max_weight == 0 {
        return Err(GenError::MaxWeight);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = graph
        .edges()
        .iter()
        .map(|e| Edge {
            u: e.u,
            v: e.v,
            w: rng.random_range(1..=max_weight) as f64,
        })
        .collect();
    Ok(Graph::new(graph.n(), edges).expect("reweighting keeps the graph valid"))
}
