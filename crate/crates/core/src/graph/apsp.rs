use rayon::prelude::*;

use super::paths::{bfs_hops, sssp, PerturbedGraph, PerturbedLength};
use super::GraphError;

/// All-pairs weighted and hop distances plus the canonical shortest-path
/// forests they were read from.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    seed: u64,
    perturbed: Vec<Option<PerturbedLength>>,
    hops: Vec<Option<u32>>,
    // parent[s * n + v]: predecessor of v on the canonical path from s
    parent: Vec<Option<u32>>,
}

/// Runs one perturbed Dijkstra and one BFS per vertex.
///
/// Fails with [`GraphError::ReseedRequired`] if some vertex has two
/// optimal parents, i.e. the perturbation did not make paths unique.
pub fn apsp(pg: &PerturbedGraph) -> Result<DistanceMatrix, GraphError> {
    let n = pg.n();
    let g = pg.graph();
    let rows: Vec<_> = (0..n)
        .into_par_iter()
        .map(|s| {
            let forest = sssp(pg, s)?;
            for v in 0..n {
                let Some(dv) = forest.dist[v] else { continue };
                if v == s {
                    continue;
                }
                let parents = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&(p, e)| {
                        forest.dist[p].is_some_and(|dp| dp + pg.edge_length(e) == dv)
                    })
                    .count();
                if parents != 1 {
                    return Err(GraphError::ReseedRequired {
                        origin: s,
                        vertex: v,
                        parents,
                    });
                }
            }
            let hops = bfs_hops(g, s)?;
            Ok((forest, hops))
        })
        .collect::<Result<_, GraphError>>()?;

    let mut perturbed = Vec::with_capacity(n * n);
    let mut hops = Vec::with_capacity(n * n);
    let mut parent = Vec::with_capacity(n * n);
    for (forest, h) in rows {
        perturbed.extend(forest.dist);
        parent.extend(forest.parent.into_iter().map(|p| p.map(|p| p as u32)));
        hops.extend(h);
    }
    Ok(DistanceMatrix {
        n,
        seed: pg.seed(),
        perturbed,
        hops,
        parent,
    })
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Seed of the perturbation that defined the canonical paths.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// True weighted distance, `f64::INFINITY` if unreachable.
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.perturbed[i * self.n + j].map_or(f64::INFINITY, |p| p.base)
    }

    /// Hop distance, `None` if unreachable.
    pub fn d_unw(&self, i: usize, j: usize) -> Option<u32> {
        self.hops[i * self.n + j]
    }

    pub fn perturbed(&self, i: usize, j: usize) -> Option<PerturbedLength> {
        self.perturbed[i * self.n + j]
    }

    pub fn is_connected(&self) -> bool {
        self.hops.iter().all(Option::is_some)
    }

    /// Vertices of the canonical path from `v1` to `v2`, in order.
    pub fn canonical_path(&self, v1: usize, v2: usize) -> Option<Vec<usize>> {
        self.perturbed(v1, v2)?;
        let row = &self.parent[v1 * self.n..(v1 + 1) * self.n];
        let mut path = vec![v2];
        let mut cur = v2;
        while let Some(p) = row[cur] {
            cur = p as usize;
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Whether `u` lies on the canonical path between `v1` and `v2`.
    ///
    /// Decided by additivity of perturbed lengths: the integer tie parts
    /// must sum exactly, the weight parts up to float rounding.
    pub fn on_canonical_path(&self, v1: usize, v2: usize, u: usize) -> bool {
        let (Some(a), Some(b), Some(c)) = (
            self.perturbed(v1, u),
            self.perturbed(u, v2),
            self.perturbed(v1, v2),
        ) else {
            return false;
        };
        let base = a.base + b.base;
        a.tie + b.tie == c.tie && (base - c.base).abs() <= 1e-12 * base.max(c.base)
    }

    /// Whether the pair is at hop distance at least `eps * n`.
    ///
    /// Hop counts are integers, so a relative slack of 1e-12 on the
    /// threshold only absorbs rounding in `eps * n`.
    pub fn qualifies(&self, v1: usize, v2: usize, eps: f64) -> bool {
        self.d_unw(v1, v2)
            .is_some_and(|h| h as f64 >= eps * self.n as f64 * (1.0 - 1e-12))
    }
}
