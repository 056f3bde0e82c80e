//! Thorup–Zwick approximate distance oracle.
//!
//! Levels `V = A_0 ⊇ A_1 ⊇ … ⊇ A_{k-1}` are sampled with probability
//! `n^{-1/k}` per level and `A_k` is empty. Every vertex `v` stores its pivot
//! `p_i(v)`, a nearest vertex of `A_i`, and its bunch: all `w` in
//! `A_i \ A_{i+1}` strictly closer to `v` than `A_{i+1}` is. Bunches are
//! grown as clusters, one truncated Dijkstra per sampled vertex.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{dijkstra_from, Graph, MinKey};

use super::OracleError;

#[derive(Debug, Clone, PartialEq)]
pub struct TzOracle {
    pub(crate) k: usize,
    pub(crate) n: usize,
    /// Highest level containing each vertex.
    pub(crate) level: Vec<u32>,
    /// `pivots[i * n + v]`: nearest vertex of `A_i` and its distance.
    pub(crate) pivots: Vec<Option<(u32, f64)>>,
    /// Per-vertex bunch, sorted by vertex id.
    pub(crate) bunches: Vec<Vec<(u32, f64)>>,
}

impl TzOracle {
    pub fn build(graph: &Graph, k: usize, seed: u64) -> Result<Self, OracleError> {
        if k == 0 {
            return Err(OracleError::InvalidK);
        }
        let n = graph.n();
        let level = sample_levels(n, k, seed);
        let members =
            |i: usize| -> Vec<usize> { (0..n).filter(|&v| level[v] as usize >= i).collect() };

        // distance to A_i for i in 0..=k; A_k is empty
        let mut to_level: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
        let mut pivots = Vec::with_capacity(k * n);
        for i in 0..k {
            let (dist, origin) = dijkstra_from(graph, &members(i));
            pivots.extend(
                origin
                    .iter()
                    .zip(&dist)
                    .map(|(o, &d)| o.map(|p| (p as u32, d))),
            );
            to_level.push(dist);
        }
        to_level.push(vec![f64::INFINITY; n]);

        let clusters: Vec<(usize, Vec<(usize, f64)>)> = (0..n)
            .into_par_iter()
            .map(|w| {
                let i = level[w] as usize;
                (w, cluster(graph, w, &to_level[i + 1]))
            })
            .collect();
        let mut bunches: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        for (w, members) in clusters {
            for (v, d) in members {
                bunches[v].push((w as u32, d));
            }
        }
        // clusters arrive in increasing w, so bunches are already sorted

        Ok(Self {
            k,
            n,
            level,
            pivots,
            bunches,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Members of level `A_i`.
    pub fn level_members(&self, i: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.level[v] as usize >= i)
            .collect()
    }

    pub fn pivot(&self, i: usize, v: usize) -> Option<(usize, f64)> {
        self.pivots[i * self.n + v].map(|(p, d)| (p as usize, d))
    }

    pub fn bunch(&self, v: usize) -> &[(u32, f64)] {
        &self.bunches[v]
    }

    pub fn bunch_distance(&self, v: usize, w: usize) -> Option<f64> {
        let b = &self.bunches[v];
        b.binary_search_by_key(&(w as u32), |&(x, _)| x)
            .ok()
            .map(|idx| b[idx].1)
    }

    /// Total number of bunch entries.
    pub fn bunch_size(&self) -> usize {
        self.bunches.iter().map(Vec::len).sum()
    }

    /// Estimate `D` with `d <= D <= (2k - 1) d`; `f64::INFINITY` for
    /// disconnected pairs.
    ///
    /// # Panics
    ///
    /// If `v1` or `v2` is not a vertex.
    pub fn query(&self, v1: usize, v2: usize) -> f64 {
        assert!(v1 < self.n && v2 < self.n, "vertex out of range");
        let (mut u, mut v) = (v1, v2);
        let (mut w, mut du) = (u, 0.0);
        let mut i = 0;
        loop {
            if let Some(dv) = self.bunch_distance(v, w) {
                return du + dv;
            }
            i += 1;
            if i == self.k {
                return f64::INFINITY;
            }
            std::mem::swap(&mut u, &mut v);
            match self.pivot(i, u) {
                Some((p, d)) => (w, du) = (p, d),
                None => return f64::INFINITY,
            }
        }
    }
}

fn sample_levels(n: usize, k: usize, seed: u64) -> Vec<u32> {
    let mut level = vec![0u32; n];
    if n == 0 {
        return level;
    }
    let p = (n as f64).powf(-1.0 / k as f64);
    for i in 1..k {
        let prev: Vec<usize> = (0..n).filter(|&v| level[v] as usize == i - 1).collect();
        // resample an empty level with a fresh stream
        for attempt in 0u64.. {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((i as u64) << 32) | attempt);
            let picked: Vec<usize> = prev
                .iter()
                .copied()
                .filter(|_| rng.random_bool(p))
                .collect();
            if !picked.is_empty() {
                for v in picked {
                    level[v] = i as u32;
                }
                break;
            }
        }
    }
    level
}

/// `C(w) = { v : d(w, v) < d(v, A_{i+1}) }` with distances.
fn cluster(graph: &Graph, w: usize, next_level: &[f64]) -> Vec<(usize, f64)> {
    let mut dist: HashMap<usize, f64> = HashMap::new();
    let mut settled = Vec::new();
    let mut heap = BinaryHeap::new();
    if 0.0 < next_level[w] {
        dist.insert(w, 0.0);
        heap.push(Reverse((MinKey(0.0), w)));
    }
    while let Some(Reverse((MinKey(d), v))) = heap.pop() {
        if dist.get(&v).is_some_and(|&best| d > best) {
            continue;
        }
        settled.push((v, d));
        for &(x, e) in graph.neighbors(v) {
            let cand = d + graph.edge(e).w;
            if cand < next_level[x] && dist.get(&x).is_none_or(|&cur| cand < cur) {
                dist.insert(x, cand);
                heap.push(Reverse((MinKey(cand), x)));
            }
        }
    }
    settled
}
