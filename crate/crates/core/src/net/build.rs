use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::DistanceMatrix;

use super::{check_eps, EpsNet, NetError, NetMethod};

/// Outcome of checking a candidate net against every qualifying pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// Lexicographically smallest qualifying pair whose canonical path
    /// misses the net.
    Failure {
        v1: usize,
        v2: usize,
    },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }
}

/// Sampling constants for random nets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    /// Multiplier of the `d * ln(1/eps) / eps` term (VC-dimension `d = 2`).
    pub c1: f64,
    /// Multiplier of the additive `1 / eps` term.
    pub c2: f64,
    pub max_retries: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            c1: 8.0,
            c2: 16.0,
            max_retries: 8,
        }
    }
}

/// Number of vertices drawn per sampling attempt:
/// `ceil((c1 * 2 / eps) * ln(1 / eps) + c2 / eps)`.
pub fn sample_budget(eps: f64, cfg: &SampleConfig) -> usize {
    ((cfg.c1 * 2.0 / eps) * (1.0 / eps).ln() + cfg.c2 / eps).ceil() as usize
}

pub fn verify_net(dm: &DistanceMatrix, eps: f64, net: &[usize]) -> Result<Verdict, NetError> {
    check_eps(eps)?;
    let n = dm.n();
    if let Some(&vertex) = net.iter().find(|&&u| u >= n) {
        return Err(NetError::VertexOutOfRange { vertex, n });
    }
    let witness = (0..n).into_par_iter().find_map_first(|v1| {
        (v1 + 1..n).find_map(|v2| {
            let missed =
                dm.qualifies(v1, v2, eps) && !net.iter().any(|&u| dm.on_canonical_path(v1, v2, u));
            missed.then_some((v1, v2))
        })
    });
    Ok(match witness {
        None => Verdict::Certified,
        Some((v1, v2)) => Verdict::Failure { v1, v2 },
    })
}

/// Greedy hitting set over the canonical paths of all qualifying pairs:
/// repeatedly takes the vertex on the most unhit paths, smallest id first.
pub fn build_net_greedy(dm: &DistanceMatrix, eps: f64) -> Result<EpsNet, NetError> {
    check_eps(eps)?;
    let n = dm.n();

    let mut paths: Vec<Vec<usize>> = Vec::new();
    for v1 in 0..n {
        for v2 in v1 + 1..n {
            if dm.qualifies(v1, v2, eps) {
                paths.push(
                    dm.canonical_path(v1, v2)
                        .expect("qualifying pairs are reachable"),
                );
            }
        }
    }
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, path) in paths.iter().enumerate() {
        for &v in path {
            through[v].push(id);
        }
    }
    let mut count: Vec<usize> = through.iter().map(Vec::len).collect();
    let mut hit = vec![false; paths.len()];
    let mut chosen = Vec::new();
    // max_by_key keeps the last maximum; scan in reverse for the smallest id
    while let Some(best) = (0..n)
        .rev()
        .max_by_key(|&v| count[v])
        .filter(|&v| count[v] > 0)
    {
        chosen.push(best);
        for &id in &through[best] {
            if !hit[id] {
                hit[id] = true;
                for &w in &paths[id] {
                    count[w] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    Ok(EpsNet {
        eps,
        vertices: chosen,
        method: NetMethod::Greedy,
        seed: dm.seed(),
        certified: true,
    })
}

/// Uniform sampling with replacement, verified; retries with fresh streams
/// and falls back to the greedy net, so the result is always certified.
pub fn build_net_sample(
    dm: &DistanceMatrix,
    eps: f64,
    seed: u64,
    cfg: &SampleConfig,
) -> Result<EpsNet, NetError> {
    check_eps(eps)?;
    let n = dm.n();
    let m = sample_budget(eps, cfg);
    for attempt in 0..=cfg.max_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut vertices: Vec<usize> = if n == 0 {
            Vec::new()
        } else {
            (0..m).map(|_| rng.random_range(0..n)).collect()
        };
        vertices.sort_unstable();
        vertices.dedup();
        if verify_net(dm, eps, &vertices)?.is_certified() {
            return Ok(EpsNet {
                eps,
                vertices,
                method: NetMethod::Sample,
                seed: dm.seed(),
                certified: true,
            });
        }
    }
    build_net_greedy(dm, eps)
}
