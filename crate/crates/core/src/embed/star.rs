use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::DistanceMatrix;

use super::{scale_non_contracting, EmbedError, Embedding};

/// Nearest landmark of every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct NetAssignment {
    pub landmarks: Vec<usize>,
    /// Index into `landmarks` of the nearest landmark.
    pub nearest: Vec<usize>,
    /// Distance to the nearest landmark.
    pub radius: Vec<f64>,
}

impl NetAssignment {
    pub fn n(&self) -> usize {
        self.radius.len()
    }

    /// The nearest landmark `p(v)` as a vertex id.
    pub fn p(&self, v: usize) -> usize {
        self.landmarks[self.nearest[v]]
    }

    /// `r(v1) + r(v2)` for distinct vertices, `0` for `v1 == v2`.
    pub fn d_prime(&self, v1: usize, v2: usize) -> f64 {
        if v1 == v2 {
            0.0
        } else {
            self.radius[v1] + self.radius[v2]
        }
    }
}

/// Ties in the distance go to the smallest landmark id.
pub fn assign_net(dm: &DistanceMatrix, landmarks: &[usize]) -> Result<NetAssignment, EmbedError> {
    if landmarks.is_empty() {
        return Err(EmbedError::EmptyNet);
    }
    let n = dm.n();
    if let Some(&vertex) = landmarks.iter().find(|&&u| u >= n) {
        return Err(EmbedError::VertexOutOfRange { vertex, n });
    }
    let mut sorted = landmarks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let mut nearest = Vec::with_capacity(n);
    let mut radius = Vec::with_capacity(n);
    for v in 0..n {
        let (idx, r) = sorted
            .iter()
            .enumerate()
            .map(|(i, &u)| (i, dm.d(v, u)))
            .fold(
                (0, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            );
        if !r.is_finite() {
            return Err(EmbedError::Unreachable(v));
        }
        nearest.push(idx);
        radius.push(r);
    }
    Ok(NetAssignment {
        landmarks: sorted,
        nearest,
        radius,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarMode {
    /// One coordinate per vertex; reproduces `d'` exactly.
    Exact,
    /// `m` coordinates with random signs, rescaled to be non-contracting.
    Compressed { m: usize },
}

/// Embeds the pseudo-distance `d'(v1, v2) = r(v1) + r(v2)`.
///
/// Exact mode places `v` at `r(v)` on its own axis. Compressed mode places
/// it at `(2 r(v) / m) * sigma(v)` for a per-vertex sign vector `sigma(v)`,
/// whose expected l1 distance `2 max(r1, r2)` lies between `d'` and `2 d'`,
/// then rescales by the largest measured `d' / l1`.
pub fn star_embed(na: &NetAssignment, mode: StarMode, seed: u64) -> Result<Embedding, EmbedError> {
    let n = na.n();
    match mode {
        StarMode::Exact => {
            let mut coords = vec![0.0; n * n];
            for v in 0..n {
                coords[v * n + v] = na.radius[v];
            }
            Embedding::new(n, n, coords)
        }
        StarMode::Compressed { m } => {
            if m == 0 {
                return Err(EmbedError::ZeroDimension);
            }
            let mut coords = Vec::with_capacity(n * m);
            for v in 0..n {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(v as u64);
                let mag = 2.0 * na.radius[v] / m as f64;
                coords.extend((0..m).map(|_| if rng.random::<bool>() { mag } else { -mag }));
            }
            let mut emb = Embedding::new(n, m, coords)?;
            let mut beta: f64 = 0.0;
            for v1 in 0..n {
                for v2 in v1 + 1..n {
                    let target = na.d_prime(v1, v2);
                    if target > 0.0 {
                        let got = emb.l1(v1, v2);
                        if got == 0.0 {
                            return Err(EmbedError::DegenerateSigns(v1, v2));
                        }
                        beta = beta.max(target / got);
                    }
                }
            }
            if beta > 0.0 {
                scale_non_contracting(&mut emb, beta, |a, b| na.d_prime(a, b));
            }
            Ok(emb)
        }
    }
}
