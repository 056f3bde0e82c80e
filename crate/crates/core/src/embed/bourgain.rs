//! Bourgain's embedding: random Fréchet coordinates at geometric scales.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{scale_non_contracting, BaseEmbedder, EmbedError, Embedding, FiniteMetric};

/// Upper bound on measured expansion divided by `log2 |U|` for the default
/// constant `c3 = 4`. Pinned from seeds 0..50 on uniform metrics of 2 to 40
/// points (largest value 1.62) and on greedy-net metrics of path, cycle,
/// grid, G(n, p) and geometric graphs with up to 256 vertices (largest 2.46).
pub const GROWTH_BOUND: f64 = 3.0;

/// Bourgain embedder with `ceil(c3 * log2(n + 1))` repetitions per scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bourgain {
    pub c3: f64,
}

impl Default for Bourgain {
    fn default() -> Self {
        Self { c3: 4.0 }
    }
}

impl BaseEmbedder for Bourgain {
    fn embed(&self, metric: &FiniteMetric, seed: u64) -> Result<Embedding, EmbedError> {
        bourgain_embed(metric, seed, self.c3)
    }
}

/// For scales `q = 1..=ceil(log2 n)` and each repetition, samples a subset
/// `S` of size `min(2^q, n)` and emits the coordinate `x -> d(x, S)`. When a
/// scale has no more distinct subsets than repetitions, each subset is used
/// exactly once instead.
/// Pairs that no coordinate separates get a dedicated coordinate
/// `x -> d(x, i)`. Finally the whole embedding is scaled by the largest
/// `d / l1` ratio, so it never contracts.
pub fn bourgain_embed(metric: &FiniteMetric, seed: u64, c3: f64) -> Result<Embedding, EmbedError> {
    let n = metric.n();
    if n == 0 {
        return Err(EmbedError::InvalidMetric("no points".into()));
    }
    let scales = (n as f64).log2().ceil() as u32;
    let reps = (c3 * ((n + 1) as f64).log2()).ceil() as u32;

    let frechet = |subset: &[usize]| -> Vec<f64> {
        (0..n)
            .map(|x| {
                subset
                    .iter()
                    .map(|&s| metric.d(x, s))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    };
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for q in 1..=scales {
        let size = (1usize << q.min(usize::BITS - 1)).min(n);
        if binomial_at_most(n, size, reps as u64) {
            combinations(n, size, |subset| columns.push(frechet(subset)));
            continue;
        }
        for l in 0..reps {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((q as u64) << 32) | l as u64);
            columns.push(frechet(&sample(&mut rng, n, size).into_vec()));
        }
    }

    let mut emb = Embedding::from_columns(n, &columns);
    let mut extra = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if metric.d(i, j) > 0.0 && emb.l1(i, j) == 0.0 {
                extra.push((0..n).map(|x| metric.d(x, i)).collect::<Vec<_>>());
            }
        }
    }
    if !extra.is_empty() {
        columns.extend(extra);
        emb = Embedding::from_columns(n, &columns);
    }

    let mut alpha: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let d = metric.d(i, j);
            if d > 0.0 {
                alpha = alpha.max(d / emb.l1(i, j));
            }
        }
    }
    if alpha > 0.0 {
        scale_non_contracting(&mut emb, alpha, |i, j| metric.d(i, j));
    }
    Ok(emb)
}

/// Whether `n choose k <= limit`.
fn binomial_at_most(n: usize, k: usize, limit: u64) -> bool {
    let k = k.min(n - k) as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n as u64 - i) / (i + 1);
        if acc > limit {
            return false;
        }
    }
    true
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
