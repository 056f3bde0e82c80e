use serde::Serialize;

use crate::graph::DistanceMatrix;

use super::{EmbedError, Embedding};

/// Ratios `l1 / d` over all pairs with positive finite distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub eps: f64,
    pub dim: usize,
    pub pairs: usize,
    pub min_ratio_all: f64,
    pub max_ratio_all: f64,
    /// Largest ratio over pairs at hop distance `>= eps * n`; `0` when no
    /// pair qualifies.
    pub max_ratio_large: f64,
    pub qualifying_pairs: usize,
    pub has_qualifying_pairs: bool,
    pub worst_large_pair: Option<(usize, usize)>,
}

/// `(min, max)` of `l1 / target` over pairs with positive target. Returns
/// `(1, 1)` when there are no such pairs.
pub fn expansion(emb: &Embedding, target: impl Fn(usize, usize) -> f64) -> (f64, f64) {
    let n = emb.n_points();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let t = target(i, j);
            if t > 0.0 && t.is_finite() {
                let r = emb.l1(i, j) / t;
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    if lo.is_infinite() {
        (1.0, 1.0)
    } else {
        (lo, hi)
    }
}

pub fn evaluate_distortion(
    dm: &DistanceMatrix,
    emb: &Embedding,
    eps: f64,
) -> Result<DistortionReport, EmbedError> {
    let n = dm.n();
    if emb.n_points() != n {
        return Err(EmbedError::SizeMismatch {
            expected: n,
            found: emb.n_points(),
        });
    }
    let mut report = DistortionReport {
        eps,
        dim: emb.dim(),
        pairs: 0,
        min_ratio_all: f64::INFINITY,
        max_ratio_all: 0.0,
        max_ratio_large: 0.0,
        qualifying_pairs: 0,
        has_qualifying_pairs: false,
        worst_large_pair: None,
    };
    for v1 in 0..n {
        for v2 in v1 + 1..n {
            let d = dm.d(v1, v2);
            if !(d > 0.0 && d.is_finite()) {
                continue;
            }
            let ratio = emb.l1(v1, v2) / d;
            report.pairs += 1;
            report.min_ratio_all = report.min_ratio_all.min(ratio);
            report.max_ratio_all = report.max_ratio_all.max(ratio);
            if dm.qualifies(v1, v2, eps) {
                report.qualifying_pairs += 1;
                if report.worst_large_pair.is_none() || ratio > report.max_ratio_large {
                    report.max_ratio_large = ratio;
                    report.worst_large_pair = Some((v1, v2));
                }
            }
        }
    }
    if report.pairs == 0 {
        report.min_ratio_all = 0.0;
    }
    report.has_qualifying_pairs = report.qualifying_pairs > 0;
    Ok(report)
}
