//! l1 embeddings that preserve large distances.
//!
//! Given a certified net `U`, a non-contracting embedding `g` of the metric
//! restricted to `U` (any [`BaseEmbedder`], [`Bourgain`] by default) is lifted
//! to the whole graph as `f(v) = g(p(v)) ⊕ h(v)`, where `p(v)` is the nearest
//! landmark and `h` is a star embedding realizing `r(v1) + r(v2)` with
//! `r(v) = d(v, p(v))`. The result never contracts, and expands pairs at
//! hop distance at least `eps * n` by at most `3 (D_g + C_h)`.

mod blackbox;
mod bourgain;
mod distortion;
mod star;

pub use blackbox::{blackbox_embed, BlackBoxEmbedding};
pub use bourgain::{bourgain_embed, Bourgain, GROWTH_BOUND};
pub use distortion::{evaluate_distortion, expansion, DistortionReport};
pub use star::{assign_net, star_embed, NetAssignment, StarMode};

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::DistanceMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("the net is empty")]
    EmptyNet,
    #[error("the net is not certified for this graph")]
    Uncertified,
    #[error("vertex {0} cannot reach any net vertex")]
    Unreachable(usize),
    #[error("vertex {vertex} out of range for {n} points")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("compressed star embedding needs m >= 1")]
    ZeroDimension,
    #[error("sign patterns of vertices {0} and {1} coincide; choose another seed")]
    DegenerateSigns(usize, usize),
    #[error("base embedding contracts pair ({0}, {1})")]
    BaseContracts(usize, usize),
    #[error("embedding covers {found} points, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),
    #[error("embedding file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite metric given by its full distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric {
    n: usize,
    d: Vec<f64>,
}

impl FiniteMetric {
    /// Checks finiteness, zero diagonal, symmetry and the triangle
    /// inequality (up to a relative 1e-9 for float sums).
    pub fn new(n: usize, d: Vec<f64>) -> Result<Self, EmbedError> {
        let bad = |msg: String| Err(EmbedError::InvalidMetric(msg));
        if d.len() != n * n {
            return bad(format!("expected {} entries, got {}", n * n, d.len()));
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return bad(format!("nonzero diagonal at {i}"));
            }
            for j in 0..n {
                let x = d[i * n + j];
                if !(x.is_finite() && x >= 0.0) {
                    return bad(format!("entry ({i}, {j}) = {x}"));
                }
                if x != d[j * n + i] {
                    return bad(format!("asymmetric at ({i}, {j})"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (dij, via) = (d[i * n + j], d[i * n + k] + d[k * n + j]);
                    if dij > via * (1.0 + 1e-9) {
                        return bad(format!("triangle inequality fails for ({i}, {k}, {j})"));
                    }
                }
            }
        }
        Ok(Self { n, d })
    }

    /// All distinct points at distance 1.
    pub fn uniform(n: usize) -> Self {
        let d = (0..n * n)
            .map(|idx| if idx / n == idx % n { 0.0 } else { 1.0 })
            .collect();
        Self { n, d }
    }

    /// The graph metric restricted to `points`, in the given order.
    pub fn restrict(dm: &DistanceMatrix, points: &[usize]) -> Result<Self, EmbedError> {
        if let Some(&vertex) = points.iter().find(|&&v| v >= dm.n()) {
            return Err(EmbedError::VertexOutOfRange { vertex, n: dm.n() });
        }
        let d = points
            .iter()
            .flat_map(|&a| points.iter().map(move |&b| dm.d(a, b)))
            .collect();
        Self::new(points.len(), d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// Points in `R^dim` under the l1 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    n_points: usize,
    dim: usize,
    coords: Vec<f64>,
}

impl Embedding {
    pub fn new(n_points: usize, dim: usize, coords: Vec<f64>) -> Result<Self, EmbedError> {
        if coords.len() != n_points * dim {
            return Err(EmbedError::SizeMismatch {
                expected: n_points * dim,
                found: coords.len(),
            });
        }
        if let Some(idx) = coords.iter().position(|c| !c.is_finite()) {
            return Err(EmbedError::NonFinite(idx / dim.max(1)));
        }
        Ok(Self {
            n_points,
            dim,
            coords,
        })
    }

    pub(crate) fn from_columns(n_points: usize, columns: &[Vec<f64>]) -> Self {
        let dim = columns.len();
        let mut coords = vec![0.0; n_points * dim];
        for (c, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                coords[i * dim + c] = x;
            }
        }
        Self {
            n_points,
            dim,
            coords,
        }
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn l1(&self, i: usize, j: usize) -> f64 {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        self.coords.iter_mut().for_each(|c| *c *= factor);
    }

    /// Text form: `n dim`, then one row of `dim` coordinates per point.
    /// Coordinates use shortest round-trip formatting.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_points, self.dim);
        for i in 0..self.n_points {
            let row: Vec<String> = self.point(i).iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, EmbedError> {
        let err = |line: usize, msg: &str| EmbedError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let mut toks = header.split_whitespace();
        let mut num = |what: &str| -> Result<usize, EmbedError> {
            toks.next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err(1, &format!("invalid {what}")))
        };
        let n_points = num("point count")?;
        let dim = num("dimension")?;
        let mut coords = Vec::with_capacity(n_points * dim);
        for i in 0..n_points {
            let line = i + 2;
            let row = lines.next().ok_or_else(|| err(line, "missing row"))?;
            let before = coords.len();
            for tok in row.split_whitespace() {
                coords.push(tok.parse().map_err(|_| err(line, "invalid coordinate"))?);
            }
            if coords.len() - before != dim {
                return Err(err(line, "wrong number of coordinates"));
            }
        }
        Self::new(n_points, dim, coords)
    }
}

/// Any procedure producing a non-contracting l1 embedding of a finite
/// metric. Closures with the matching signature implement it.
pub trait BaseEmbedder {
    fn embed(&self, metric: &FiniteMetric, seed: u64) -> Result<Embedding, EmbedError>;
}

impl<F> BaseEmbedder for F
where
    F: Fn(&FiniteMetric, u64) -> Result<Embedding, EmbedError>,
{
    fn embed(&self, metric: &FiniteMetric, seed: u64) -> Result<Embedding, EmbedError> {
        self(metric, seed)
    }
}

/// Scales `emb` by `factor`, nudging the factor upward until no pair with
/// a positive target is contracted despite float rounding.
pub(crate) fn scale_non_contracting(
    emb: &mut Embedding,
    factor: f64,
    target: impl Fn(usize, usize) -> f64,
) {
    let original = emb.clone();
    let mut factor = factor;
    loop {
        emb.scale(factor);
        let n = emb.n_points();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| emb.l1(i, j) >= target(i, j)));
        if ok {
            return;
        }
        *emb = original.clone();
        factor *= 1.0 + f64::EPSILON * 4.0;
    }
}
