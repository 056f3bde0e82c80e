use crate::graph::DistanceMatrix;
use crate::net::EpsNet;

use super::{
    assign_net, expansion, star_embed, BaseEmbedder, EmbedError, Embedding, FiniteMetric,
    NetAssignment, StarMode,
};

/// `f(v) = g(p(v)) ⊕ h(v)` together with the measured constants of its
/// parts.
#[derive(Debug, Clone)]
pub struct BlackBoxEmbedding {
    pub embedding: Embedding,
    pub assignment: NetAssignment,
    pub g_dim: usize,
    pub h_dim: usize,
    /// Largest `l1 / d` of the base embedding over landmark pairs.
    pub base_expansion: f64,
    /// Largest `l1 / d'` of the star embedding over pairs with `d' > 0`.
    pub star_expansion: f64,
}

impl BlackBoxEmbedding {
    /// Upper bound `3 (D_g + C_h)` on `l1 / d` for every pair the net
    /// certifies.
    pub fn large_pair_bound(&self) -> f64 {
        3.0 * (self.base_expansion + self.star_expansion)
    }
}

/// Lifts a base embedding of the net to all vertices.
///
/// An empty certified net (no pair qualifies) is replaced by the landmark
/// set `{0}`; any superset of a certified net is still certified.
pub fn blackbox_embed(
    dm: &DistanceMatrix,
    net: &EpsNet,
    base: &dyn BaseEmbedder,
    mode: StarMode,
    seed: u64,
) -> Result<BlackBoxEmbedding, EmbedError> {
    if !net.certified {
        return Err(EmbedError::Uncertified);
    }
    let n = dm.n();
    if n == 0 {
        return Err(EmbedError::EmptyNet);
    }
    let assignment = if net.is_empty() {
        assign_net(dm, &[0])?
    } else {
        assign_net(dm, &net.vertices)?
    };
    let landmarks = &assignment.landmarks;

    let metric = FiniteMetric::restrict(dm, landmarks)?;
    let g = base.embed(&metric, seed)?;
    if g.n_points() != landmarks.len() {
        return Err(EmbedError::SizeMismatch {
            expected: landmarks.len(),
            found: g.n_points(),
        });
    }
    for i in 0..landmarks.len() {
        for j in i + 1..landmarks.len() {
            if g.l1(i, j) < metric.d(i, j) * (1.0 - 1e-9) {
                return Err(EmbedError::BaseContracts(landmarks[i], landmarks[j]));
            }
        }
    }
    let (_, base_expansion) = expansion(&g, |i, j| metric.d(i, j));

    let h = star_embed(&assignment, mode, seed)?;
    let (_, star_expansion) = expansion(&h, |a, b| assignment.d_prime(a, b));

    let (g_dim, h_dim) = (g.dim(), h.dim());
    let dim = g_dim + h_dim;
    let mut coords = Vec::with_capacity(n * dim);
    for v in 0..n {
        coords.extend_from_slice(g.point(assignment.nearest[v]));
        coords.extend_from_slice(h.point(v));
    }
    Ok(BlackBoxEmbedding {
        embedding: Embedding::new(n, dim, coords)?,
        assignment,
        g_dim,
        h_dim,
        base_expansion,
        star_expansion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{evaluate_distortion, Bourgain};
    use crate::generate;
    use crate::graph::apsp;
    use crate::net::{build_net_greedy, NetMethod};

    #[test]
    fn path_ten_single_landmark() {
        let dm = apsp(&generate::path(10).perturb(0)).unwrap();
        let net = build_net_greedy(&dm, 0.5).unwrap();
        assert_eq!(net.vertices, vec![4]);
        let bb = blackbox_embed(&dm, &net, &Bourgain::default(), StarMode::Exact, 0).unwrap();
        let f = &bb.embedding;
        assert_eq!(bb.g_dim, 0);
        assert_eq!(f.dim(), bb.g_dim + bb.h_dim);
        assert_eq!(bb.h_dim, 10);
        assert_eq!(f.l1(0, 9), 9.0);
        assert_eq!(f.l1(0, 1), 7.0);
        let r = evaluate_distortion(&dm, f, 0.5).unwrap();
        assert!(r.min_ratio_all >= 1.0);
        assert_eq!(r.max_ratio_large, 1.0);
    }

    #[test]
    fn landmark_pairs_use_only_g() {
        let dm = apsp(&generate::cycle(12).unwrap().perturb(0)).unwrap();
        let net = build_net_greedy(&dm, 0.25).unwrap();
        assert!(net.len() >= 2);
        let bb = blackbox_embed(&dm, &net, &Bourgain::default(), StarMode::Exact, 3).unwrap();
        let metric = FiniteMetric::restrict(&dm, &net.vertices).unwrap();
        let g = Bourgain::default().embed(&metric, 3).unwrap();
        let (a, b) = (net.vertices[0], net.vertices[1]);
        assert_eq!(bb.embedding.l1(a, b), g.l1(0, 1));
    }

    #[test]
    fn pluggable_base() {
        // an isometric line embedding for path graphs
        let line = |m: &FiniteMetric, _seed: u64| {
            Embedding::new(m.n(), 1, (0..m.n()).map(|i| m.d(0, i)).collect())
        };
        let dm = apsp(&generate::path(20).perturb(0)).unwrap();
        let net = build_net_greedy(&dm, 0.25).unwrap();
        let bb = blackbox_embed(&dm, &net, &line, StarMode::Exact, 0).unwrap();
        assert_eq!(bb.g_dim, 1);
        assert_eq!(bb.base_expansion, 1.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let dm = apsp(&generate::path(10).perturb(0)).unwrap();
        let mut net = build_net_greedy(&dm, 0.5).unwrap();
        let squash = |m: &FiniteMetric, _seed: u64| Embedding::new(m.n(), 0, vec![]);
        let wide = build_net_greedy(&dm, 0.2).unwrap();
        assert!(matches!(
            blackbox_embed(&dm, &wide, &squash, StarMode::Exact, 0),
            Err(EmbedError::BaseContracts(..))
        ));
        net.certified = false;
        assert_eq!(
            blackbox_embed(&dm, &net, &Bourgain::default(), StarMode::Exact, 0).unwrap_err(),
            EmbedError::Uncertified
        );
    }

    #[test]
    fn empty_net_uses_vertex_zero() {
        let dm = apsp(&generate::cycle(8).unwrap().perturb(0)).unwrap();
        let net = EpsNet {
            eps: 1.0,
            vertices: vec![],
            method: NetMethod::Greedy,
            seed: 0,
            certified: true,
        };
        let bb = blackbox_embed(&dm, &net, &Bourgain::default(), StarMode::Exact, 0).unwrap();
        assert_eq!(bb.assignment.landmarks, vec![0]);
        let r = evaluate_distortion(&dm, &bb.embedding, 1.0).unwrap();
        assert!(r.min_ratio_all >= 1.0);
    }
}
