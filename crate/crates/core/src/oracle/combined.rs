use crate::graph::{apsp, Graph};
use crate::net::{build_net_greedy, build_net_sample, check_eps, NetMethod, SampleConfig};

use super::{OracleError, QueryAnswer, SimpleOracle, TzOracle};

/// Reports `bottom` for pairs closer than `eps * n` and the exact distance
/// for all others, on unweighted graphs.
///
/// A Thorup–Zwick oracle with `k = ceil(1 / delta)` dismisses pairs whose
/// estimate is already below `eps * n`. Any remaining pair has
/// `d >= eps * n / (2k - 1)`, so a landmark oracle built for
/// `eps' = eps / (2k - 1)` answers it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedOracle {
    pub(crate) eps: f64,
    pub(crate) delta: f64,
    pub(crate) tz: TzOracle,
    pub(crate) landmark: SimpleOracle,
}

/// `ceil(1 / delta)`.
pub fn levels_for(delta: f64) -> usize {
    (1.0 / delta).ceil() as usize
}

impl CombinedOracle {
    pub fn build(
        graph: &Graph,
        eps: f64,
        delta: f64,
        seed: u64,
        method: NetMethod,
    ) -> Result<Self, OracleError> {
        Self::build_with(graph, eps, delta, seed, method, &SampleConfig::default())
    }

    pub fn build_with(
        graph: &Graph,
        eps: f64,
        delta: f64,
        seed: u64,
        method: NetMethod,
        sample: &SampleConfig,
    ) -> Result<Self, OracleError> {
        check_eps(eps)?;
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(OracleError::InvalidDelta(delta));
        }
        if !graph.is_unweighted() {
            return Err(OracleError::WeightedGraph);
        }
        let k = levels_for(delta);
        let eps_landmark = eps / (2 * k - 1) as f64;
        let tz = TzOracle::build(graph, k, seed)?;
        let dm = apsp(&graph.perturb(seed))?;
        let net = match method {
            NetMethod::Greedy => build_net_greedy(&dm, eps_landmark)?,
            NetMethod::Sample => build_net_sample(&dm, eps_landmark, seed, sample)?,
        };
        let landmark = SimpleOracle::build(graph, &net)?;
        Ok(Self {
            eps,
            delta,
            tz,
            landmark,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn k(&self) -> usize {
        self.tz.k()
    }

    pub fn n(&self) -> usize {
        self.tz.n()
    }

    pub fn tz(&self) -> &TzOracle {
        &self.tz
    }

    pub fn landmark(&self) -> &SimpleOracle {
        &self.landmark
    }

    /// Costs one Thorup–Zwick query (`O(k)` bunch lookups) plus one
    /// landmark scan (`O(|U|)`).
    ///
    /// # Panics
    ///
    /// If `v1` or `v2` is not a vertex.
    pub fn query(&self, v1: usize, v2: usize) -> QueryAnswer {
        let threshold = self.eps * self.n() as f64;
        if self.tz.query(v1, v2) < threshold {
            return QueryAnswer::Bottom;
        }
        let tau = self.landmark.query(v1, v2);
        // pairs in [eps n / (2k - 1), eps n) are answered exactly by the
        // landmarks but still reported as bottom
        if tau >= threshold && tau.is_finite() {
            QueryAnswer::Exact(tau)
        } else {
            QueryAnswer::Bottom
        }
    }
}
