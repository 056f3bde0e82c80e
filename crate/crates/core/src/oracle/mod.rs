//! Distance oracles.
//!
//! * [`SimpleOracle`] stores exact distances from every landmark of a
//!   certified net and answers `min_u d(v1, u) + d(u, v2)`, which is exact
//!   whenever the pair qualifies for the net.
//! * [`TzOracle`] is the Thorup–Zwick oracle with stretch `2k - 1`.
//! * [`CombinedOracle`] uses the Thorup–Zwick estimate to dismiss close
//!   pairs and the landmark oracle to answer the rest exactly.

mod codec;
mod combined;
mod simple;
mod tz;

pub use codec::{CodecError, Oracle, FORMAT_VERSION, MAGIC};
pub use combined::{levels_for, CombinedOracle};
pub use simple::SimpleOracle;
pub use tz::TzOracle;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphError;
use crate::net::NetError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("landmark net is not certified for this graph")]
    Uncertified,
    #[error("the combined oracle requires an unweighted graph")]
    WeightedGraph,
    #[error("delta must lie in (0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("k must be at least 1")]
    InvalidK,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Answer of the combined oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum QueryAnswer {
    /// The pair is closer than `eps * n`.
    Bottom,
    Exact(f64),
}

impl QueryAnswer {
    pub fn value(&self) -> Option<f64> {
        match *self {
            QueryAnswer::Bottom => None,
            QueryAnswer::Exact(d) => Some(d),
        }
    }
}

impl fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAnswer::Bottom => f.write_str("bottom"),
            QueryAnswer::Exact(d) => write!(f, "{d}"),
        }
    }
}
