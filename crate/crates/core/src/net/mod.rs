//! Epsilon-nets for the set system of canonical shortest paths.
//!
//! A net `U` for `eps` contains a vertex of the canonical path of every
//! pair whose hop distance is at least `eps * n`. Because shortest paths
//! under the perturbation are unique, their set system has VC-dimension at
//! most two, which bounds the size of random nets; see [`shatter`] for the
//! brute-force check of that bound.

mod build;
pub mod shatter;

pub use build::{
    build_net_greedy, build_net_sample, sample_budget, verify_net, SampleConfig, Verdict,
};
pub use shatter::{find_shattered, is_shattered, vc_dimension, PathSystem, MAX_SUBSET};

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetError {
    #[error("eps must lie in (0, 1], got {0}")]
    InvalidEps(f64),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("subset of size {0} exceeds the brute-force limit of {MAX_SUBSET}")]
    SubsetTooLarge(usize),
    #[error("net file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub(crate) fn check_eps(eps: f64) -> Result<(), NetError> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(NetError::InvalidEps(eps))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetMethod {
    Greedy,
    Sample,
}

impl fmt::Display for NetMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetMethod::Greedy => "greedy",
            NetMethod::Sample => "sample",
        })
    }
}

impl FromStr for NetMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(NetMethod::Greedy),
            "sample" => Ok(NetMethod::Sample),
            other => Err(format!("unknown net method `{other}`")),
        }
    }
}

/// A landmark set, certified when it was checked against a distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsNet {
    pub eps: f64,
    /// Sorted, distinct vertex ids.
    pub vertices: Vec<usize>,
    /// The method that produced `vertices`; a sampled build that fell back
    /// to greedy reports `Greedy`.
    pub method: NetMethod,
    /// Perturbation seed of the canonical paths the net was checked against.
    pub seed: u64,
    pub certified: bool,
}

impl EpsNet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Re-runs verification and records the outcome in `certified`.
    pub fn certify(&mut self, dm: &crate::graph::DistanceMatrix) -> Result<Verdict, NetError> {
        let verdict = verify_net(dm, self.eps, &self.vertices)?;
        self.certified = verdict.is_certified();
        Ok(verdict)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "eps {}", self.eps);
        let _ = writeln!(out, "method {}", self.method);
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "size {}", self.vertices.len());
        for v in &self.vertices {
            let _ = writeln!(out, "{v}");
        }
        out
    }

    /// Parses the text form. The result is uncertified until
    /// [`EpsNet::certify`] succeeds.
    pub fn parse(text: &str) -> Result<Self, NetError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut last_line = 0;
        let mut header = |key: &str| -> Result<(usize, String), NetError> {
            let (line, body) = lines.next().ok_or(NetError::Parse {
                line: last_line + 1,
                msg: format!("missing `{key}` line"),
            })?;
            last_line = line;
            match body.split_once(char::is_whitespace) {
                Some((k, v)) if k == key => Ok((line, v.trim().to_string())),
                _ => Err(NetError::Parse {
                    line,
                    msg: format!("expected `{key} <value>`"),
                }),
            }
        };
        let bad = |line: usize, what: &str| NetError::Parse {
            line,
            msg: format!("invalid {what}"),
        };

        let (line, eps) = header("eps")?;
        let eps: f64 = eps.parse().map_err(|_| bad(line, "eps"))?;
        check_eps(eps).map_err(|_| bad(line, "eps"))?;
        let (line, method) = header("method")?;
        let method: NetMethod = method.parse().map_err(|_| bad(line, "method"))?;
        let (line, seed) = header("seed")?;
        let seed: u64 = seed.parse().map_err(|_| bad(line, "seed"))?;
        let (size_line, size) = header("size")?;
        let size: usize = size.parse().map_err(|_| bad(size_line, "size"))?;

        let mut vertices = Vec::with_capacity(size);
        for (line, body) in lines {
            let v: usize = body.parse().map_err(|_| bad(line, "vertex id"))?;
            if vertices.last().is_some_and(|&last| last >= v) {
                return Err(NetError::Parse {
                    line,
                    msg: "vertex ids must be strictly increasing".into(),
                });
            }
            vertices.push(v);
        }
        if vertices.len() != size {
            return Err(NetError::Parse {
                line: size_line,
                msg: format!("declared size {size}, found {} vertices", vertices.len()),
            });
        }
        Ok(EpsNet {
            eps,
            vertices,
            method,
            seed,
            certified: false,
        })
    }
}
