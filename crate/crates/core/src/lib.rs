//! Shortest-path epsilon-nets and what they buy.
//!
//! Under a deterministic tie-breaking perturbation every pair of vertices has
//! a unique canonical shortest path, and the set system formed by those paths
//! has VC-dimension at most two. A small vertex set `U` therefore hits every
//! canonical path with at least `eps * n` hops. This crate builds and
//! certifies such nets and uses them for:
//!
//! * [`oracle`]: a landmark oracle exact on far pairs, a Thorup–Zwick
//!   oracle, and their combination which reports `bottom` for pairs closer
//!   than `eps * n` and the exact distance otherwise;
//! * [`embed`]: lifting any non-contracting l1 embedding of the net to the
//!   whole graph while bounding the expansion of far pairs.
//!
//! [`graph`] holds the graph model and the brute-force all-pairs tables
//! every other module is tested against.

pub mod embed;
pub mod generate;
pub mod graph;
pub mod net;
pub mod oracle;

pub use graph::{apsp, DistanceMatrix, Graph, GraphError};
pub use net::{EpsNet, NetMethod};
pub use oracle::{CombinedOracle, Oracle, QueryAnswer, SimpleOracle, TzOracle};
