//! Deterministic-latency service function chain (SFC) deployment over an
//! edge network.
//!
//! The crate covers the whole pipeline of admitting chains whose end-to-end
//! latency must land in a narrow window just under a bound:
//!
//! - [`model`], [`params`], [`latency`], [`accounting`], [`state`] and
//!   [`validate`] hold the system model: topology and requests, the closed-form
//!   processing and communication latency, cost/revenue/profit, residual
//!   resource bookkeeping and the feasibility check.
//! - [`graph`] weights nodes and links by the reciprocal of their remaining
//!   resources and finds least-cost paths with an extended Dijkstra that also
//!   charges node weights.
//! - [`allocator`] enumerates per-VNF core vectors and keeps the cheapest one
//!   inside the latency window.
//! - [`detsfcd`] ties these together into the admission algorithm;
//!   [`sphle`] is the shortest-path / latency-equalization baseline.
//! - [`oracle`] is an exhaustive solver for tiny instances.
//! - [`sim`] runs seeded discrete-event experiments with a tidal arrival
//!   process and exports metrics as CSV and JSON.
//! - [`commands`] backs the `detsfc` binary.
//!
//! ```
//! use detsfc::builders::{line_topology, request};
//! use detsfc::{detsfcd, ModelParams, NetworkState, NodeId};
//!
//! let mut state = NetworkState::new(line_topology(3, 64, 64.0, 10_000_000_000));
//! let mut req = request(4, 100.0, 15.0);
//! req.dest = NodeId(2);
//! let dep = detsfcd::deploy(&mut state, &req, &ModelParams::default()).unwrap();
//! assert!(dep.achieved_latency <= 15.0);
//! ```

// `!(x > 0.0)` is used on purpose so NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod accounting;
pub mod allocator;
pub mod builders;
pub mod commands;
pub mod detsfcd;
pub mod error;
pub mod graph;
pub mod latency;
pub mod model;
pub mod oracle;
pub mod params;
pub mod sim;
pub mod sphle;
pub mod state;
pub mod strategy;
pub mod validate;

pub use detsfcd::{RejectReason, Rejection};
pub use error::{ConfigError, ModelError, OracleError};
pub use model::{Deployment, EdgeNode, LinkId, NodeId, PhysLink, SfcRequest, Topology, VnfDescriptor, VnfKind};
pub use params::ModelParams;
pub use state::NetworkState;
pub use strategy::StrategyKind;
