//! Correlation-aware slot allocation for framed random access.
//!
//! Users sharing a collision channel are grouped into the `K` slots of a
//! frame using only first- and second-order activity statistics. The crate
//! is organised as:
//!
//! * [`traffic`]: correlated activity models (spatio-temporal Poisson events,
//!   repeating patterns, independent users, explicit joint tables) and
//!   pairwise statistics.
//! * [`allocation`]: greedy Min-Max / Min-Sum slot assignment, the uniform
//!   baseline and the transmission-probability scaling heuristic.
//! * [`throughput`]: exact enumeration, pairwise bounds, Monte Carlo
//!   simulation and the two-user closed form.
//! * [`experiments`]: configuration, sweeps, CSV output and signaling
//!   overhead.

pub mod allocation;
pub mod error;
pub mod experiments;
pub mod rng;
pub mod throughput;
pub mod traffic;

pub use error::{Error, Result};
