//! Informativeness orders over finite statistical experiments.
//!
//! An experiment is an `n x m` row-stochastic matrix: entry `(i, j)` is the
//! probability of observing signal `j` when the state is `i`. This crate
//! implements:
//!
//! - the Blackwell order (garbling feasibility, checked by a phase-1 simplex
//!   LP, with fast closed-form paths for binary-signal experiments),
//! - the Lehmann order for MLRP experiments (percentile-percentile curve
//!   containment, cross-checked by a quantile-transform oracle),
//! - a library of information-cost functions (likelihood separable,
//!   posterior separable, nested-logit Bregman, state-wise divergences, and
//!   closed-form binary examples),
//! - monotonicity audits that test a cost function against the first-order
//!   characterizations of Blackwell and Lehmann monotonicity, and
//! - constructive paths that connect comparable experiments through chains
//!   of elementary garblings and signal replacements.
//!
//! States and signals are indexed from 0 throughout.

pub mod audit;
pub mod cost;
pub mod error;
pub mod experiment;
pub mod io;
pub mod order;
pub mod path;
pub mod sampling;
pub mod simplex;
pub mod tol;

pub use error::Error;
pub use experiment::{Direction, DirectionKind, Experiment, StochasticMatrix};
pub use tol::Tol;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
