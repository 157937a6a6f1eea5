//! Analysis pipeline for the Lagrange problem (two fixed Newtonian centers
//! plus an elastic force from their midpoint) and its Euler specialization.
//!
//! * [`potential`]: potential, critical points, Hill regions, threshold scans.
//! * [`regularization`]: elliptic coordinates and the separated systems.
//! * [`dynamics`]: symplectic integration of the separated systems.
//! * [`momentmap`]: periods, their primitives and the boundary function `f`.
//! * [`toric`]: convexity classification of the sampled profile.
//! * [`acceptance`]: the self-checking verification suite.

// `!(x < y)` is used on purpose so NaN lands on the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod momentmap;
pub mod numerics;
pub mod params;
pub mod potential;
pub mod regularization;
pub mod toric;

pub use error::{Error, Result};
pub use exec::Executor;
pub use params::{Component, MassParams, PlanePoint, Regime};
