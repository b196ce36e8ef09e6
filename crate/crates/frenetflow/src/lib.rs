//! Numerical simulator and verification harness for inextensible flows of
//! curves in Euclidean n-space.
//!
//! A curve evolves under ∂α/∂t = Σ fᵢVᵢ, where {Vᵢ} is its Frenet frame.
//! The crate builds discrete curves, computes frames and curvatures,
//! enforces the arclength-preservation constraint on the tangential speed,
//! integrates the flow in time, and measures residuals of the analytic
//! identities the evolution should satisfy.

pub mod error;
pub mod export;
pub mod flow;
pub mod frenet;
pub mod geometry;
pub mod scenario;
pub mod verify;

pub use error::{Error, Result};
pub use flow::{FlowField, SpeedSpec, TangentialPolicy, Trajectory};
pub use frenet::FrenetData;
pub use geometry::{CurvePreset, DiscreteCurve, Topology};
