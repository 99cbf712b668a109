//! Cluster-state graph synthesis for multimode optical parametric oscillators
//! and Monte Carlo threshold estimation for the RHG-GKP code.
//!
//! The graph side runs `modes -> hgraph -> reduce`: mode labels and pump
//! components produce an interaction matrix G, which is reduced to the
//! cluster adjacency A, pruned and classified. The threshold side runs
//! `noise -> rhg -> decoder -> montecarlo`.

pub mod cli;
pub mod config;
pub mod decoder;
pub mod error;
pub mod hgraph;
pub mod modes;
pub mod montecarlo;
pub mod noise;
pub mod reduce;
pub mod rhg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{MatchWeight, Real};

pub type GMatrix = hgraph::GMatrix<f64>;
pub type GMatrix32 = hgraph::GMatrix<f32>;
pub type AMatrix = reduce::AMatrix<f64>;
pub type AMatrix32 = reduce::AMatrix<f32>;
pub type ClusterGraph = reduce::ClusterGraph<f64>;
pub type PmSpec = hgraph::PmSpec<f64>;
