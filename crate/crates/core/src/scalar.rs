//! Scalar abstractions.
//!
//! Graph matrices and their reduction are written against [`Real`] so they run
//! in `f32` or `f64`. Matching weights go through [`MatchWeight`], which maps
//! any weight type onto exact integers before the blossom search runs.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use nalgebra::RealField;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar usable in the graph pipeline.
pub trait Real:
    RealField + Float + FromPrimitive + ToPrimitive + FromStr + Display + Debug + Copy + Send + Sync
{
    /// Relative tolerance on the eigen-reconstruction residual.
    fn recon_tol() -> Self;
    /// Relative tolerance below which a block is treated as singular.
    fn singular_tol() -> Self;
    /// Minimum eigenvalue gap across the partition boundary.
    fn gap_tol() -> Self;

    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("representable literal")
    }
}

impl Real for f64 {
    fn recon_tol() -> Self {
        1e-9
    }
    fn singular_tol() -> Self {
        1e-10
    }
    fn gap_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn recon_tol() -> Self {
        1e-4
    }
    fn singular_tol() -> Self {
        1e-5
    }
    fn gap_tol() -> Self {
        1e-5
    }
}

/// Weight type accepted by the matching decoder.
///
/// Integer weights are used as-is. Floating point weights are scaled so the
/// largest magnitude maps to `2^40` and rounded; the blossom search is exact
/// over the resulting integers.
pub trait MatchWeight: Copy + PartialOrd + Debug + Send + Sync {
    fn quantize(weights: &[Self]) -> Vec<i64>;
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
}

macro_rules! int_weight {
    ($($t:ty),*) => {$(
        impl MatchWeight for $t {
            fn quantize(weights: &[Self]) -> Vec<i64> {
                weights.iter().map(|&w| w as i64).collect()
            }
            fn zero() -> Self {
                0
            }
            fn add(self, other: Self) -> Self {
                self + other
            }
        }
    )*};
}
int_weight!(i32, i64);

macro_rules! float_weight {
    ($($t:ty),*) => {$(
        impl MatchWeight for $t {
            fn quantize(weights: &[Self]) -> Vec<i64> {
                const RESOLUTION: f64 = (1u64 << 40) as f64;
                let max = weights.iter().fold(0.0f64, |m, &w| m.max((w as f64).abs()));
                if max == 0.0 {
                    return vec![0; weights.len()];
                }
                let scale = RESOLUTION / max;
                weights.iter().map(|&w| ((w as f64) * scale).round() as i64).collect()
            }
            fn zero() -> Self {
                0.0
            }
            fn add(self, other: Self) -> Self {
                self + other
            }
        }
    )*};
}
float_weight!(f32, f64);
