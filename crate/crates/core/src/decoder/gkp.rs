//! Maximum-likelihood GKP binning and the analog flip probability.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Lattice spacing of the square GKP code.
pub const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Terms with `|δ/√π − n| ≤ WINDOW` enter the wrapped-Gaussian sums.
const WINDOW: f64 = 8.5;

pub const WEIGHT_MIN: f64 = 1e-4;
pub const WEIGHT_MAX: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GkpOutcome {
    pub bit: bool,
    /// Distance to the nearest lattice point, in `[−√π/2, √π/2)`.
    pub residual: f64,
    pub p_flip: f64,
}

/// Rounds `measured` to the nearest multiple of `√π`; the parity of that
/// multiple is the logical bit.
pub fn gkp_decode(measured: f64, sigma2: f64) -> Result<GkpOutcome> {
    if !(sigma2 > 0.0) || sigma2.is_infinite() {
        return Err(Error::InvalidVariance(sigma2));
    }
    let t = measured / SQRT_PI;
    let n = (t + 0.5).floor();
    let residual = measured - SQRT_PI * n;
    Ok(GkpOutcome {
        bit: (n as i64).rem_euclid(2) == 1,
        residual,
        p_flip: p_flip(residual, sigma2),
    })
}

/// Posterior probability that the true shift moved the outcome by an odd
/// multiple of `√π`, given residual `delta` and Gaussian variance `sigma2`.
///
/// Terms are summed in order of increasing distance, so mirror-image inputs
/// give bit-identical results and `p_flip(±√π/2) = 1/2` exactly.
pub fn p_flip(delta: f64, sigma2: f64) -> f64 {
    let t = delta / SQRT_PI;
    let lo = (t - WINDOW).ceil() as i64;
    let hi = (t + WINDOW).floor() as i64;
    let mut terms: Vec<(f64, bool)> = (lo..=hi)
        .map(|n| (t - n as f64, n.rem_euclid(2) == 1))
        .collect();
    terms.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()));
    // Exponents are shifted by the nearest term so nothing underflows.
    let u0 = terms[0].0;
    let scale = PI / (2.0 * sigma2);
    let (mut even, mut odd) = (0.0, 0.0);
    for (u, is_odd) in terms {
        let w = (-(u * u - u0 * u0) * scale).exp();
        if is_odd {
            odd += w;
        } else {
            even += w;
        }
    }
    odd / (even + odd)
}

/// Log-likelihood-ratio weight `−ln(p/(1−p))`, clipped to
/// `[WEIGHT_MIN, WEIGHT_MAX]`.
pub fn analog_weight(p: f64) -> f64 {
    let w = -(p / (1.0 - p)).ln();
    if w.is_nan() {
        return WEIGHT_MAX;
    }
    w.clamp(WEIGHT_MIN, WEIGHT_MAX)
}
