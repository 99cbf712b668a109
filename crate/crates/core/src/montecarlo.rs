//! Monte Carlo estimation of logical error rates and threshold crossings.
//!
//! Trial `i` of a point at distance `d` draws its noise from a ChaCha8
//! stream seeded with `mix(mix(master_seed, d), i)`, so results do not
//! depend on scheduling and every squeezing value of one distance sees the
//! same underlying Gaussian draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decoder::{
    analog_weight, correction_from_matching, defect_pair_weights, gkp_decode, mwpm,
};
use crate::error::{Error, Result};
use crate::noise::{sample_displacement, sigma2_total, NoiseParams};
use crate::rhg::RhgInstance;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix64(seed ^ splitmix64(index))`.
pub fn mix(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialConfig {
    pub d: usize,
    pub noise: NoiseParams,
    pub trials: u64,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub squeezing_db: f64,
    pub d: usize,
    pub trials: u64,
    pub failures: u64,
    pub p_logical: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub d_small: usize,
    pub d_large: usize,
    pub squeezing_db: f64,
    /// Statistical error of this crossing, in dB.
    pub error_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub eta: f64,
    pub threshold_db: f64,
    pub crossings: Vec<Crossing>,
    pub uncertainty_db: f64,
}

/// One noisy RHG round: returns `true` on a logical failure.
pub fn run_trial(lat: &RhgInstance, noise: &NoiseParams, trial_seed: u64) -> Result<bool> {
    let sigma2 = sigma2_total(noise);
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let nq = lat.num_qubits();
    let mut flips = Vec::with_capacity(nq);
    let mut weights = Vec::with_capacity(nq);
    for _ in 0..nq {
        // The noiseless outcome sits on the even lattice point 0.
        let x = sample_displacement(sigma2, &mut rng)?;
        let o = gkp_decode(x, sigma2)?;
        flips.push(o.bit);
        weights.push(analog_weight(o.p_flip));
    }
    let defects = lat.syndrome_from_flips(&flips)?;
    let problem = defect_pair_weights(lat, &weights, &defects)?;
    let matching = mwpm(&problem)?;
    let correction = correction_from_matching(lat, &problem, &matching);
    for (f, c) in flips.iter_mut().zip(&correction) {
        *f ^= c;
    }
    lat.logical_parity(&flips)
}

/// 95% Wilson score interval, widened if needed to contain `f/n`.
pub fn wilson(failures: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = (center - half).max(0.0).min(p);
    let hi = (center + half).min(1.0).max(p);
    (lo, hi)
}

fn with_pool<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidScan(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn rate_on(lat: &RhgInstance, cfg: &TrialConfig) -> Result<RatePoint> {
    if cfg.trials == 0 {
        return Err(Error::InvalidScan("trials must be at least 1".into()));
    }
    let stream = mix(cfg.master_seed, cfg.d as u64);
    let failures = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(lat, &cfg.noise, mix(stream, i)).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let (ci_low, ci_high) = wilson(failures, cfg.trials);
    Ok(RatePoint {
        squeezing_db: cfg.noise.squeezing_db(),
        d: cfg.d,
        trials: cfg.trials,
        failures,
        p_logical: failures as f64 / cfg.trials as f64,
        ci_low,
        ci_high,
    })
}

/// Failure rate over `cfg.trials` independent trials. `workers` sets the
/// thread count (`None` uses the global pool); it never changes the result.
pub fn estimate_rate(cfg: &TrialConfig, workers: Option<usize>) -> Result<RatePoint> {
    let lat = RhgInstance::new(cfg.d)?;
    with_pool(workers, || rate_on(&lat, cfg))?
}

/// `from, from + step, …` up to `to`, rounded to 1e-9 dB.
pub fn db_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Error::InvalidScan(format!(
            "bad grid from {from} to {to} step {step}"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((from + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

/// Rate points for every distance (ascending) and grid value (ascending).
pub fn scan_rates(
    eta: f64,
    distances: &[usize],
    db_grid: &[f64],
    trials: u64,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<Vec<RatePoint>> {
    let mut ds = distances.to_vec();
    ds.sort_unstable();
    ds.dedup();
    let mut grid = db_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    if ds.len() < 2 {
        return Err(Error::InvalidScan("need at least two distances".into()));
    }
    if grid.len() < 3 {
        return Err(Error::InvalidScan("need at least three grid points".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidScan("trials must be at least 1".into()));
    }
    let lattices = ds
        .iter()
        .map(|&d| RhgInstance::new(d))
        .collect::<Result<Vec<_>>>()?;
    with_pool(workers, || {
        let mut out = Vec::with_capacity(ds.len() * grid.len());
        for lat in &lattices {
            for &s in &grid {
                let cfg = TrialConfig {
                    d: lat.d(),
                    noise: NoiseParams::new(s, eta)?,
                    trials,
                    master_seed,
                };
                out.push(rate_on(lat, &cfg)?);
            }
        }
        Ok(out)
    })?
}

fn smoothed_logit(failures: u64, trials: u64) -> f64 {
    let p = (failures as f64 + 0.5) / (trials as f64 + 1.0);
    (p / (1.0 - p)).ln()
}

fn clamped_logit(p: f64, trials: u64) -> f64 {
    let eps = 0.5 / (trials as f64 + 1.0);
    let p = p.clamp(eps, 1.0 - eps);
    (p / (1.0 - p)).ln()
}

/// Half-width of the Wilson interval on the logit scale.
fn logit_halfwidth(p: &RatePoint) -> f64 {
    (clamped_logit(p.ci_high, p.trials) - clamped_logit(p.ci_low, p.trials)) / 2.0
}

/// Pairwise crossings of adjacent distances, interpolated linearly in
/// `(dB, logit rate)` at the first point where the larger distance starts to
/// do better.
pub fn locate_threshold(eta: f64, points: &[RatePoint]) -> Result<ThresholdResult> {
    let mut ds: Vec<usize> = points.iter().map(|p| p.d).collect();
    ds.sort_unstable();
    ds.dedup();
    if ds.len() < 2 {
        return Err(Error::InvalidScan("need at least two distances".into()));
    }
    let curve = |d: usize| {
        let mut c: Vec<&RatePoint> = points.iter().filter(|p| p.d == d).collect();
        c.sort_by(|a, b| a.squeezing_db.total_cmp(&b.squeezing_db));
        c
    };
    let mut crossings = Vec::new();
    for pair in ds.windows(2) {
        let (small, large) = (curve(pair[0]), curve(pair[1]));
        let xs: Vec<f64> = small.iter().map(|p| p.squeezing_db).collect();
        if xs != large.iter().map(|p| p.squeezing_db).collect::<Vec<_>>() {
            return Err(Error::InvalidScan(format!(
                "distances {} and {} use different grids",
                pair[0], pair[1]
            )));
        }
        let f: Vec<f64> = small
            .iter()
            .zip(&large)
            .map(|(a, b)| smoothed_logit(a.failures, a.trials) - smoothed_logit(b.failures, b.trials))
            .collect();
        let hit = (0..f.len().saturating_sub(1)).find(|&i| f[i] < 0.0 && f[i + 1] >= 0.0);
        let Some(i) = hit else {
            let diag: Vec<String> = xs
                .iter()
                .zip(&f)
                .map(|(x, v)| format!("{x}:{v:.3}"))
                .collect();
            return Err(Error::NoCrossing(format!(
                "d={} vs d={} never cross; logit gap by dB [{}]",
                pair[0],
                pair[1],
                diag.join(" ")
            )));
        };
        let t = -f[i] / (f[i + 1] - f[i]);
        let x = xs[i] + t * (xs[i + 1] - xs[i]);
        let hw = |c: &[&RatePoint]| {
            let (a, b) = (logit_halfwidth(c[i]), logit_halfwidth(c[i + 1]));
            a + t * (b - a)
        };
        let spread = (hw(&small).powi(2) + hw(&large).powi(2)).sqrt();
        let slope = (f[i + 1] - f[i]) / (xs[i + 1] - xs[i]);
        crossings.push(Crossing {
            d_small: pair[0],
            d_large: pair[1],
            squeezing_db: x,
            error_db: spread / slope,
        });
    }
    let k = crossings.len() as f64;
    let threshold_db = crossings.iter().map(|c| c.squeezing_db).sum::<f64>() / k;
    let lo = crossings.iter().map(|c| c.squeezing_db).fold(f64::INFINITY, f64::min);
    let hi = crossings.iter().map(|c| c.squeezing_db).fold(f64::NEG_INFINITY, f64::max);
    let stat = crossings.iter().map(|c| c.error_db.powi(2)).sum::<f64>() / k;
    Ok(ThresholdResult {
        eta,
        threshold_db,
        uncertainty_db: (((hi - lo) / 2.0).powi(2) + stat).sqrt(),
        crossings,
    })
}

/// `scan_rates` followed by `locate_threshold`.
pub fn threshold_scan(
    eta: f64,
    distances: &[usize],
    db_grid: &[f64],
    trials: u64,
    master_seed: u64,
    workers: Option<usize>,
) -> Result<(Vec<RatePoint>, ThresholdResult)> {
    let points = scan_rates(eta, distances, db_grid, trials, master_seed, workers)?;
    let result = locate_threshold(eta, &points)?;
    Ok((points, result))
}

pub const CSV_HEADER: &str = "distance,squeezing_db,trials,failures,p_logical,ci_low,ci_high";

pub fn csv_rows(points: &[RatePoint]) -> String {
    let mut s = String::new();
    s.push_str(CSV_HEADER);
    s.push('\n');
    for p in points {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.d, p.squeezing_db, p.trials, p.failures, p.p_logical, p.ci_low, p.ci_high
        ));
    }
    s
}

/// Final `#` line of a threshold CSV.
pub fn summary_line(result: &ThresholdResult) -> String {
    let pairs: Vec<String> = result
        .crossings
        .iter()
        .map(|c| format!("{}-{}:{:.4}", c.d_small, c.d_large, c.squeezing_db))
        .collect();
    format!(
        "# eta={} threshold_db={:.4} uncertainty_db={:.4} crossings={}",
        result.eta,
        result.threshold_db,
        result.uncertainty_db,
        pairs.join(";")
    )
}
