//! Displacement-noise variances from finite squeezing and loss.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    squeezing_db: f64,
    eta: f64,
}

impl NoiseParams {
    pub fn new(squeezing_db: f64, eta: f64) -> Result<Self> {
        if !(squeezing_db >= 0.0) || squeezing_db.is_infinite() {
            return Err(Error::InvalidSqueezing(squeezing_db));
        }
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidTransmission(eta));
        }
        Ok(NoiseParams { squeezing_db, eta })
    }

    pub fn squeezing_db(&self) -> f64 {
        self.squeezing_db
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// Squeezing parameter `r = s·ln10/20`.
pub fn r_from_db(s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidSqueezing(s));
    }
    Ok(s * std::f64::consts::LN_10 / 20.0)
}

/// `e^{−2r}/2`.
pub fn sigma2_fin(p: &NoiseParams) -> f64 {
    let r = p.squeezing_db * std::f64::consts::LN_10 / 20.0;
    (-2.0 * r).exp() / 2.0
}

/// `(1 − η)/(2η)`.
pub fn sigma2_loss(p: &NoiseParams) -> f64 {
    (1.0 - p.eta) / (2.0 * p.eta)
}

pub fn sigma2_total(p: &NoiseParams) -> f64 {
    sigma2_fin(p) + sigma2_loss(p)
}

/// One zero-mean Gaussian draw of variance `sigma2`. A zero variance returns
/// exactly zero without touching the stream.
pub fn sample_displacement<R: Rng + ?Sized>(sigma2: f64, rng: &mut R) -> Result<f64> {
    if !(sigma2 >= 0.0) || sigma2.is_infinite() {
        return Err(Error::InvalidVariance(sigma2));
    }
    if sigma2 == 0.0 {
        return Ok(0.0);
    }
    let z: f64 = rng.sample(StandardNormal);
    Ok(z * sigma2.sqrt())
}

/// One row per grid point: `(squeezing_db, sigma2_fin, sigma2_loss, sigma2_total)`.
pub fn noise_table(eta: f64, grid: &[f64]) -> Result<Vec<[f64; 4]>> {
    grid.iter()
        .map(|&s| {
            let p = NoiseParams::new(s, eta)?;
            Ok([s, sigma2_fin(&p), sigma2_loss(&p), sigma2_total(&p)])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn squeezing_parameter() {
        assert_eq!(r_from_db(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(r_from_db(10.0).unwrap(), 1.151_292_546_497_023, epsilon = 1e-12);
        assert_eq!(r_from_db(-1.0), Err(Error::InvalidSqueezing(-1.0)));
    }

    #[test]
    fn variances() {
        let vac = NoiseParams::new(0.0, 1.0).unwrap();
        assert_eq!(sigma2_total(&vac), 0.5);
        assert_eq!(sigma2_loss(&NoiseParams::new(7.0, 1.0).unwrap()), 0.0);
        let p = NoiseParams::new(9.4, 0.9).unwrap();
        let expected = 0.5 * 10f64.powf(-0.94) + 0.1 / 1.8;
        assert_abs_diff_eq!(sigma2_total(&p), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(sigma2_total(&p), 0.1130, epsilon = 1e-4);
        assert!(NoiseParams::new(1.0, 0.0).is_err());
        assert!(NoiseParams::new(1.0, 1.1).is_err());
        assert!(NoiseParams::new(-0.5, 1.0).is_err());
    }

    #[test]
    fn variance_is_decreasing() {
        let etas = [0.5, 0.8, 0.9, 0.95, 1.0];
        for w in etas.windows(2) {
            for s in 0..=30 {
                let a = NoiseParams::new(s as f64, w[0]).unwrap();
                let b = NoiseParams::new(s as f64, w[1]).unwrap();
                assert!(sigma2_total(&a) > sigma2_total(&b));
            }
        }
        for eta in etas {
            for s in 0..30 {
                let a = NoiseParams::new(s as f64 * 0.5, eta).unwrap();
                let b = NoiseParams::new(s as f64 * 0.5 + 0.5, eta).unwrap();
                assert!(sigma2_total(&a) > sigma2_total(&b));
            }
        }
    }

    #[test]
    fn sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(sample_displacement(0.0, &mut rng).unwrap(), 0.0);
        assert_eq!(
            sample_displacement(-0.1, &mut rng),
            Err(Error::InvalidVariance(-0.1))
        );
        let n = 1_000_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..n {
            let x = sample_displacement(1.0, &mut rng).unwrap();
            sum += x;
            sq += x * x;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!((0.99..=1.01).contains(&var), "{var}");

        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(
            sample_displacement(0.3, &mut a).unwrap(),
            sample_displacement(0.3, &mut b).unwrap()
        );
    }
}
