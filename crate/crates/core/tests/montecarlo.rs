use cvft::montecarlo::{
    csv_rows, db_grid, estimate_rate, locate_threshold, run_trial, scan_rates, TrialConfig,
};
use cvft::noise::NoiseParams;
use cvft::rhg::RhgInstance;
use cvft::Error;

fn cfg(d: usize, db: f64, eta: f64, trials: u64, seed: u64) -> TrialConfig {
    TrialConfig {
        d,
        noise: NoiseParams::new(db, eta).unwrap(),
        trials,
        master_seed: seed,
    }
}

#[test]
fn heavy_squeezing_never_fails() {
    let p = estimate_rate(&cfg(3, 30.0, 1.0, 1000, 1), None).unwrap();
    assert_eq!(p.failures, 0);
    assert_eq!(p.ci_low, 0.0);
}

#[test]
fn weak_squeezing_saturates() {
    let p = estimate_rate(&cfg(3, 2.0, 0.9, 10_000, 2), None).unwrap();
    assert!((0.3..=0.5).contains(&p.p_logical), "{}", p.p_logical);
}

#[test]
fn larger_code_wins_below_the_noise_threshold() {
    // About one dB above the lossless crossing.
    let small = estimate_rate(&cfg(3, 4.5, 1.0, 10_000, 3), None).unwrap();
    let large = estimate_rate(&cfg(5, 4.5, 1.0, 10_000, 3), None).unwrap();
    assert!(large.ci_high < small.ci_low, "{small:?} {large:?}");
}

#[test]
fn trials_are_reproducible() {
    let lat = RhgInstance::new(5).unwrap();
    let noise = NoiseParams::new(4.0, 1.0).unwrap();
    for seed in 0..20 {
        assert_eq!(run_trial(&lat, &noise, seed).unwrap(), run_trial(&lat, &noise, seed).unwrap());
    }
    let c = cfg(3, 3.0, 1.0, 300, 9);
    assert_eq!(estimate_rate(&c, None).unwrap(), estimate_rate(&c, Some(1)).unwrap());
}

#[test]
fn one_trial_point() {
    let p = estimate_rate(&cfg(3, 3.0, 1.0, 1, 0), None).unwrap();
    assert!(p.p_logical == 0.0 || p.p_logical == 1.0);
    assert!(p.ci_low <= p.p_logical && p.p_logical <= p.ci_high);
    assert!(p.ci_low < p.ci_high);
}

#[test]
fn grids_on_one_side_have_no_crossing() {
    let grid = db_grid(12.0, 14.0, 1.0).unwrap();
    let points = scan_rates(1.0, &[3, 5], &grid, 200, 4, None).unwrap();
    assert!(matches!(locate_threshold(1.0, &points), Err(Error::NoCrossing(_))));
    // Below the crossing but short of saturation, so the larger code is
    // clearly worse everywhere.
    let grid = db_grid(2.0, 3.0, 0.5).unwrap();
    let points = scan_rates(1.0, &[3, 5], &grid, 1000, 4, None).unwrap();
    assert!(matches!(locate_threshold(1.0, &points), Err(Error::NoCrossing(_))));
}

#[test]
fn worker_count_does_not_change_results() {
    let grid = db_grid(3.0, 4.0, 0.5).unwrap();
    let base = csv_rows(&scan_rates(1.0, &[3, 5], &grid, 200, 77, Some(1)).unwrap());
    for w in [2, 3, 8] {
        assert_eq!(csv_rows(&scan_rates(1.0, &[3, 5], &grid, 200, 77, Some(w)).unwrap()), base);
    }
}

#[test]
fn common_random_numbers_across_the_grid() {
    // Trials reuse their seeds at every grid point, so the failure counts
    // fall steadily with squeezing instead of jittering.
    let grid = db_grid(2.0, 6.0, 1.0).unwrap();
    let points = scan_rates(1.0, &[3, 5], &grid, 500, 5, None).unwrap();
    for d in [3, 5] {
        let f: Vec<u64> = points.iter().filter(|p| p.d == d).map(|p| p.failures).collect();
        assert!(f.windows(2).all(|w| w[1] <= w[0]), "{f:?}");
    }
}
