//! Monte Carlo oracle: simulate the walk and estimate P(M=0), E M, Var M.
//!
//! Paths are split into fixed chunks of [`CHUNK_PATHS`]. Chunk c draws from
//! ChaCha20 seeded with `seed_from_u64(seed)` on stream c, and normals come from
//! `rand_distr::StandardNormal` (ziggurat). Per-path maxima are gathered in chunk
//! order and reduced sequentially, so the result does not depend on how many
//! threads ran the chunks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::special::normal::std_normal_pdf;
use crate::walk::Drift;
use crate::{Error, Result};

pub const CHUNK_PATHS: usize = 4096;

/// Auto horizon N = ceil(C/β²).
pub const AUTO_HORIZON_C: f64 = 60.0;

/// Truncation target relative to the statistical precision 1/√paths.
pub const TRUNCATION_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horizon {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub seed: u64,
    pub paths: usize,
    pub horizon: Horizon,
    pub drift: Drift<f64>,
}

impl McConfig {
    pub fn new(drift: Drift<f64>, paths: usize, seed: u64) -> Result<Self> {
        if paths == 0 {
            return Err(Error::domain("paths must be at least 1"));
        }
        Ok(McConfig {
            seed,
            paths,
            horizon: Horizon::Auto,
            drift,
        })
    }

    pub fn with_horizon(mut self, horizon: Horizon) -> Result<Self> {
        if horizon == Horizon::Fixed(0) {
            return Err(Error::domain("horizon must be at least 1"));
        }
        self.horizon = horizon;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub p_zero_hat: f64,
    pub mean_hat: f64,
    pub var_hat: f64,
    pub se_pzero: f64,
    pub se_mean: f64,
    pub se_var: f64,
    pub paths: usize,
    pub horizon_used: usize,
    pub seed: u64,
    /// Upper bound on P(the walk exceeds its running maximum after the horizon).
    pub truncation_bound: f64,
    pub truncation_note: String,
}

pub fn auto_horizon(d: Drift<f64>) -> usize {
    let beta = d.beta();
    (AUTO_HORIZON_C / (beta * beta)).ceil().max(1.0) as usize
}

/// Σ_{n>N} P(S_n > 0) = Σ_{n>N} P(-β√n)
///   <= (β√(2π))^{-1} (N+1)^{-1/2} ρ^{N+1}/(1-ρ), ρ = e^{-β²/2}.
///
/// The truncated maximum differs from M only if some S_n > 0 with n > N.
pub fn truncation_bound(d: Drift<f64>, horizon: usize) -> f64 {
    let beta = d.beta();
    let n1 = (horizon + 1) as f64;
    let half = 0.5 * beta * beta;
    // φ(β√(N+1))/(β√(N+1)) summed geometrically
    std_normal_pdf(beta * n1.sqrt()) / (beta * n1.sqrt()) / -(-half).exp_m1()
}

fn chunk_maxima(seed: u64, chunk: usize, count: usize, beta: f64, horizon: usize) -> Vec<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    (0..count)
        .map(|_| {
            let mut s = 0.0_f64;
            let mut m = 0.0_f64;
            for _ in 0..horizon {
                let z: f64 = rng.sample(StandardNormal);
                s += z - beta;
                if s > m {
                    m = s;
                }
            }
            m
        })
        .collect()
}

/// Simulates `cfg.paths` walks up to the horizon and records max(0, S_1, ..., S_N).
pub fn simulate_max(cfg: &McConfig) -> Result<McEstimate> {
    if cfg.paths == 0 {
        return Err(Error::domain("paths must be at least 1"));
    }
    let beta = cfg.drift.beta();
    let horizon = match cfg.horizon {
        Horizon::Auto => auto_horizon(cfg.drift),
        Horizon::Fixed(0) => return Err(Error::domain("horizon must be at least 1")),
        Horizon::Fixed(n) => n,
    };
    let bound = truncation_bound(cfg.drift, horizon);
    let target = TRUNCATION_FRACTION / (cfg.paths as f64).sqrt();
    if !(bound <= target) {
        return Err(Error::HorizonTooSmall(format!(
            "horizon {horizon} at beta {beta}: exceedance bound {bound:.3e} above target {target:.3e}"
        )));
    }

    let chunks = cfg.paths.div_ceil(CHUNK_PATHS);
    let per_chunk: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_PATHS.min(cfg.paths - c * CHUNK_PATHS);
            chunk_maxima(cfg.seed, c, count, beta, horizon)
        })
        .collect();
    let maxima: Vec<f64> = per_chunk.into_iter().flatten().collect();

    let n = maxima.len() as f64;
    let zeros = maxima.iter().filter(|&&m| m == 0.0).count() as f64;
    let p = zeros / n;
    let mean = maxima.iter().sum::<f64>() / n;
    let (m2, m4) = maxima.iter().fold((0.0, 0.0), |(a, b), &x| {
        let d = x - mean;
        let d2 = d * d;
        (a + d2, b + d2 * d2)
    });
    let var = if maxima.len() > 1 {
        m2 / (n - 1.0)
    } else {
        0.0
    };
    let mu2 = m2 / n;
    let mu4 = m4 / n;
    Ok(McEstimate {
        p_zero_hat: p,
        mean_hat: mean,
        var_hat: var,
        se_pzero: (p * (1.0 - p) / n).sqrt(),
        se_mean: (var / n).sqrt(),
        se_var: ((mu4 - mu2 * mu2).max(0.0) / n).sqrt(),
        paths: cfg.paths,
        horizon_used: horizon,
        seed: cfg.seed,
        truncation_bound: bound,
        truncation_note: format!(
            "horizon {horizon}; P(max attained after horizon) <= {bound:.3e} (target {target:.3e})"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(beta: f64, paths: usize, seed: u64) -> McConfig {
        McConfig::new(Drift::new(beta).unwrap(), paths, seed).unwrap()
    }

    #[test]
    fn deterministic_under_seed() {
        let a = simulate_max(&cfg(1.0, 10_000, 7)).unwrap();
        let b = simulate_max(&cfg(1.0, 10_000, 7)).unwrap();
        assert_eq!(a, b);
        let c = simulate_max(&cfg(1.0, 10_000, 8)).unwrap();
        assert_ne!(a.mean_hat, c.mean_hat);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let c = cfg(0.8, 3 * CHUNK_PATHS + 17, 99);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let three = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let a = one.install(|| simulate_max(&c)).unwrap();
        let b = three.install(|| simulate_max(&c)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn maxima_nonnegative_and_estimates_sane() {
        let e = simulate_max(&cfg(1.0, 20_000, 1)).unwrap();
        assert!(e.p_zero_hat > 0.0 && e.p_zero_hat < 1.0);
        assert!(e.mean_hat > 0.0 && e.var_hat > 0.0);
        // P(M=0) = 0.8005 at β = 1
        assert!((e.p_zero_hat - 0.800_543).abs() < 4.0 * e.se_pzero);
        assert!((e.mean_hat - 0.126_373).abs() < 4.0 * e.se_mean);
    }

    #[test]
    fn standard_error_scaling() {
        let a = simulate_max(&cfg(1.0, 40_000, 3)).unwrap();
        let b = simulate_max(&cfg(1.0, 80_000, 3)).unwrap();
        let ratio = a.se_mean / b.se_mean;
        assert!((ratio / 2f64.sqrt() - 1.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn horizon_checks() {
        let d = Drift::new(0.5).unwrap();
        assert_eq!(auto_horizon(d), 240);
        assert!(truncation_bound(d, 240) < 1e-12);
        let short = cfg(0.5, 1000, 1).with_horizon(Horizon::Fixed(3)).unwrap();
        assert!(matches!(
            simulate_max(&short),
            Err(Error::HorizonTooSmall(_))
        ));
        assert!(cfg(0.5, 1000, 1).with_horizon(Horizon::Fixed(0)).is_err());
        assert!(McConfig::new(d, 0, 1).is_err());
    }
}
