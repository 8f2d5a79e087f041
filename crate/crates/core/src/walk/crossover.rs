//! The drift at which the two series converge equally fast.
//!
//! Spitzer terms shrink like e^{-β²/2} per step and zeta-series terms like
//! β²/(4π). They coincide where x e^x = 2π with x = β²/2.

use crate::{Error, Result};

/// β₀ to the digits the dispatcher needs.
pub(crate) const BETA0_APPROX: f64 = 1.708_6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    /// Root of x e^x = 2π.
    pub x0: f64,
    /// β₀ = √(2 x₀).
    pub beta0: f64,
    /// Common decay ratio e^{-x₀} = β₀²/(4π).
    pub common_ratio: f64,
    pub bisection_steps: usize,
}

/// Bisection on [1, 2] (1·e < 2π < 2e²) down to width 1e-12, then two Newton steps.
pub fn crossover() -> Result<Crossover> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let g = |x: f64| x * x.exp() - two_pi;
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    if !(g(lo) < 0.0 && g(hi) > 0.0) {
        return Err(Error::ConvergenceFailure(
            "crossover bracket does not straddle the root".into(),
        ));
    }
    let mut steps = 0;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
        if steps > 200 {
            return Err(Error::ConvergenceFailure(
                "crossover bisection did not narrow".into(),
            ));
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        // d/dx x e^x = (1 + x) e^x
        x -= g(x) / ((1.0 + x) * x.exp());
    }
    Ok(Crossover {
        x0: x,
        beta0: (2.0 * x).sqrt(),
        common_ratio: (-x).exp(),
        bisection_steps: steps,
    })
}
