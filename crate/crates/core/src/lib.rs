//! Distributional characteristics of the all-time maximum of the Gaussian
//! random walk with negative drift: P(M = 0), E M, Var M and the sums
//! J_k(β) = Σ_n E((S_n^+)^k)/n.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the `*64`
//! aliases fix it at `f64`. The Monte Carlo oracle in [`mc`] is `f64` only.

mod error;
mod scalar;
mod series;

pub mod euler_maclaurin;
pub mod mc;
pub mod quadrature;
pub mod special;
pub mod walk;

pub use error::{Error, Result};
pub use scalar::Real;
pub use series::{BoundKind, Precision, SeriesEval};

pub use euler_maclaurin::{em_sum, kingman_constant, EmProblem, Integral, Remainder, Upper};
pub use mc::{simulate_max, Horizon, McConfig, McEstimate};
pub use special::{
    bernoulli_number, bernoulli_poly, hurwitz_zeta, lerch_phi, log_gamma, riemann_zeta,
    std_normal_cdf,
};
pub use walk::{
    asymptotic_stats, crossover, jk_spitzer, jk_zeta, mean_spitzer, mean_zeta, p_zero_spitzer,
    p_zero_zeta, s_series, stats_auto, stats_extended, stats_with, var_spitzer, var_zeta, Drift,
    Method, MomentOrder, WalkStats,
};

pub type SeriesEval64 = SeriesEval<f64>;
pub type Precision64 = Precision<f64>;
pub type Drift64 = Drift<f64>;
pub type WalkStats64 = WalkStats<f64>;
