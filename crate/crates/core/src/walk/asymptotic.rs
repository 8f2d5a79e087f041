//! Leading terms of the small-β expansions.

use crate::special::zeta::riemann_zeta;
use crate::walk::{Drift, Method, WalkStats};
use crate::{BoundKind, Precision, Real, Result, SeriesEval};

/// E M ≈ 1/(2β) + ζ(½)/√(2π) + β/4,
/// Var M ≈ 1/(4β²) - 1/4 - 2ζ(-½)β/√(2π) - β²/24,
/// P(M=0) ≈ √2 β exp(β ζ(½)/√(2π)).
///
/// The `tail_bound` of each quantity is the magnitude of the first dropped
/// term (β² ζ(-½)/(2√(2π)) for the mean, β³ ζ(-3/2)/(3√(2π)) for the variance,
/// and the β³ term of the exponent for P(M=0)). These are estimates, not
/// bounds: the expansions are only asymptotic in β ↓ 0.
pub fn asymptotic_stats<T: Real>(d: Drift<T>) -> Result<WalkStats<T>> {
    let beta = d.beta();
    let prec = Precision::new(T::epsilon(), 1000)?;
    let z_half = riemann_zeta(T::lit(0.5), prec)?.value;
    let z_mhalf = riemann_zeta(T::lit(-0.5), prec)?.value;
    let z_m3half = riemann_zeta(T::lit(-1.5), prec)?.value;
    let s = (T::lit(2.0) * T::PI()).sqrt().recip();
    let beta_sq = beta * beta;

    let exponent = beta * z_half * s;
    let j0 = -(T::SQRT_2() * beta).ln() - exponent;
    let j0_next = (beta * beta_sq * z_mhalf * s / T::lit(6.0)).abs();

    let mean = (T::lit(2.0) * beta).recip() + z_half * s + beta * T::lit(0.25);
    let mean_next = (beta_sq * z_mhalf * s * T::lit(0.5)).abs();

    let variance = (T::lit(4.0) * beta_sq).recip()
        - T::lit(0.25)
        - T::lit(2.0) * z_mhalf * beta * s
        - beta_sq / T::lit(24.0);
    let var_next = (beta_sq * beta * z_m3half * s / T::lit(3.0)).abs();

    Ok(WalkStats::from_parts(
        SeriesEval::new(j0, 0, j0_next, BoundKind::Heuristic),
        SeriesEval::new(mean, 0, mean_next, BoundKind::Heuristic),
        SeriesEval::new(variance, 0, var_next, BoundKind::Heuristic),
        Method::Asymptotic,
    ))
}
