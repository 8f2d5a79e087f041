//! Distributional characteristics of M = max{S_n : n >= 0} for the Gaussian
//! random walk with N(-β, 1) increments.
//!
//! Four routes compute the same quantities:
//! - [`zeta_series`]: power series in β with Riemann-zeta coefficients,
//!   convergent for β < 2√π and fastest at small β;
//! - [`spitzer`]: Spitzer-identity sums over n of Gaussian tail functionals,
//!   fastest at large β;
//! - [`asymptotic`]: the first few terms of the small-β expansions;
//! - [`extended`]: the zeta series with their tails rewritten as slowly
//!   convergent complex sums, valid for every β > 0.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Real, Result, SeriesEval};

pub mod asymptotic;
pub mod crossover;
pub mod extended;
pub mod spitzer;
pub mod zeta_series;

pub use asymptotic::asymptotic_stats;
pub use crossover::{crossover, Crossover};
pub use extended::{s_series, stats_extended};
pub use spitzer::{jk_spitzer, mean_spitzer, p_zero_spitzer, spitzer_stats, var_spitzer};
pub use zeta_series::{
    j0_zeta, jk_zeta, mean_zeta, p_zero_zeta, var_zeta, zeta_series_stats, zeta_tail_terms,
};

/// Largest moment order accepted by the J_k routines.
pub const MAX_MOMENT_ORDER: usize = 10;

/// Magnitude β > 0 of the (negative) per-step mean.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Drift<T>(T);

impl<T: Real> Drift<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !beta.is_finite() || !(beta > T::zero()) {
            return Err(Error::domain(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        Ok(Drift(beta))
    }

    #[inline]
    pub fn beta(self) -> T {
        self.0
    }
}

/// Moment order k of J_k(β) = Σ_n E((S_n^+)^k)/n, 0 <= k <= 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentOrder(usize);

impl MomentOrder {
    pub fn new(k: usize) -> Result<Self> {
        if k > MAX_MOMENT_ORDER {
            return Err(Error::domain(format!(
                "moment order must be at most {MAX_MOMENT_ORDER}, got {k}"
            )));
        }
        Ok(MomentOrder(k))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

/// Which computation produced a [`WalkStats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ZetaSeries,
    Spitzer,
    Asymptotic,
    Extended,
    MonteCarlo,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ZetaSeries => "zeta_series",
            Method::Spitzer => "spitzer",
            Method::Asymptotic => "asymptotic",
            Method::Extended => "extended",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta" | "zeta_series" => Ok(Method::ZetaSeries),
            "spitzer" => Ok(Method::Spitzer),
            "asymptotic" => Ok(Method::Asymptotic),
            "extended" => Ok(Method::Extended),
            "mc" | "monte_carlo" => Ok(Method::MonteCarlo),
            other => Err(Error::domain(format!("unknown method '{other}'"))),
        }
    }
}

/// Per-quantity truncation records.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics<T> {
    pub p_zero: SeriesEval<T>,
    pub mean: SeriesEval<T>,
    pub variance: SeriesEval<T>,
}

/// P(M = 0), E M and Var M with the route that computed them.
///
/// `j0` is J_0 = -ln P(M = 0) and `p_zero_deficit` is 1 - P(M = 0) computed
/// without cancellation; at large β `p_zero` itself rounds to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkStats<T> {
    pub p_zero: T,
    pub mean: T,
    pub variance: T,
    pub j0: T,
    pub p_zero_deficit: T,
    pub method: Method,
    pub diagnostics: Diagnostics<T>,
}

impl<T: Real> WalkStats<T> {
    pub(crate) fn from_parts(
        j0: SeriesEval<T>,
        mean: SeriesEval<T>,
        variance: SeriesEval<T>,
        method: Method,
    ) -> Self {
        let p_zero = (-j0.value).exp();
        // |Δp| <= p (e^{|ΔJ0|} - 1)
        let p_eval = SeriesEval::new(
            p_zero,
            j0.terms_used,
            p_zero * j0.tail_bound.exp_m1(),
            j0.bound,
        );
        WalkStats {
            p_zero,
            mean: mean.value,
            variance: variance.value,
            j0: j0.value,
            p_zero_deficit: -(-j0.value).exp_m1(),
            method,
            diagnostics: Diagnostics {
                p_zero: p_eval,
                mean,
                variance,
            },
        }
    }

    /// 0 < P(M=0) < 1, E M > 0, Var M > 0 and the Kingman bound E M < 1/(2β).
    pub fn satisfies_invariants(&self, d: Drift<T>) -> bool {
        self.p_zero_deficit > T::zero()
            && self.p_zero > T::zero()
            && self.p_zero <= T::one()
            && self.mean > T::zero()
            && self.variance > T::zero()
            && self.mean < (T::lit(2.0) * d.beta()).recip()
    }
}

/// ζ-series domain boundary 2√π.
pub fn zeta_radius<T: Real>() -> T {
    T::lit(2.0) * T::PI().sqrt()
}

/// Route chosen by [`stats_auto`]: the zeta series up to 1.2 β₀ (β₀ the
/// crossover drift, ≈ 1.7086) and never closer than 10% to its radius 2√π;
/// Spitzer beyond.
pub fn auto_method<T: Real>(d: Drift<T>) -> Method {
    let beta = d.beta();
    let beta0 = T::lit(crossover::BETA0_APPROX);
    if beta <= T::lit(0.9) * zeta_radius::<T>() && beta <= T::lit(1.2) * beta0 {
        Method::ZetaSeries
    } else {
        Method::Spitzer
    }
}

/// Computes the statistics with the route picked by [`auto_method`].
pub fn stats_auto<T: Real>(d: Drift<T>, prec: crate::Precision<T>) -> Result<WalkStats<T>> {
    stats_with(auto_method(d), d, prec)
}

/// Computes the statistics with an explicitly chosen analytic route.
pub fn stats_with<T: Real>(
    method: Method,
    d: Drift<T>,
    prec: crate::Precision<T>,
) -> Result<WalkStats<T>> {
    match method {
        Method::ZetaSeries => zeta_series_stats(d, prec),
        Method::Spitzer => spitzer_stats(d, prec),
        Method::Asymptotic => asymptotic_stats(d),
        Method::Extended => stats_extended(d, prec),
        Method::MonteCarlo => Err(Error::domain(
            "Monte Carlo estimates come from mc::simulate_max",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Precision;

    #[test]
    fn drift_validation() {
        assert!(Drift::new(0.5_f64).is_ok());
        assert!(Drift::new(0.0_f64).is_err());
        assert!(Drift::new(-1.0_f64).is_err());
        assert!(Drift::new(f64::INFINITY).is_err());
        assert!(Drift::new(f64::NAN).is_err());
    }

    #[test]
    fn moment_order_range() {
        assert!(MomentOrder::new(10).is_ok());
        assert!(MomentOrder::new(11).is_err());
    }

    #[test]
    fn method_tags_round_trip() {
        for m in [
            Method::ZetaSeries,
            Method::Spitzer,
            Method::Asymptotic,
            Method::Extended,
            Method::MonteCarlo,
        ] {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }

    #[test]
    fn dispatcher_picks_and_matches_routes() {
        let prec = Precision::default();
        for (beta, expect) in [
            (0.3_f64, Method::ZetaSeries),
            (2.0, Method::ZetaSeries),
            (3.0, Method::Spitzer),
            (12.0, Method::Spitzer),
        ] {
            let d = Drift::new(beta).unwrap();
            assert_eq!(auto_method(d), expect, "beta={beta}");
            let auto = stats_auto(d, prec).unwrap();
            let explicit = stats_with(expect, d, prec).unwrap();
            assert_eq!(auto.method, expect);
            assert_eq!(auto.p_zero.to_bits(), explicit.p_zero.to_bits());
            assert_eq!(auto.mean.to_bits(), explicit.mean.to_bits());
            assert_eq!(auto.variance.to_bits(), explicit.variance.to_bits());
        }
    }
}
