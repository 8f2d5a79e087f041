//! Lerch's transcendent Φ(z, s, v) for real 0 < z <= 1.

use crate::special::gamma::{gamma_real, log_gamma};
use crate::special::zeta::hurwitz_zeta;
use crate::{BoundKind, Error, Precision, Real, Result, SeriesEval};

/// Hard cap on the ln z power series in the Bateman expansion.
pub const BATEMAN_MAX_TERMS: usize = 200;

/// Past this z the direct series is always handed to the dispatcher's
/// geometric-decay check.
const DIRECT_ALWAYS_BELOW: f64 = 0.5;

fn check_args<T: Real>(z: T, s: T, v: T) -> Result<()> {
    if !z.is_finite() || !s.is_finite() || !v.is_finite() {
        return Err(Error::domain("Lerch arguments must be finite"));
    }
    if !(z > T::zero() && z <= T::one()) {
        return Err(Error::domain(format!(
            "Lerch z must lie in (0, 1], got {z}"
        )));
    }
    if !(v > T::zero()) {
        return Err(Error::domain(format!("Lerch v must be positive, got {v}")));
    }
    Ok(())
}

/// Φ(z, s, v) = Σ_{n>=0} z^n (v + n)^{-s}, valid for z < 1.
///
/// Consecutive terms shrink by at most ρ_n = z (1 + 1/(v+n))^{max(-s, 0)},
/// which decreases in n, so once ρ_n < 1 the remainder is at most
/// |t_n| / (1 - ρ_n).
pub fn lerch_phi_direct<T: Real>(z: T, s: T, v: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    check_args(z, s, v)?;
    if z == T::one() {
        return Err(Error::domain("direct Lerch series needs z < 1"));
    }
    let tol = prec.tol();
    let growth = (-s).max(T::zero());
    let mut sum = T::zero();
    let mut zn = T::one();
    let mut last_bound = T::infinity();
    for n in 0..prec.max_terms {
        let x = v + T::from_usize_lossy(n);
        let term = zn * x.powf(-s);
        let rho = z * (T::one() + x.recip()).powf(growth);
        if rho < T::one() {
            last_bound = term.abs() / (T::one() - rho);
            if last_bound <= tol {
                return Ok(SeriesEval::new(sum, n, last_bound, BoundKind::Rigorous));
            }
        }
        sum = sum + term;
        zn = zn * z;
    }
    Err(Error::tolerance("lerch_phi (direct)", last_bound, tol))
}

/// Bateman's expansion in powers of ln z:
/// Φ = Γ(1-s) z^{-v} (ln 1/z)^{s-1} + z^{-v} Σ_r ζ(s-r, v) (ln z)^r / r!.
///
/// Needs s ∉ {1, 2, 3, ...} and |ln z| < 2π. The coefficients ζ(s-r, v) grow
/// like Γ(r)/(2π)^r, so terms decay geometrically with ratio |ln z|/(2π); the
/// sum stops once a term drops below tol/10 after three consecutive decreases.
pub fn lerch_phi_bateman<T: Real>(z: T, s: T, v: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    check_args(z, s, v)?;
    if s >= T::one() && s == s.round() {
        return Err(Error::BatemanInvalid(format!(
            "s = {s} is a positive integer"
        )));
    }
    let ln_z = z.ln();
    let two_pi = T::lit(2.0) * T::PI();
    if ln_z.abs() >= two_pi {
        return Err(Error::BatemanInvalid(format!(
            "|ln z| = {} is not below 2π",
            ln_z.abs()
        )));
    }
    let tol = prec.tol();
    let cap = prec.max_terms.min(BATEMAN_MAX_TERMS);
    let z_pow_v = (-v * ln_z).exp();

    let singular = if z == T::one() {
        T::zero()
    } else {
        let one_minus_s = T::one() - s;
        let gamma = if one_minus_s > T::zero() {
            log_gamma(one_minus_s)?.exp()
        } else {
            gamma_real(one_minus_s)?
        };
        gamma * z_pow_v * (-ln_z).powf(s - T::one())
    };

    let abs_ln = ln_z.abs();
    let mut sum = T::zero();
    let mut weight = T::one(); // (ln z)^r / r!
    let mut inner_bound = T::zero();
    // the coefficients alternate in size between even and odd r, so each
    // term is compared with the one two steps back
    let mut mags: Vec<T> = Vec::with_capacity(cap);
    for r in 0..cap {
        // each coefficient only needs accuracy relative to the weight it is scaled by
        let scale = if weight == T::zero() {
            T::max_value()
        } else {
            weight.abs().recip()
        };
        let inner_tol = (tol / T::lit(10.0 * cap as f64) * scale.max(T::one())).min(T::lit(1e100));
        let zeta = hurwitz_zeta(
            s - T::from_usize_lossy(r),
            v,
            Precision::new(inner_tol, prec.max_terms)?,
        )?;
        let term = zeta.value * weight;
        sum = sum + term;
        inner_bound = inner_bound + zeta.tail_bound * weight.abs();
        let mag = term.abs();
        mags.push(mag);
        let settled = r >= 3 && (r - 1..=r).all(|i| mags[i] <= mags[i - 2]);
        let recent = mags[r].max(mags[r.saturating_sub(1)]);
        if settled && recent * z_pow_v < tol / T::lit(10.0) {
            let q = abs_ln / two_pi;
            let tail = recent * q / (T::one() - q);
            return Ok(SeriesEval::new(
                singular + z_pow_v * sum,
                r + 1,
                z_pow_v * (tail + inner_bound),
                BoundKind::Heuristic,
            ));
        }
        weight = weight * ln_z / T::from_usize_lossy(r + 1);
    }
    let last = mags.iter().rev().take(2).fold(T::zero(), |a, &m| a.max(m));
    Err(Error::tolerance("lerch_phi (Bateman)", last * z_pow_v, tol))
}

/// Φ(z, s, v) with analytic continuation in s.
///
/// z = 1 is the Hurwitz zeta function. Otherwise the direct series runs when
/// z <= 1/2 or when z^N reaches the tolerance within the term budget; closer
/// to z = 1 Bateman's expansion takes over.
pub fn lerch_phi<T: Real>(z: T, s: T, v: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    check_args(z, s, v)?;
    if z == T::one() {
        return hurwitz_zeta(s, v, prec);
    }
    let needed = prec.tol().ln() / z.ln();
    if z <= T::lit(DIRECT_ALWAYS_BELOW) || needed <= T::from_usize_lossy(prec.max_terms) {
        match lerch_phi_direct(z, s, v, prec) {
            Err(Error::ToleranceNotMet { .. }) if z > T::lit(DIRECT_ALWAYS_BELOW) => {}
            other => return other,
        }
    }
    lerch_phi_bateman(z, s, v, prec)
}
