//! Riemann and Hurwitz zeta functions on the real line.

use crate::scalar::{cos_pi, sin_pi};
use crate::special::bernoulli::bernoulli_ratio;
use crate::special::gamma::log_gamma;
use crate::{BoundKind, Error, Precision, Real, Result, SeriesEval};

/// Borwein's weights overflow f64 beyond this many terms.
const BORWEIN_MAX_TERMS: usize = 350;

/// Below this s the Hurwitz zeta switches from Euler-Maclaurin to its Fourier series.
const HURWITZ_FOURIER_BELOW: f64 = -3.0;

const POLE_GUARD: f64 = 1e-12;

/// ζ(s) for s >= 1/2, s != 1, from Borwein's accelerated alternating series
/// ζ(s) = (1 - 2^{1-s})^{-1} Σ (-1)^{k} e_k (k+1)^{-s}.
///
/// Truncation error is at most 3 / ((3 + √8)^n |1 - 2^{1-s}|).
pub(crate) fn zeta_borwein<T: Real>(s: T, tol: T, max_terms: usize) -> Result<SeriesEval<T>> {
    let denom = T::one() - T::lit(2.0).powf(T::one() - s);
    let rate = 3.0 + 8.0_f64.sqrt();
    let bound_at = |n: usize| -> f64 { 3.0 / (rate.powi(n as i32) * denom.abs().to_f64_lossy()) };
    let need = ((3.0 / (tol.to_f64_lossy() * denom.abs().to_f64_lossy())).ln() / rate.ln())
        .ceil()
        .max(1.0);
    let cap = max_terms.min(BORWEIN_MAX_TERMS);
    if !need.is_finite() || need as usize > cap {
        return Err(Error::tolerance("riemann_zeta", T::lit(bound_at(cap)), tol));
    }
    let n = need as usize;

    // d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), accumulated in f64.
    let nf = n as f64;
    let mut t = 1.0 / nf;
    let mut d = Vec::with_capacity(n + 1);
    let mut acc = t;
    d.push(nf * acc);
    for i in 1..=n {
        let i_f = i as f64;
        t *= 4.0 * (nf + i_f - 1.0) * (nf - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        acc += t;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = T::zero();
    for (k, dk) in d.iter().take(n).enumerate() {
        let weight = T::lit(1.0 - dk / dn);
        let term = weight * T::from_usize_lossy(k + 1).powf(-s);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    Ok(SeriesEval::new(
        sum / denom,
        n,
        T::lit(bound_at(n)),
        BoundKind::Rigorous,
    ))
}

/// ln|2^s π^{s-1} sin(πs/2) Γ(1-s)| and the sign of the sine, for s < 1/2.
/// The sign is 0 at the trivial zeros.
fn reflection_factor_ln<T: Real>(s: T) -> Result<(T, i8)> {
    let sine = sin_pi(s * T::lit(0.5));
    if sine == T::zero() {
        return Ok((T::neg_infinity(), 0));
    }
    let ln =
        s * T::LN_2() + (s - T::one()) * T::PI().ln() + log_gamma(T::one() - s)? + sine.abs().ln();
    Ok((ln, if sine > T::zero() { 1 } else { -1 }))
}

/// Riemann zeta function ζ(s) for real s != 1.
///
/// For s >= 1/2 the accelerated alternating series is summed directly; for
/// s < 1/2 the value comes from the functional equation applied to ζ(1 - s).
pub fn riemann_zeta<T: Real>(s: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    if !s.is_finite() {
        return Err(Error::domain("zeta argument must be finite"));
    }
    if (s - T::one()).abs() < T::lit(POLE_GUARD) {
        return Err(Error::PoleAtOne);
    }
    let tol = prec.tol();
    if s >= T::lit(0.5) {
        return zeta_borwein(s, tol, prec.max_terms);
    }
    if s.abs() < T::lit(1e-8) {
        // ζ(s) = -1/2 - s ln(2π)/2 + O(s²)
        let v = -T::lit(0.5) - s * T::lit(0.918_938_533_204_672_8);
        return Ok(SeriesEval::new(v, 0, s * s, BoundKind::Heuristic));
    }
    let (ln_factor, sign) = reflection_factor_ln(s)?;
    if sign == 0 {
        return Ok(SeriesEval::new(
            T::zero(),
            0,
            T::zero(),
            BoundKind::Rigorous,
        ));
    }
    if ln_factor > T::max_value().ln() {
        return Err(Error::Overflow(format!(
            "zeta({s}) exceeds the floating-point range"
        )));
    }
    let factor = ln_factor.exp();
    // the inner sum is cheap; run it to full working precision regardless
    let inner = zeta_borwein(
        T::one() - s,
        (tol / factor).min(T::epsilon()),
        prec.max_terms,
    )?;
    let signed = if sign > 0 { factor } else { -factor };
    Ok(SeriesEval::new(
        signed * inner.value,
        inner.terms_used,
        factor * inner.tail_bound,
        BoundKind::Rigorous,
    ))
}

/// ln|ζ(s)| and sign(ζ(s)), accurate to relative error `rel_tol` plus rounding.
/// Used where ζ at large negative arguments overflows but the quotient
/// ζ(s)/Γ(...) does not.
pub(crate) fn zeta_ln_abs<T: Real>(s: T, rel_tol: T) -> Result<(T, i8)> {
    if (s - T::one()).abs() < T::lit(POLE_GUARD) {
        return Err(Error::PoleAtOne);
    }
    // |ζ(σ)| >= 1 for σ >= 1/2, so an absolute tolerance doubles as a relative one.
    let direct = |sigma: T| -> Result<(T, i8)> {
        let z = zeta_borwein(sigma, rel_tol, BORWEIN_MAX_TERMS)?.value;
        Ok((z.abs().ln(), if z > T::zero() { 1 } else { -1 }))
    };
    if s >= T::lit(0.5) {
        return direct(s);
    }
    if s.abs() < T::lit(1e-8) {
        let v = -T::lit(0.5) - s * T::lit(0.918_938_533_204_672_8);
        return Ok((v.abs().ln(), -1));
    }
    let (ln_factor, sign) = reflection_factor_ln(s)?;
    if sign == 0 {
        return Ok((T::neg_infinity(), 0));
    }
    let (ln_inner, inner_sign) = direct(T::one() - s)?;
    Ok((ln_factor + ln_inner, sign * inner_sign))
}

/// Hurwitz zeta function ζ(s, v) = Σ_{n>=0} (v + n)^{-s}, continued to s < 1.
pub fn hurwitz_zeta<T: Real>(s: T, v: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    if !s.is_finite() || !v.is_finite() {
        return Err(Error::domain("Hurwitz zeta arguments must be finite"));
    }
    if !(v > T::zero()) {
        return Err(Error::domain(format!("Hurwitz zeta needs v > 0, got {v}")));
    }
    if (s - T::one()).abs() < T::lit(POLE_GUARD) {
        return Err(Error::PoleAtOne);
    }
    if s >= T::lit(HURWITZ_FOURIER_BELOW) {
        hurwitz_euler_maclaurin(s, v, prec)
    } else {
        hurwitz_fourier(s, v, prec)
    }
}

/// Direct sum of the first `shift` terms, then Euler-Maclaurin on the rest with
/// as many Bernoulli corrections as the tolerance needs.
///
/// With m corrections the remainder is at most |B_{2m}|/(2m)! |f^{(2m-1)}(N)|,
/// which is the magnitude of the m-th correction itself (f^{(2m)} has one sign
/// once s + 2m - 1 > 0).
fn hurwitz_euler_maclaurin<T: Real>(s: T, v: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    const MAX_ORDER: usize = 60;
    let tol = prec.tol();
    let mut shift = 8usize;
    let mut best_bound = T::infinity();
    while shift <= prec.max_terms.max(8) {
        let x0 = v + T::from_usize_lossy(shift);
        let head = (0..shift).fold(T::zero(), |acc, n| {
            acc + (v + T::from_usize_lossy(n)).powf(-s)
        });
        let mut value = head + x0.powf(T::one() - s) / (s - T::one()) + T::lit(0.5) * x0.powf(-s);
        let inv_x0_sq = (x0 * x0).recip();
        // rising factorial (s)_{2k-1} and x0^{-s-2k+1}, starting at k = 1
        let mut rising = s;
        let mut power = x0.powf(-s - T::one());
        let mut prev_mag = T::infinity();
        for k in 1..=MAX_ORDER {
            let term = bernoulli_ratio::<T>(k) * rising * power;
            value = value + term;
            let mag = term.abs();
            let valid = s + T::from_usize_lossy(2 * k) - T::one() > T::zero();
            if valid {
                best_bound = best_bound.min(mag);
                if mag <= tol {
                    return Ok(SeriesEval::new(value, shift + k, mag, BoundKind::Rigorous));
                }
                if mag > prev_mag {
                    break;
                }
            }
            prev_mag = mag;
            let kf = T::from_usize_lossy(2 * k);
            rising = rising * (s + kf - T::one()) * (s + kf);
            power = power * inv_x0_sq;
        }
        shift *= 2;
    }
    Err(Error::tolerance("hurwitz_zeta", best_bound, tol))
}

/// ζ(1-σ, a) = 2Γ(σ)/(2π)^σ Σ_{n>=1} cos(πσ/2 - 2πna) n^{-σ}, for σ > 1 and
/// 0 < a <= 1. Larger v are brought into (0, 1] by peeling off leading terms.
fn hurwitz_fourier<T: Real>(s: T, v: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let tol = prec.tol();
    let sigma = T::one() - s;
    let peel = if v > T::one() {
        (v - T::one()).ceil().to_usize().unwrap_or(usize::MAX)
    } else {
        0
    };
    if peel > prec.max_terms {
        return Err(Error::tolerance("hurwitz_zeta", T::infinity(), tol));
    }
    let a = v - T::from_usize_lossy(peel);
    let ln_pref = T::LN_2() + log_gamma(sigma)? - sigma * (T::lit(2.0) * T::PI()).ln();
    if ln_pref > T::max_value().ln() {
        return Err(Error::Overflow(format!(
            "hurwitz_zeta({s}, {v}) exceeds the floating-point range"
        )));
    }
    let pref = ln_pref.exp();
    // Σ_{n>N} n^{-σ} <= N^{1-σ}/(σ-1)
    let sm1 = sigma - T::one();
    let need = (pref / (tol * sm1)).powf(sm1.recip()).ceil();
    let n_terms = need.to_usize().unwrap_or(usize::MAX).max(1);
    if n_terms > prec.max_terms {
        let at_cap = pref * T::from_usize_lossy(prec.max_terms).powf(-sm1) / sm1;
        return Err(Error::tolerance("hurwitz_zeta", at_cap, tol));
    }
    let half_sigma = sigma * T::lit(0.5);
    let two_a = a + a;
    let mut sum = T::zero();
    for n in 1..=n_terms {
        let nf = T::from_usize_lossy(n);
        let phase = half_sigma - (two_a * nf) % T::lit(2.0);
        sum = sum + cos_pi(phase) * nf.powf(-sigma);
    }
    let mut value = pref * sum;
    for j in 0..peel {
        value = value - (a + T::from_usize_lossy(j)).powf(-s);
    }
    let bound = pref * T::from_usize_lossy(n_terms).powf(-sm1) / sm1;
    Ok(SeriesEval::new(
        value,
        n_terms + peel,
        bound,
        BoundKind::Rigorous,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p() -> Precision<f64> {
        Precision::default()
    }

    fn zeta(s: f64) -> f64 {
        riemann_zeta(s, p()).unwrap().value
    }

    /// Plain summation with an integral tail bound; only for s > 1.
    fn brute_hurwitz(s: f64, v: f64) -> f64 {
        let n = 200_000;
        let head: f64 = (0..n).rev().map(|k| (v + k as f64).powf(-s)).sum();
        let x = v + n as f64;
        head + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
    }

    #[test]
    fn basel_and_half_integer_constants() {
        assert!((zeta(2.0) - PI * PI / 6.0).abs() < 1e-12);
        assert!((zeta(0.5) + 1.4604).abs() < 5e-5);
        assert!((zeta(-0.5) + 0.2079).abs() < 5e-5);
        assert!((zeta(0.5) + 1.460_354_508_809_586_8).abs() < 1e-13);
        assert!((zeta(-0.5) + 0.207_886_224_977_354_57).abs() < 1e-13);
    }

    #[test]
    fn negative_integers() {
        // 2^{-1} Γ(2) ζ(2) cos(π) = π² ζ(-1)
        let oracle = 0.5 * (PI * PI / 6.0) * -1.0 / (PI * PI);
        assert!((zeta(-1.0) - oracle).abs() < 1e-15);
        assert!((zeta(-1.0) + 1.0 / 12.0).abs() < 1e-14);
        assert_eq!(zeta(-2.0), 0.0);
        assert_eq!(zeta(-10.0), 0.0);
        assert!((zeta(-3.0) - 1.0 / 120.0).abs() < 1e-14);
        assert!((zeta(0.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn pole_rejected() {
        assert_eq!(riemann_zeta(1.0_f64, p()), Err(Error::PoleAtOne));
        assert_eq!(riemann_zeta(1.0 + 1e-13_f64, p()), Err(Error::PoleAtOne));
        assert!(riemann_zeta(1.0 + 1e-6_f64, p()).is_ok());
        assert_eq!(hurwitz_zeta(1.0_f64, 0.5, p()), Err(Error::PoleAtOne));
    }

    #[test]
    fn tolerance_exhaustion_reported() {
        let tight = Precision::new(1e-30_f64, 5).unwrap();
        assert!(matches!(
            riemann_zeta(2.0, tight),
            Err(Error::ToleranceNotMet { .. })
        ));
    }

    #[test]
    fn reflection_round_trip() {
        let gamma = |x: f64| log_gamma(x).unwrap().exp();
        for &s in &[1.5_f64, 2.5, 3.5] {
            // 2^{1-s} Γ(s) ζ(s) cos(πs/2) = π^s ζ(1-s)
            let lhs = 2f64.powf(1.0 - s) * gamma(s) * zeta(s) * (PI * s / 2.0).cos();
            let rhs = PI.powf(s) * zeta(1.0 - s);
            assert!((lhs - rhs).abs() < 1e-11, "s={s}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn ln_abs_agrees_with_value() {
        for &s in &[-20.5_f64, -7.5, -1.5, -0.5, 0.5, 0.75, 3.0] {
            let (ln, sign) = zeta_ln_abs(s, 1e-16).unwrap();
            let z = zeta(s);
            assert_eq!(sign as f64, z.signum(), "s={s} z={z} ln={ln}");
            assert!((ln.exp() / z.abs() - 1.0).abs() < 1e-13, "s={s}");
        }
        // far beyond overflow of ζ itself
        let (ln, sign) = zeta_ln_abs(-400.5_f64, 1e-16).unwrap();
        assert!(ln > 709.0 && sign != 0);
        assert_eq!(zeta_ln_abs(-4.0_f64, 1e-16).unwrap().1, 0);
    }

    #[test]
    fn hurwitz_special_values() {
        let h = |s: f64, v: f64| hurwitz_zeta(s, v, p()).unwrap().value;
        assert!((h(3.0, 1.0) - 1.202_056_903_159_594_2).abs() < 1e-12);
        assert!((h(2.0, 0.5) - PI * PI / 2.0).abs() < 1e-12);
        assert!((h(-1.0, 1.0) + 1.0 / 12.0).abs() < 1e-12);
        // ζ(-n, v) = -B_{n+1}(v)/(n+1): ζ(0, v) = 1/2 - v
        assert!((h(0.0, 0.3) - 0.2).abs() < 1e-12);
        // ζ(-2, v) = -B_3(v)/3
        let v = 0.7_f64;
        let b3 = v * v * v - 1.5 * v * v + 0.5 * v;
        assert!((h(-2.0, v) + b3 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_matches_brute_force_for_s_above_one() {
        for &(s, v) in &[(2.0, 0.5), (1.5, 0.25), (3.3, 2.7), (1.2, 1.0), (6.0, 0.1)] {
            let got = hurwitz_zeta(s, v, p()).unwrap().value;
            let oracle = brute_hurwitz(s, v);
            assert!(
                (got - oracle).abs() < 1e-9 * oracle.abs().max(1.0),
                "s={s} v={v}"
            );
        }
    }

    #[test]
    fn hurwitz_agrees_with_riemann() {
        for &s in &[-1.5_f64, -0.5, 0.5, 2.0, 3.0, -7.5, -12.0, -20.5] {
            let h = hurwitz_zeta(s, 1.0, p()).unwrap();
            let r = riemann_zeta(s, p()).unwrap();
            let scale = r.value.abs().max(1.0);
            assert!(
                (h.value - r.value).abs() <= 1e-12 * scale + h.tail_bound + r.tail_bound,
                "s={s}: {} vs {}",
                h.value,
                r.value
            );
        }
    }

    #[test]
    fn hurwitz_shift_identity_across_methods() {
        // ζ(s, v) = ζ(s, v + 1) + v^{-s}, both sides via the Fourier branch and across the switch
        for &(s, v) in &[(-5.5_f64, 0.3), (-3.5, 0.8), (-0.5, 0.4), (-9.0, 1.7)] {
            let a = hurwitz_zeta(s, v, p()).unwrap().value;
            let b = hurwitz_zeta(s, v + 1.0, p()).unwrap().value + v.powf(-s);
            assert!(
                (a - b).abs() < 1e-10 * a.abs().max(1.0),
                "s={s} v={v}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn hurwitz_domain() {
        assert!(matches!(
            hurwitz_zeta(2.0_f64, 0.0, p()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hurwitz_zeta(2.0_f64, -1.0, p()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zeta_at_f32() {
        let z = riemann_zeta(2.0_f32, Precision::default()).unwrap().value;
        assert!((z - 1.644_934).abs() < 1e-5);
        let z = riemann_zeta(-0.5_f32, Precision::default()).unwrap().value;
        assert!((z + 0.207_886).abs() < 1e-5);
    }
}
