//! Log-gamma on the positive axis.

use std::sync::OnceLock;

use crate::scalar::sin_pi;
use crate::special::bernoulli::bernoulli_ratio;
use crate::special::zeta::zeta_borwein;
use crate::{Error, Real, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;
const SERIES_LEN: usize = 60;

/// ζ(k) - 1 for k = 0..SERIES_LEN (entries 0 and 1 unused).
fn zeta_minus_one() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; SERIES_LEN + 1];
        for (k, slot) in t.iter_mut().enumerate().skip(2) {
            let z = zeta_borwein(k as f64, 1e-20, 64)
                .expect("ζ(k), k >= 2")
                .value;
            *slot = if k < 30 {
                z - 1.0
            } else {
                // 2^{-k} + 3^{-k} + ... ; the Borwein sum has lost these digits
                (2..=20).map(|n| (n as f64).powi(-(k as i32))).sum()
            };
        }
        t
    })
}

/// x(1-γ) + Σ_{k>=2} (-1)^k (ζ(k) - 1) x^k / k  =  ln Γ(2 + x), |x| <= 1/2.
fn ln_gamma_two_plus<T: Real>(x: T) -> T {
    let table = zeta_minus_one();
    let mut acc = x * T::lit(1.0 - EULER_GAMMA);
    let mut xk = x;
    for (k, &z) in table.iter().enumerate().skip(2) {
        xk = xk * x;
        let term = T::lit(z) * xk / T::from_usize_lossy(k);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
        if term.abs() <= T::epsilon() * T::lit(1e-3) * acc.abs() {
            break;
        }
    }
    acc
}

/// ln Γ(s) for s > 0.
///
/// Near the zeros at s = 1 and s = 2 a Taylor series in ζ(k) - 1 keeps full
/// relative accuracy; above 10 the Stirling series is used, and in between
/// the recurrence Γ(s) = (s-1)Γ(s-1) steps down into the Taylor window.
pub fn log_gamma<T: Real>(s: T) -> Result<T> {
    if !s.is_finite() {
        return Err(Error::domain("log_gamma argument must be finite"));
    }
    if !(s > T::zero()) {
        return Err(Error::domain(format!("log_gamma needs s > 0, got {s}")));
    }
    let half = T::lit(0.5);
    if s < half {
        return Ok(log_gamma(s + T::one())? - s.ln());
    }
    if s <= T::lit(1.5) {
        let x = s - T::one();
        return Ok(ln_gamma_two_plus(x) - x.ln_1p());
    }
    if s <= T::lit(2.5) {
        return Ok(ln_gamma_two_plus(s - T::lit(2.0)));
    }
    if s < T::lit(10.0) {
        let mut y = s;
        let mut prod = T::one();
        while y > T::lit(2.5) {
            y = y - T::one();
            prod = prod * y;
        }
        return Ok(ln_gamma_two_plus(y - T::lit(2.0)) + prod.ln());
    }
    // Stirling: (s - 1/2) ln s - s + ln(2π)/2 + Σ B_{2k} / (2k(2k-1) s^{2k-1})
    let inv = s.recip();
    let inv2 = inv * inv;
    let mut corr = T::zero();
    let mut pow = inv;
    // B_{2k} / (2k(2k-1)) = B_{2k}/(2k)! * (2k-2)!
    let mut fact = T::one();
    for k in 1..=12 {
        let term = bernoulli_ratio::<T>(k) * fact * pow;
        corr = corr + term;
        if term.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
        pow = pow * inv2;
        let kf = T::from_usize_lossy(2 * k);
        fact = fact * kf * (kf - T::one());
    }
    Ok((s - half) * s.ln() - s + T::lit(HALF_LN_TWO_PI) + corr)
}

/// Γ(x) for any real x off the poles; negative arguments go through reflection.
pub(crate) fn gamma_real<T: Real>(x: T) -> Result<T> {
    if x > T::zero() {
        return Ok(log_gamma(x)?.exp());
    }
    let sine = sin_pi(x);
    if sine == T::zero() {
        return Err(Error::domain(format!("Γ has a pole at {x}")));
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    Ok(T::PI() / (sine * log_gamma(T::one() - x)?.exp()))
}
