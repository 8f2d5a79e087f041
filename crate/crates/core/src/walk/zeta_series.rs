//! The small-β route: power series in β whose coefficients are values of ζ
//! at half-integers ½ - k - r.
//!
//! All three statistics and every J_k share one building block,
//!
//!   T_k(β) = Σ_{r>=0} ζ(½-k-r) (-½)^r β^{2r} / (r! (2r+1)(2r+2)⋯(2r+k+1)),
//!
//! whose terms shrink by a factor strictly below q = β²/(4π) from the first
//! term whose ζ argument is negative onwards. That fixes the radius 2√π and
//! gives the rigorous remainder |t_R| q/(1-q).

use crate::special::gamma::log_gamma;
use crate::special::zeta::{riemann_zeta, zeta_ln_abs};
use crate::walk::{zeta_radius, Drift, Method, MomentOrder, WalkStats};
use crate::{BoundKind, Error, Precision, Real, Result, SeriesEval};

fn check_domain<T: Real>(d: Drift<T>) -> Result<()> {
    if d.beta() >= zeta_radius::<T>() {
        return Err(Error::domain(format!(
            "zeta series needs beta < 2*sqrt(pi) ~ 3.5449, got {}; use the spitzer or extended route",
            d.beta()
        )));
    }
    Ok(())
}

/// r-th term of T_k(β), computed through logarithms: ζ(½-k-r) overflows long
/// before the term itself gets small.
fn t_term<T: Real>(k: usize, r: usize, ln_half_beta_sq: T) -> Result<T> {
    let half = T::lit(0.5);
    let (ln_zeta, sign) = zeta_ln_abs(half - T::from_usize_lossy(k + r), T::epsilon())?;
    let rf = T::from_usize_lossy(r);
    let two_r = rf + rf;
    // (2r+1)⋯(2r+k+1) = Γ(2r+k+2)/Γ(2r+1)
    let ln_mag = ln_zeta + rf * ln_half_beta_sq
        - log_gamma(rf + T::one())?
        - (log_gamma(two_r + T::from_usize_lossy(k + 2))? - log_gamma(two_r + T::one())?);
    let signed = if (sign > 0) == (r % 2 == 0) {
        T::one()
    } else {
        -T::one()
    };
    Ok(signed * ln_mag.exp())
}

/// The first `count` signed terms of T_k(β).
pub fn zeta_tail_terms<T: Real>(k: usize, d: Drift<T>, count: usize) -> Result<Vec<T>> {
    let beta = d.beta();
    let ln_h = (beta * beta * T::lit(0.5)).ln();
    (0..count).map(|r| t_term(k, r, ln_h)).collect()
}

/// T_k(β) summed until the geometric remainder is at most `tol`.
fn t_series<T: Real>(k: usize, d: Drift<T>, tol: T, max_terms: usize) -> Result<SeriesEval<T>> {
    check_domain(d)?;
    let beta = d.beta();
    let q = beta * beta / (T::lit(4.0) * T::PI());
    let ln_h = (beta * beta * T::lit(0.5)).ln();
    let mut sum = T::zero();
    let mut bound = T::infinity();
    for r in 0..max_terms {
        let term = t_term(k, r, ln_h)?;
        sum = sum + term;
        if k + r >= 1 {
            bound = term.abs() * q / (T::one() - q);
            if bound <= tol {
                return Ok(SeriesEval::new(sum, r + 1, bound, BoundKind::Rigorous));
            }
        }
    }
    Err(Error::tolerance("zeta series", bound, tol))
}

/// ζ(s) at the full precision of `T`, with its truncation bound.
fn zeta_const<T: Real>(s: f64) -> Result<SeriesEval<T>> {
    riemann_zeta(T::lit(s), Precision::new(T::epsilon(), 1000)?)
}

fn inv_sqrt_two_pi<T: Real>() -> T {
    (T::lit(2.0) * T::PI()).sqrt().recip()
}

/// J_0(β) = -ln P(M=0) = -ln(√2 β) - (β/√(2π)) T_0(β).
pub fn j0_zeta<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let beta = d.beta();
    let c = beta * inv_sqrt_two_pi::<T>();
    let t0 = t_series(0, d, prec.tol() / c, prec.max_terms)?;
    let value = -(T::SQRT_2() * beta).ln() - c * t0.value;
    Ok(SeriesEval::new(
        value,
        t0.terms_used,
        c * t0.tail_bound,
        t0.bound,
    ))
}

/// P(M = 0) = √2 β exp{(β/√(2π)) Σ_r ζ(½-r)/(r!(2r+1)) (-β²/2)^r}, β < 2√π.
pub fn p_zero_zeta<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let j0 = j0_zeta(d, prec)?;
    let p = (-j0.value).exp();
    Ok(SeriesEval::new(
        p,
        j0.terms_used,
        p * j0.tail_bound.exp_m1(),
        j0.bound,
    ))
}

/// E M = 1/(2β) + ζ(½)/√(2π) + β/4 + (β²/√(2π)) T_1(β), β < 2√π.
pub fn mean_zeta<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let beta = d.beta();
    let s = inv_sqrt_two_pi::<T>();
    let c = beta * beta * s;
    let t1 = t_series(1, d, prec.tol() / c, prec.max_terms)?;
    let z = zeta_const::<T>(0.5)?;
    let value = (T::lit(2.0) * beta).recip() + z.value * s + beta * T::lit(0.25) + c * t1.value;
    let bound = c * t1.tail_bound + s * z.tail_bound;
    Ok(SeriesEval::new(value, t1.terms_used, bound, t1.bound))
}

/// Var M = 1/(4β²) - 1/4 - 2ζ(-½)β/√(2π) - β²/24 - (2β³/√(2π)) T_2(β), β < 2√π.
pub fn var_zeta<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let beta = d.beta();
    let s = inv_sqrt_two_pi::<T>();
    let beta_sq = beta * beta;
    let c = T::lit(2.0) * beta_sq * beta * s;
    let t2 = t_series(2, d, prec.tol() / c, prec.max_terms)?;
    let z = zeta_const::<T>(-0.5)?;
    let value = (T::lit(4.0) * beta_sq).recip()
        - T::lit(0.25)
        - T::lit(2.0) * z.value * beta * s
        - beta_sq / T::lit(24.0)
        - c * t2.value;
    let bound = c * t2.tail_bound + T::lit(2.0) * beta * s * z.tail_bound;
    Ok(SeriesEval::new(value, t2.terms_used, bound, t2.bound))
}

/// J_k(β) for 1 <= k <= 10 and β < 2√π:
///
///   (k-1)!/(2β)^k
///   + Σ_{j=0}^{k} C(k,j) (-1)^j Γ((k-j+1)/2)/√(2π) ζ(1-(k+j)/2) 2^{(k-j-1)/2} β^j
///   + ((-1)^{k+1} k!/√(2π)) β^{k+1} T_k(β).
///
/// The ζ arguments 1-(k+j)/2 are at most ½, so the pole is never hit.
/// J_1 = E M and J_2 = Var M.
pub fn jk_zeta<T: Real>(k: MomentOrder, d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let k = k.get();
    if k == 0 {
        return Err(Error::domain("jk_zeta needs k >= 1; J_0 is j0_zeta"));
    }
    check_domain(d)?;
    let beta = d.beta();
    let s = inv_sqrt_two_pi::<T>();
    let kf = T::from_usize_lossy(k);
    let fact = |n: usize| (1..=n).fold(T::one(), |acc, i| acc * T::from_usize_lossy(i));

    let mut value = fact(k - 1) / (T::lit(2.0) * beta).powi(k as i32);
    let mut bound = T::zero();
    let mut binom = T::one();
    for j in 0..=k {
        let jf = T::from_usize_lossy(j);
        let arg = T::one() - (kf + jf) * T::lit(0.5);
        debug_assert!(arg <= T::lit(0.5));
        let z = riemann_zeta(arg, Precision::new(T::epsilon(), 1000)?)?;
        let gamma = log_gamma((kf - jf + T::one()) * T::lit(0.5))?.exp();
        let weight = binom
            * gamma
            * s
            * T::lit(2.0).powf((kf - jf - T::one()) * T::lit(0.5))
            * beta.powi(j as i32);
        let signed = if j % 2 == 0 { weight } else { -weight };
        value = value + signed * z.value;
        bound = bound + weight.abs() * z.tail_bound;
        binom = binom * (kf - jf) / (jf + T::one());
    }
    let c = fact(k) * s * beta.powi(k as i32 + 1);
    let tk = t_series(k, d, prec.tol() / c, prec.max_terms)?;
    value = if k % 2 == 1 {
        value + c * tk.value
    } else {
        value - c * tk.value
    };
    Ok(SeriesEval::new(
        value,
        tk.terms_used,
        bound + c * tk.tail_bound,
        tk.bound,
    ))
}

/// All three statistics by the zeta series.
pub fn zeta_series_stats<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<WalkStats<T>> {
    Ok(WalkStats::from_parts(
        j0_zeta(d, prec)?,
        mean_zeta(d, prec)?,
        var_zeta(d, prec)?,
        Method::ZetaSeries,
    ))
}
