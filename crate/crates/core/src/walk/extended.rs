//! The zeta-series tails rewritten as complex sums valid for every β > 0.
//!
//! With b = -iβ²/(4π) and ω = e^{iπ/4}:
//!
//!   (β/√(2π)) T_0(β)       = ζ(½)β/√(2π) + (β/π) Re[ω S_0(b)]
//!   (β²/√(2π)) T_1(β)      = -(β²/(2π²)) Im[ω S_1(b)]
//!   -(2β³/√(2π)) T_2(β)    =  (β³/(2π³)) Re[ω S_2(b)]
//!
//! where
//!
//!   S_0(b) = (√π/√b) Σ_{n>=1} (arcsin √(b/n) - √(b/n)),
//!   S_1(b) = (√π/(2b)) Σ_{n>=1} (√n - √(n-b))/n,
//!   S_2(b) = (√π/(4b)) Σ_{n>=1} (√n - √(n-b))/n².
//!
//! The sums converge like n^{-3/2}, n^{-3/2} and n^{-5/2}. Past n = N, with
//! N + 1 >= 4|b| + 16, each summand is expanded in powers of b/n and every
//! power is summed exactly with a Hurwitz zeta value, so the tails converge
//! geometrically with ratio |b|/(N+1) <= 1/4.

use num_complex::Complex;

use crate::special::zeta::{hurwitz_zeta, riemann_zeta};
use crate::walk::{Drift, Method, WalkStats};
use crate::{BoundKind, Error, Precision, Real, Result, SeriesEval};

const MIN_DIRECT: f64 = 32.0;
const MAX_TAIL_TERMS: usize = 400;

fn branch_checked_sqrt<T: Real>(z: Complex<T>, what: &str) -> Result<Complex<T>> {
    if z.im == T::zero() && z.re < T::zero() {
        return Err(Error::Branch(format!(
            "{what}: argument {z} lies on the square-root cut"
        )));
    }
    Ok(z.sqrt())
}

/// arcsin(x) - x, by its Maclaurin series when |x| is small.
fn asin_minus_id<T: Real>(x: Complex<T>) -> Result<Complex<T>> {
    let w = x * x;
    if w.norm() < T::lit(0.25) {
        let mut coef = T::one();
        let mut power = x;
        let mut sum = Complex::new(T::zero(), T::zero());
        for r in 1..200 {
            let rf = T::from_usize_lossy(r);
            let two_r = rf + rf;
            coef = coef * (two_r - T::one()) * (two_r - T::one()) / (two_r * (two_r + T::one()));
            power = power * w;
            let term = power * coef;
            sum = sum + term;
            if term.norm() <= T::epsilon() * sum.norm() {
                break;
            }
        }
        return Ok(sum);
    }
    if x.im == T::zero() && x.re.abs() > T::one() {
        return Err(Error::Branch(format!(
            "arcsin argument {x} lies on the branch cut"
        )));
    }
    Ok(x.asin() - x)
}

/// S_j(b) for j in {0, 1, 2} (principal branches of √ and arcsin).
pub fn s_series<T: Real>(
    j: usize,
    b: Complex<T>,
    prec: Precision<T>,
) -> Result<SeriesEval<T, Complex<T>>> {
    if j > 2 {
        return Err(Error::domain(format!(
            "S-series index must be 0, 1 or 2, got {j}"
        )));
    }
    if !(b.re.is_finite() && b.im.is_finite()) || b.norm() == T::zero() {
        return Err(Error::domain("S-series needs finite nonzero b"));
    }
    let tol = prec.tol();
    let sqrt_pi = T::PI().sqrt();
    let abs_b = b.norm();
    let n_direct = (T::lit(4.0) * abs_b + T::lit(16.0))
        .max(T::lit(MIN_DIRECT))
        .ceil();
    let n_direct = n_direct
        .to_usize()
        .ok_or_else(|| Error::domain("b too large for the S-series"))?;
    if n_direct > prec.max_terms {
        return Err(Error::tolerance("s_series", T::infinity(), tol));
    }

    // outer factor multiplying the raw sum
    let factor = match j {
        0 => Complex::new(sqrt_pi, T::zero()) / branch_checked_sqrt(b, "S_0 prefactor")?,
        1 => Complex::new(sqrt_pi, T::zero()) / (b * T::lit(2.0)),
        _ => Complex::new(sqrt_pi, T::zero()) / (b * T::lit(4.0)),
    };

    let mut direct = Complex::new(T::zero(), T::zero());
    for n in 1..=n_direct {
        let nf = T::from_usize_lossy(n);
        let term = match j {
            0 => asin_minus_id(branch_checked_sqrt(b / nf, "S_0 summand")?)?,
            _ => {
                let root = branch_checked_sqrt(Complex::new(nf, T::zero()) - b, "S_j summand")?;
                // √n - √(n-b) = b/(√n + √(n-b))
                let diff = b / (root + nf.sqrt());
                if j == 1 {
                    diff / nf
                } else {
                    diff / (nf * nf)
                }
            }
        };
        direct = direct + term;
    }

    // Tail Σ_{n>N}: coefficients c_i of (b/n)^i and the Hurwitz order for each.
    //   S_0: arcsin√w - √w = Σ_{r>=1} a_r w^{r+1/2}; after the √π/√b prefactor
    //        only √π b^r ζ(r+1/2, N+1) remains.
    //   S_1, S_2: √n - √(n-b) = √n Σ_{i>=1} e_i (b/n)^i.
    let n1 = T::from_usize_lossy(n_direct + 1);
    let q = abs_b / n1;
    let (tail_scale, outer_abs, power_offset) = match j {
        0 => (sqrt_pi, T::one(), T::lit(0.5)),
        1 => (T::one(), factor.norm(), T::lit(0.5)),
        _ => (T::one(), factor.norm(), T::lit(1.5)),
    };
    // |c_i| <= 1 and ζ(σ, N+1) <= 3 (N+1)^{1-σ} with σ = i + offset, so the
    // remainder after I terms is at most 3 (N+1)^{1-offset} q^{I+1}/(1-q).
    let envelope_base = T::lit(3.0) * n1.powf(T::one() - power_offset) / (T::one() - q);
    let weight = tail_scale * outer_abs;
    let mut tail = Complex::new(T::zero(), T::zero());
    let mut tail_err = T::zero();
    // a_r for S_0; e_i = -C(1/2, i)(-1)^i for S_1, S_2 (seeded so that e_1 = 1/2)
    let mut coef = if j == 0 { T::one() } else { -T::one() };
    let mut b_pow = Complex::new(T::one(), T::zero());
    let mut remainder = T::infinity();
    for i in 1..=MAX_TAIL_TERMS {
        let fi = T::from_usize_lossy(i);
        coef = if j == 0 {
            let two_r = fi + fi;
            coef * (two_r - T::one()) * (two_r - T::one()) / (two_r * (two_r + T::one()))
        } else {
            coef * (fi - T::lit(1.5)) / fi
        };
        let c = coef;
        b_pow = b_pow * b;
        let scale = c.abs() * b_pow.norm() * weight;
        let inner_tol = (tol * T::lit(0.01) / scale.max(T::min_positive_value()))
            .min(T::lit(1e30))
            .max(T::min_positive_value());
        let z = hurwitz_zeta(
            fi + power_offset,
            n1,
            Precision::new(inner_tol, prec.max_terms)?,
        )?;
        tail = tail + b_pow * (c * z.value);
        tail_err = tail_err + scale * z.tail_bound;
        remainder = weight * envelope_base * q.powi(i as i32 + 1);
        if remainder <= tol * T::lit(0.5) {
            let value = if j == 0 {
                factor * direct + tail * sqrt_pi
            } else {
                factor * (direct + tail)
            };
            return Ok(SeriesEval::new(
                value,
                n_direct + i,
                remainder + tail_err,
                BoundKind::Rigorous,
            ));
        }
    }
    Err(Error::tolerance("s_series", remainder, tol))
}

/// P(M=0), E M and Var M from the zeta-series closed forms with the tails
/// taken from [`s_series`]; any β > 0.
pub fn stats_extended<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<WalkStats<T>> {
    let beta = d.beta();
    let pi = T::PI();
    let tol = prec.tol();
    let s = (T::lit(2.0) * pi).sqrt().recip();
    let beta_sq = beta * beta;
    let b = Complex::new(T::zero(), -beta_sq / (T::lit(4.0) * pi));
    let omega = Complex::new(T::FRAC_1_SQRT_2(), T::FRAC_1_SQRT_2());
    let zprec = Precision::new(T::epsilon(), 1000)?;
    let z_half = riemann_zeta(T::lit(0.5), zprec)?;
    let z_mhalf = riemann_zeta(T::lit(-0.5), zprec)?;

    let c0 = beta / pi;
    let s0 = s_series(0, b, prec.with_tol(tol / c0))?;
    let j0 = -(T::SQRT_2() * beta).ln() - z_half.value * beta * s - c0 * (omega * s0.value).re;
    let j0 = SeriesEval::new(
        j0,
        s0.terms_used,
        c0 * s0.tail_bound + beta * s * z_half.tail_bound,
        s0.bound,
    );

    let c1 = beta_sq / (T::lit(2.0) * pi * pi);
    let s1 = s_series(1, b, prec.with_tol(tol / c1))?;
    let mean = (T::lit(2.0) * beta).recip() + z_half.value * s + beta * T::lit(0.25)
        - c1 * (omega * s1.value).im;
    let mean = SeriesEval::new(
        mean,
        s1.terms_used,
        c1 * s1.tail_bound + s * z_half.tail_bound,
        s1.bound,
    );

    let c2 = beta_sq * beta / (T::lit(2.0) * pi * pi * pi);
    let s2 = s_series(2, b, prec.with_tol(tol / c2))?;
    let var = (T::lit(4.0) * beta_sq).recip()
        - T::lit(0.25)
        - T::lit(2.0) * z_mhalf.value * beta * s
        - beta_sq / T::lit(24.0)
        + c2 * (omega * s2.value).re;
    let var = SeriesEval::new(
        var,
        s2.terms_used,
        c2 * s2.tail_bound + T::lit(2.0) * beta * s * z_mhalf.tail_bound,
        s2.bound,
    );

    Ok(WalkStats::from_parts(j0, mean, var, Method::Extended))
}
