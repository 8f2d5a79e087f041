//! Euler-Maclaurin summation with a bounded remainder.
//!
//! Σ_{n=a}^{N} f(n) = ∫_a^N f + (f(a) + f(N))/2
//!                  + Σ_{k=1}^{m} B_{2k}/(2k)! (f^{(2k-1)}(N) - f^{(2k-1)}(a)) + R_m,
//! |R_m| <= |B_{2m}|/(2m)! ∫_a^N |f^{(2m)}|.
//!
//! Derivatives are supplied by the caller in closed form. When the remainder
//! is too large the engine sums leading terms directly and starts the
//! expansion further out, doubling the offset until the bound fits.

use crate::quadrature::{integrate, integrate_to_infinity};
use crate::special::bernoulli::bernoulli_ratio;
use crate::{BoundKind, Error, Precision, Real, Result, SeriesEval};

pub const DEFAULT_ORDER: usize = 2;

/// Upper summation limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Upper {
    Finite(u64),
    /// f and its derivatives vanish at infinity (caller-asserted).
    Infinite,
}

/// How ∫f is obtained.
pub enum Integral<'a, T> {
    /// An antiderivative F. For infinite ranges F(∞) must be 0.
    Antiderivative(Box<dyn Fn(T) -> T + 'a>),
    /// Adaptive quadrature at a tenth of the tolerance.
    Quadrature,
}

/// How ∫|f^{(2m)}| in the remainder bound is obtained.
pub enum Remainder<'a, T> {
    /// f^{(2m)} keeps one sign on the range, so the integral is
    /// |f^{(2m-1)}(N) - f^{(2m-1)}(a)|.
    MonotoneDerivative,
    /// f^{(2m)} itself, integrated numerically.
    Integrand(Box<dyn Fn(T) -> T + 'a>),
}

/// A sum Σ_{n=start}^{end} f(n) for [`em_sum`].
pub struct EmProblem<'a, T> {
    pub f: Box<dyn Fn(T) -> T + 'a>,
    /// `odd_deriv(k, x)` = f^{(2k-1)}(x), for k = 1..=m.
    pub odd_deriv: Box<dyn Fn(usize, T) -> T + 'a>,
    pub integral: Integral<'a, T>,
    pub remainder: Remainder<'a, T>,
    pub m: usize,
    pub start: u64,
    pub end: Upper,
}

impl<'a, T: Real> EmProblem<'a, T> {
    /// Order [`DEFAULT_ORDER`], quadrature for ∫f, monotone remainder.
    pub fn new(
        f: impl Fn(T) -> T + 'a,
        odd_deriv: impl Fn(usize, T) -> T + 'a,
        start: u64,
        end: Upper,
    ) -> Self {
        EmProblem {
            f: Box::new(f),
            odd_deriv: Box::new(odd_deriv),
            integral: Integral::Quadrature,
            remainder: Remainder::MonotoneDerivative,
            m: DEFAULT_ORDER,
            start,
            end,
        }
    }

    pub fn order(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    pub fn antiderivative(mut self, big_f: impl Fn(T) -> T + 'a) -> Self {
        self.integral = Integral::Antiderivative(Box::new(big_f));
        self
    }

    pub fn remainder_integrand(mut self, f_2m: impl Fn(T) -> T + 'a) -> Self {
        self.remainder = Remainder::Integrand(Box::new(f_2m));
        self
    }
}

/// One expansion from `a` to the problem's upper limit, with no direct terms.
/// Returns (value, truncation bound, quadrature error estimate).
fn expand_from<T: Real>(p: &EmProblem<'_, T>, a: T, tol: T) -> Result<(T, T, T)> {
    let upper = match p.end {
        Upper::Finite(n) => {
            Some(T::from_u64(n).ok_or_else(|| Error::domain("upper limit too large"))?)
        }
        Upper::Infinite => None,
    };
    let (integral, quad_err) = match (&p.integral, upper) {
        (Integral::Antiderivative(big_f), Some(n)) => (big_f(n) - big_f(a), T::zero()),
        (Integral::Antiderivative(big_f), None) => (-big_f(a), T::zero()),
        (Integral::Quadrature, Some(n)) => {
            let q = integrate(&*p.f, a, n, tol / T::lit(10.0))?;
            (q.value, q.abs_err)
        }
        (Integral::Quadrature, None) => {
            let q = integrate_to_infinity(&*p.f, a, tol / T::lit(10.0))?;
            (q.value, q.abs_err)
        }
    };
    let at_end = |g: &dyn Fn(T) -> T| upper.map_or(T::zero(), g);
    let mut value = integral + ((p.f)(a) + at_end(&*p.f)) * T::lit(0.5);
    for k in 1..=p.m {
        let d = at_end(&|x| (p.odd_deriv)(k, x)) - (p.odd_deriv)(k, a);
        value = value + bernoulli_ratio::<T>(k) * d;
    }
    let weight = bernoulli_ratio::<T>(p.m).abs();
    let mass = match &p.remainder {
        Remainder::MonotoneDerivative => {
            (at_end(&|x| (p.odd_deriv)(p.m, x)) - (p.odd_deriv)(p.m, a)).abs()
        }
        Remainder::Integrand(g) => {
            let abs_g = |x: T| g(x).abs();
            // the bound only needs a couple of digits
            let q = match upper {
                Some(n) => integrate(&abs_g, a, n, tol)?,
                None => integrate_to_infinity(&abs_g, a, tol)?,
            };
            q.value + q.abs_err
        }
    };
    let bound = weight * mass;
    if !bound.is_finite() {
        return Err(Error::RemainderUnbounded(format!(
            "remainder integral is {mass}"
        )));
    }
    Ok((value, bound, quad_err))
}

/// Σ_{n=start}^{end} f(n) by Euler-Maclaurin, with `tail_bound` covering the
/// remainder term plus the quadrature error estimate (if any).
///
/// If the remainder from `start` exceeds the tolerance, the first K terms are
/// summed directly and the expansion restarts at start + K (K = 8, 16, 32, ...).
pub fn em_sum<T: Real>(p: &EmProblem<'_, T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    if p.m == 0 {
        return Err(Error::domain("Euler-Maclaurin order m must be at least 1"));
    }
    let tol = prec.tol();
    let mut direct = T::zero();
    let mut k = 0u64;
    let mut best = T::infinity();
    loop {
        let a = p.start + k;
        if let Upper::Finite(n) = p.end {
            if a > n {
                return Ok(SeriesEval::new(
                    direct,
                    (n + 1 - p.start) as usize,
                    T::zero(),
                    BoundKind::Rigorous,
                ));
            }
        }
        // a singular derivative at the start only means the expansion must begin later
        let attempt = match expand_from(p, T::from_u64(a).unwrap_or(T::infinity()), tol) {
            Err(Error::RemainderUnbounded(_)) => None,
            other => Some(other?),
        };
        if let Some((value, bound, quad_err)) = attempt {
            let total_bound = bound + quad_err;
            best = best.min(total_bound);
            if total_bound <= tol {
                let kind = match (&p.integral, &p.remainder) {
                    (Integral::Antiderivative(_), Remainder::MonotoneDerivative) => {
                        BoundKind::Rigorous
                    }
                    _ => BoundKind::Heuristic,
                };
                return Ok(SeriesEval::new(
                    direct + value,
                    k as usize + 1,
                    total_bound,
                    kind,
                ));
            }
        }
        let next = if k == 0 { 8 } else { 2 * k };
        if next as usize > prec.max_terms {
            if best.is_infinite() {
                return Err(Error::RemainderUnbounded(
                    "no starting point gave a finite remainder bound".into(),
                ));
            }
            return Err(Error::tolerance("em_sum", best, tol));
        }
        let stop = match p.end {
            Upper::Finite(n) => (p.start + next).min(n + 1),
            Upper::Infinite => p.start + next,
        };
        for n in (p.start + k)..stop {
            direct = direct + (p.f)(T::from_u64(n).unwrap_or(T::infinity()));
        }
        k = next;
    }
}

/// 1/(√x (√x + √(x-1))²), which equals 2√x - 1/√x - 2√(x-1).
fn kingman_term<T: Real>(x: T) -> T {
    let r = x.sqrt();
    let q = r + (x - T::one()).sqrt();
    (r * q * q).recip()
}

/// d^j/dx^j of x^α.
fn power_deriv<T: Real>(alpha: f64, j: usize, x: T) -> T {
    let mut coef = 1.0;
    for i in 0..j {
        coef *= alpha - i as f64;
    }
    T::lit(coef) * x.powf(T::lit(alpha - j as f64))
}

/// Kingman's heavy-traffic constant c = (2π)^{-1/2} Σ_{n>=1} [√n (√n + √(n-1))²]^{-1},
/// which telescopes to -ζ(1/2)/√(2π) ≈ 0.5826.
///
/// The summand is completely monotone, so the remainder bound reduces to
/// boundary values of f^{(2m-1)}.
pub fn kingman_constant<T: Real>(prec: Precision<T>) -> Result<SeriesEval<T>> {
    let problem = EmProblem::new(
        kingman_term,
        |k: usize, x: T| {
            let j = 2 * k - 1;
            T::lit(2.0) * power_deriv(0.5, j, x)
                - power_deriv(-0.5, j, x)
                - T::lit(2.0) * power_deriv(0.5, j, x - T::one())
        },
        1,
        Upper::Infinite,
    )
    // (4/3)(x^{3/2} - (x-1)^{3/2}) - 2√x, which tends to 0
    .antiderivative(|x: T| {
        let y = x - T::one();
        let diff =
            (T::lit(3.0) * x * x - T::lit(3.0) * x + T::one()) / (x * x.sqrt() + y * y.sqrt());
        T::lit(4.0 / 3.0) * diff - T::lit(2.0) * x.sqrt()
    });
    let norm = (T::lit(2.0) * T::PI()).sqrt().recip();
    let sum = em_sum(&problem, prec.with_tol(prec.tol() / norm))?;
    Ok(SeriesEval::new(
        sum.value * norm,
        sum.terms_used,
        sum.tail_bound * norm,
        sum.bound,
    ))
}
