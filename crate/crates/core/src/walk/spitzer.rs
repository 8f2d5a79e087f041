//! The Spitzer route: J_k(β) = Σ_{n>=1} E((S_n^+)^k)/n summed term by term.
//!
//! With x = β√n and M_k(x) = ∫_x^∞ (z - x)^k φ(z) dz, the n-th term is
//! n^{k/2-1} M_k(β√n). J_0 = -ln P(M=0), J_1 = E M and J_2 = Var M.
//!
//! Since φ(x + t) <= φ(x) e^{-xt}, M_k(x) <= k! φ(x)/x^{k+1}, and the terms
//! past N are bounded by the geometric envelope
//! k!/(β^{k+1}√(2π)) (N+1)^{-3/2} ρ^{N+1}/(1-ρ), ρ = e^{-β²/2}.
//! When that needs more than 10⁵ terms (small β) the sum is cut at 1024 and
//! the rest goes to Euler-Maclaurin with closed-form derivatives.

use crate::euler_maclaurin::{em_sum, EmProblem, Upper};
use crate::special::normal::{std_normal_cdf, std_normal_pdf};
use crate::walk::{Drift, Method, MomentOrder, WalkStats};
use crate::{BoundKind, Error, Precision, Real, Result, SeriesEval};

const DIRECT_LIMIT: usize = 100_000;
const EM_START: u64 = 1024;
const EM_ORDERS: [usize; 5] = [2, 3, 4, 5, 6];

/// M_0(x), ..., M_k(x) for x >= 0.
///
/// Small x: the forward recursion M_{i+1} = i M_{i-1} - x M_i from
/// M_0 = Q(x), M_1 = φ(x) - x Q(x). Larger x: M_i is the minimal solution of
/// that recursion, so it is run backwards from far above k and normalised by
/// M_0 (Miller's algorithm), which keeps full relative accuracy.
pub(crate) fn tail_moments<T: Real>(x: T, k: usize) -> Vec<T> {
    let q = std_normal_cdf(-x);
    let mut out = Vec::with_capacity(k + 1);
    out.push(q);
    if k == 0 {
        return out;
    }
    if x <= T::lit(2.0) {
        out.push(std_normal_pdf(x) - x * q);
        for i in 1..k {
            let next = T::from_usize_lossy(i) * out[i - 1] - x * out[i];
            out.push(next);
        }
        return out;
    }
    let start = {
        let s = (T::from_usize_lossy(k).sqrt() + T::lit(25.0) / x)
            .powi(2)
            .ceil();
        s.to_usize().unwrap_or(k + 10).max(k + 10)
    };
    // values shrink going down; rescale the live window before they underflow
    let tiny = T::min_positive_value().sqrt();
    let mut ys = vec![T::zero(); start + 2];
    ys[start] = T::one();
    for i in (1..=start).rev() {
        // M_{i-1} = (M_{i+1} + x M_i)/i
        ys[i - 1] = (ys[i + 1] + x * ys[i]) / T::from_usize_lossy(i);
        if ys[i - 1].abs() < tiny {
            let hi = (i + 1).max(k).min(start + 1);
            for v in ys[i - 1..=hi].iter_mut() {
                *v = *v / tiny;
            }
        }
    }
    if ys[0] == T::zero() || q == T::zero() {
        return vec![T::zero(); k + 1];
    }
    let scale = q / ys[0];
    ys.truncate(k + 1);
    ys.into_iter().map(|v| v * scale).collect()
}

/// n^{k/2-1} M_k(β√n), at real n.
fn term<T: Real>(k: usize, beta: T, n: T) -> T {
    let u = n.sqrt();
    u.powi(k as i32 - 2) * tail_moments(beta * u, k)[k]
}

fn factorial<T: Real>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_usize_lossy(i))
}

/// Remainder envelope after the first `n` terms.
fn envelope<T: Real>(k: usize, beta: T, n: usize) -> T {
    let half_beta_sq = beta * beta * T::lit(0.5);
    let c = factorial::<T>(k) / (beta.powi(k as i32 + 1) * (T::lit(2.0) * T::PI()).sqrt());
    let n1 = T::from_usize_lossy(n + 1);
    let one_minus_rho = -(-half_beta_sq).exp_m1();
    c * n1.powf(T::lit(-1.5)) * (-half_beta_sq * n1).exp() / one_minus_rho
}

/// Terms needed for the envelope to reach `tol`, ignoring the (N+1)^{-3/2}
/// factor; an overestimate.
fn terms_needed<T: Real>(k: usize, beta: T, tol: T) -> T {
    let half_beta_sq = beta * beta * T::lit(0.5);
    let c = factorial::<T>(k) / (beta.powi(k as i32 + 1) * (T::lit(2.0) * T::PI()).sqrt());
    let one_minus_rho = -(-half_beta_sq).exp_m1();
    ((c / (one_minus_rho * tol)).ln() / half_beta_sq).max(T::one())
}

/// Compensated running sum.
struct Neumaier<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Neumaier<T> {
    fn new() -> Self {
        Neumaier {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    fn total(&self) -> T {
        self.sum + self.comp
    }
}

/// A term c u^p K(βu) of a derivative of u^{k-2} M_k(βu), u = √x.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    M(usize),
    Phi,
}

#[derive(Debug, Clone, Copy)]
struct Mono<T> {
    coef: T,
    pow: i32,
    kind: Kind,
}

/// d/dx = (1/(2u)) d/du, with d/du M_i(βu) = -iβ M_{i-1}(βu),
/// d/du M_0(βu) = -β φ(βu) and d/du φ(βu) = -β² u φ(βu).
fn d_dx<T: Real>(terms: &[Mono<T>], beta: T) -> Vec<Mono<T>> {
    let mut out: Vec<Mono<T>> = Vec::new();
    let mut push = |coef: T, pow: i32, kind: Kind| {
        if coef == T::zero() {
            return;
        }
        let (coef, pow) = (coef * T::lit(0.5), pow - 1);
        match out.iter_mut().find(|m| m.pow == pow && m.kind == kind) {
            Some(m) => m.coef = m.coef + coef,
            None => out.push(Mono { coef, pow, kind }),
        }
    };
    for t in terms {
        if t.pow != 0 {
            push(
                t.coef * T::from_i32(t.pow).unwrap_or_else(T::nan),
                t.pow - 1,
                t.kind,
            );
        }
        match t.kind {
            Kind::M(0) => push(-t.coef * beta, t.pow, Kind::Phi),
            Kind::M(i) => push(
                -t.coef * beta * T::from_usize_lossy(i),
                t.pow,
                Kind::M(i - 1),
            ),
            Kind::Phi => push(-t.coef * beta * beta, t.pow + 1, Kind::Phi),
        }
    }
    out
}

fn eval_monos<T: Real>(terms: &[Mono<T>], k: usize, beta: T, x: T) -> T {
    let u = x.sqrt();
    let y = beta * u;
    let moments = tail_moments(y, k);
    let phi = std_normal_pdf(y);
    terms.iter().fold(T::zero(), |acc, t| {
        let base = match t.kind {
            Kind::M(i) => moments[i],
            Kind::Phi => phi,
        };
        acc + t.coef * u.powi(t.pow) * base
    })
}

/// Σ_{n>=EM_START} of the terms by Euler-Maclaurin, raising the order until
/// the remainder fits.
fn em_tail<T: Real>(k: usize, beta: T, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let max_order = *EM_ORDERS.last().unwrap_or(&2);
    let mut derivs = vec![vec![Mono {
        coef: T::one(),
        pow: k as i32 - 2,
        kind: Kind::M(k),
    }]];
    for j in 0..2 * max_order {
        let next = d_dx(&derivs[j], beta);
        derivs.push(next);
    }
    let mut last_err = Error::RemainderUnbounded("no Euler-Maclaurin order attempted".into());
    for &m in EM_ORDERS.iter() {
        let derivs = &derivs;
        let problem = EmProblem::new(
            move |x: T| term(k, beta, x),
            move |j: usize, x: T| eval_monos(&derivs[2 * j - 1], k, beta, x),
            EM_START,
            Upper::Infinite,
        )
        .order(m)
        .remainder_integrand(move |x: T| eval_monos(&derivs[2 * m], k, beta, x));
        match em_sum(&problem, prec) {
            Ok(v) => return Ok(v),
            Err(e @ Error::ToleranceNotMet { .. }) | Err(e @ Error::RemainderUnbounded(_)) => {
                last_err = e
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

/// J_k(β) = Σ_n (n^{k-1/2}/√(2π)) ∫_β^∞ (y - β)^k e^{-ny²/2} dy, any β > 0.
pub fn jk_spitzer<T: Real>(
    k: MomentOrder,
    d: Drift<T>,
    prec: Precision<T>,
) -> Result<SeriesEval<T>> {
    let k = k.get();
    let beta = d.beta();
    let tol = prec.tol();
    let budget = prec.max_terms.min(DIRECT_LIMIT);
    let needed = terms_needed(k, beta, tol);

    if needed <= T::from_usize_lossy(budget) {
        let mut acc = Neumaier::new();
        for n in 1..=budget {
            acc.add(term(k, beta, T::from_usize_lossy(n)));
            let bound = envelope(k, beta, n);
            if bound <= tol {
                return Ok(SeriesEval::new(acc.total(), n, bound, BoundKind::Rigorous));
            }
        }
        return Err(Error::tolerance(
            "spitzer series",
            envelope(k, beta, budget),
            tol,
        ));
    }

    let head_len = EM_START as usize - 1;
    if head_len >= prec.max_terms {
        return Err(Error::tolerance(
            "spitzer series",
            envelope(k, beta, prec.max_terms),
            tol,
        ));
    }
    let mut acc = Neumaier::new();
    for n in 1..=head_len {
        acc.add(term(k, beta, T::from_usize_lossy(n)));
    }
    let tail = em_tail(k, beta, prec.with_tol(tol * T::lit(0.5)))?;
    acc.add(tail.value);
    Ok(SeriesEval::new(
        acc.total(),
        head_len + tail.terms_used,
        tail.tail_bound,
        SeriesEval::<T>::combine_kind(BoundKind::Rigorous, tail.bound),
    ))
}

/// P(M = 0) = exp{-Σ_n P(-β√n)/n}.
pub fn p_zero_spitzer<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    let j0 = jk_spitzer(MomentOrder(0), d, prec)?;
    let p = (-j0.value).exp();
    Ok(SeriesEval::new(
        p,
        j0.terms_used,
        p * j0.tail_bound.exp_m1(),
        j0.bound,
    ))
}

/// E M = Σ_n (e^{-β²n/2}/√(2πn) - β P(-β√n)).
pub fn mean_spitzer<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    jk_spitzer(MomentOrder(1), d, prec)
}

/// Var M = Σ_n ((β²n + 1) P(-β√n) - β √n φ(β√n)).
pub fn var_spitzer<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<SeriesEval<T>> {
    jk_spitzer(MomentOrder(2), d, prec)
}

/// All three statistics by the Spitzer sums.
pub fn spitzer_stats<T: Real>(d: Drift<T>, prec: Precision<T>) -> Result<WalkStats<T>> {
    Ok(WalkStats::from_parts(
        jk_spitzer(MomentOrder(0), d, prec)?,
        mean_spitzer(d, prec)?,
        var_spitzer(d, prec)?,
        Method::Spitzer,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_to_infinity;

    fn d(beta: f64) -> Drift<f64> {
        Drift::new(beta).unwrap()
    }

    fn p() -> Precision<f64> {
        Precision::new(1e-13, 100_000).unwrap()
    }

    #[test]
    fn tail_moments_against_quadrature() {
        for &x in &[0.0, 0.7, 1.9, 2.1, 4.0, 9.0] {
            let ms = tail_moments(x, 6);
            for (k, &m) in ms.iter().enumerate() {
                let f = |t: f64| {
                    t.powi(k as i32) * (-(x + t) * (x + t) / 2.0).exp()
                        / (2.0 * std::f64::consts::PI).sqrt()
                };
                let q = integrate_to_infinity(&f, 0.0, 1e-14 * m).unwrap().value;
                assert!((m - q).abs() <= 1e-11 * q, "x={x} k={k}: {m} vs {q}");
            }
        }
    }

    #[test]
    fn moments_satisfy_envelope() {
        for &x in &[0.5, 3.0, 12.0] {
            let phi = std_normal_pdf(x);
            for (k, m) in tail_moments(x, 10).into_iter().enumerate() {
                assert!(m > 0.0 && m <= factorial::<f64>(k) * phi / x.powi(k as i32 + 1));
            }
        }
    }

    #[test]
    fn reference_values() {
        // independent 40-digit evaluations
        let cases = [
            (
                0.5,
                0.529_325_149_799_277,
                0.532_062_711_965_316,
                0.822_943_321_173_693,
            ),
            (
                4.0,
                0.999_968_325_404_792,
                7.146_169_674_185_33e-6,
                3.090_628_246_174_89e-6,
            ),
        ];
        for &(beta, pz, mean, var) in &cases {
            assert!((p_zero_spitzer(d(beta), p()).unwrap().value - pz).abs() < 1e-12);
            assert!((mean_spitzer(d(beta), p()).unwrap().value - mean).abs() < 1e-12);
            assert!((var_spitzer(d(beta), p()).unwrap().value - var).abs() < 1e-12);
        }
    }

    #[test]
    fn huge_drift_keeps_deficit() {
        let s = spitzer_stats(d(10.0), p()).unwrap();
        // 1 - P(M=0) = 1 - exp(-Σ P(-10√n)/n) ≈ P(-10)
        assert!((s.p_zero_deficit / 7.619_853_024_160_527e-24 - 1.0).abs() < 1e-10);
        assert!(s.j0 > 0.0);
        assert_eq!(s.diagnostics.p_zero.terms_used, 1);
    }

    #[test]
    fn euler_maclaurin_tail_agrees_with_zeta_series() {
        use crate::walk::zeta_series::{j0_zeta, mean_zeta, var_zeta};
        let dd = d(0.02);
        let prec = Precision::new(1e-10, 100_000).unwrap();
        let m = mean_spitzer(dd, prec).unwrap();
        assert!(m.terms_used < 5000);
        assert!((m.value - mean_zeta(dd, prec).unwrap().value).abs() < 1e-8);
        let v = var_spitzer(dd, prec).unwrap();
        assert!((v.value - var_zeta(dd, prec).unwrap().value).abs() < 1e-6);
        let j0 = jk_spitzer(MomentOrder(0), dd, prec).unwrap();
        assert!((j0.value - j0_zeta(dd, prec).unwrap().value).abs() < 1e-8);
    }

    #[test]
    fn derivative_table_matches_finite_differences() {
        let beta = 0.3_f64;
        for k in 0..4 {
            let f0 = vec![Mono {
                coef: 1.0,
                pow: k as i32 - 2,
                kind: Kind::M(k),
            }];
            let f1 = d_dx(&f0, beta);
            let f2 = d_dx(&f1, beta);
            let x = 50.0_f64;
            let h = 1e-3_f64;
            let fd1 = (term(k, beta, x + h) - term(k, beta, x - h)) / (2.0 * h);
            let fd2 =
                (term(k, beta, x + h) - 2.0 * term(k, beta, x) + term(k, beta, x - h)) / (h * h);
            assert!(
                (eval_monos(&f1, k, beta, x) - fd1).abs() < 1e-8 * fd1.abs().max(1e-12),
                "k={k}"
            );
            assert!(
                (eval_monos(&f2, k, beta, x) - fd2).abs() < 1e-4 * fd2.abs().max(1e-10),
                "k={k}"
            );
        }
    }
}
