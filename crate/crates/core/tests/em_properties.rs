use gwm_core::euler_maclaurin::{em_sum, kingman_constant, EmProblem, Upper};
use gwm_core::special::{hurwitz_zeta, riemann_zeta};
use gwm_core::{BoundKind, Precision};
use proptest::prelude::*;
use std::f64::consts::PI;

/// d^j/dx^j (x + shift)^α
fn power_deriv(alpha: f64, shift: f64, j: usize, x: f64) -> f64 {
    let coef: f64 = (0..j).map(|i| alpha - i as f64).product();
    coef * (x + shift).powf(alpha - j as f64)
}

#[test]
fn polynomial_exactness_up_to_degree_five() {
    let n_end = 50u64;
    for deg in 0..=5i32 {
        let prob = EmProblem::new(
            move |x: f64| x.powi(deg),
            move |k, x: f64| power_deriv(deg as f64, 0.0, 2 * k - 1, x),
            1,
            Upper::Finite(n_end),
        )
        .order(3)
        .antiderivative(move |x: f64| x.powi(deg + 1) / (deg + 1) as f64);
        let got = em_sum(&prob, Precision::default()).unwrap();
        let exact: f64 = (1..=n_end).map(|n| (n as f64).powi(deg)).sum();
        assert!((got.value - exact).abs() <= 1e-15 * exact, "deg={deg}: {} vs {exact}", got.value);
        assert_eq!(got.tail_bound, 0.0);
    }
}

#[test]
fn linear_example() {
    let prob = EmProblem::new(|x: f64| x, |k, _x: f64| if k == 1 { 1.0 } else { 0.0 }, 1, Upper::Finite(100))
        .order(1)
        .antiderivative(|x| x * x / 2.0);
    assert_eq!(em_sum(&prob, Precision::default()).unwrap().value, 5050.0);
}

#[test]
fn basel_by_quadrature_too() {
    let prob = EmProblem::new(|x: f64| x.powi(-2), |k, x| power_deriv(-2.0, 0.0, 2 * k - 1, x), 1, Upper::Infinite);
    let got = em_sum(&prob, Precision::new(1e-11, 10_000).unwrap()).unwrap();
    let oracle = riemann_zeta(2.0, Precision::default()).unwrap().value;
    assert!((got.value - oracle).abs() < 1e-10);
}

#[test]
fn refinement_in_order_never_hurts() {
    let start = 5u64;
    let end = 1000u64;
    let exact: f64 = (start..=end).rev().map(|n| (n as f64).powf(-1.5)).sum();
    let loose = Precision::new(1.0, 10).unwrap();
    let mut prev = f64::INFINITY;
    for m in 1..=3 {
        let prob = EmProblem::new(
            |x: f64| x.powf(-1.5),
            |k, x| power_deriv(-1.5, 0.0, 2 * k - 1, x),
            start,
            Upper::Finite(end),
        )
        .order(m)
        .antiderivative(|x| -2.0 / x.sqrt());
        let got = em_sum(&prob, loose).unwrap();
        assert_eq!(got.terms_used, 1, "no direct terms expected");
        let err = (got.value - exact).abs();
        assert!(err <= prev, "m={m}: {err} > {prev}");
        assert!(err <= got.tail_bound);
        prev = err;
    }
}

#[test]
fn kingman_constant_values() {
    let c = kingman_constant(Precision::<f64>::default()).unwrap();
    assert!((c.value - 0.5826).abs() < 5e-5);
    let oracle = -riemann_zeta(0.5, Precision::default()).unwrap().value / (2.0 * PI).sqrt();
    assert!((c.value - oracle).abs() < 1e-6);
    assert_eq!(c.bound, BoundKind::Rigorous);
    // the five-term partial sum sits strictly below
    let partial: f64 = (1..=5)
        .map(|n| {
            let x = n as f64;
            1.0 / (x.sqrt() * (x.sqrt() + (x - 1.0).sqrt()).powi(2))
        })
        .sum();
    assert!((partial - 1.2404).abs() < 1e-4);
    assert!(partial / (2.0 * PI).sqrt() < c.value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// Σ_{n>=a} c (n + s)^{-p} = c ζ(p, a + s): the reported bound must cover the error.
    #[test]
    fn reported_bound_is_conservative_power(
        c in 0.1_f64..10.0, s in 0.0_f64..3.0, p in 1.3_f64..5.0, a in 1u64..6, m in 1usize..5,
        tol_exp in 3i32..11,
    ) {
        let prob = EmProblem::new(
            move |x: f64| c * (x + s).powf(-p),
            move |k, x| c * power_deriv(-p, s, 2 * k - 1, x),
            a,
            Upper::Infinite,
        )
        .order(m)
        .antiderivative(move |x| -c * (x + s).powf(1.0 - p) / (p - 1.0));
        let got = em_sum(&prob, Precision::new(10f64.powi(-tol_exp), 100_000).unwrap()).unwrap();
        let truth = c * hurwitz_zeta(p, a as f64 + s, Precision::new(1e-15, 100_000).unwrap()).unwrap().value;
        prop_assert!((got.value - truth).abs() <= got.tail_bound + 1e-13 * truth.abs(),
            "err {} bound {}", (got.value - truth).abs(), got.tail_bound);
    }

    /// Σ_{n=a}^{N} e^{-λn}, geometric closed form, with the remainder integrated numerically.
    #[test]
    fn reported_bound_is_conservative_exponential(lambda in 0.05_f64..2.0, a in 0u64..4, len in 5u64..400, m in 1usize..4) {
        let end = a + len;
        let prob = EmProblem::new(
            move |x: f64| (-lambda * x).exp(),
            move |k, x: f64| -lambda.powi(2 * k as i32 - 1) * (-lambda * x).exp(),
            a,
            Upper::Finite(end),
        )
        .order(m)
        .remainder_integrand(move |x: f64| lambda.powi(2 * m as i32) * (-lambda * x).exp());
        let got = em_sum(&prob, Precision::new(1e-6, 100_000).unwrap()).unwrap();
        let r = (-lambda).exp();
        let truth = r.powi(a as i32) * (1.0 - r.powi((end - a + 1) as i32)) / (1.0 - r);
        prop_assert!((got.value - truth).abs() <= got.tail_bound + 1e-12 * truth);
    }
}

// fewer terms than the first direct-summation block
#[test]
fn short_finite_range_is_summed_exactly() {
    let lambda = 0.05_f64;
    let prob = EmProblem::new(
        move |x: f64| (-lambda * x).exp(),
        move |k, x: f64| -lambda.powi(2 * k as i32 - 1) * (-lambda * x).exp(),
        0,
        Upper::Finite(9),
    )
    .order(1)
    .remainder_integrand(move |x: f64| lambda * lambda * (-lambda * x).exp());
    let got = em_sum(&prob, Precision::new(1e-6, 100_000).unwrap()).unwrap();
    let truth: f64 = (0..=9).map(|n| (-lambda * n as f64).exp()).sum();
    assert!((got.value - truth).abs() < 1e-13);
    assert_eq!(got.terms_used, 10);
}
