use gwm_core::walk::{
    asymptotic_stats, j0_zeta, jk_spitzer, jk_zeta, mean_spitzer, mean_zeta, p_zero_spitzer, p_zero_zeta,
    stats_auto, stats_extended, var_spitzer, var_zeta, zeta_tail_terms, Drift, Method, MomentOrder,
};
use gwm_core::{riemann_zeta, Precision};
use std::f64::consts::PI;

fn d(beta: f64) -> Drift<f64> {
    Drift::new(beta).unwrap()
}

fn fine() -> Precision<f64> {
    Precision::new(1e-11, 100_000).unwrap()
}

fn k(n: usize) -> MomentOrder {
    MomentOrder::new(n).unwrap()
}

/// Spitzer sums written out from scratch: Σ_n n^{k/2-1} E((Z - β√n)^k; Z > β√n)
/// with the inner integral done by composite Simpson on [0, 12].
fn brute_jk(k: i32, beta: f64) -> f64 {
    let phi = |z: f64| (-z * z / 2.0).exp() / (2.0 * PI).sqrt();
    let mut total = 0.0;
    let mut n = 1.0_f64;
    loop {
        let x = beta * n.sqrt();
        let steps = 4000;
        let h = 12.0 / steps as f64;
        let mut acc = 0.0;
        for i in 0..=steps {
            let t = i as f64 * h;
            let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * t.powi(k) * phi(x + t);
        }
        let term = n.powf(k as f64 / 2.0 - 1.0) * acc * h / 3.0;
        total += term;
        if term < 1e-16 && n > 10.0 {
            break;
        }
        n += 1.0;
    }
    total
}

#[test]
fn routes_agree_on_grid() {
    for &beta in &[0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
        let dd = d(beta);
        let pairs = [
            (p_zero_zeta(dd, fine()).unwrap().value, p_zero_spitzer(dd, fine()).unwrap().value),
            (mean_zeta(dd, fine()).unwrap().value, mean_spitzer(dd, fine()).unwrap().value),
            (var_zeta(dd, fine()).unwrap().value, var_spitzer(dd, fine()).unwrap().value),
        ];
        for (i, (a, b)) in pairs.iter().enumerate() {
            assert!((a - b).abs() <= 1e-9, "beta={beta} stat {i}: {a} vs {b}");
        }
    }
}

#[test]
fn spitzer_matches_plain_quadrature_oracle() {
    for &(kk, beta) in &[(0, 1.0), (1, 1.0), (2, 2.0), (3, 1.5)] {
        let got = jk_spitzer(k(kk as usize), d(beta), fine()).unwrap().value;
        let oracle = brute_jk(kk, beta);
        assert!((got - oracle).abs() < 1e-9 * oracle.max(1.0), "k={kk} beta={beta}: {got} vs {oracle}");
    }
}

#[test]
fn small_drift_mean_and_variance() {
    let dd = d(0.1);
    for m in [mean_zeta(dd, fine()).unwrap().value, mean_spitzer(dd, fine()).unwrap().value] {
        assert!((m - 4.4424).abs() < 1e-3);
    }
    for v in [var_zeta(dd, fine()).unwrap().value, var_spitzer(dd, fine()).unwrap().value] {
        assert!((v - 24.7662).abs() < 1e-3);
    }
    let asym = 1.0 / (4.0 * 0.04) - 0.25 + 2.0 * 0.2079 * 0.2 / (2.0 * PI).sqrt() - 0.04 / 24.0;
    assert!((var_spitzer(d(0.2), fine()).unwrap().value - asym).abs() < 2e-3);
}

#[test]
fn monotone_in_drift_with_kingman_bound() {
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..50 {
        let beta = 0.1 + 3.3 * i as f64 / 49.0;
        let s = stats_auto(d(beta), fine()).unwrap();
        assert!(s.satisfies_invariants(d(beta)), "beta={beta}");
        assert!(s.mean < 1.0 / (2.0 * beta));
        if let Some((p, m)) = prev {
            assert!(s.p_zero > p, "p_zero not increasing at {beta}");
            assert!(s.mean < m, "mean not decreasing at {beta}");
        }
        prev = Some((s.p_zero, s.mean));
    }
}

#[test]
fn kingman_gap_limit() {
    let gap = 1.0 / 0.02 - mean_zeta(d(0.01), fine()).unwrap().value;
    assert!((gap - 0.5826).abs() < 5e-3);
}

#[test]
fn asymptotic_residual_ratio() {
    let target = riemann_zeta(-0.5, Precision::default()).unwrap().value / (2.0 * (2.0 * PI).sqrt());
    assert!((target + 0.04146).abs() < 1e-5);
    for &beta in &[0.4, 0.2, 0.1] {
        let exact = mean_zeta(d(beta), fine()).unwrap().value;
        let trunc = asymptotic_stats(d(beta)).unwrap().mean;
        let ratio = (exact - trunc) / (beta * beta);
        assert!((ratio / target - 1.0).abs() < 0.2, "beta={beta}: {ratio}");
    }
}

#[test]
fn j_identities() {
    for &beta in &[0.5, 1.5] {
        let dd = d(beta);
        let j0 = jk_spitzer(k(0), dd, fine()).unwrap().value;
        assert!((j0 + p_zero_spitzer(dd, fine()).unwrap().value.ln()).abs() < 1e-10);
        assert!((j0_zeta(dd, fine()).unwrap().value - j0).abs() < 1e-10);
        assert!((jk_zeta(k(1), dd, fine()).unwrap().value - mean_zeta(dd, fine()).unwrap().value).abs() < 1e-10);
        assert!((jk_zeta(k(2), dd, fine()).unwrap().value - var_zeta(dd, fine()).unwrap().value).abs() < 1e-10);
        assert!((jk_spitzer(k(1), dd, fine()).unwrap().value - mean_spitzer(dd, fine()).unwrap().value).abs() < 1e-11);
    }
}

#[test]
fn higher_moments_cross_checked() {
    for &kk in &[3, 4, 5] {
        for &beta in &[1.0, 2.0] {
            let z = jk_zeta(k(kk), d(beta), fine()).unwrap().value;
            let s = jk_spitzer(k(kk), d(beta), fine()).unwrap().value;
            assert!((z - s).abs() <= 1e-8, "k={kk} beta={beta}: {z} vs {s}");
        }
    }
}

#[test]
fn jk_stable_under_more_terms() {
    let a = jk_spitzer(k(4), d(1.5), Precision::new(1e-11, 50_000).unwrap()).unwrap().value;
    let b = jk_spitzer(k(4), d(1.5), Precision::new(1e-11, 100_000).unwrap()).unwrap().value;
    assert!(a.is_finite() && a > 0.0);
    assert!((a - b).abs() < 1e-9);
}

#[test]
fn zeta_route_near_radius() {
    let beta = 3.4;
    for v in [
        p_zero_zeta(d(beta), Precision::new(1e-10, 100_000).unwrap()).unwrap(),
        mean_zeta(d(beta), Precision::new(1e-10, 100_000).unwrap()).unwrap(),
        var_zeta(d(beta), Precision::new(1e-10, 100_000).unwrap()).unwrap(),
    ] {
        assert!(v.tail_bound <= 1e-8);
    }
    let q = beta * beta / (4.0 * PI);
    let terms = zeta_tail_terms(1, d(beta), 300).unwrap();
    let ratios: Vec<f64> = terms.windows(2).map(|w| (w[1] / w[0]).abs()).collect();
    assert!(ratios.iter().skip(1).all(|&r| r < q));
    assert!((ratios[ratios.len() - 1] - q).abs() < (ratios[10] - q).abs());
}

#[test]
fn extended_route_overlap_and_beyond() {
    for &beta in &[1.0, 2.0, 3.0] {
        let e = stats_extended(d(beta), fine()).unwrap();
        assert!((e.p_zero - p_zero_zeta(d(beta), fine()).unwrap().value).abs() < 1e-6);
        assert!((e.mean - mean_zeta(d(beta), fine()).unwrap().value).abs() < 1e-6);
        assert!((e.variance - var_zeta(d(beta), fine()).unwrap().value).abs() < 1e-6);
    }
    for &beta in &[4.0, 6.0] {
        let e = stats_extended(d(beta), fine()).unwrap();
        assert_eq!(e.method, Method::Extended);
        assert!((e.p_zero - p_zero_spitzer(d(beta), fine()).unwrap().value).abs() < 1e-6);
        assert!((e.mean - mean_spitzer(d(beta), fine()).unwrap().value).abs() < 1e-6);
        assert!((e.variance - var_spitzer(d(beta), fine()).unwrap().value).abs() < 1e-6);
    }
}

#[test]
fn single_precision_route() {
    let dd = Drift::new(1.0_f32).unwrap();
    let prec = Precision::<f32>::default();
    let z = mean_zeta(dd, prec).unwrap().value;
    let s = mean_spitzer(dd, prec).unwrap().value;
    assert!((z - 0.126_372_63).abs() < 1e-5, "{z}");
    assert!((s - 0.126_372_63).abs() < 1e-5, "{s}");
}
