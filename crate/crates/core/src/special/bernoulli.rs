//! Bernoulli numbers (exact) and Bernoulli polynomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Real, Result};

/// Largest index served by the public API.
pub const MAX_BERNOULLI_INDEX: usize = 40;

/// Ratios B_{2k}/(2k)! are tabulated up to this k.
const RATIO_TABLE_LEN: usize = 200;

fn exact_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1, with B_0 = 1.
        let n_max = MAX_BERNOULLI_INDEX;
        let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        b.push(BigRational::one());
        for n in 1..=n_max {
            let mut binom = BigInt::one(); // C(n+1, 0)
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            // binom now holds C(n+1, n) = n+1
            b.push(-acc / BigRational::from_integer(binom));
        }
        b
    })
}

/// Exact Bernoulli number B_k for even k in 2..=40.
pub fn bernoulli_number(k: usize) -> Result<BigRational> {
    if k < 2 || k > MAX_BERNOULLI_INDEX || k % 2 != 0 {
        return Err(Error::domain(format!(
            "Bernoulli number index must be even and in 2..={MAX_BERNOULLI_INDEX}, got {k}"
        )));
    }
    Ok(exact_table()[k].clone())
}

/// B_k rounded to the working type.
pub fn bernoulli_number_real<T: Real>(k: usize) -> Result<T> {
    let b = bernoulli_number(k)?;
    Ok(T::lit(b.to_f64().expect("finite rational")))
}

fn poly_coeffs() -> &'static [Vec<f64>] {
    static COEFFS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let b = exact_table();
        (0..=MAX_BERNOULLI_INDEX)
            .map(|k| {
                // coefficient of t^{k-j} is C(k, j) B_j, listed from j = 0.
                let mut binom = BigInt::one();
                let mut out = Vec::with_capacity(k + 1);
                for j in 0..=k {
                    let c = BigRational::from_integer(binom.clone()) * &b[j];
                    out.push(c.to_f64().expect("finite rational"));
                    binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                }
                out
            })
            .collect()
    })
}

/// Bernoulli polynomial B_k(t) for 0 <= k <= 40 and t in [0, 1].
///
/// Uses B_k(1 - t) = (-1)^k B_k(t) to evaluate on [0, 1/2], so the endpoint
/// values B_k(0) = B_k(1) = B_k (k >= 2) come out exactly.
pub fn bernoulli_poly<T: Real>(k: usize, t: T) -> Result<T> {
    if k > MAX_BERNOULLI_INDEX {
        return Err(Error::domain(format!(
            "Bernoulli polynomial degree must be <= {MAX_BERNOULLI_INDEX}, got {k}"
        )));
    }
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::domain(
            "Bernoulli polynomial argument must lie in [0, 1]",
        ));
    }
    let (u, flip) = if t > T::lit(0.5) {
        (T::one() - t, k % 2 == 1)
    } else {
        (t, false)
    };
    let v = poly_coeffs()[k]
        .iter()
        .fold(T::zero(), |acc, &c| acc * u + T::lit(c));
    Ok(if flip { -v } else { v })
}

fn ratio_table() -> &'static [f64] {
    static RATIOS: OnceLock<Vec<f64>> = OnceLock::new();
    RATIOS.get_or_init(|| {
        let b = exact_table();
        let mut out = vec![0.0; RATIO_TABLE_LEN + 1];
        let mut fact = BigInt::one();
        let mut two_k = 0usize;
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            while two_k < 2 * k {
                two_k += 1;
                fact *= BigInt::from(two_k);
            }
            if 2 * k <= MAX_BERNOULLI_INDEX {
                let r = &b[2 * k] / BigRational::from_integer(fact.clone());
                *slot = r.to_f64().expect("finite rational");
            } else {
                // B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2π)^{2k}; zeta(2k) - 1 < 2^{-40} here.
                let s = (2 * k) as f64;
                let zeta: f64 = (1..=12).map(|n| (n as f64).powf(-s)).sum();
                let mag = 2.0 * zeta * (-s * (2.0 * std::f64::consts::PI).ln()).exp();
                *slot = if k % 2 == 1 { mag } else { -mag };
            }
        }
        out
    })
}

/// B_{2k}/(2k)! for k >= 1.
pub(crate) fn bernoulli_ratio<T: Real>(k: usize) -> T {
    debug_assert!(k >= 1);
    if k <= RATIO_TABLE_LEN {
        T::lit(ratio_table()[k])
    } else {
        T::zero()
    }
}
