//! Standard normal distribution function.
//!
//! The complementary error function follows the FreeBSD `s_erf.c` rational
//! approximations (Sun Microsystems, freely redistributable). Coefficients are
//! stored at `f64` and rounded into the working type.

#![allow(clippy::excessive_precision)]

use crate::Real;

const ERX: f64 = 8.45062911510467529297e-01;

const PP: [f64; 5] = [
    1.28379167095512558561e-01,
    -3.25042107247001499370e-01,
    -2.84817495755985104766e-02,
    -5.77027029648944159157e-03,
    -2.37630166566501626084e-05,
];
const QQ: [f64; 5] = [
    3.97917223959155352819e-01,
    6.50222499887672944485e-02,
    5.08130628187576562776e-03,
    1.32494738004321644526e-04,
    -3.96022827877536812320e-06,
];
const PA: [f64; 7] = [
    -2.36211856075265944077e-03,
    4.14856118683748331666e-01,
    -3.72207876035701323847e-01,
    3.18346619901161753674e-01,
    -1.10894694282396677476e-01,
    3.54783043256182359371e-02,
    -2.16637559486879084300e-03,
];
const QA: [f64; 6] = [
    1.06420880400844228286e-01,
    5.40397917702171048937e-01,
    7.18286544141962662868e-02,
    1.26171219808761642112e-01,
    1.36370839120290507362e-02,
    1.19844998467991074170e-02,
];
const RA: [f64; 8] = [
    -9.86494403484714822705e-03,
    -6.93858572707181764372e-01,
    -1.05586262253232909814e+01,
    -6.23753324503260060396e+01,
    -1.62396669462573470355e+02,
    -1.84605092906711035994e+02,
    -8.12874355063065934246e+01,
    -9.81432934416914548592e+00,
];
const SA: [f64; 8] = [
    1.96512716674392571292e+01,
    1.37657754143519042600e+02,
    4.34565877475229228821e+02,
    6.45387271733267880336e+02,
    4.29008140027567833386e+02,
    1.08635005541779435134e+02,
    6.57024977031928170135e+00,
    -6.04244152148580987438e-02,
];
const RB: [f64; 7] = [
    -9.86494292470009928597e-03,
    -7.99283237680523006574e-01,
    -1.77579549177547519889e+01,
    -1.60636384855821916062e+02,
    -6.37566443368389627722e+02,
    -1.02509513161107724954e+03,
    -4.83519191608651397019e+02,
];
const SB: [f64; 7] = [
    3.03380607434824582924e+01,
    3.25792512996573918826e+02,
    1.53672958608443695994e+03,
    3.19985821950859553908e+03,
    2.55305040643316442583e+03,
    4.74528541206955367215e+02,
    -2.24409524465858183362e+01,
];

/// c[0] + z c[1] + z^2 c[2] + ...
fn poly<T: Real>(z: T, c: &[f64]) -> T {
    c.iter()
        .rev()
        .fold(T::zero(), |acc, &ci| acc * z + T::lit(ci))
}

/// 1 + z q[0] + z^2 q[1] + ...
fn poly1<T: Real>(z: T, q: &[f64]) -> T {
    T::one() + z * poly(z, q)
}

/// erfc(x) for x >= 0.
fn erfc_nonneg<T: Real>(x: T) -> T {
    debug_assert!(x >= T::zero());
    if x < T::lit(0.84375) {
        if x < T::lit(1.3877787807814457e-17) {
            return T::one() - x;
        }
        let z = x * x;
        let y = poly(z, &PP) / poly1(z, &QQ);
        return if x < T::lit(0.25) {
            T::one() - (x + x * y)
        } else {
            T::lit(0.5) - (x * y + (x - T::lit(0.5)))
        };
    }
    if x < T::lit(1.25) {
        let s = x - T::one();
        let p = poly(s, &PA);
        let q = poly1(s, &QA);
        return T::one() - T::lit(ERX) - p / q;
    }
    if x >= T::lit(28.0) {
        return T::zero();
    }
    let s = T::one() / (x * x);
    let (r, ss) = if x < T::lit(1.0 / 0.35) {
        (poly(s, &RA), poly1(s, &SA))
    } else {
        (poly(s, &RB), poly1(s, &SB))
    };
    // z carries at most 21 significant bits, so z*z is exact at f64.
    let scale = T::lit(65536.0);
    let z = (x * scale).trunc() / scale;
    let e = (-z * z - T::lit(0.5625)).exp() * ((z - x) * (z + x) + r / ss).exp();
    e / x
}

/// Complementary error function.
pub fn erfc<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x >= T::zero() {
        erfc_nonneg(x)
    } else {
        T::lit(2.0) - erfc_nonneg(-x)
    }
}

/// Standard normal distribution function P(a) = (2π)^{-1/2} ∫_{-∞}^a e^{-x²/2} dx.
///
/// Lower tails are computed directly from erfc, so P(a) keeps full relative
/// accuracy far into the left tail; P(a) + P(-a) = 1 to within one rounding.
pub fn std_normal_cdf<T: Real>(a: T) -> T {
    let half = T::lit(0.5);
    let x = a.abs() * T::FRAC_1_SQRT_2();
    if a < T::zero() {
        half * erfc_nonneg(x)
    } else {
        T::one() - half * erfc_nonneg(x)
    }
}

/// Standard normal density.
pub fn std_normal_pdf<T: Real>(a: T) -> T {
    // 1/sqrt(2π)
    T::lit(0.398_942_280_401_432_7) * (-(a * a) * T::lit(0.5)).exp()
}
