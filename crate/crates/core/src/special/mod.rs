//! Special functions: zeta family, Lerch, log-gamma, normal CDF, Bernoulli.

pub mod bernoulli;
pub mod gamma;
pub mod lerch;
pub mod normal;
pub mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_number_real, bernoulli_poly, MAX_BERNOULLI_INDEX};
pub use gamma::log_gamma;
pub use lerch::{lerch_phi, lerch_phi_bateman, lerch_phi_direct};
pub use normal::{erfc, std_normal_cdf, std_normal_pdf};
pub use zeta::{hurwitz_zeta, riemann_zeta};
