//! Analytic primitives: ζ, Hurwitz ζ, Bernoulli numbers, Riemann–Siegel θ,
//! Bessel `J₀`/`K_ν` and the normal CDF.

mod bernoulli;
mod bessel;
mod theta;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_numbers};
pub use bessel::{bessel_j0, bessel_k, bessel_k_scaled, ln_bessel_k};
pub use theta::riemann_siegel_theta;
pub(crate) use zeta::euler_maclaurin_unchecked;
pub use zeta::{
    hurwitz_zeta, hurwitz_zeta_regular, zeta, zeta_auto, zeta_minus_one, EulerMaclaurinConfig,
    ZETA_IM_ENVELOPE,
};

use std::f64::consts::FRAC_1_SQRT_2;

/// Standard normal CDF `Φ(z) = ½ erfc(−z/√2)`.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_cdf_symmetry() {
        assert_eq!(normal_cdf(0.0), 0.5);
        for z in [0.1, 0.7, 1.3, 2.9, 5.0, 8.0] {
            assert!((normal_cdf(z) + normal_cdf(-z) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn normal_cdf_matches_density_quadrature() {
        // Φ(1.96) = ½ + ∫₀^1.96 φ, with the integral by composite Simpson.
        let n = 20_000;
        let h = 1.96 / n as f64;
        let phi = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut acc = phi(0.0) + phi(1.96);
        for i in 1..n {
            acc += phi(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let oracle = 0.5 + acc * h / 3.0;
        assert!((oracle - 0.975_002_104_851_780).abs() < 1e-13);
        assert!((normal_cdf(1.96) - oracle).abs() < 1e-12);
    }
}
