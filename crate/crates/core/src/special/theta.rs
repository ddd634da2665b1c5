use std::f64::consts::{FRAC_PI_8, PI};

use crate::{Error, Result};

/// Riemann–Siegel θ from its Stirling expansion
/// `t/2·log(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³) + 31/(80640t⁵)`.
///
/// Defined for `t ≥ 1`; the absolute error is below `10⁻¹⁰` once `t ≥ 10`.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::UnsupportedRange(format!(
            "Riemann–Siegel theta needs t ≥ 1, got {t}"
        )));
    }
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0)));
    Ok(0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - FRAC_PI_8 + series)
}
