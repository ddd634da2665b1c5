use std::f64::consts::{FRAC_PI_4, PI};

use crate::quad::adaptive_simpson;
use crate::{Error, Result};

const J0_SERIES_MAX: f64 = 12.0;
const J0_TRAPEZOID_MAX: f64 = 30.0;
const J0_TRAPEZOID_NODES: usize = 64;

/// Bessel function of the first kind of order zero, `|x| ≤ 10⁴`.
///
/// Power series up to `|x| = 12`, the periodic trapezoid rule on
/// `(1/π)∫₀^π cos(x sin θ) dθ` up to 30, Hankel's asymptotic expansion beyond.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= J0_SERIES_MAX {
        j0_series(x)
    } else if x <= J0_TRAPEZOID_MAX {
        j0_trapezoid(x)
    } else {
        j0_asymptotic(x)
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut acc = 1.0;
    for m in 1..200 {
        term *= q / (m * m) as f64;
        acc += term;
        if term.abs() < 1e-18 * acc.abs().max(1e-300) && m as f64 > x {
            break;
        }
    }
    acc
}

fn j0_trapezoid(x: f64) -> f64 {
    let n = J0_TRAPEZOID_NODES;
    let h = PI / n as f64;
    (0..n)
        .map(|j| (x * (h * j as f64).sin()).cos())
        .sum::<f64>()
        / n as f64
}

fn j0_asymptotic(x: f64) -> f64 {
    // a_k = Π_{j=1..k} (−(2j−1)²) / (k! 8^k); P takes even k, Q odd k.
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= -(odd * odd) / (k as f64 * 8.0 * x);
        }
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Modified Bessel function of the second kind, `K_ν(x)` for `x > 0`, `|ν| ≤ 50`.
///
/// Adaptive Simpson on `∫₀^∞ e^{−x cosh u} cosh(νu) du`, truncated where the
/// integrand has fallen twenty orders of magnitude below its peak. Underflows
/// to zero for large `x`; use [`bessel_k_scaled`] or [`ln_bessel_k`] there.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let (peak, integral) = k_integral(nu, x)?;
    Ok((peak - x).exp() * integral)
}

/// `eˣ K_ν(x)`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    let (peak, integral) = k_integral(nu, x)?;
    Ok(peak.exp() * integral)
}

/// `ln K_ν(x)`.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    let (peak, integral) = k_integral(nu, x)?;
    Ok(peak - x + integral.ln())
}

/// Returns `(f*, I)` with `eˣ K_ν(x) = e^{f*} · I`, where
/// `f(u) = |ν|u − 2x sinh²(u/2)` is the log of the scaled integrand (up to the
/// `(1 + e^{−2|ν|u})/2` factor) and `f*` its maximum.
fn k_integral(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_ν(x) needs x > 0, got {x}")));
    }
    let nu = nu.abs();
    if !(nu <= 50.0) {
        return Err(Error::UnsupportedRange(format!("|ν| = {nu} exceeds 50")));
    }
    let log_f = |u: f64| {
        let sh = (0.5 * u).sinh();
        nu * u - 2.0 * x * sh * sh
    };
    let u_peak = (nu / x).asinh();
    let f_peak = log_f(u_peak);
    const DROP: f64 = 46.0;

    let mut right = 1e-3 * (1.0 + u_peak) / (1.0 + x.sqrt());
    while log_f(u_peak + right) > f_peak - DROP {
        right *= 2.0;
    }
    let u_hi = u_peak + right;
    let u_lo = if u_peak == 0.0 || log_f(0.0) > f_peak - DROP {
        0.0
    } else {
        // f is concave and increasing on [0, u_peak]: bisect for the cut.
        let (mut a, mut b) = (0.0, u_peak);
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if log_f(m) > f_peak - DROP {
                b = m;
            } else {
                a = m;
            }
        }
        a
    };

    let integrand = |u: f64| {
        let damp = 0.5 * (1.0 + (-2.0 * nu * u).exp());
        (log_f(u) - f_peak).exp() * damp
    };
    let panels = 32;
    let coarse = adaptive_simpson(integrand, u_lo, u_hi, panels, f64::INFINITY);
    let integral = adaptive_simpson(integrand, u_lo, u_hi, panels, 1e-13 * coarse);
    Ok((f_peak, integral))
}
