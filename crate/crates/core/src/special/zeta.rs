//! Euler–Maclaurin evaluation of `ζ(s)` and `ζ(s, a)`.
//!
//! ```text
//! ζ(s, a) = Σ_{n<N} (n+a)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!         + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · x^{-s-2k+1},   x = N + a
//! ```
//!
//! The first omitted correction, scaled by `|s+2M+1|/(σ+2M+1)`, bounds the
//! remainder and is what [`EulerMaclaurinConfig::target_abs_error`] is checked
//! against.

use serde::{Deserialize, Serialize};

use super::bernoulli::scaled_even;
use crate::{Complex, Error, Result};

/// Largest `|Im s|` accepted by the public evaluators.
pub const ZETA_IM_ENVELOPE: f64 = 1e4;

const DEFAULT_BERNOULLI_TERMS: usize = 15;
const DEFAULT_TARGET: f64 = 1e-12;
const MAX_DOUBLINGS: u32 = 8;

/// Truncation parameters for the Euler–Maclaurin sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerMaclaurinConfig {
    pub direct_terms: usize,
    pub bernoulli_terms: usize,
    pub target_abs_error: f64,
}

impl EulerMaclaurinConfig {
    /// `N = max(20, ⌈|t|/2⌉ + 20)`, `M = 15`, target `10⁻¹²`.
    pub fn for_argument(s: Complex) -> Self {
        let n = ((s.im.abs() / 2.0).ceil() as usize + 20).max(20);
        Self {
            direct_terms: n,
            bernoulli_terms: DEFAULT_BERNOULLI_TERMS,
            target_abs_error: DEFAULT_TARGET,
        }
    }

    /// Like [`for_argument`](Self::for_argument) but with the smallest
    /// `N ∈ {10, 20, 40, …}` whose remainder bound already meets the target.
    /// Far to the right of the critical strip this is a handful of terms
    /// instead of hundreds.
    pub fn tuned(s: Complex) -> Self {
        let mut cfg = Self::for_argument(s);
        let cap = cfg.direct_terms;
        let mut n = 10;
        while n < cap {
            if remainder_bound(s, 1.0, n, cfg.bernoulli_terms) <= cfg.target_abs_error {
                cfg.direct_terms = n;
                return cfg;
            }
            n *= 2;
        }
        cfg
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_abs_error = target;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.direct_terms < 10 {
            return Err(Error::Config(format!(
                "Euler–Maclaurin direct terms {} < 10",
                self.direct_terms
            )));
        }
        if !(1..=30).contains(&self.bernoulli_terms) {
            return Err(Error::Config(format!(
                "Euler–Maclaurin Bernoulli terms {} outside [1, 30]",
                self.bernoulli_terms
            )));
        }
        if !(self.target_abs_error > 0.0) {
            return Err(Error::Config("target error must be positive".into()));
        }
        Ok(())
    }
}

/// `ζ(s)` for `Re s > −1`, `|Im s| ≤ 10⁴`, `s ≠ 1`.
pub fn zeta(s: Complex, cfg: &EulerMaclaurinConfig) -> Result<Complex> {
    check_argument(s, false)?;
    evaluate(s, 1.0, cfg, false)
}

/// `ζ(s)` with [`EulerMaclaurinConfig::tuned`].
pub fn zeta_auto(s: Complex) -> Result<Complex> {
    zeta(s, &EulerMaclaurinConfig::tuned(s))
}

/// Hurwitz `ζ(s, a)` for `0 < a ≤ 1`.
pub fn hurwitz_zeta(s: Complex, a: f64, cfg: &EulerMaclaurinConfig) -> Result<Complex> {
    check_offset(a)?;
    check_argument(s, false)?;
    evaluate(s, a, cfg, false)
}

/// `ζ(s, a) − 1/(s−1)`, which is entire in `s`; at `s = 1` it equals `−ψ(a)`.
pub fn hurwitz_zeta_regular(s: Complex, a: f64, cfg: &EulerMaclaurinConfig) -> Result<Complex> {
    check_offset(a)?;
    check_argument(s, true)?;
    evaluate(s, a, cfg, true)
}

/// `ζ(x) − 1` for real `x ≥ 2`, computed as `ζ(x, 2)` so no digits are lost
/// to the leading 1.
pub fn zeta_minus_one(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "zeta_minus_one needs x ≥ 2, got {x}"
        )));
    }
    let s = Complex::new(x, 0.0);
    let mut cfg = EulerMaclaurinConfig::for_argument(s);
    // Halve N while the remainder bound still meets the target.
    while cfg.direct_terms > 10
        && remainder_bound(s, 2.0, cfg.direct_terms / 2, cfg.bernoulli_terms)
            <= cfg.target_abs_error * 2f64.powf(-x)
    {
        cfg.direct_terms /= 2;
    }
    Ok(evaluate(s, 2.0, &cfg, false)?.re)
}

fn check_offset(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "Hurwitz offset a = {a} outside (0, 1]"
        )));
    }
    Ok(())
}

fn check_argument(s: Complex, pole_ok: bool) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if !pole_ok && s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole("ζ has a simple pole at s = 1".into()));
    }
    if s.re <= -1.0 {
        return Err(Error::UnsupportedRange(format!(
            "Re s = {} is left of the supported half-plane Re s > −1",
            s.re
        )));
    }
    if s.im.abs() > ZETA_IM_ENVELOPE {
        return Err(Error::UnsupportedRange(format!(
            "|Im s| = {} exceeds {ZETA_IM_ENVELOPE}",
            s.im.abs()
        )));
    }
    Ok(())
}

fn evaluate(s: Complex, a: f64, cfg: &EulerMaclaurinConfig, regular: bool) -> Result<Complex> {
    cfg.validate()?;
    let mut n = cfg.direct_terms;
    for _ in 0..=MAX_DOUBLINGS {
        let bound = remainder_bound(s, a, n, cfg.bernoulli_terms);
        if bound <= cfg.target_abs_error {
            return Ok(euler_maclaurin(s, a, n, cfg.bernoulli_terms, regular));
        }
        n *= 2;
    }
    Err(Error::UnsupportedRange(format!(
        "Euler–Maclaurin could not reach {:e} at s = {s}",
        cfg.target_abs_error
    )))
}

/// `ζ(s)` with the default truncation and no envelope check, for callers
/// that need heights above 10⁴; `Re s > −1`, `s ≠ 1` are the caller's job.
pub(crate) fn euler_maclaurin_unchecked(s: Complex) -> Complex {
    let cfg = EulerMaclaurinConfig::for_argument(s);
    euler_maclaurin(s, 1.0, cfg.direct_terms, cfg.bernoulli_terms, false)
}

/// Unchecked evaluator; callers guarantee `Re s > −1` and `s ≠ 1` unless
/// `regular` is set.
pub(crate) fn euler_maclaurin(s: Complex, a: f64, n: usize, m: usize, regular: bool) -> Complex {
    let mut direct = Complex::new(0.0, 0.0);
    let mut comp = Complex::new(0.0, 0.0);
    for k in (0..n).rev() {
        let term = (-s * (k as f64 + a).ln()).exp();
        // Neumaier summation, component-wise.
        let y = term - comp;
        let t = direct + y;
        comp = (t - direct) - y;
        direct = t;
    }
    let x = n as f64 + a;
    let lx = x.ln();
    let x_pow = (-s * lx).exp(); // x^{-s}
    let one = Complex::new(1.0, 0.0);
    let pole_term = if regular {
        // x^{1-s}/(s-1) − 1/(s-1) = −lx · expm1(w lx)/(w lx),  w = 1 − s
        let z = (one - s) * lx;
        -lx * expm1_over_z(z)
    } else {
        x_pow * x / (s - one)
    };
    let mut total = direct + pole_term + 0.5 * x_pow;

    let inv_x2 = 1.0 / (x * x);
    let mut rising = s; // s(s+1)…(s+2k-2)
    let mut power = x_pow / x; // x^{-s-2k+1}
    for k in 1..=m {
        total += scaled_even(k) * rising * power;
        let j = (2 * k - 1) as f64;
        rising *= (s + j) * (s + j + 1.0);
        power *= inv_x2;
    }
    total
}

/// `|T_{M+1}| · |s+2M+1| / (σ+2M+1)` at `x = N + a`.
fn remainder_bound(s: Complex, a: f64, n: usize, m: usize) -> f64 {
    let x = n as f64 + a;
    let mut rising_norm = s.norm();
    for j in 1..(2 * m + 1) {
        rising_norm *= (s + j as f64).norm();
    }
    let power = x.powf(-s.re - (2 * m + 1) as f64);
    let term = scaled_even(m + 1).abs() * rising_norm * power;
    let denom = s.re + (2 * m + 1) as f64;
    term * (s + (2 * m + 1) as f64).norm() / denom
}

/// `(e^z − 1)/z`, accurate near `z = 0`.
fn expm1_over_z(z: Complex) -> Complex {
    if z.norm() < 1e-3 {
        let mut term = Complex::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..12 {
            term = term * z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}
