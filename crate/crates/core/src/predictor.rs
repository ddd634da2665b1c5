//! Conditional laws near a zero.
//!
//! On the critical line, `log|ζ(½ + i(t+Δ))|` given `ζ(½ + it) = 0` is
//! approximately `N(−Re P(1+iΔ), ½ log log t)`. Off the line the conditional
//! mean diverges to `∓∞` according to the sign of `Re P(2σ+iΔ)`.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::prime_zeta::{epsilon_of_delta, re_prime_zeta};
use crate::special::normal_cdf;
use crate::{Error, Result};

/// Smallest lag accepted by [`critical_line_law`].
pub const MIN_DELTA: f64 = 1e-3;
/// Largest lag accepted on a curve grid.
pub const MAX_DELTA: f64 = 60.0;
/// Default band on the discriminant inside which the mean is bounded.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default threshold, in units of the variance.
pub const DEFAULT_THRESHOLD_MULTIPLIER: f64 = -3.0;

/// The limiting law at lag `Δ` from a zero at height `t_anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalLinePrediction {
    pub delta: f64,
    /// `−Re P(1+iΔ) = −log|ζ(1+iΔ)| + ε(Δ)`.
    pub mean: f64,
    /// `½ log log t_anchor`.
    pub variance: f64,
    pub epsilon: f64,
    pub t_anchor: f64,
}

/// Gaussian law of `log|ζ(½ + i(t+Δ))|` conditioned on a zero at `t`.
pub fn critical_line_law(delta: f64, t_anchor: f64) -> Result<CriticalLinePrediction> {
    if !(delta >= MIN_DELTA) {
        return Err(Error::NearPole { guard: MIN_DELTA });
    }
    if !(t_anchor > 100.0) || !t_anchor.is_finite() {
        return Err(Error::Domain(format!(
            "t_anchor = {t_anchor} must exceed 100"
        )));
    }
    Ok(CriticalLinePrediction {
        delta,
        mean: -re_prime_zeta(1.0, delta)?,
        variance: 0.5 * t_anchor.ln().ln(),
        epsilon: epsilon_of_delta(delta)?,
        t_anchor,
    })
}

/// `Pr(log|ζ(½ + i(t+Δ))| < threshold)` over a grid of lags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionCurve {
    pub points: Vec<(f64, f64)>,
    pub threshold: f64,
    pub t_anchor: f64,
}

/// For each `Δ`, `Φ((m·v − mean)/√v)` with `v = ½ log log t_anchor` and
/// `m = threshold_multiplier`; the threshold is `m·v`.
pub fn zero_conditional_tail_curve(
    delta_grid: &[f64],
    t_anchor: f64,
    threshold_multiplier: f64,
) -> Result<PredictionCurve> {
    if delta_grid.is_empty() {
        return Err(Error::Config("empty Δ grid".into()));
    }
    if let Some(&d) = delta_grid
        .iter()
        .find(|d| !(MIN_DELTA..=MAX_DELTA).contains(*d))
    {
        return Err(Error::Config(format!(
            "Δ = {d} outside [{MIN_DELTA}, {MAX_DELTA}]"
        )));
    }
    if delta_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("Δ grid must be strictly increasing".into()));
    }
    if !threshold_multiplier.is_finite() {
        return Err(Error::Config("threshold multiplier must be finite".into()));
    }
    let points = delta_grid
        .par_iter()
        .map(|&d| {
            let law = critical_line_law(d, t_anchor)?;
            let threshold = threshold_multiplier * law.variance;
            Ok((d, normal_cdf((threshold - law.mean) / law.variance.sqrt())))
        })
        .collect::<Result<Vec<_>>>()?;
    let variance = 0.5 * t_anchor.ln().ln();
    Ok(PredictionCurve {
        points,
        threshold: threshold_multiplier * variance,
        t_anchor,
    })
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

impl PredictionCurve {
    /// Lags of strict interior local minima.
    pub fn local_minima(&self) -> Vec<f64> {
        self.points
            .windows(3)
            .filter(|w| w[1].1 < w[0].1 && w[1].1 <= w[2].1)
            .map(|w| w[1].0)
            .collect()
    }

    /// CSV with `# t_anchor=` and `# threshold=` comment lines and columns
    /// `delta,probability`, 12 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# t_anchor={}", sig12(self.t_anchor))?;
        writeln!(out, "# threshold={}", sig12(self.threshold))?;
        writeln!(out, "delta,probability")?;
        for (d, p) in &self.points {
            writeln!(out, "{},{}", sig12(*d), sig12(*p))?;
        }
        Ok(())
    }

    /// An 800×400 SVG line chart with a dashed vertical line at every
    /// ordinate in `zeros` that falls inside the lag range.
    pub fn render_svg(&self, zeros: &[f64]) -> String {
        const W: f64 = 800.0;
        const H: f64 = 400.0;
        const PAD: f64 = 40.0;
        let (x0, x1) = match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) if b.0 > a.0 => (a.0, b.0),
            (Some(a), _) => (a.0 - 0.5, a.0 + 0.5),
            _ => (0.0, 1.0),
        };
        let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
        let sy = |y: f64| H - PAD - y * (H - 2.0 * PAD);

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
            H - PAD,
            W - PAD
        );
        for &z in zeros.iter().filter(|&&z| z >= x0 && z <= x1) {
            let x = sx(z);
            let _ = writeln!(
                svg,
                r#"<line x1="{x:.2}" y1="{PAD}" x2="{x:.2}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#,
                H - PAD
            );
        }
        let path: Vec<String> = self
            .points
            .iter()
            .map(|&(d, p)| format!("{:.2},{:.2}", sx(d), sy(p)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="steelblue"/>"#,
            path.join(" ")
        );
        let labels = [(x0, "start"), (x1, "end")];
        for (x, anchor) in labels {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{}" font-size="12" text-anchor="{anchor}">{}</text>"#,
                sx(x),
                H - PAD + 16.0,
                sig4(x)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">1</text>"#,
            PAD - 4.0,
            PAD + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">0</text>"#,
            PAD - 4.0,
            H - PAD
        );
        svg.push_str("</svg>\n");
        svg
    }
}

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn sig4(x: f64) -> String {
    format!("{x:.4}")
}

/// Limit of the conditional mean of `log|ζ(σ + i(t+Δ))|` as `ζ(σ + it) → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivergenceCase {
    DivergesToMinusInfinity,
    DivergesToPlusInfinity,
    BoundedMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierVerdict {
    pub case: DivergenceCase,
    /// `Re P(2σ + iΔ)`.
    pub discriminant: f64,
}

pub(crate) fn check_sigma(sigma: f64, delta: f64) -> Result<()> {
    if !(sigma > 0.5) || !sigma.is_finite() {
        return Err(Error::Domain(format!("σ = {sigma} must exceed 1/2")));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("Δ = {delta} must be non-negative")));
    }
    Ok(())
}

/// Classifies by the sign of `Re P(2σ + iΔ)` against `tolerance`.
pub fn classify_off_critical(sigma: f64, delta: f64, tolerance: f64) -> Result<ClassifierVerdict> {
    check_sigma(sigma, delta)?;
    if !(tolerance >= 0.0) {
        return Err(Error::Config(format!(
            "tolerance {tolerance} must be non-negative"
        )));
    }
    let discriminant = re_prime_zeta(2.0 * sigma, delta)?;
    let case = if discriminant > tolerance {
        DivergenceCase::DivergesToMinusInfinity
    } else if discriminant < -tolerance {
        DivergenceCase::DivergesToPlusInfinity
    } else {
        DivergenceCase::BoundedMean
    };
    Ok(ClassifierVerdict { case, discriminant })
}

/// `Re P(2σ + iΔ) / P(2σ)`.
pub fn correlation_ratio(sigma: f64, delta: f64) -> Result<f64> {
    check_sigma(sigma, delta)?;
    Ok(re_prime_zeta(2.0 * sigma, delta)? / re_prime_zeta(2.0 * sigma, 0.0)?)
}

/// Bisects `Δ ↦ Re P(2σ + iΔ)` on a sign-changing bracket until the
/// discriminant is below `10⁻¹²` or the bracket is exhausted.
pub fn bounded_mean_delta(sigma: f64, lo: f64, hi: f64) -> Result<f64> {
    check_sigma(sigma, lo)?;
    check_sigma(sigma, hi)?;
    bisect_discriminant(|d| re_prime_zeta(2.0 * sigma, d), lo, hi)
}

pub(crate) fn bisect_discriminant<F>(f: F, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Domain(format!(
            "discriminant has the same sign at Δ = {lo} and Δ = {hi}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = f(mid)?;
        if v.abs() < 1e-12 || mid == lo || mid == hi {
            return Ok(mid);
        }
        if v.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
