//! Seeded Monte Carlo over `t` uniform on `[T, 2T]`.
//!
//! Sample `i` draws `t = T(1 + u)` with `u` taken from a ChaCha20 stream
//! seeded by `seed` and positioned at word `2i`, so every row can be computed
//! independently and in any order. Phases `t log p mod 2π` are reduced with
//! double-double `log p` and `2π`, since `t log p` reaches `2·10⁷` and a plain
//! product would lose about seven digits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::primes::shared_primes;
use crate::special::{euler_maclaurin_unchecked, normal_cdf};
use crate::{Complex, Error, Result};

/// Layout version of [`McReport`].
pub const SCHEMA_VERSION: &str = "1";

/// Default bin width, in sample standard deviations, for [`conditional_slope`].
pub const DEFAULT_BIN_WIDTH: f64 = 0.25;

/// Fewest samples accepted by [`ks_normality`] and [`conditional_slope`].
pub const MIN_DISTRIBUTION_SAMPLES: usize = 10_000;

/// How reductions over samples are summed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExecutionMode {
    /// Fixed left-to-right order; bit-reproducible.
    #[default]
    Sequential,
    /// Rayon reductions; reproducible to rounding.
    Parallel,
}

/// A Monte Carlo experiment on `Re P_X(σ + it)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCConfig {
    pub t_lower: f64,
    pub sample_count: usize,
    pub seed: u64,
    pub sigma: f64,
    pub cutoff: u64,
    pub delta_list: Vec<f64>,
    #[serde(default)]
    pub mode: ExecutionMode,
}

impl MCConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_lower >= 1e4) || !self.t_lower.is_finite() {
            return Err(Error::Config(format!(
                "T = {} must be at least 10⁴",
                self.t_lower
            )));
        }
        if self.sample_count < 1000 {
            return Err(Error::Config(format!(
                "M = {} must be at least 1000",
                self.sample_count
            )));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::Config(format!(
                "σ = {} must be positive",
                self.sigma
            )));
        }
        if self.cutoff < 2 {
            return Err(Error::Config(format!("prime cutoff {} < 2", self.cutoff)));
        }
        if self.cutoff > 10_000_000 {
            return Err(Error::UnsupportedRange(format!(
                "prime cutoff {} above 10⁷",
                self.cutoff
            )));
        }
        if let Some(d) = self.delta_list.iter().find(|d| !d.is_finite()) {
            return Err(Error::Config(format!("non-finite Δ {d}")));
        }
        Ok(())
    }

    /// `t` for sample `i`.
    pub fn sample_t(&self, i: usize) -> f64 {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_word_pos(2 * i as u128);
        let u: f64 = rng.gen();
        self.t_lower * (1.0 + u)
    }
}

/// A value with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub value: f64,
    pub std_error: f64,
    pub sample_count: usize,
}

/// Per-sample values of `Re P_X(σ+it)`, `Re P_X(σ+i(t+Δ))` and optionally
/// `log|ζ_X(σ+i(t+Δ))|`, stored column-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    pub ts: Vec<f64>,
    pub base: Vec<f64>,
    pub deltas: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
    /// Empty unless requested; otherwise one column per `Δ`.
    pub log_zeta: Vec<Vec<f64>>,
}

impl SampleMatrix {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    fn index_of(&self, delta: f64) -> Result<usize> {
        self.deltas
            .iter()
            .position(|&d| d == delta)
            .ok_or(Error::UnknownDelta(delta))
    }

    /// The `Re P_X(σ+i(t+Δ))` column.
    pub fn column(&self, delta: f64) -> Result<&[f64]> {
        Ok(&self.columns[self.index_of(delta)?])
    }

    /// The `log|ζ_X(σ+i(t+Δ))|` column.
    pub fn log_zeta_column(&self, delta: f64) -> Result<&[f64]> {
        let i = self.index_of(delta)?;
        self.log_zeta
            .get(i)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Config("log|ζ_X| columns were not sampled".into()))
    }
}

// ---------------------------------------------------------------------------
// Double-double arithmetic for phase reduction.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const LN_2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl Dd {
    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Self::from_f64(q1)).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Self::from_f64(q2)).neg());
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2).add(Self::from_f64(q3))
    }
}

/// `ln n` to about 32 digits: `n = m·2^e` with `m ∈ [1/√2, √2]` and
/// `ln m = 2 atanh((m−1)/(m+1))`.
pub(crate) fn ln_dd(n: u64) -> Dd {
    assert!((1..1 << 53).contains(&n));
    let x = n as f64;
    let mut e = x.log2().floor() as i32;
    let mut m = x / 2f64.powi(e);
    if m >= 2.0 {
        m /= 2.0;
        e += 1;
    }
    if m > std::f64::consts::SQRT_2 {
        m /= 2.0;
        e += 1;
    }
    let (dh, dl) = two_sum(m, 1.0);
    let z = Dd::from_f64(m - 1.0).div(quick_two_sum(dh, dl));
    let z2 = z.mul(z);
    let mut power = z;
    let mut acc = z;
    for k in 1..40 {
        power = power.mul(z2);
        let term = power.div(Dd::from_f64((2 * k + 1) as f64));
        acc = acc.add(term);
        if term.hi.abs() < 1e-34 {
            break;
        }
    }
    let two_atanh = acc.add(acc);
    two_atanh.add(LN_2.mul(Dd::from_f64(e as f64)))
}

// 2π = C1 + C2 + C3 with C1, C2 of 30 significant bits, so `k·C1` and
// `k·C2` are exact for the quotients `k < 2²²` that arise.
const TWO_PI_C1: f64 = 6.283_185_310_661_793;
const TWO_PI_C2: f64 = -3.482_206_276_800_292_6e-9;
const TWO_PI_C3: f64 = -1.401_373_759_235_972e-18;
const INV_TWO_PI: f64 = 0.159_154_943_091_895_35;
const ROUNDING_SHIFT: f64 = 6_755_399_441_055_744.0; // 1.5·2⁵²

/// Veltkamp split into two halves of at most 26 significant bits.
fn split(x: f64) -> (f64, f64) {
    const FACTOR: f64 = 134_217_729.0; // 2²⁷ + 1
    let c = FACTOR * x;
    let hi = c - (c - x);
    (hi, x - hi)
}

/// A double-double logarithm prepared for repeated phase reduction.
#[derive(Debug, Clone, Copy)]
struct PhaseLog {
    hi: f64,
    lo: f64,
    hi_a: f64,
    hi_b: f64,
}

impl PhaseLog {
    fn new(l: Dd) -> Self {
        let (hi_a, hi_b) = split(l.hi);
        Self {
            hi: l.hi,
            lo: l.lo,
            hi_a,
            hi_b,
        }
    }

    /// `t·l mod 2π` in about `[−π, π]`, with `(t_a, t_b) = split(t)`.
    #[inline]
    fn reduce(&self, t: f64, t_a: f64, t_b: f64) -> f64 {
        let p = t * self.hi;
        let e = ((t_a * self.hi_a - p) + t_a * self.hi_b + t_b * self.hi_a) + t_b * self.hi_b;
        let k = (p * INV_TWO_PI + ROUNDING_SHIFT) - ROUNDING_SHIFT;
        let r = (p - k * TWO_PI_C1) - k * TWO_PI_C2;
        r + ((e + t * self.lo) - k * TWO_PI_C3)
    }
}

/// `t·l mod 2π` in `[−π, π]`, accurate to a few ulps of `π` for
/// `|t·l| < 2²⁴`.
pub(crate) fn reduce_phase(t: f64, l: Dd) -> f64 {
    let (t_a, t_b) = split(t);
    PhaseLog::new(l).reduce(t, t_a, t_b)
}

// ---------------------------------------------------------------------------
// Sampling.

struct Kernel {
    weights: Vec<f64>,
    logs: Vec<PhaseLog>,
    lags: usize,
    /// `(cos Δ log p, sin Δ log p)`, prime-major.
    shifts: Vec<(f64, f64)>,
}

impl Kernel {
    fn new(cfg: &MCConfig) -> Result<Self> {
        let table = shared_primes(cfg.cutoff)?;
        let primes = table.up_to(cfg.cutoff);
        let logs: Vec<Dd> = primes.iter().map(|&p| ln_dd(p)).collect();
        let weights = logs.iter().map(|l| (-cfg.sigma * l.hi).exp()).collect();
        let shifts = logs
            .iter()
            .flat_map(|&l| {
                cfg.delta_list
                    .iter()
                    .map(move |&d| sin_cos_pair(reduce_phase(d, l)))
            })
            .collect();
        Ok(Self {
            weights,
            logs: logs.into_iter().map(PhaseLog::new).collect(),
            lags: cfg.delta_list.len(),
            shifts,
        })
    }

    fn row(&self, t: f64, with_log_zeta: bool) -> Vec<f64> {
        let k = self.lags;
        let (t_a, t_b) = split(t);
        // Phases first, in a branch-free loop the compiler can vectorize.
        let phases: Vec<(f64, f64)> = self
            .logs
            .iter()
            .map(|l| cos_sin_reduced(l.reduce(t, t_a, t_b)))
            .collect();
        let mut out = vec![0.0; 1 + k + if with_log_zeta { k } else { 0 }];
        out[0] = self
            .weights
            .iter()
            .zip(&phases)
            .map(|(w, (c, _))| w * c)
            .sum();
        if k == 0 {
            return out;
        }
        for (i, (&w, &(c, s))) in self.weights.iter().zip(&phases).enumerate() {
            for (j, &(cd, sd)) in self.shifts[i * k..(i + 1) * k].iter().enumerate() {
                let cos_shifted = c * cd - s * sd;
                out[1 + j] += w * cos_shifted;
                if with_log_zeta {
                    // log|1 − w e^{−iψ}|² = log(1 − 2w cos ψ + w²)
                    out[1 + k + j] -= 0.5 * (w * (w - 2.0 * cos_shifted)).ln_1p();
                }
            }
        }
        out
    }
}

fn sin_cos_pair(phi: f64) -> (f64, f64) {
    let (s, c) = phi.sin_cos();
    (c, s)
}

/// `(cos φ, sin φ)` for `|φ| ≤ 4`, to within `4·10⁻¹⁶` absolute.
///
/// The phases are already reduced, so the general-purpose range reduction
/// in libm is wasted work on the hottest loop. Quadrant reduction by `π/2`
/// in two parts, then the classic minimax kernels on `[−π/4, π/4]`.
#[inline]
fn cos_sin_reduced(phi: f64) -> (f64, f64) {
    const PIO2_1: f64 = 1.570_796_326_734_125_6; // 33 bits
    const PIO2_1T: f64 = 6.077_100_506_506_192e-11;
    const S: [f64; 6] = [
        -1.666_666_666_666_663_2e-1,
        8.333_333_333_322_49e-3,
        -1.984_126_982_985_795e-4,
        2.755_731_370_707_007e-6,
        -2.505_076_025_340_686_3e-8,
        1.589_690_995_211_55e-10,
    ];
    #[allow(clippy::excessive_precision)]
    const C: [f64; 6] = [
        4.166_666_666_666_660_2e-2,
        -1.388_888_888_887_411e-3,
        2.480_158_728_947_673e-5,
        -2.755_731_435_139_066_3e-7,
        2.087_572_321_298_175e-9,
        -1.135_964_755_778_819_5e-11,
    ];
    let q = (phi * std::f64::consts::FRAC_2_PI + ROUNDING_SHIFT) - ROUNDING_SHIFT;
    let y = (phi - q * PIO2_1) - q * PIO2_1T;
    let z = y * y;
    let sin_poly = S[0] + z * (S[1] + z * (S[2] + z * (S[3] + z * (S[4] + z * S[5]))));
    let cos_poly = C[0] + z * (C[1] + z * (C[2] + z * (C[3] + z * (C[4] + z * C[5]))));
    let sy = y + y * z * sin_poly;
    let cy = (1.0 - 0.5 * z) + z * z * cos_poly;
    // Quadrant fix-up without branches: odd quadrants swap the pair, the
    // upper two negate it.
    let quadrant = q as i64 as u64;
    let swap = 0u64.wrapping_sub(quadrant & 1);
    let flip = (quadrant & 2) << 62;
    let pick = |a: f64, b: f64| f64::from_bits((a.to_bits() & !swap) | (b.to_bits() & swap));
    let c = pick(cy, -sy);
    let s = pick(sy, cy);
    (
        f64::from_bits(c.to_bits() ^ flip),
        f64::from_bits(s.to_bits() ^ flip),
    )
}

/// Samples `Re P_X(σ+it)` and the shifted columns for every `Δ` in the
/// configuration. Rows are computed in parallel; each row is a fixed-order
/// sum, so the matrix does not depend on scheduling.
pub fn sample_series(cfg: &MCConfig) -> Result<SampleMatrix> {
    sample(cfg, false)
}

/// As [`sample_series`], also recording the truncated Euler product
/// `log|ζ_X(σ+i(t+Δ))| = −Σ_p log|1 − p^{−σ−i(t+Δ)}|` for each `Δ`.
pub fn sample_series_with_log_zeta(cfg: &MCConfig) -> Result<SampleMatrix> {
    sample(cfg, true)
}

fn sample(cfg: &MCConfig, with_log_zeta: bool) -> Result<SampleMatrix> {
    cfg.validate()?;
    let kernel = Kernel::new(cfg)?;
    let m = cfg.sample_count;
    let ts: Vec<f64> = (0..m).map(|i| cfg.sample_t(i)).collect();
    let rows: Vec<Vec<f64>> = ts
        .par_iter()
        .map(|&t| kernel.row(t, with_log_zeta))
        .collect();
    let k = cfg.delta_list.len();
    let column = |j: usize| rows.iter().map(|r| r[j]).collect::<Vec<f64>>();
    Ok(SampleMatrix {
        base: column(0),
        columns: (0..k).map(|j| column(1 + j)).collect(),
        log_zeta: if with_log_zeta {
            (0..k).map(|j| column(1 + k + j)).collect()
        } else {
            Vec::new()
        },
        deltas: cfg.delta_list.clone(),
        ts,
    })
}

// ---------------------------------------------------------------------------
// Estimators.

fn total<F>(mode: ExecutionMode, n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    match mode {
        ExecutionMode::Sequential => (0..n).map(f).sum(),
        ExecutionMode::Parallel => (0..n).into_par_iter().map(f).sum(),
    }
}

/// Sample mean with standard error `s/√n`.
pub fn mean_estimate(xs: &[f64], mode: ExecutionMode) -> Result<EstimateWithError> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("{n} samples")));
    }
    let mean = total(mode, n, |i| xs[i]) / n as f64;
    let ss = total(mode, n, |i| (xs[i] - mean).powi(2));
    Ok(EstimateWithError {
        value: mean,
        std_error: (ss / (n - 1) as f64 / n as f64).sqrt(),
        sample_count: n,
    })
}

/// Unbiased sample covariance with a jackknife standard error computed from
/// closed-form leave-one-out updates.
pub fn covariance_estimate(
    xs: &[f64],
    ys: &[f64],
    mode: ExecutionMode,
) -> Result<EstimateWithError> {
    let n = xs.len();
    if ys.len() != n {
        return Err(Error::Config(format!(
            "column lengths {n} and {} differ",
            ys.len()
        )));
    }
    if n < 3 {
        return Err(Error::InsufficientData(format!("{n} samples")));
    }
    let nf = n as f64;
    let mx = total(mode, n, |i| xs[i]) / nf;
    let my = total(mode, n, |i| ys[i]) / nf;
    let c = total(mode, n, |i| (xs[i] - mx) * (ys[i] - my));
    let loo = |i: usize| (c - nf / (nf - 1.0) * (xs[i] - mx) * (ys[i] - my)) / (nf - 2.0);
    let loo_mean = total(mode, n, loo) / nf;
    let spread = total(mode, n, |i| (loo(i) - loo_mean).powi(2));
    Ok(EstimateWithError {
        value: c / (nf - 1.0),
        std_error: ((nf - 1.0) / nf * spread).sqrt(),
        sample_count: n,
    })
}

/// Sample variance of the base column with jackknife standard error.
pub fn estimate_variance(samples: &SampleMatrix, mode: ExecutionMode) -> Result<EstimateWithError> {
    covariance_estimate(&samples.base, &samples.base, mode)
}

/// Sample covariance of `Re P_X(σ+i(t+Δ))` with `Re P_X(σ+it)`, an estimate
/// of `R(Δ) = ½ Re P_X(2σ+iΔ)`.
pub fn estimate_autocov(
    samples: &SampleMatrix,
    delta: f64,
    mode: ExecutionMode,
) -> Result<EstimateWithError> {
    covariance_estimate(samples.column(delta)?, &samples.base, mode)
}

/// Kolmogorov–Smirnov distance between the standardized samples and `Φ`.
pub fn ks_normality(samples: &[f64]) -> Result<f64> {
    let n = samples.len();
    if n < MIN_DISTRIBUTION_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{n} samples, need at least {MIN_DISTRIBUTION_SAMPLES}"
        )));
    }
    let est = mean_estimate(samples, ExecutionMode::Sequential)?;
    let sd = est.std_error * (n as f64).sqrt();
    if !(sd > 0.0) {
        return Err(Error::InsufficientData("samples have no spread".into()));
    }
    let mut z: Vec<f64> = samples.iter().map(|x| (x - est.value) / sd).collect();
    z.sort_by(f64::total_cmp);
    let nf = n as f64;
    Ok(z.iter()
        .enumerate()
        .map(|(i, &zi)| {
            let f = normal_cdf(zi);
            ((i + 1) as f64 / nf - f).max(f - i as f64 / nf)
        })
        .fold(0.0, f64::max))
}

/// 99% critical value `1.63/√M` of the Kolmogorov distance.
pub fn ks_critical_99(m: usize) -> f64 {
    1.63 / (m as f64).sqrt()
}

/// Weighted least-squares slope of within-bin means of the `Δ` column on
/// within-bin means of the base column, bins of width `bin_width_in_sd`
/// sample standard deviations, weights equal to bin counts. The standard
/// error is the heteroskedasticity-robust sandwich form.
pub fn conditional_slope(
    samples: &SampleMatrix,
    delta: f64,
    bin_width_in_sd: f64,
    mode: ExecutionMode,
) -> Result<EstimateWithError> {
    let xs = &samples.base;
    let ys = samples.column(delta)?;
    let n = xs.len();
    if n < MIN_DISTRIBUTION_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{n} samples, need at least {MIN_DISTRIBUTION_SAMPLES}"
        )));
    }
    if !(bin_width_in_sd > 0.0) {
        return Err(Error::Config(format!(
            "bin width {bin_width_in_sd} must be positive"
        )));
    }
    let est = mean_estimate(xs, mode)?;
    let width = bin_width_in_sd * est.std_error * (n as f64).sqrt();
    let bin_of = |x: f64| ((x - est.value) / width).floor() as i64;

    let mut bins: std::collections::BTreeMap<i64, (usize, f64)> = Default::default();
    for &x in xs.iter() {
        let e = bins.entry(bin_of(x)).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += x;
    }
    if bins.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "{} populated bins, need 5",
            bins.len()
        )));
    }
    let centroid: std::collections::BTreeMap<i64, f64> = bins
        .iter()
        .map(|(&b, &(count, sum))| (b, sum / count as f64))
        .collect();
    let z: Vec<f64> = xs.iter().map(|&x| centroid[&bin_of(x)]).collect();

    let nf = n as f64;
    let mz = total(mode, n, |i| z[i]) / nf;
    let my = total(mode, n, |i| ys[i]) / nf;
    let szz = total(mode, n, |i| (z[i] - mz).powi(2));
    let szy = total(mode, n, |i| (z[i] - mz) * (ys[i] - my));
    let slope = szy / szz;
    let meat = total(mode, n, |i| {
        let r = ys[i] - my - slope * (z[i] - mz);
        (z[i] - mz).powi(2) * r * r
    });
    Ok(EstimateWithError {
        value: slope,
        std_error: meat.sqrt() / szz,
        sample_count: n,
    })
}

/// `R(Δ) = ½ Σ_{p ≤ X} p^{−2σ} cos(Δ log p)`, the target of the covariance
/// estimators.
pub fn series_autocov(sigma: f64, cutoff: u64, delta: f64) -> Result<f64> {
    let table = shared_primes(cutoff)?;
    Ok(0.5
        * table
            .up_to(cutoff)
            .iter()
            .rev()
            .map(|&p| {
                let l = ln_dd(p);
                (-2.0 * sigma * l.hi).exp() * reduce_phase(delta, l).cos()
            })
            .sum::<f64>())
}

fn check_log_zeta_cov(cfg: &MCConfig) -> Result<()> {
    if !(cfg.sigma > 0.5) {
        return Err(Error::Domain(format!("σ = {} must exceed 1/2", cfg.sigma)));
    }
    Ok(())
}

/// Covariance of `log|ζ_X(σ+i(t+Δ))|` with `Re P_X(σ+it)` against
/// `½ Re P_X(2σ+iΔ)`. The configuration's `delta_list` is replaced by `[Δ]`.
pub fn log_zeta_cov_check(cfg: &MCConfig, delta: f64) -> Result<(EstimateWithError, f64)> {
    check_log_zeta_cov(cfg)?;
    let cfg = MCConfig {
        delta_list: vec![delta],
        ..cfg.clone()
    };
    let samples = sample_series_with_log_zeta(&cfg)?;
    let lhs = covariance_estimate(samples.log_zeta_column(delta)?, &samples.base, cfg.mode)?;
    Ok((lhs, series_autocov(cfg.sigma, cfg.cutoff, delta)?))
}

/// As [`log_zeta_cov_check`] with `log|ζ(σ+i(t+Δ))|` from Euler–Maclaurin
/// instead of the truncated Euler product. Each sample costs `O(t)`, so keep
/// `T` near 10⁴ and `M` in the low thousands.
pub fn log_zeta_cov_check_exact(cfg: &MCConfig, delta: f64) -> Result<(EstimateWithError, f64)> {
    check_log_zeta_cov(cfg)?;
    let cfg = MCConfig {
        delta_list: vec![delta],
        ..cfg.clone()
    };
    let samples = sample_series(&cfg)?;
    let log_zeta: Vec<f64> = samples
        .ts
        .par_iter()
        .map(|&t| {
            euler_maclaurin_unchecked(Complex::new(cfg.sigma, t + delta))
                .norm()
                .ln()
        })
        .collect();
    let lhs = covariance_estimate(&log_zeta, &samples.base, cfg.mode)?;
    Ok((lhs, series_autocov(cfg.sigma, cfg.cutoff, delta)?))
}

// ---------------------------------------------------------------------------
// Reports.

/// Which estimator set [`run_check`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McCheck {
    /// Mean, variance, autocovariances, and for `M ≥ 10⁴` the KS distance
    /// and regression slopes.
    Battery,
    /// Sample variance against `R(0)`.
    Variance,
    /// Sample autocovariance at every `Δ` against `R(Δ)`.
    Autocov,
    /// KS distance of the standardized base column from `Φ`.
    Clt,
    /// Binned conditional-mean slope at every `Δ` against `R(Δ)/R(0)`.
    Slope,
    /// Covariance of the truncated Euler product with the base column.
    LogZetaCov,
    /// The same covariance with Euler–Maclaurin `ζ`.
    LogZetaCovExact,
}

impl McCheck {
    pub const ALL: [McCheck; 7] = [
        Self::Battery,
        Self::Variance,
        Self::Autocov,
        Self::Clt,
        Self::Slope,
        Self::LogZetaCov,
        Self::LogZetaCovExact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Battery => "battery",
            Self::Variance => "variance",
            Self::Autocov => "autocov",
            Self::Clt => "clt",
            Self::Slope => "slope",
            Self::LogZetaCov => "log-zeta-cov",
            Self::LogZetaCovExact => "log-zeta-cov-exact",
        }
    }
}

impl std::str::FromStr for McCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

/// Relative tolerance on the variance.
pub const VARIANCE_REL_TOLERANCE: f64 = 0.02;
/// KS distance accepted for the standardized series.
pub const KS_TOLERANCE: f64 = 0.03;
/// Absolute tolerance on regression slopes.
pub const SLOPE_TOLERANCE: f64 = 0.05;
/// Covariance checks pass within this many standard errors.
pub const SE_MULTIPLE: f64 = 4.0;

/// Parallel arrays of estimates, standard errors, targets and verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub schema_version: String,
    pub check: String,
    pub config: MCConfig,
    pub labels: Vec<String>,
    pub estimates: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub targets: Vec<f64>,
    pub pass: Vec<bool>,
}

impl McReport {
    fn new(check: McCheck, config: &MCConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            check: check.name().into(),
            config: config.clone(),
            labels: Vec::new(),
            estimates: Vec::new(),
            std_errors: Vec::new(),
            targets: Vec::new(),
            pass: Vec::new(),
        }
    }

    fn push(&mut self, label: String, est: f64, se: f64, target: f64, pass: bool) {
        self.labels.push(label);
        self.estimates.push(est);
        self.std_errors.push(se);
        self.targets.push(target);
        self.pass.push(pass);
    }

    fn push_within_se(&mut self, label: String, est: EstimateWithError, target: f64) {
        let ok = (est.value - target).abs() <= SE_MULTIPLE * est.std_error;
        self.push(label, est.value, est.std_error, target, ok);
    }

    pub fn all_pass(&self) -> bool {
        self.pass.iter().all(|&p| p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `check` under `cfg` and collects the results.
pub fn run_check(cfg: &MCConfig, check: McCheck) -> Result<McReport> {
    cfg.validate()?;
    let mut report = McReport::new(check, cfg);
    let mode = cfg.mode;
    let lags: Vec<f64> = cfg
        .delta_list
        .iter()
        .copied()
        .filter(|&d| d != 0.0)
        .collect();
    let needs_lags = matches!(
        check,
        McCheck::Autocov | McCheck::Slope | McCheck::LogZetaCov | McCheck::LogZetaCovExact
    );
    if needs_lags && lags.is_empty() {
        return Err(Error::Config(format!(
            "check {} needs a non-zero Δ",
            check.name()
        )));
    }
    let battery = check == McCheck::Battery;
    match check {
        McCheck::LogZetaCov | McCheck::LogZetaCovExact => {
            for &d in &lags {
                let (lhs, rhs) = if check == McCheck::LogZetaCov {
                    log_zeta_cov_check(cfg, d)?
                } else {
                    log_zeta_cov_check_exact(cfg, d)?
                };
                report.push_within_se(format!("log_zeta_cov({d})"), lhs, rhs);
            }
        }
        _ => {
            let distribution = battery || matches!(check, McCheck::Clt | McCheck::Slope);
            if !battery && distribution && cfg.sample_count < MIN_DISTRIBUTION_SAMPLES {
                return Err(Error::InsufficientData(format!(
                    "check {} needs M ≥ {MIN_DISTRIBUTION_SAMPLES}",
                    check.name()
                )));
            }
            let samples = sample_series(cfg)?;
            let r0 = series_autocov(cfg.sigma, cfg.cutoff, 0.0)?;
            if battery {
                report.push_within_se("mean".into(), mean_estimate(&samples.base, mode)?, 0.0);
            }
            if battery || check == McCheck::Variance {
                let var = estimate_variance(&samples, mode)?;
                let ok = (var.value - r0).abs() <= VARIANCE_REL_TOLERANCE * r0;
                report.push("variance".into(), var.value, var.std_error, r0, ok);
            }
            if battery || check == McCheck::Autocov {
                for &d in &lags {
                    let target = series_autocov(cfg.sigma, cfg.cutoff, d)?;
                    report.push_within_se(
                        format!("autocov({d})"),
                        estimate_autocov(&samples, d, mode)?,
                        target,
                    );
                }
            }
            let enough = samples.len() >= MIN_DISTRIBUTION_SAMPLES;
            if (battery && enough) || check == McCheck::Clt {
                let ks = ks_normality(&samples.base)?;
                report.push("ks".into(), ks, 0.0, 0.0, ks < KS_TOLERANCE);
            }
            if (battery && enough) || check == McCheck::Slope {
                for &d in &lags {
                    let rho = series_autocov(cfg.sigma, cfg.cutoff, d)? / r0;
                    let slope = conditional_slope(&samples, d, DEFAULT_BIN_WIDTH, mode)?;
                    let ok = (slope.value - rho).abs() <= SLOPE_TOLERANCE;
                    report.push(format!("slope({d})"), slope.value, slope.std_error, rho, ok);
                }
            }
        }
    }
    Ok(report)
}
