//! Random trigonometric series over the primes and the conditional laws of
//! elliptical processes built from them.
//!
//! For `X(t) = Σ_{p ≤ X} a_p cos(t log p + θ_p)` with `t` uniform on a long
//! interval, the phases behave like independent uniforms, so `X` has
//! characteristic function `Π J₀(λ a_p)` and autocovariance
//! `R(Δ) = ½ Σ a_p² cos(Δ log p)`.

use serde::{Deserialize, Serialize};

use crate::primes::shared_primes;
use crate::special::{bessel_j0, ln_bessel_k};
use crate::{Error, Result};

/// `Σ_{p ≤ X} a_p cos(t log p + θ_p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPrimeSeries {
    cutoff: u64,
    primes: Vec<u64>,
    weights: Vec<f64>,
    phases: Vec<f64>,
    logs: Vec<f64>,
}

impl TrigPrimeSeries {
    /// `a_p = p^{-σ}`, `θ_p = 0`: the real part of `P_X(σ + it)`.
    pub fn zeta(sigma: f64, cutoff: u64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::Config(format!("σ = {sigma} must be positive")));
        }
        let n = prime_count(cutoff)?;
        let primes = shared_primes(cutoff)?.up_to(cutoff).to_vec();
        let weights = primes.iter().map(|&p| (p as f64).powf(-sigma)).collect();
        Self::new(cutoff, weights, vec![0.0; n])
    }

    /// One weight and one phase per prime `≤ cutoff`, in increasing order.
    pub fn new(cutoff: u64, weights: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        let n = prime_count(cutoff)?;
        if weights.len() != n || phases.len() != n {
            return Err(Error::Config(format!(
                "{n} primes up to {cutoff}, but {} weights and {} phases",
                weights.len(),
                phases.len()
            )));
        }
        if weights.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(Error::Config("weights must be positive and finite".into()));
        }
        let two_pi = std::f64::consts::TAU;
        if phases.iter().any(|&th| !(0.0..two_pi).contains(&th)) {
            return Err(Error::Config("phases must lie in [0, 2π)".into()));
        }
        let primes = shared_primes(cutoff)?.up_to(cutoff).to_vec();
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        Ok(Self {
            cutoff,
            primes,
            weights,
            phases,
            logs,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// `X(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        (0..self.weights.len())
            .rev()
            .map(|i| self.weights[i] * (t * self.logs[i] + self.phases[i]).cos())
            .sum()
    }

    /// `R(0) = ½ Σ a_p²`, the variance of `X`.
    pub fn r0(&self) -> f64 {
        autocov(self, 0.0)
    }
}

fn prime_count(cutoff: u64) -> Result<usize> {
    if cutoff < 2 {
        return Err(Error::Config(format!("prime cutoff {cutoff} < 2")));
    }
    Ok(shared_primes(cutoff)?.count_up_to(cutoff))
}

/// `φ(λ) = Π_p J₀(λ a_p)`.
pub fn characteristic_function(series: &TrigPrimeSeries, lam: f64) -> f64 {
    series.weights.iter().map(|&a| bessel_j0(lam * a)).product()
}

/// `R(Δ) = ½ Σ a_p² cos(Δ log p)`.
pub fn autocov(series: &TrigPrimeSeries, delta: f64) -> f64 {
    0.5 * series
        .weights
        .iter()
        .zip(&series.logs)
        .rev()
        .map(|(a, l)| a * a * (delta * l).cos())
        .sum::<f64>()
}

/// `R(0)` together with `R(Δ)` at a set of lags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutocovProfile {
    r0: f64,
    lags: Vec<(f64, f64)>,
}

impl AutocovProfile {
    /// Builds a profile from stored `(Δ, R(Δ))` pairs; `Δ = 0` is always
    /// present with value `r0`.
    pub fn new(r0: f64, lags: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::Config(format!("R(0) = {r0} must be positive")));
        }
        let mut stored = vec![(0.0, r0)];
        for (delta, r) in lags {
            if !delta.is_finite() || !r.is_finite() {
                return Err(Error::Config(format!(
                    "non-finite lag entry ({delta}, {r})"
                )));
            }
            if r.abs() > r0 * (1.0 + 1e-12) {
                return Err(Error::Config(format!(
                    "|R({delta})| = {} exceeds R(0) = {r0}",
                    r.abs()
                )));
            }
            if delta != 0.0 {
                stored.push((delta, r));
            }
        }
        Ok(Self { r0, lags: stored })
    }

    /// Profile with `ρ(Δ) = rho` at the single lag `delta`.
    pub fn with_correlation(r0: f64, delta: f64, rho: f64) -> Result<Self> {
        Self::new(r0, [(delta, rho * r0)])
    }

    /// Evaluates the autocovariance of `series` at every lag in `deltas`.
    pub fn from_series(series: &TrigPrimeSeries, deltas: &[f64]) -> Result<Self> {
        Self::new(series.r0(), deltas.iter().map(|&d| (d, autocov(series, d))))
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Stored `(Δ, R(Δ))` pairs, `Δ = 0` first.
    pub fn lags(&self) -> &[(f64, f64)] {
        &self.lags
    }

    pub fn r_of_delta(&self, delta: f64) -> Result<f64> {
        self.lags
            .iter()
            .find(|(d, _)| d.abs() == delta.abs())
            .map(|&(_, r)| r)
            .ok_or(Error::UnknownDelta(delta))
    }

    /// `ρ(Δ) = R(Δ)/R(0)`, clamped to `[−1, 1]`.
    pub fn rho(&self, delta: f64) -> Result<f64> {
        Ok((self.r_of_delta(delta)? / self.r0).clamp(-1.0, 1.0))
    }
}

/// `μ = ρ(Δ)·x_cond`.
pub fn conditional_mean(profile: &AutocovProfile, delta: f64, x_cond: f64) -> Result<f64> {
    Ok(profile.rho(delta)? * x_cond)
}

/// `h(Δ) = R(0)(1 − ρ(Δ)²)`.
pub fn conditional_variance_factor(profile: &AutocovProfile, delta: f64) -> Result<f64> {
    let rho = profile.rho(delta)?;
    Ok((profile.r0 * (1.0 - rho * rho)).max(0.0))
}

/// A normal law `N(mean, variance)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalGaussian {
    pub mean: f64,
    pub variance: f64,
}

impl ConditionalGaussian {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) || !variance.is_finite() || !mean.is_finite() {
            return Err(Error::DegenerateConditional(format!(
                "N({mean}, {variance}) is not a proper normal law"
            )));
        }
        Ok(Self { mean, variance })
    }

    /// Gaussian law of `X(t+Δ)` given `X(t) = x_cond`.
    pub fn from_profile(profile: &AutocovProfile, delta: f64, x_cond: f64) -> Result<Self> {
        Self::new(
            conditional_mean(profile, delta, x_cond)?,
            conditional_variance_factor(profile, delta)?,
        )
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.std_dev();
        (-0.5 * z * z).exp() / (self.std_dev() * std::f64::consts::TAU.sqrt())
    }

    pub fn cdf(&self, x: f64) -> f64 {
        crate::special::normal_cdf((x - self.mean) / self.std_dev())
    }
}

/// Parameters of a symmetric generalized hyperbolic law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenHypParams {
    pub lambda: f64,
    pub alpha: f64,
    pub delta: f64,
}

impl Default for GenHypParams {
    /// The hyperbolic case `λ = α = δ = 1`.
    fn default() -> Self {
        Self {
            lambda: 1.0,
            alpha: 1.0,
            delta: 1.0,
        }
    }
}

impl GenHypParams {
    pub fn new(lambda: f64, alpha: f64, delta: f64) -> Result<Self> {
        let p = Self {
            lambda,
            alpha,
            delta,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0)
            || !(self.delta > 0.0)
            || !self.alpha.is_finite()
            || !self.delta.is_finite()
        {
            return Err(Error::Config(format!(
                "generalized hyperbolic needs α > 0 and δ > 0, got α = {}, δ = {}",
                self.alpha, self.delta
            )));
        }
        if !(self.lambda.abs() <= 49.0) {
            return Err(Error::UnsupportedRange(format!(
                "|λ| = {} exceeds 49",
                self.lambda
            )));
        }
        Ok(())
    }

    /// `α' = α√R(0)`.
    pub fn alpha_prime(&self, r0: f64) -> f64 {
        self.alpha * r0.sqrt()
    }

    /// `δ_{t+Δ|t} = √(δ²/R(0) + x²/R(0)²)`.
    pub fn conditional_delta(&self, r0: f64, x_cond: f64) -> f64 {
        (self.delta * self.delta / r0 + x_cond * x_cond / (r0 * r0)).sqrt()
    }
}

/// `ln(eᶻ K_ν(z))`.
fn ln_scaled_k(nu: f64, z: f64) -> Result<f64> {
    Ok(ln_bessel_k(nu, z)? + z)
}

fn nondegenerate(profile: &AutocovProfile, delta: f64) -> Result<(f64, f64)> {
    let rho = profile.rho(delta)?;
    let h = conditional_variance_factor(profile, delta)?;
    if rho.abs() >= 1.0 || !(h > 0.0) {
        return Err(Error::DegenerateConditional(format!(
            "|ρ({delta})| = {} leaves no conditional spread",
            rho.abs()
        )));
    }
    Ok((rho, h))
}

/// Conditional density of `X(t+Δ)` at `x` given `X(t) = x_cond` when the pair
/// is jointly generalized hyperbolic.
///
/// In the standardized variable `y = (x − μ)/√(R(0)h)` this is
/// ```text
/// √(α'/2π) δc^{1/2−λ} K_{λ−1}(α'q) q^{λ−1} / K_{λ−1/2}(α'δc),   q = √(δc² + y²)
/// ```
/// and the returned value carries the Jacobian `1/√(R(0)h)` so that it
/// integrates to one in `x`.
pub fn genhyp_conditional_density(
    params: &GenHypParams,
    profile: &AutocovProfile,
    delta: f64,
    x_cond: f64,
    x: f64,
) -> Result<f64> {
    params.validate()?;
    let (rho, h) = nondegenerate(profile, delta)?;
    let r0 = profile.r0();
    let lambda = params.lambda;
    let a = params.alpha_prime(r0);
    let dc = params.conditional_delta(r0, x_cond);
    let y2 = (x - rho * x_cond).powi(2) / (r0 * h);
    let q = (dc * dc + y2).sqrt();
    let ln_density = 0.5 * (a / std::f64::consts::TAU).ln() - (lambda - 0.5) * dc.ln()
        + (lambda - 1.0) * q.ln()
        + ln_scaled_k(lambda - 1.0, a * q)?
        - ln_scaled_k(lambda - 0.5, a * dc)?
        - a * (q - dc)
        - 0.5 * (r0 * h).ln();
    Ok(ln_density.exp())
}

/// `f(x) = (1/α) δ₁ K_{λ+1/2}(αδ₁)/K_{λ−1/2}(αδ₁)` with `δ₁ = √(δ² + x²/R(0))`.
pub fn genhyp_variance_multiplier(params: &GenHypParams, r0: f64, x_cond: f64) -> Result<f64> {
    params.validate()?;
    if !(r0 > 0.0) {
        return Err(Error::Config(format!("R(0) = {r0} must be positive")));
    }
    let d1 = (params.delta * params.delta + x_cond * x_cond / r0).sqrt();
    let z = params.alpha * d1;
    let ratio = (ln_scaled_k(params.lambda + 0.5, z)? - ln_scaled_k(params.lambda - 0.5, z)?).exp();
    Ok(d1 / params.alpha * ratio)
}

/// `var{X(t+Δ) | X(t) = x_cond} = h(Δ)·f(x_cond)`.
pub fn genhyp_conditional_variance(
    params: &GenHypParams,
    profile: &AutocovProfile,
    delta: f64,
    x_cond: f64,
) -> Result<f64> {
    let (_, h) = nondegenerate(profile, delta)?;
    Ok(h * genhyp_variance_multiplier(params, profile.r0(), x_cond)?)
}

/// Fewest samples [`tail_exponent_check`] accepts.
pub const MIN_TAIL_SAMPLES: usize = 10_000;

/// Exponential tail rate `r̂` of `samples`, standardized by `√R(0)` of
/// `series`: the negated least-squares slope of `log S(|z|)` against `|z|`
/// over the top decile of `|z|`.
pub fn tail_exponent_check(series: &TrigPrimeSeries, samples: &[f64]) -> Result<f64> {
    if samples.len() < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{} samples, need at least {MIN_TAIL_SAMPLES}",
            samples.len()
        )));
    }
    let scale = series.r0().sqrt();
    let mut abs: Vec<f64> = samples.iter().map(|x| (x / scale).abs()).collect();
    if abs.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite sample".into()));
    }
    abs.sort_by(|a, b| b.total_cmp(a));
    let n = abs.len() as f64;
    let tail = abs.len() / 10;
    let xs = &abs[..tail];
    let ys: Vec<f64> = (1..=tail).map(|k| (k as f64 / n).ln()).collect();
    let mx = xs.iter().sum::<f64>() / tail as f64;
    let my = ys.iter().sum::<f64>() / tail as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if !(sxx > 0.0) {
        return Err(Error::InsufficientData(
            "tail samples have no spread".into(),
        ));
    }
    Ok(-sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_zeta::{prime_zeta_truncated, truncated_variance};
    use crate::quad::adaptive_simpson;
    use crate::special::bessel_k;
    use crate::Complex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Cauchy, Distribution, Normal};

    fn single_prime() -> TrigPrimeSeries {
        TrigPrimeSeries::new(2, vec![1.0], vec![0.0]).unwrap()
    }

    #[test]
    fn characteristic_function_basics() {
        let s = TrigPrimeSeries::zeta(0.75, 1000).unwrap();
        assert_eq!(characteristic_function(&s, 0.0), 1.0);
        for lam in [0.3, 1.0, 4.0] {
            assert_eq!(
                characteristic_function(&s, -lam),
                characteristic_function(&s, lam)
            );
            assert_eq!(
                characteristic_function(&single_prime(), lam),
                bessel_j0(lam)
            );
        }
    }

    #[test]
    fn empirical_characteristic_function() {
        let s = TrigPrimeSeries::zeta(0.75, 100).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = 20_000;
        let xs: Vec<f64> = (0..m)
            .map(|_| s.eval(1e6 * (1.0 + rng.gen::<f64>())))
            .collect();
        for lam in [0.5, 1.0, 2.0] {
            let c: Vec<f64> = xs.iter().map(|x| (lam * x).cos()).collect();
            let mean = c.iter().sum::<f64>() / m as f64;
            let var = c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
            let se = (var / m as f64).sqrt();
            let phi = characteristic_function(&s, lam);
            assert!(
                (mean - phi).abs() < 3.0 * se,
                "λ={lam}: {mean} vs {phi} ± {se}"
            );
        }
    }

    #[test]
    fn autocov_matches_prime_sums() {
        let half = TrigPrimeSeries::zeta(0.5, 100_000).unwrap();
        assert!((autocov(&half, 0.0) - truncated_variance(100_000).unwrap()).abs() < 1e-12);
        let s = TrigPrimeSeries::zeta(0.75, 100_000).unwrap();
        let direct = prime_zeta_truncated(Complex::new(1.5, 1.0), 100_000)
            .unwrap()
            .re;
        assert!((2.0 * autocov(&s, 1.0) - direct).abs() < 1e-12);
        let hand = 0.5 * s.weights().iter().map(|a| a * a).sum::<f64>();
        assert!((s.r0() - hand).abs() < 1e-12);
    }

    #[test]
    fn series_validation() {
        assert!(TrigPrimeSeries::new(10, vec![1.0; 3], vec![0.0; 4]).is_err());
        assert!(TrigPrimeSeries::new(10, vec![1.0, 1.0, -1.0, 1.0], vec![0.0; 4]).is_err());
        assert!(TrigPrimeSeries::new(10, vec![1.0; 4], vec![0.0, 7.0, 0.0, 0.0]).is_err());
        assert!(TrigPrimeSeries::zeta(0.0, 10).is_err());
        assert!(TrigPrimeSeries::zeta(0.5, 1).is_err());
        let s = TrigPrimeSeries::new(3, vec![1.0, 2.0], vec![0.0, 1.0]).unwrap();
        assert!(
            (s.eval(0.5) - ((0.5 * 2f64.ln()).cos() + 2.0 * (0.5 * 3f64.ln() + 1.0).cos())).abs()
                < 1e-15
        );
    }

    #[test]
    fn gaussian_conditional_moments() {
        let p = AutocovProfile::with_correlation(2.0, 1.0, 0.3).unwrap();
        assert_eq!(conditional_mean(&p, 0.0, 7.5).unwrap(), 7.5);
        assert_eq!(conditional_mean(&p, 1.0, 0.0).unwrap(), 0.0);
        assert!((conditional_mean(&p, 1.0, -10.0).unwrap() + 3.0).abs() < 1e-12);
        assert_eq!(conditional_variance_factor(&p, 0.0).unwrap(), 0.0);
        let zero = AutocovProfile::with_correlation(2.0, 1.0, 0.0).unwrap();
        assert_eq!(conditional_variance_factor(&zero, 1.0).unwrap(), 2.0);
        let six = AutocovProfile::with_correlation(2.0, 1.0, 0.6).unwrap();
        assert!((conditional_variance_factor(&six, 1.0).unwrap() - 1.28).abs() < 1e-12);
        assert!(matches!(p.rho(2.0), Err(Error::UnknownDelta(_))));
        let g = ConditionalGaussian::from_profile(&six, 1.0, 1.0).unwrap();
        assert!((g.cdf(g.mean) - 0.5).abs() < 1e-15);
        assert!(ConditionalGaussian::from_profile(&six, 0.0, 1.0).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(AutocovProfile::new(0.0, []).is_err());
        assert!(AutocovProfile::new(1.0, [(1.0, 1.5)]).is_err());
        let s = TrigPrimeSeries::zeta(0.75, 1000).unwrap();
        let p = AutocovProfile::from_series(&s, &[1.0, 5.0, 14.0]).unwrap();
        for (_, r) in p.lags() {
            assert!(r.abs() <= p.r0());
        }
        assert_eq!(p.rho(-5.0).unwrap(), p.rho(5.0).unwrap());
    }

    #[test]
    fn genhyp_density_normalizes() {
        let params = GenHypParams::default();
        let profile = AutocovProfile::with_correlation(1.0, 1.0, 0.5).unwrap();
        let (x_cond, mu) = (2.0, 1.0);
        let sd = conditional_variance_factor(&profile, 1.0).unwrap().sqrt();
        let f = |x: f64| genhyp_conditional_density(&params, &profile, 1.0, x_cond, x).unwrap();
        let total = adaptive_simpson(f, mu - 40.0 * sd, mu + 40.0 * sd, 64, 1e-12);
        assert!((total - 1.0).abs() < 1e-6, "{total}");
        for u in [0.1, 1.0, 5.0] {
            assert!((f(mu + u) - f(mu - u)).abs() < 1e-12);
        }
    }

    #[test]
    fn genhyp_density_other_parameters_normalize() {
        let profile = AutocovProfile::with_correlation(0.4, 3.0, -0.7).unwrap();
        for params in [
            GenHypParams::new(-0.5, 2.0, 0.5).unwrap(),
            GenHypParams::new(3.0, 0.7, 2.0).unwrap(),
        ] {
            let x_cond = -1.3;
            let mu = conditional_mean(&profile, 3.0, x_cond).unwrap();
            let sd = conditional_variance_factor(&profile, 3.0).unwrap().sqrt();
            let f = |x: f64| genhyp_conditional_density(&params, &profile, 3.0, x_cond, x).unwrap();
            let span = 40.0 * sd * (1.0 + 1.0 / params.alpha_prime(0.4));
            let total = adaptive_simpson(f, mu - span, mu + span, 128, 1e-12);
            assert!((total - 1.0).abs() < 1e-6, "{params:?}: {total}");
        }
    }

    #[test]
    fn genhyp_variance_matches_second_moment() {
        let params = GenHypParams::new(1.5, 1.2, 0.8).unwrap();
        let profile = AutocovProfile::with_correlation(0.7, 1.0, 0.4).unwrap();
        let x_cond = 1.1;
        let mu = conditional_mean(&profile, 1.0, x_cond).unwrap();
        let sd = conditional_variance_factor(&profile, 1.0).unwrap().sqrt();
        let f = |x: f64| {
            (x - mu).powi(2)
                * genhyp_conditional_density(&params, &profile, 1.0, x_cond, x).unwrap()
        };
        let second = adaptive_simpson(f, mu - 80.0 * sd, mu + 80.0 * sd, 128, 1e-12);
        let var = genhyp_conditional_variance(&params, &profile, 1.0, x_cond).unwrap();
        assert!((second / var - 1.0).abs() < 1e-6, "{second} vs {var}");
    }

    #[test]
    fn genhyp_variance_asymptote_and_limits() {
        let params = GenHypParams::default();
        let (r0, rho) = (1.0, 0.5);
        let profile = AutocovProfile::with_correlation(r0, 1.0, rho).unwrap();
        let asymptote = r0.sqrt() / params.alpha * (1.0 - rho * rho);
        for x in [200.0, -200.0] {
            let v = genhyp_conditional_variance(&params, &profile, 1.0, x).unwrap();
            assert!((v / x.abs() / asymptote - 1.0).abs() < 0.02);
        }
        let tight = AutocovProfile::with_correlation(r0, 1.0, 0.9999).unwrap();
        let f = genhyp_variance_multiplier(&params, r0, 3.0).unwrap();
        assert!(genhyp_conditional_variance(&params, &tight, 1.0, 3.0).unwrap() < 1e-3 * r0 * f);
        let h = conditional_variance_factor(&profile, 1.0).unwrap();
        let unrolled = h * bessel_k(1.5, 1.0).unwrap() / bessel_k(0.5, 1.0).unwrap();
        assert!(
            (genhyp_conditional_variance(&params, &profile, 1.0, 0.0).unwrap() - unrolled).abs()
                < 1e-12
        );
        for x in [0.5, 30.0] {
            assert_eq!(
                genhyp_variance_multiplier(&params, r0, x).unwrap(),
                genhyp_variance_multiplier(&params, r0, -x).unwrap()
            );
        }
    }

    #[test]
    fn genhyp_density_decay_in_conditioning_value() {
        let params = GenHypParams::default();
        let profile = AutocovProfile::with_correlation(1.0, 1.0, 0.5).unwrap();
        let at_mean = |x_cond: f64| {
            let mu = conditional_mean(&profile, 1.0, x_cond).unwrap();
            genhyp_conditional_density(&params, &profile, 1.0, x_cond, mu).unwrap()
        };
        let ratio = at_mean(1e4) / at_mean(1e2);
        assert!((ratio / 0.1 - 1.0).abs() < 0.05, "{ratio}");
    }

    #[test]
    fn genhyp_uncorrelated_ignores_lag() {
        let params = GenHypParams::default();
        let a = AutocovProfile::with_correlation(1.0, 1.0, 0.0).unwrap();
        let b = AutocovProfile::with_correlation(1.0, 9.0, 0.0).unwrap();
        let fa = genhyp_conditional_density(&params, &a, 1.0, 0.7, 0.2).unwrap();
        let fb = genhyp_conditional_density(&params, &b, 9.0, 0.7, 0.2).unwrap();
        assert_eq!(fa, fb);
    }

    #[test]
    fn genhyp_errors() {
        let params = GenHypParams::default();
        let p = AutocovProfile::with_correlation(1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            genhyp_conditional_density(&params, &p, 1.0, 0.0, 0.0),
            Err(Error::DegenerateConditional(_))
        ));
        assert!(matches!(
            genhyp_conditional_variance(&params, &p, 0.0, 1.0),
            Err(Error::DegenerateConditional(_))
        ));
        assert!(GenHypParams::new(1.0, 0.0, 1.0).is_err());
        assert!(GenHypParams::new(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn tail_rates() {
        let s = TrigPrimeSeries::zeta(0.75, 1000).unwrap();
        let scale = s.r0().sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let normal = Normal::new(0.0, scale).unwrap();
        let gauss: Vec<f64> = (0..20_000).map(|_| normal.sample(&mut rng)).collect();
        assert!(tail_exponent_check(&s, &gauss).unwrap() > 2.0);
        let cauchy = Cauchy::new(0.0, scale).unwrap();
        let heavy: Vec<f64> = (0..20_000).map(|_| cauchy.sample(&mut rng)).collect();
        assert!(tail_exponent_check(&s, &heavy).unwrap() < 0.5);
        let series: Vec<f64> = (0..20_000)
            .map(|_| s.eval(1e6 * (1.0 + rng.gen::<f64>())))
            .collect();
        assert!(tail_exponent_check(&s, &series).unwrap() >= 0.5);
        assert!(matches!(
            tail_exponent_check(&s, &gauss[..100]),
            Err(Error::InsufficientData(_))
        ));
    }
}
