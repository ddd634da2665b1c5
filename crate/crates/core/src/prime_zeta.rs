//! The prime zeta function `P(s) = Σ_p p^{-s}`.
//!
//! Two independent routes are provided: finite prime sums `P_X(s)`, and the
//! Möbius-inverted series `P(s) = Σ_n μ(n)/n · log ζ(ns)`, which continues
//! `P` to `Re s > ½` away from `s = 1` and the points where `ζ(ns) = 0`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::primes::{mobius_table, shared_primes, PrimeTable};
use crate::special::{zeta_auto, zeta_minus_one, ZETA_IM_ENVELOPE};
use crate::{Complex, Error, Result, EULER_GAMMA};

/// Closest approach to `s = 1` accepted by the Möbius series.
pub const POLE_GUARD: f64 = 1e-6;

/// Hard cap on the number of Möbius terms.
pub const MOBIUS_TERMS_CAP: usize = 64;

/// Terms are dropped once `(ζ(nσ) − 1)/n` falls below this.
const MOBIUS_TERM_FLOOR: f64 = 1e-16;

/// Number of Möbius-series terms used at real part `sigma`: the first `n`
/// with `(ζ(nσ) − 1)/n < 10⁻¹⁶`, capped at 64.
pub fn mobius_terms(sigma: f64) -> usize {
    for n in 2..=MOBIUS_TERMS_CAP {
        let x = n as f64 * sigma;
        if x < 2.0 {
            continue;
        }
        if let Ok(tail) = zeta_minus_one(x) {
            if tail / (n as f64) < MOBIUS_TERM_FLOOR {
                return n;
            }
        }
    }
    MOBIUS_TERMS_CAP
}

pub(crate) fn mobius_coefficients() -> &'static [i8] {
    static MU: OnceLock<Vec<i8>> = OnceLock::new();
    MU.get_or_init(|| mobius_table(MOBIUS_TERMS_CAP))
}

fn check_domain(s: Complex) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.re <= 0.5 {
        return Err(Error::Domain(format!(
            "Re s = {} ≤ 1/2: zeros of ζ make the Möbius continuation singular there",
            s.re
        )));
    }
    if (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::NearPole { guard: POLE_GUARD });
    }
    let n_max = mobius_terms(s.re) as f64;
    if (s.im * n_max).abs() > ZETA_IM_ENVELOPE {
        return Err(Error::UnsupportedRange(format!(
            "Möbius series needs ζ at height {} > {ZETA_IM_ENVELOPE}",
            (s.im * n_max).abs()
        )));
    }
    Ok(())
}

/// `P(s)` through the Möbius series with principal-branch logarithms.
///
/// The real part is branch-free. The imaginary part of the `n = 1` term is
/// `arg ζ(s)` reduced to `(−π, π]`, which is the continuous branch as long as
/// `ζ` does not wind around the origin between `s` and `+∞`; for `n ≥ 2`
/// and `Re s ≥ 1`, `|ζ(ns) − 1| < 1` so the principal branch is exact.
pub fn prime_zeta(s: Complex) -> Result<Complex> {
    check_domain(s)?;
    let mu = mobius_coefficients();
    let mut acc = Complex::new(0.0, 0.0);
    for n in (1..=mobius_terms(s.re)).rev() {
        if mu[n] == 0 {
            continue;
        }
        let z = zeta_auto(s * n as f64)?;
        acc += z.ln() * (f64::from(mu[n]) / n as f64);
    }
    Ok(acc)
}

/// `Re P(σ + iδ) = Σ_n μ(n)/n · log|ζ(nσ + inδ)|`.
pub fn re_prime_zeta(sigma: f64, delta: f64) -> Result<f64> {
    let s = Complex::new(sigma, delta);
    check_domain(s)?;
    let mu = mobius_coefficients();
    let mut acc = 0.0;
    for n in (1..=mobius_terms(sigma)).rev() {
        if mu[n] == 0 {
            continue;
        }
        acc += f64::from(mu[n]) / n as f64 * log_abs_zeta(s * n as f64)?;
    }
    Ok(acc)
}

fn log_abs_zeta(s: Complex) -> Result<f64> {
    Ok(0.5 * zeta_auto(s)?.norm_sqr().ln())
}

/// `Σ_{p ≤ X} p^{-s}` summed smallest-term-first with compensation.
pub fn prime_zeta_truncated(s: Complex, cutoff: u64) -> Result<Complex> {
    if cutoff < 2 {
        return Err(Error::Domain(format!("prime cutoff {cutoff} < 2")));
    }
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!(
            "truncated prime sum needs Re s > 0, got {s}"
        )));
    }
    let table = shared_primes(cutoff)?;
    Ok(sum_prime_powers(table.up_to(cutoff), s))
}

fn sum_prime_powers(primes: &[u64], s: Complex) -> Complex {
    let mut acc = Complex::new(0.0, 0.0);
    let mut comp = Complex::new(0.0, 0.0);
    for &p in primes.iter().rev() {
        let term = (-s * (p as f64).ln()).exp();
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc
}

/// Integral estimate `∫_X^∞ x^{-s}/log x dx = E₁((s−1) log X)` of the primes
/// beyond the cutoff, for `Re s > 1`.
pub fn prime_tail_estimate(s: Complex, cutoff: u64) -> Result<Complex> {
    if !(s.re > 1.0) || cutoff < 2 {
        return Err(Error::Domain(format!(
            "tail estimate needs Re s > 1 and X ≥ 2, got s = {s}, X = {cutoff}"
        )));
    }
    Ok(exp_integral_e1((s - 1.0) * (cutoff as f64).ln()))
}

/// Exponential integral `E₁(z)` for `Re z > 0`.
pub(crate) fn exp_integral_e1(z: Complex) -> Complex {
    if z.norm() <= 2.0 {
        // −γ − ln z − Σ (−z)^k / (k·k!)
        let mut term = Complex::new(1.0, 0.0);
        let mut acc = Complex::new(0.0, 0.0);
        for k in 1..80 {
            term = -term * z / k as f64;
            let add = term / k as f64;
            acc += add;
            if add.norm() < 1e-18 * acc.norm().max(1e-300) {
                break;
            }
        }
        -EULER_GAMMA - z.ln() - acc
    } else {
        // e^{-z} / (z+1 − 1²/(z+3 − 2²/(z+5 − …))), modified Lentz.
        let tiny = 1e-300;
        let mut f = z + 1.0;
        let mut c = f;
        let mut d = Complex::new(0.0, 0.0);
        for k in 1..500 {
            let a = -((k * k) as f64);
            let b = z + (2 * k + 1) as f64;
            d = b + a * d;
            if d.norm() < tiny {
                d = Complex::new(tiny, 0.0);
            }
            c = b + a / c;
            if c.norm() < tiny {
                c = Complex::new(tiny, 0.0);
            }
            d = d.inv();
            let step = c * d;
            f *= step;
            if (step - 1.0).norm() < 1e-16 {
                break;
            }
        }
        (-z).exp() / f
    }
}

/// `½ Σ_{p ≤ X} 1/p`, the variance of `Re P_X(½ + it)`.
pub fn truncated_variance(cutoff: u64) -> Result<f64> {
    if cutoff < 2 {
        return Err(Error::Domain(format!("prime cutoff {cutoff} < 2")));
    }
    let table = shared_primes(cutoff)?;
    Ok(0.5
        * table
            .up_to(cutoff)
            .iter()
            .rev()
            .map(|&p| 1.0 / p as f64)
            .sum::<f64>())
}

/// `Σ_{n=2}^{60} (ζ(n) − 1)/n`, which equals `1 − γ` to double precision.
pub fn epsilon_bound() -> f64 {
    epsilon_bound_partial(60)
}

/// `Σ_{n=2}^{n_max} (ζ(n) − 1)/n`.
pub fn epsilon_bound_partial(n_max: usize) -> f64 {
    (2..=n_max.max(2))
        .rev()
        .map(|n| zeta_minus_one(n as f64).expect("n ≥ 2") / n as f64)
        .sum()
}

/// `ε(Δ) = −Σ_{n≥2} μ(n)/n · log|ζ(n + inΔ)|`, equivalently
/// `−Re P(1+iΔ) + log|ζ(1+iΔ)|`.
pub fn epsilon_of_delta(delta: f64) -> Result<f64> {
    if !(delta >= POLE_GUARD) {
        return Err(Error::NearPole { guard: POLE_GUARD });
    }
    check_domain(Complex::new(1.0, delta))?;
    let mu = mobius_coefficients();
    let mut acc = 0.0;
    for n in (2..=mobius_terms(1.0)).rev() {
        if mu[n] == 0 {
            continue;
        }
        acc -=
            f64::from(mu[n]) / n as f64 * log_abs_zeta(Complex::new(n as f64, n as f64 * delta))?;
    }
    Ok(acc)
}

/// A truncated prime sum `P_X(σ + it)` with `p^{-σ}` and `log p` cached.
#[derive(Debug, Clone)]
pub struct TruncatedPrimeZeta {
    cutoff: u64,
    sigma: f64,
    primes: Arc<PrimeTable>,
    weights: Vec<f64>,
    logs: Vec<f64>,
}

impl TruncatedPrimeZeta {
    pub fn new(sigma: f64, cutoff: u64) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::Domain(format!("prime cutoff {cutoff} < 2")));
        }
        if !(sigma > 0.0) {
            return Err(Error::Domain(format!("σ = {sigma} must be positive")));
        }
        let primes = shared_primes(cutoff)?;
        let used = primes.up_to(cutoff);
        let logs: Vec<f64> = used.iter().map(|&p| (p as f64).ln()).collect();
        let weights = logs.iter().map(|l| (-sigma * l).exp()).collect();
        Ok(Self {
            cutoff,
            sigma,
            primes,
            weights,
            logs,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn primes(&self) -> &[u64] {
        self.primes.up_to(self.cutoff)
    }

    /// `p^{-σ}` for every cached prime.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    /// `P_X(σ + it)`.
    pub fn eval(&self, t: f64) -> Complex {
        self.weights
            .iter()
            .zip(&self.logs)
            .rev()
            .map(|(w, l)| Complex::from_polar(*w, -t * l))
            .sum()
    }

    /// `Re P_X(σ + it) = Σ p^{-σ} cos(t log p)`.
    pub fn real_part(&self, t: f64) -> f64 {
        self.weights
            .iter()
            .zip(&self.logs)
            .rev()
            .map(|(w, l)| w * (t * l).cos())
            .sum()
    }
}

/// How the prime cutoff of a truncated sum is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TruncationPolicy {
    FixedCutoff(u64),
    /// `X(T) = T^{1/(log log log T)²}`, for `T ≥ 10⁶`.
    IteratedLogRule(f64),
}

impl TruncationPolicy {
    pub fn cutoff(&self) -> Result<u64> {
        match *self {
            Self::FixedCutoff(x) if x >= 2 => Ok(x),
            Self::FixedCutoff(x) => Err(Error::Config(format!("prime cutoff {x} < 2"))),
            Self::IteratedLogRule(t) => {
                if !(t >= 1e6) || !t.is_finite() {
                    return Err(Error::Config(format!("cutoff rule needs T ≥ 10⁶, got {t}")));
                }
                let lll = t.ln().ln().ln();
                let x = t.powf(1.0 / (lll * lll));
                if x > crate::primes::MAX_SIEVE_LIMIT as f64 {
                    return Err(Error::UnsupportedRange(format!(
                        "cutoff X(T) = {x:.3e} exceeds the sieve limit"
                    )));
                }
                Ok(x.floor() as u64)
            }
        }
    }
}
