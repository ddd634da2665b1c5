//! Dirichlet characters, `L(s, χ)` and the character-twisted prime zeta
//! function `P_χ(s) = Σ_p χ(p) p^{-s}`.
//!
//! A character mod `k` is stored by its exponent coordinates against a fixed
//! set of generators of `(ℤ/kℤ)*`, one cyclic factor per prime power (two
//! for `2^e`, `e ≥ 3`). Values come from shared discrete-log tables, so `χⁿ`
//! is coordinate arithmetic and never accumulates rounding.

use std::f64::consts::TAU;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::predictor::{bisect_discriminant, check_sigma, ClassifierVerdict, DivergenceCase};
use crate::prime_zeta::{mobius_coefficients, mobius_terms, re_prime_zeta, POLE_GUARD};
use crate::primes::{factorize, gcd};
use crate::special::{
    hurwitz_zeta_regular, zeta, zeta_auto, EulerMaclaurinConfig, ZETA_IM_ENVELOPE,
};
use crate::{Complex, Error, Result, ONE_MINUS_EULER_GAMMA};

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 10_000;

const NOT_A_UNIT: u32 = u32::MAX;

/// One cyclic factor of `(ℤ/kℤ)*`: residues mod `q` and their discrete
/// logarithms against a generator of order `order`.
#[derive(Debug)]
struct CyclicFactor {
    q: u64,
    order: u64,
    dlog: Vec<u32>,
}

impl CyclicFactor {
    fn log_of(&self, a: u64) -> u32 {
        self.dlog[(a % self.q) as usize]
    }
}

#[derive(Debug)]
struct CharacterGroup {
    modulus: u64,
    factors: Vec<CyclicFactor>,
    /// `lcm` of the factor orders: every value is an `exponent`-th root of 1.
    exponent: u64,
    size: u64,
    prime_divisors: Vec<u64>,
}

impl CharacterGroup {
    fn new(k: u64) -> Result<Self> {
        check_modulus(k)?;
        let fac = factorize(k)?;
        let mut factors = Vec::new();
        for &(p, e) in fac.factors() {
            let q = p.pow(e);
            if p == 2 {
                factors.extend(two_power_factors(e));
            } else {
                factors.push(odd_prime_power_factor(p, q));
            }
        }
        let exponent = factors.iter().fold(1, |acc, f| lcm(acc, f.order));
        let size = factors.iter().map(|f| f.order).product();
        Ok(Self {
            modulus: k,
            factors,
            exponent,
            size,
            prime_divisors: fac.primes().collect(),
        })
    }

    /// Mixed-radix index of a coordinate vector, first factor least significant.
    fn index_of(&self, coords: &[u64]) -> usize {
        let mut index = 0u64;
        for (c, f) in coords.iter().zip(&self.factors).rev() {
            index = index * f.order + c;
        }
        index as usize
    }

    fn coords_of(&self, mut index: u64) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| {
                let c = index % f.order;
                index /= f.order;
                c
            })
            .collect()
    }

    /// `n` with `χ(a) = exp(2πi n / exponent)`, or `None` if `gcd(a, k) > 1`.
    fn phase_numerator(&self, coords: &[u64], a: u64) -> Option<u64> {
        if gcd(a % self.modulus, self.modulus) != 1 {
            return None;
        }
        let mut n = 0u64;
        for (c, f) in coords.iter().zip(&self.factors) {
            let log = f.log_of(a);
            debug_assert_ne!(log, NOT_A_UNIT);
            n = (n + c * u64::from(log) % f.order * (self.exponent / f.order)) % self.exponent;
        }
        Some(n)
    }
}

fn check_modulus(k: u64) -> Result<()> {
    if !(1..=MAX_MODULUS).contains(&k) {
        return Err(Error::UnsupportedRange(format!(
            "modulus {k} outside [1, {MAX_MODULUS}]"
        )));
    }
    Ok(())
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn primitive_root_mod_p(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let divisors: Vec<u64> = factorize(p - 1)
        .expect("p - 1 is in range")
        .primes()
        .collect();
    (2..p)
        .find(|&g| divisors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

/// Discrete logs of the powers of `g` modulo `q`, for `order` steps.
fn log_table(g: u64, q: u64, order: u64) -> Vec<u32> {
    let mut dlog = vec![NOT_A_UNIT; q as usize];
    let mut x = 1 % q;
    for i in 0..order {
        dlog[x as usize] = i as u32;
        x = x * g % q;
    }
    dlog
}

fn odd_prime_power_factor(p: u64, q: u64) -> CyclicFactor {
    let mut g = primitive_root_mod_p(p);
    // A root mod p that is not a root mod p² is fixed by g + p.
    if q > p && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    let order = q / p * (p - 1);
    CyclicFactor {
        q,
        order,
        dlog: log_table(g, q, order),
    }
}

fn two_power_factors(e: u32) -> Vec<CyclicFactor> {
    let q = 1u64 << e;
    match e {
        1 => Vec::new(),
        2 => vec![CyclicFactor {
            q,
            order: 2,
            dlog: log_table(3, q, 2),
        }],
        _ => {
            // a ≡ (−1)^u · 5^v (mod 2^e), with u read off a mod 4.
            let order = q / 4;
            let powers_of_five = log_table(5, q, order);
            let mut sign = vec![NOT_A_UNIT; q as usize];
            let mut five = vec![NOT_A_UNIT; q as usize];
            for a in (1..q).step_by(2) {
                let u = u32::from(a % 4 == 3);
                let unsigned = if u == 1 { q - a } else { a };
                sign[a as usize] = u;
                five[a as usize] = powers_of_five[unsigned as usize];
            }
            vec![
                CyclicFactor {
                    q,
                    order: 2,
                    dlog: sign,
                },
                CyclicFactor {
                    q,
                    order,
                    dlog: five,
                },
            ]
        }
    }
}

/// `exp(2πi n/d)` with exact values at multiples of a quarter turn.
fn root_of_unity(n: u64, d: u64) -> Complex {
    let n = n % d;
    if (4 * n) % d == 0 {
        return match 4 * n / d {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    // Symmetric reduction keeps the angle small.
    let signed = if 2 * n > d {
        n as f64 - d as f64
    } else {
        n as f64
    };
    let (s, c) = (TAU * signed / d as f64).sin_cos();
    Complex::new(c, s)
}

/// A Dirichlet character modulo `k`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    coords: Vec<u64>,
    index: usize,
    order: u64,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.coords == other.coords
    }
}

impl DirichletCharacter {
    fn from_coords(group: Arc<CharacterGroup>, coords: Vec<u64>) -> Self {
        let order = coords
            .iter()
            .zip(&group.factors)
            .fold(1, |acc, (&c, f)| lcm(acc, f.order / gcd(c, f.order)));
        let index = group.index_of(&coords);
        Self {
            group,
            coords,
            index,
            order,
        }
    }

    /// The principal character mod `k`.
    pub fn principal(k: u64) -> Result<Self> {
        let group = Arc::new(CharacterGroup::new(k)?);
        let coords = vec![0; group.factors.len()];
        Ok(Self::from_coords(group, coords))
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    /// Position within [`character_group`]; the principal character is 0.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Multiplicative order `d`: every nonzero value is a `d`-th root of 1.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// Exponents against the group generators.
    pub fn coordinates(&self) -> &[u64] {
        &self.coords
    }

    /// Distinct primes dividing the modulus.
    pub fn prime_divisors(&self) -> &[u64] {
        &self.group.prime_divisors
    }

    /// `χ(a)`, zero when `gcd(a, k) > 1`.
    pub fn value(&self, a: u64) -> Complex {
        match self.group.phase_numerator(&self.coords, a) {
            Some(n) => root_of_unity(n, self.group.exponent),
            None => Complex::new(0.0, 0.0),
        }
    }

    /// `χ(a)` for `a = 0, 1, …, k−1`.
    pub fn values(&self) -> Vec<Complex> {
        (0..self.modulus()).map(|a| self.value(a)).collect()
    }

    /// `χⁿ`, resolved inside the group.
    pub fn power(&self, n: u64) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.factors)
            .map(|(&c, f)| c * (n % f.order) % f.order)
            .collect();
        Self::from_coords(Arc::clone(&self.group), coords)
    }

    /// `χ̄ = χ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.factors)
            .map(|(&c, f)| (f.order - c) % f.order)
            .collect();
        Self::from_coords(Arc::clone(&self.group), coords)
    }

    pub fn dump(&self) -> CharacterDump {
        CharacterDump {
            modulus: self.modulus(),
            index: self.index,
            order: self.order,
            principal: self.is_principal(),
            values: self.values().iter().map(|z| (z.re, z.im)).collect(),
        }
    }
}

/// Serializable value table of a character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterDump {
    pub modulus: u64,
    pub index: usize,
    pub order: u64,
    pub principal: bool,
    pub values: Vec<(f64, f64)>,
}

/// All `φ(k)` characters mod `k`, ordered by [`DirichletCharacter::index`].
pub fn character_group(k: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(CharacterGroup::new(k)?);
    Ok((0..group.size)
        .map(|i| {
            let coords = group.coords_of(i);
            DirichletCharacter::from_coords(Arc::clone(&group), coords)
        })
        .collect())
}

/// `L(s, χ) = k^{-s} Σ_a χ(a) ζ(s, a/k)` for `Re s > ½`.
///
/// The `1/(s−1)` parts of the Hurwitz terms cancel for non-principal
/// characters, so only the regular parts are summed and `s = 1` is allowed.
pub fn l_function(
    s: Complex,
    chi: &DirichletCharacter,
    cfg: &EulerMaclaurinConfig,
) -> Result<Complex> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.re <= 0.5 {
        return Err(Error::Domain(format!("L(s, χ) needs Re s > 1/2, got {s}")));
    }
    let principal = chi.is_principal();
    if principal && s == Complex::new(1.0, 0.0) {
        return Err(Error::Pole(format!(
            "L(s, χ₀) mod {} has a simple pole at s = 1",
            chi.modulus()
        )));
    }
    let k = chi.modulus();
    if k == 1 {
        return zeta(s, cfg);
    }
    let kf = k as f64;
    let mut acc = Complex::new(0.0, 0.0);
    for a in 1..k {
        let v = chi.value(a);
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        acc += v * hurwitz_zeta_regular(s, a as f64 / kf, cfg)?;
    }
    if principal {
        acc += chi.group.size as f64 / (s - 1.0);
    }
    Ok(acc * (-s * kf.ln()).exp())
}

/// `P_χ(s) = Σ_n μ(n)/n · log L(ns, χⁿ)` for `Re s ≥ 1`, principal logs.
///
/// Principal powers use `log ζ(ns) + Σ_{p|k} log(1 − p^{-ns})`.
pub fn prime_zeta_chi(s: Complex, chi: &DirichletCharacter) -> Result<Complex> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.re < 1.0 {
        return Err(Error::Domain(format!("P_χ(s) needs Re s ≥ 1, got {s}")));
    }
    let n_max = mobius_terms(s.re);
    if (s.im * n_max as f64).abs() > ZETA_IM_ENVELOPE {
        return Err(Error::UnsupportedRange(format!(
            "Möbius series needs L at height {} > {ZETA_IM_ENVELOPE}",
            (s.im * n_max as f64).abs()
        )));
    }
    let mu = mobius_coefficients();
    let mut acc = Complex::new(0.0, 0.0);
    for n in (1..=n_max).rev() {
        if mu[n] == 0 {
            continue;
        }
        let ns = s * n as f64;
        let psi = chi.power(n as u64);
        let log_l = if psi.is_principal() {
            if (ns - 1.0).norm() < POLE_GUARD {
                return Err(Error::NearPole { guard: POLE_GUARD });
            }
            psi.prime_divisors()
                .iter()
                .fold(zeta_auto(ns)?.ln(), |acc, &p| {
                    acc + (1.0 - (-ns * (p as f64).ln()).exp()).ln()
                })
        } else {
            l_function(ns, &psi, &EulerMaclaurinConfig::tuned(ns))?.ln()
        };
        acc += log_l * (f64::from(mu[n]) / n as f64);
    }
    Ok(acc)
}

fn prime_divisors_checked(k: u64) -> Result<Vec<u64>> {
    check_modulus(k)?;
    Ok(factorize(k)?.primes().collect())
}

/// `1 − γ + Σ_{p|k} 1/p`.
pub fn l_epsilon_bound(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("modulus must be at least 1".into()));
    }
    let primes: Vec<u64> = factorize(k)?.primes().collect();
    Ok(ONE_MINUS_EULER_GAMMA + primes.iter().map(|&p| 1.0 / p as f64).sum::<f64>())
}

/// `Re(P(2σ+iΔ) − Σ_{p|k} p^{-(2σ+iΔ)})`.
pub fn l_discriminant(sigma: f64, delta: f64, k: u64) -> Result<f64> {
    check_sigma(sigma, delta)?;
    let primes = prime_divisors_checked(k)?;
    Ok(re_prime_zeta(2.0 * sigma, delta)? - removed_primes(&primes, sigma, delta))
}

fn removed_primes(primes: &[u64], sigma: f64, delta: f64) -> f64 {
    primes
        .iter()
        .map(|&p| {
            let lp = (p as f64).ln();
            (-2.0 * sigma * lp).exp() * (delta * lp).cos()
        })
        .sum()
}

/// Divergence classification for `log|L|`, with the primes dividing `k`
/// removed from the discriminant.
pub fn l_classify(sigma: f64, delta: f64, k: u64, tolerance: f64) -> Result<ClassifierVerdict> {
    if !(tolerance >= 0.0) {
        return Err(Error::Config(format!(
            "tolerance {tolerance} must be non-negative"
        )));
    }
    let discriminant = l_discriminant(sigma, delta, k)?;
    let case = if discriminant > tolerance {
        DivergenceCase::DivergesToMinusInfinity
    } else if discriminant < -tolerance {
        DivergenceCase::DivergesToPlusInfinity
    } else {
        DivergenceCase::BoundedMean
    };
    Ok(ClassifierVerdict { case, discriminant })
}

/// `l_discriminant(σ, Δ, k) / (P(2σ) − Σ_{p|k} p^{-2σ})`.
pub fn l_correlation_ratio(sigma: f64, delta: f64, k: u64) -> Result<f64> {
    check_sigma(sigma, delta)?;
    let primes = prime_divisors_checked(k)?;
    let denominator = re_prime_zeta(2.0 * sigma, 0.0)? - removed_primes(&primes, sigma, 0.0);
    if !(denominator > 0.0) {
        return Err(Error::DegenerateModulus(format!(
            "P(2σ) − Σ_(p|{k}) p^(−2σ) = {denominator} is not positive"
        )));
    }
    Ok((re_prime_zeta(2.0 * sigma, delta)? - removed_primes(&primes, sigma, delta)) / denominator)
}

/// Root of [`l_discriminant`] in a sign-changing bracket.
pub fn l_bounded_mean_delta(sigma: f64, k: u64, lo: f64, hi: f64) -> Result<f64> {
    check_sigma(sigma, lo)?;
    check_sigma(sigma, hi)?;
    let primes = prime_divisors_checked(k)?;
    bisect_discriminant(
        |d| Ok(re_prime_zeta(2.0 * sigma, d)? - removed_primes(&primes, sigma, d)),
        lo,
        hi,
    )
}
