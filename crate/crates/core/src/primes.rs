//! Prime tables, factorisation and the Möbius function.

use std::sync::{Arc, Mutex, OnceLock};

use crate::{Error, Result};

/// Largest admissible sieve limit.
pub const MAX_SIEVE_LIMIT: u64 = 1_000_000_000;

/// Limits above this are sieved segment by segment.
const SEGMENTED_THRESHOLD: u64 = 10_000_000;
const SEGMENT_LEN: usize = 1 << 20;

/// Largest integer accepted by [`factorize`].
pub const MAX_FACTORIZE: u64 = 1_000_000_000_000;

/// Smallest-prime-factor table bound used by [`mobius`].
const SPF_LIMIT: usize = 10_000_000;

/// All primes up to an inclusive limit, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The primes `≤ x`. `x` may exceed the table limit only if the caller
    /// knows no further primes are needed; the slice is clipped to the table.
    pub fn up_to(&self, x: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= x);
        &self.primes[..end]
    }

    /// Number of primes `≤ x` (requires `x ≤ limit`).
    pub fn count_up_to(&self, x: u64) -> usize {
        self.up_to(x).len()
    }
}

/// Sieve of Eratosthenes, segmented above `10⁷`.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
        return Err(Error::Config(format!(
            "sieve limit {limit} outside [2, {MAX_SIEVE_LIMIT}]"
        )));
    }
    let primes = if limit <= SEGMENTED_THRESHOLD {
        simple_sieve(limit as usize)
    } else {
        segmented_sieve(limit)
    };
    Ok(PrimeTable { limit, primes })
}

fn simple_sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(estimate_count(limit as u64));
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn segmented_sieve(limit: u64) -> Vec<u64> {
    let root = integer_sqrt(limit) as usize;
    let base = simple_sieve(root);
    let mut primes = Vec::with_capacity(estimate_count(limit));
    primes.extend_from_slice(&base);

    let mut low = root as u64 + 1;
    let mut composite = vec![false; SEGMENT_LEN];
    while low <= limit {
        let high = (low + SEGMENT_LEN as u64 - 1).min(limit);
        let len = (high - low + 1) as usize;
        composite[..len].iter_mut().for_each(|c| *c = false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= high {
                composite[(j - low) as usize] = true;
                j += p;
            }
        }
        primes.extend(
            composite[..len]
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| low + i as u64),
        );
        low = high + 1;
    }
    primes
}

fn estimate_count(limit: u64) -> usize {
    let x = limit.max(17) as f64;
    (1.26 * x / x.ln()) as usize
}

pub(crate) fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Shared prime table covering at least `x`; grows on demand and is never
/// mutated once handed out.
pub fn shared_primes(x: u64) -> Result<Arc<PrimeTable>> {
    static CACHE: OnceLock<Mutex<Option<Arc<PrimeTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut guard = cache.lock().expect("prime cache poisoned");
    if let Some(table) = guard.as_ref() {
        if table.limit >= x {
            return Ok(Arc::clone(table));
        }
    }
    let limit = x.max(1 << 16);
    let table = Arc::new(sieve(limit.min(MAX_SIEVE_LIMIT).max(x))?);
    *guard = Some(Arc::clone(&table));
    Ok(table)
}

/// Prime factorisation `n = Π p^m` with distinct ascending primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Distinct prime divisors.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    /// Euler's totient.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, m)| (p - 1) * p.pow(m - 1))
            .product()
    }
}

/// Complete factorisation for `1 ≤ n ≤ 10¹²` by trial division over the
/// primes up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    if n > MAX_FACTORIZE {
        return Err(Error::UnsupportedRange(format!(
            "factorize({n}) exceeds {MAX_FACTORIZE}"
        )));
    }
    if (n as usize) <= SPF_LIMIT {
        return Ok(factorize_spf(n));
    }
    let table = shared_primes(integer_sqrt(n).max(2))?;
    let mut rest = n;
    let mut factors = Vec::new();
    for &p in table.primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            factors.push((p, m));
        }
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

fn spf_table() -> &'static [u32] {
    static SPF: OnceLock<Vec<u32>> = OnceLock::new();
    SPF.get_or_init(|| {
        let mut spf = vec![0u32; SPF_LIMIT + 1];
        for i in 2..=SPF_LIMIT {
            if spf[i] != 0 {
                continue;
            }
            let mut j = i;
            while j <= SPF_LIMIT {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        spf
    })
}

fn factorize_spf(n: u64) -> Factorization {
    let spf = spf_table();
    let mut rest = n as usize;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    while rest > 1 {
        let p = spf[rest] as usize;
        let mut m = 0;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        factors.push((p as u64, m));
    }
    Factorization { n, factors }
}

/// The Möbius function `μ(n)`.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("μ(0) is undefined".into()));
    }
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// `μ(1..=n)` as a table indexed by `n` (entry 0 is unused and zero).
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    mu[0] = 0;
    let mut composite = vec![false; n + 1];
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        for j in (i..=n).step_by(i) {
            if j > i {
                composite[j] = true;
            }
            mu[j] = -mu[j];
        }
        let sq = i * i;
        for j in (sq..=n).step_by(sq) {
            mu[j] = 0;
        }
    }
    mu
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
