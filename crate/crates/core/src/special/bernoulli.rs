use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Highest Bernoulli index kept in the cache (`B₆₀`).
pub(crate) const MAX_INDEX: usize = 60;

struct Tables {
    /// `B_n`, `n = 0..=60`, with `B₁ = −½`.
    values: Vec<f64>,
    /// `B_{2k}/(2k)!`, `k = 0..=30`.
    scaled_even: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        // B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j, exactly.
        let mut exact: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        exact.push(BigRational::from_integer(1.into()));
        for m in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::from(1); // C(m+1, 0)
            for (j, b) in exact.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            exact.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let values = exact
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect();
        let mut factorial = BigInt::from(1);
        let mut scaled_even = vec![1.0];
        for k in 1..=MAX_INDEX / 2 {
            factorial *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            let q = &exact[2 * k] / BigRational::from_integer(factorial.clone());
            scaled_even.push(q.to_f64().unwrap_or(f64::NAN));
        }
        Tables {
            values,
            scaled_even,
        }
    })
}

/// `B_n` for `n ≤ 60` (`B₁ = −½`, odd `n > 1` give 0).
pub fn bernoulli(n: usize) -> Result<f64> {
    tables()
        .values
        .get(n)
        .copied()
        .ok_or_else(|| Error::UnsupportedRange(format!("B_{n} beyond B_{MAX_INDEX}")))
}

/// `[B₂, B₄, …, B_{2k}]` for `k ≤ 30`.
pub fn bernoulli_numbers(up_to_k: usize) -> Result<Vec<f64>> {
    if up_to_k > MAX_INDEX / 2 {
        return Err(Error::UnsupportedRange(format!(
            "Bernoulli numbers requested up to B_{}, limit is B_{MAX_INDEX}",
            2 * up_to_k
        )));
    }
    Ok((1..=up_to_k).map(|k| tables().values[2 * k]).collect())
}

/// `B_{2k}/(2k)!` for `k ≤ 30`.
pub(crate) fn scaled_even(k: usize) -> f64 {
    tables().scaled_even[k]
}
