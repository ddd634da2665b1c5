//! Conditional value distribution of `log|ζ|` and `log|L|` around zeros.
//!
//! The crate is organised bottom-up:
//!
//! * [`primes`]: sieving, factorisation and the Möbius function.
//! * [`special`]: complex ζ and Hurwitz ζ (Euler–Maclaurin), Bernoulli numbers,
//!   Riemann–Siegel θ, Bessel `J₀` and `K_ν`, the normal CDF.
//! * [`prime_zeta`]: the prime zeta function `P(s)`, truncated sums and the
//!   Möbius-inverted continuation, together with the `ε(Δ)` remainder.
//! * [`zeta_zeros`]: Hardy `Z` and zero-ordinate tables.
//! * [`elliptical`]: characteristic functions, autocovariances and the
//!   conditional moments of elliptical and generalized hyperbolic laws.
//! * [`predictor`]: the critical-line conditional Gaussian, the tail
//!   probability curve, and the off-critical divergence classifier.
//! * [`monte_carlo`]: seeded sampling of truncated prime series and the
//!   estimators that check the statistical identities empirically.
//! * [`dirichlet`]: Dirichlet characters, `L(s, χ)` and `P_χ(s)`.

// `!(x > 0.0)` is used throughout to reject NaN along with non-positive input.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// `is_multiple_of` is newer than the supported toolchain.
#![allow(unknown_lints, clippy::manual_is_multiple_of)]

pub mod dirichlet;
pub mod elliptical;
mod error;
pub mod monte_carlo;
pub mod predictor;
pub mod prime_zeta;
pub mod primes;
pub mod quad;
pub mod special;
pub mod zeta_zeros;

#[cfg(test)]
mod oracles;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;

pub use dirichlet::DirichletCharacter;
pub use elliptical::{AutocovProfile, ConditionalGaussian, GenHypParams, TrigPrimeSeries};
pub use monte_carlo::{EstimateWithError, MCConfig};
pub use predictor::{ClassifierVerdict, CriticalLinePrediction, DivergenceCase, PredictionCurve};
pub use prime_zeta::{TruncatedPrimeZeta, TruncationPolicy};
pub use primes::{Factorization, PrimeTable};
pub use special::EulerMaclaurinConfig;
pub use zeta_zeros::{ZeroSource, ZeroTable};

/// `1 − γ`, the bound on the Möbius remainder `ε(Δ)`.
pub const ONE_MINUS_EULER_GAMMA: f64 = 1.0 - EULER_GAMMA;

/// The Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
