//! Independent reference implementations used only by unit tests.

use crate::Complex;

/// ζ(s) from the alternating η series accelerated with Borwein's
/// Chebyshev-weighted partial sums: η(s) = Σ (−1)^{k} (d_n − d_k)/d_n (k+1)^{-s}.
pub fn borwein_zeta(s: Complex) -> Complex {
    let n = 120usize;
    let mut d = Vec::with_capacity(n + 1);
    let mut u = 1.0f64;
    let mut acc = 1.0f64;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        u *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += u;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = (d[k] - dn) / dn;
        sum += sign * w * (-s * ((k + 1) as f64).ln()).exp();
    }
    let eta = -sum;
    let two = Complex::new(2.0, 0.0);
    eta / (Complex::new(1.0, 0.0) - two.powc(Complex::new(1.0, 0.0) - s))
}
