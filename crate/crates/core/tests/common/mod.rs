//! Reference implementations shared by the integration tests. None of these
//! call into the library's own ζ code.

use zetacond::Complex;

/// ζ(s) through the alternating η series with Borwein's Chebyshev weights:
/// η(s) = −Σ_{k<n} (−1)^k (d_k − d_n)/d_n (k+1)^{-s}, ζ = η/(1 − 2^{1−s}).
pub fn borwein_zeta(s: Complex) -> Complex {
    let n = 120usize;
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let (mut term, mut acc) = (1.0f64, 1.0f64);
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex::new(0.0, 0.0);
    for (k, dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dk - dn) / dn * (-s * ((k + 1) as f64).ln()).exp();
    }
    let two = Complex::new(2.0, 0.0);
    -sum / (1.0 - two.powc(1.0 - s))
}

/// Ordinate minimizing `|ζ(½ + it)|` on `[lo, hi]` by golden-section search;
/// near a simple zero the modulus is V-shaped, so this locates the zero.
pub fn oracle_zero(lo: f64, hi: f64) -> f64 {
    let f = |t: f64| borwein_zeta(Complex::new(0.5, t)).norm();
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    while b - a > 1e-11 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    0.5 * (a + b)
}

/// `1 − 3⁻² + 5⁻² − …` averaged over two consecutive partial sums.
pub fn catalan_series(terms: u64) -> f64 {
    let mut partial = 0.0;
    let mut prev = 0.0;
    for n in 0..terms {
        prev = partial;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        partial += sign / ((2 * n + 1) as f64).powi(2);
    }
    0.5 * (partial + prev)
}

/// Prints the verdict line and returns whether it passed.
pub fn report(id: u32, name: &str, pass: bool, detail: &str) -> bool {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {id:>2} {name}: {detail}");
    pass
}
