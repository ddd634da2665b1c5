//! Ordinates of nontrivial zeros on the critical line.
//!
//! Low zeros are located from sign changes of Hardy's `Z(t)`; high zeros are
//! read from a plain-text table.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::special::{riemann_siegel_theta, zeta_auto};
use crate::{Complex, Error, Result};

/// Lower end of the range where zeros are searched and `Z` is evaluated.
pub const SCAN_START: f64 = 10.0;
/// Upper end of the computed range; higher ordinates must come from a file.
pub const SCAN_LIMIT: f64 = 1e3;
/// Coarse scan step.
pub const SCAN_STEP: f64 = 0.1;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_TOLERANCE: f64 = 1e-9;

const REFINE_FACTOR: usize = 8;
const REFINE_DEPTH: u32 = 3;

/// Where a [`ZeroTable`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroSource {
    Computed,
    ExternalFile,
}

/// Strictly increasing zero ordinates, all above 14.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: ZeroSource,
}

impl ZeroTable {
    pub fn new(ordinates: Vec<f64>, source: ZeroSource) -> Result<Self> {
        if let Some(i) = ordinates
            .iter()
            .position(|&x| !(x > 14.0) || !x.is_finite())
        {
            return Err(Error::Domain(format!(
                "ordinate #{} = {} is not above 14",
                i + 1,
                ordinates[i]
            )));
        }
        if let Some(i) = ordinates.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Domain(format!(
                "ordinates not increasing at #{}",
                i + 2
            )));
        }
        Ok(Self { ordinates, source })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// The `k`-th ordinate, counting from 1.
    pub fn nth(&self, k: usize) -> Option<f64> {
        k.checked_sub(1)
            .and_then(|i| self.ordinates.get(i).copied())
    }

    /// Number of ordinates `≤ t`.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&x| x <= t)
    }
}

/// `Z(t) = e^{iθ(t)} ζ(½ + it)`, real for real `t`, on `10 ≤ t ≤ 10³`.
pub fn hardy_z(t: f64) -> Result<f64> {
    Ok(hardy_z_rotated(t)?.re)
}

/// The rotated value before taking the real part; its imaginary part is
/// rounding noise.
pub fn hardy_z_rotated(t: f64) -> Result<Complex> {
    if !(SCAN_START..=SCAN_LIMIT).contains(&t) {
        return Err(Error::UnsupportedRange(format!(
            "Z(t) is evaluated on [{SCAN_START}, {SCAN_LIMIT}], got t = {t}"
        )));
    }
    let theta = riemann_siegel_theta(t)?;
    let z = zeta_auto(Complex::new(0.5, t))?;
    Ok(Complex::from_polar(1.0, theta) * z)
}

/// Smooth part `θ(t)/π + 1` of the zero-counting function.
pub fn zero_count_estimate(t: f64) -> Result<f64> {
    Ok(riemann_siegel_theta(t)? / std::f64::consts::PI + 1.0)
}

/// All sign changes of `Z` on `[10, t_max]`, each bisected to 10⁻⁹.
///
/// The grid has step 0.1. Wherever `|Z|` has a local minimum without a sign
/// change the bracket is rescanned eight times finer, up to three levels, to
/// catch close pairs. The final count is compared with `θ(t_max)/π + 1`; if
/// that is off by more than one, the comparison is repeated on the average
/// over the last ten units (where `S(t)` averages out) before giving up.
pub fn find_zeros(t_max: f64) -> Result<ZeroTable> {
    if !(SCAN_START..=SCAN_LIMIT).contains(&t_max) {
        return Err(Error::Config(format!(
            "t_max must lie in [{SCAN_START}, {SCAN_LIMIT}], got {t_max}"
        )));
    }
    let steps = ((t_max - SCAN_START) / SCAN_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|k| (SCAN_START + SCAN_STEP * k as f64).min(t_max))
        .collect();
    let values = grid
        .iter()
        .map(|&t| hardy_z(t))
        .collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    scan(&grid, &values, REFINE_DEPTH, &mut roots)?;
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-3);

    let table = ZeroTable::new(roots, ZeroSource::Computed)?;
    check_count(&table, t_max)?;
    Ok(table)
}

fn scan(grid: &[f64], values: &[f64], depth: u32, roots: &mut Vec<f64>) -> Result<()> {
    for k in 0..grid.len().saturating_sub(1) {
        let (a, b) = (values[k], values[k + 1]);
        if a == 0.0 {
            roots.push(grid[k]);
        } else if a.signum() != b.signum() && b != 0.0 {
            roots.push(bisect(grid[k], grid[k + 1], a)?);
        }
        if depth > 0 && k > 0 {
            let m = values[k].abs();
            let same_sign = values[k - 1].signum() == a.signum() && a.signum() == b.signum();
            if same_sign && m < values[k - 1].abs() && m < b.abs() {
                let (lo, hi) = (grid[k - 1], grid[k + 1]);
                let n = 2 * REFINE_FACTOR;
                let fine: Vec<f64> = (0..=n)
                    .map(|j| lo + (hi - lo) * j as f64 / n as f64)
                    .collect();
                let fine_values = fine
                    .iter()
                    .map(|&t| hardy_z(t))
                    .collect::<Result<Vec<_>>>()?;
                scan(&fine, &fine_values, depth - 1, roots)?;
            }
        }
    }
    if let Some(&last) = values.last() {
        if last == 0.0 {
            roots.push(*grid.last().unwrap());
        }
    }
    Ok(())
}

fn bisect(mut lo: f64, mut hi: f64, z_lo: f64) -> Result<f64> {
    let sign_lo = z_lo.signum();
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let z = hardy_z(mid)?;
        if z == 0.0 {
            return Ok(mid);
        }
        if z.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_count(table: &ZeroTable, t_max: f64) -> Result<()> {
    let expected = zero_count_estimate(t_max)?;
    if (table.len() as f64 - expected).abs() <= 1.0 {
        return Ok(());
    }
    let lo = (t_max - 10.0).max(SCAN_START + 1.0);
    let samples = 101;
    let mut mean = 0.0;
    for j in 0..samples {
        let t = lo + (t_max - lo) * j as f64 / (samples - 1) as f64;
        mean += table.count_below(t) as f64 - zero_count_estimate(t)?;
    }
    mean /= samples as f64;
    if mean.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::IncompleteScan {
            found: table.len(),
            expected,
            t_max,
        })
    }
}

/// Reads a zero table: one decimal ordinate per line, `#` comments and
/// blank lines allowed.
pub fn load_zero_table(path: impl AsRef<Path>) -> Result<ZeroTable> {
    parse_zero_table(&std::fs::read_to_string(path)?)
}

/// Parses the text format accepted by [`load_zero_table`].
pub fn parse_zero_table(text: &str) -> Result<ZeroTable> {
    let mut ordinates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let x: f64 = line
            .parse()
            .map_err(|e| parse_err(format!("{line:?}: {e}")))?;
        if !(x > 14.0) || !x.is_finite() {
            return Err(parse_err(format!("ordinate {x} is not above 14")));
        }
        if let Some(&prev) = ordinates.last() {
            if x <= prev {
                return Err(parse_err(format!(
                    "ordinate {x} does not exceed the previous {prev}"
                )));
            }
        }
        ordinates.push(x);
    }
    ZeroTable::new(ordinates, ZeroSource::ExternalFile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::borwein_zeta;

    #[test]
    fn z_matches_modulus_and_is_real() {
        for t in [15.0, 30.0, 50.0] {
            let rotated = hardy_z_rotated(t).unwrap();
            let modulus = zeta_auto(Complex::new(0.5, t)).unwrap().norm();
            assert!((rotated.re.abs() - modulus).abs() < 1e-8);
            assert!(rotated.im.abs() < 1e-8);
        }
        for t in [11.0, 123.4, 999.0] {
            assert!(hardy_z_rotated(t).unwrap().im.abs() < 1e-8);
        }
    }

    #[test]
    fn z_sign_change_before_first_zero() {
        assert!(hardy_z(14.0).unwrap() * hardy_z(14.2).unwrap() < 0.0);
    }

    #[test]
    fn z_range() {
        assert!(matches!(hardy_z(9.0), Err(Error::UnsupportedRange(_))));
        assert!(matches!(hardy_z(1000.5), Err(Error::UnsupportedRange(_))));
    }

    #[test]
    fn first_zeros_against_eta_oracle() {
        let table = find_zeros(26.0).unwrap();
        let want = [14.134_725, 21.022_040, 25.010_858];
        assert_eq!(table.len(), 3);
        for (got, want) in table.ordinates().iter().zip(want) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
            assert!(borwein_zeta(Complex::new(0.5, *got)).norm() < 1e-6);
        }
        assert_eq!(table.source(), ZeroSource::Computed);
    }

    #[test]
    fn counts() {
        assert_eq!(find_zeros(20.0).unwrap().len(), 1);
        assert!(find_zeros(14.0).unwrap().is_empty());
        let hundred = find_zeros(100.0).unwrap();
        assert_eq!(hundred.len(), 29);
        assert_eq!(zero_count_estimate(100.0).unwrap().round() as usize, 29);
        for w in hundred.ordinates().windows(2) {
            assert!(w[1] - w[0] > 1e-3);
        }
        for &rho in hundred.ordinates() {
            assert!(zeta_auto(Complex::new(0.5, rho)).unwrap().norm() < 1e-6);
        }
    }

    #[test]
    fn scan_limits() {
        assert!(find_zeros(9.0).is_err());
        assert!(find_zeros(1001.0).is_err());
    }

    #[test]
    fn parse_formats() {
        let one = parse_zero_table("14.134725142\n").unwrap();
        assert_eq!(one.ordinates(), &[14.134_725_142]);
        assert_eq!(one.source(), ZeroSource::ExternalFile);
        assert!(parse_zero_table("").unwrap().is_empty());
        let commented = parse_zero_table("# header\n\n14.5\n  21.0  \n# tail\n").unwrap();
        assert_eq!(commented.len(), 2);
        assert_eq!(commented.nth(2), Some(21.0));
        assert_eq!(commented.nth(0), None);
        assert_eq!(commented.count_below(20.0), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("14.5\nabc\n", 2),
            ("# c\n15\n15\n", 3),
            ("13.9\n", 1),
            ("20\n\n19\n", 3),
        ];
        for (text, line) in cases {
            match parse_zero_table(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn load_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z.txt");
        std::fs::write(&path, "14.134725142\n21.022039639\n").unwrap();
        assert_eq!(load_zero_table(&path).unwrap().len(), 2);
        assert!(matches!(
            load_zero_table(dir.path().join("missing")),
            Err(Error::Io(_))
        ));
    }
}
