use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;

use zetacond::dirichlet::{character_group, l_classify};
use zetacond::monte_carlo::{run_check, ExecutionMode, McCheck};
use zetacond::predictor::{
    classify_off_critical, zero_conditional_tail_curve, DEFAULT_THRESHOLD_MULTIPLIER,
    DEFAULT_TOLERANCE, MAX_DELTA,
};
use zetacond::prime_zeta::{prime_zeta, prime_zeta_truncated};
use zetacond::zeta_zeros::{find_zeros, load_zero_table, SCAN_LIMIT, SCAN_START};
use zetacond::{Complex, MCConfig};

use crate::error::{CliError, Result};

pub struct Outcome {
    pub seed: Option<u64>,
    pub outputs: Vec<PathBuf>,
    pub passed: bool,
}

impl Outcome {
    fn ok(outputs: Vec<PathBuf>) -> Self {
        Self {
            seed: None,
            outputs,
            passed: true,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PrimeZetaArgs {
    /// Real part of s (with --delta as the imaginary part).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "s_re")]
    pub sigma: Option<f64>,

    #[arg(long, allow_negative_numbers = true, requires = "sigma")]
    pub delta: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub s_re: Option<f64>,

    #[arg(long, allow_negative_numbers = true, requires = "s_re")]
    pub s_im: Option<f64>,

    /// Sum over the primes up to X instead of the Möbius series.
    #[arg(long, value_name = "X")]
    pub truncated: Option<u64>,
}

pub fn primezeta(args: &PrimeZetaArgs) -> Result<Outcome> {
    let s = match (args.s_re, args.sigma) {
        (Some(re), _) => Complex::new(re, args.s_im.unwrap_or(0.0)),
        (None, Some(sigma)) => Complex::new(sigma, args.delta.unwrap_or(0.0)),
        (None, None) => return Err(CliError::Usage("give either --s-re or --sigma".into())),
    };
    let (value, method) = match args.truncated {
        Some(x) => (prime_zeta_truncated(s, x)?, "truncated"),
        None => (prime_zeta(s)?, "mobius"),
    };
    let line = json!({
        "s": [s.re, s.im],
        "value": [value.re, value.im],
        "method": method,
        "cutoff": args.truncated,
    });
    println!("{line}");
    Ok(Outcome::ok(Vec::new()))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PredictArgs {
    /// Height t of the conditioning zero.
    #[arg(long, conflicts_with = "zero_index")]
    pub t_anchor: Option<f64>,

    /// Zero-ordinate file: one ordinate per line, '#' comments.
    #[arg(long)]
    pub zero_table: Option<PathBuf>,

    /// 1-based index into --zero-table used as the anchor.
    #[arg(long)]
    pub zero_index: Option<usize>,

    #[arg(long, default_value_t = 0.001)]
    pub delta_min: f64,

    #[arg(long, default_value_t = 40.0)]
    pub delta_max: f64,

    #[arg(long, default_value_t = 0.01)]
    pub delta_step: f64,

    /// Threshold in units of the conditional variance.
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_THRESHOLD_MULTIPLIER)]
    pub threshold_multiplier: f64,

    /// CSV output.
    #[arg(long)]
    pub out: PathBuf,

    /// Optional SVG rendering of the curve.
    #[arg(long)]
    pub svg: Option<PathBuf>,

    /// Draw a vertical line at each zero ordinate inside the lag range.
    #[arg(long)]
    pub mark_zeros: bool,
}

fn delta_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(max >= min) || !min.is_finite() || !max.is_finite() {
        return Err(CliError::Usage(format!(
            "need --delta-min ≤ --delta-max and --delta-step > 0, got {min}, {max}, {step}"
        )));
    }
    // Tolerate the rounding in (max − min)/step so the end point is kept.
    let steps = ((max - min) / step * (1.0 + 1e-12)).floor() as usize;
    Ok((0..=steps).map(|i| min + step * i as f64).collect())
}

pub fn predict(args: &PredictArgs) -> Result<Outcome> {
    let table = args
        .zero_table
        .as_deref()
        .map(load_zero_table)
        .transpose()?;
    let t_anchor = match (args.t_anchor, args.zero_index) {
        (Some(t), _) => t,
        (None, Some(k)) => {
            let table = table
                .as_ref()
                .ok_or_else(|| CliError::Usage("--zero-index needs --zero-table".into()))?;
            table.nth(k).ok_or_else(|| {
                CliError::Usage(format!(
                    "zero table has {} entries, asked for #{k}",
                    table.len()
                ))
            })?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give --t-anchor or --zero-table with --zero-index".into(),
            ))
        }
    };
    let grid = delta_grid(args.delta_min, args.delta_max, args.delta_step)?;
    let curve = zero_conditional_tail_curve(&grid, t_anchor, args.threshold_multiplier)?;

    let mut out = create(&args.out)?;
    curve
        .write_csv(&mut out)
        .map_err(|e| CliError::io(&args.out, e))?;
    out.flush().map_err(|e| CliError::io(&args.out, e))?;
    let mut outputs = vec![args.out.clone()];

    if let Some(svg) = &args.svg {
        let zeros = if !args.mark_zeros {
            Vec::new()
        } else if let Some(table) = &table {
            table.ordinates().to_vec()
        } else if args.delta_max >= SCAN_START {
            find_zeros(args.delta_max.min(MAX_DELTA))?
                .ordinates()
                .to_vec()
        } else {
            Vec::new()
        };
        write_text(svg, &curve.render_svg(&zeros))?;
        outputs.push(svg.clone());
    }
    Ok(Outcome::ok(outputs))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub sigma: f64,

    #[arg(long)]
    pub delta: f64,

    /// Remove the primes dividing k (Dirichlet L-function variant).
    #[arg(long)]
    pub modulus: Option<u64>,

    /// Discriminants within this distance of 0 count as bounded.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

pub fn classify(args: &ClassifyArgs) -> Result<Outcome> {
    let verdict = match args.modulus {
        Some(k) => l_classify(args.sigma, args.delta, k, args.tolerance)?,
        None => classify_off_critical(args.sigma, args.delta, args.tolerance)?,
    };
    let line = json!({
        "sigma": args.sigma,
        "delta": args.delta,
        "modulus": args.modulus,
        "case": verdict.case,
        "discriminant": verdict.discriminant,
    });
    println!("{line}");
    Ok(Outcome::ok(Vec::new()))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct McArgs {
    /// battery, variance, autocov, clt, slope, log-zeta-cov or log-zeta-cov-exact.
    #[arg(long, default_value = "battery", value_parser = parse_check)]
    pub check: McCheck,

    /// Lower end of the sampling window [T, 2T].
    #[arg(long = "T", default_value_t = 1e6)]
    pub t_lower: f64,

    /// Number of samples.
    #[arg(long = "M", default_value_t = 10_000)]
    pub sample_count: usize,

    /// Prime cutoff.
    #[arg(long = "X", default_value_t = 100_000)]
    pub cutoff: u64,

    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,

    /// Lags; repeat the flag or separate with commas.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0])]
    pub delta: Vec<f64>,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Spread rows and reductions over worker threads.
    #[arg(long)]
    pub parallel: bool,

    /// JSON report (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_check(s: &str) -> std::result::Result<McCheck, String> {
    s.parse().map_err(|e: zetacond::Error| e.to_string())
}

pub fn mc(args: &McArgs) -> Result<Outcome> {
    let cfg = MCConfig {
        t_lower: args.t_lower,
        sample_count: args.sample_count,
        seed: args.seed,
        sigma: args.sigma,
        cutoff: args.cutoff,
        delta_list: args.delta.clone(),
        mode: if args.parallel {
            ExecutionMode::Parallel
        } else {
            ExecutionMode::Sequential
        },
    };
    let report = run_check(&cfg, args.check)?;
    let text = report.to_json() + "\n";
    let outputs = match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            vec![path.clone()]
        }
        None => {
            print!("{text}");
            Vec::new()
        }
    };
    for (label, ok) in report.labels.iter().zip(&report.pass) {
        eprintln!("{} {label}", if *ok { "PASS" } else { "FAIL" });
    }
    Ok(Outcome {
        seed: Some(args.seed),
        outputs,
        passed: report.all_pass(),
    })
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ZerosArgs {
    /// Upper end of the scan, at most 1000.
    #[arg(long)]
    pub t_max: f64,

    #[arg(long)]
    pub out: PathBuf,
}

pub fn zeros(args: &ZerosArgs) -> Result<Outcome> {
    if !(args.t_max <= SCAN_LIMIT) {
        return Err(zetacond::Error::UnsupportedRange(format!(
            "--t-max {} above {SCAN_LIMIT}",
            args.t_max
        ))
        .into());
    }
    // There are no zeros below the scan start, so no scan is needed there.
    let ordinates = if args.t_max < SCAN_START {
        Vec::new()
    } else {
        find_zeros(args.t_max)?.ordinates().to_vec()
    };
    let mut out = create(&args.out)?;
    for t in &ordinates {
        writeln!(out, "{t:.9}").map_err(|e| CliError::io(&args.out, e))?;
    }
    out.flush().map_err(|e| CliError::io(&args.out, e))?;
    Ok(Outcome::ok(vec![args.out.clone()]))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CharactersArgs {
    #[arg(long)]
    pub modulus: u64,

    /// JSON output (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn characters(args: &CharactersArgs) -> Result<Outcome> {
    let dumps: Vec<_> = character_group(args.modulus)?
        .iter()
        .map(|c| c.dump())
        .collect();
    let text = serde_json::to_string_pretty(&dumps)? + "\n";
    match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            Ok(Outcome::ok(vec![path.clone()]))
        }
        None => {
            print!("{text}");
            Ok(Outcome::ok(Vec::new()))
        }
    }
}
