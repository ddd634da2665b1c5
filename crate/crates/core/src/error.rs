use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("argument within {guard:e} of the pole at s = 1")]
    NearPole { guard: f64 },

    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    #[error("degenerate conditional law: {0}")]
    DegenerateConditional(String),

    #[error("degenerate modulus: {0}")]
    DegenerateModulus(String),

    #[error("incomplete zero scan: found {found} zeros below {t_max}, expected {expected:.3}")]
    IncompleteScan {
        found: usize,
        expected: f64,
        t_max: f64,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("delta {0} is not part of the sampled lag list")]
    UnknownDelta(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
