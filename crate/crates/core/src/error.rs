use thiserror::Error;

/// Errors raised by the algebra, norm and kernel routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not invertible: its scalar part is zero")]
    NotInvertible,

    #[error("projector P_{n} is undefined on G(3,{d}): need n <= d")]
    InvalidProjector { n: usize, d: usize },

    #[error("element has support at position {position}, outside 1..={d}")]
    SupportOutOfRange { position: u32, d: usize },

    #[error("expected a grade-1 element, found a term of grade {grade}")]
    NotGradeOne { grade: u32 },

    #[error("norm order p = {0} is invalid: need p >= 1")]
    InvalidNormOrder(f64),

    #[error("weighted norm overflows the floating range (log-norm = {log_norm})")]
    Overflow { log_norm: f64 },

    #[error("invalid weight gauge: {0}")]
    InvalidGauge(String),

    #[error("power series guard failed: |f|_(-{p}) = {norm}, |f_0| = {body}, limit R/C2 = {limit}")]
    DivergenceGuard { p: i32, norm: f64, body: f64, limit: f64 },

    #[error("invalid spectral density: {0}")]
    InvalidDensity(String),

    #[error("function lies outside the domain of S_m: {0}")]
    DomainViolation(String),

    #[error("covariance tail is not integrable: {0}")]
    TailDivergence(String),

    #[error("integral did not converge after {levels} refinements (last change {last_change:e})")]
    NoConvergence { levels: usize, last_change: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
