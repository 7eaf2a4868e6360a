use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("interval endpoint {0} is a root; perturb it rationally")]
    EndpointIsRoot(String),

    #[error("probe {0} is itself an eigenvalue of the pencil; perturb it rationally")]
    ProbeIsEigenvalue(String),

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("model anomaly: {0}")]
    ModelAnomaly(String),

    #[error("could not certify {what} after escalating to {bits} bits")]
    PrecisionExhausted { what: String, bits: usize },

    #[error("no convergence: {0}")]
    NotConverged(String),

    #[error("no sign change on bracket: D(lo) = {lo}, D(hi) = {hi}")]
    NoSignChange { lo: String, hi: String },

    #[error("conjecture check failed: {0}")]
    ConjectureViolation(String),
}

impl Error {
    /// True for failures that more precision or a larger basis might cure.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. } | Error::NotConverged(_))
    }
}
