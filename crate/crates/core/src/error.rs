use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument outside the domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function} overflows at z = {z}; use the exponentially scaled variant")]
    Overflow { function: &'static str, z: f64 },

    #[error("kernel is singular at the origin for n = {n}, N = {dim} (requires n > N/2)")]
    SingularAtOrigin { n: usize, dim: usize },

    #[error("L^{p} norm diverges at the origin (integrability margin {margin} is not positive)")]
    DivergentNorm { p: f64, margin: f64 },

    #[error("moment of order {0} is not supported (orders 0, 1 and 2 only)")]
    UnsupportedOrder(u32),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("forcing schedule has no step {0}")]
    MissingForcingStep(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("power-law fit needs positive data; point {index} has value {value}")]
    NonPositive { index: usize, value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}

/// Non-fatal diagnostics attached to a result.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Sampled kernel at the box edge relative to its peak.
    TailTruncation { ratio: f64, threshold: f64 },
    /// Field magnitude on the box boundary relative to its peak.
    BoundaryContamination { ratio: f64, threshold: f64 },
    /// A quadrature rule used outside the regime where it is accurate.
    QuadratureDegradation { detail: String },
    /// An adaptive integral stopped before reaching its tolerance.
    Unconverged { detail: String },
    /// The automatic grid hit its size cap before reaching the target spacing.
    GridResolution { spacing: f64, target: f64 },
    /// Two independent routes disagree by more than their stated tolerance.
    RouteDisagreement {
        label: String,
        relative: f64,
        tolerance: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Warned<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Warned<T> {
    pub fn clean(value: T) -> Self {
        Self {
            value,
            warnings: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}
