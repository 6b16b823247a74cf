//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharFnError {
    /// A measure violated an invariant (negative weight, bad density parameter, ...).
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// A transform was requested on the real axis, where the kernels are singular.
    #[error("transform requested at y = 0; the kernels are only defined off the real axis")]
    OnRealAxis,

    /// The plain Cauchy transform at order 0 requires the weighted-integrability
    /// condition; the caller must use the modified transform instead.
    #[error("order-0 Cauchy transform diverges for this function; use the modified transform")]
    NotIntegrable,

    /// A theorem path was requested for a function outside its hypotheses.
    #[error("test not applicable: {0}")]
    NotApplicable(String),

    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("measure file: {0}")]
    MeasureFormat(String),

    #[error("sample file: {0}")]
    SampleFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CharFnError>;
