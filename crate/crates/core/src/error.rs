use thiserror::Error;

use crate::grid::BoundaryKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("grid size {got} outside allowed range {min}..={max}")]
    Size { got: usize, min: usize, max: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("singular coefficient: {0}")]
    SingularCoefficient(String),

    #[error("operation requires {expected:?} boundary, field has {got:?}")]
    BoundaryKind {
        expected: BoundaryKind,
        got: BoundaryKind,
    },

    /// Negative time steps (or negative composition substeps for diffusion)
    /// make the sweep growth factor exceed one for every nonzero mode.
    #[error("unstable parameters: {0}")]
    Stability(String),

    /// A sweep with |s| >= 1 amplifies along the sweep direction even though
    /// its per-mode factor is unimodular.
    #[error("spatial amplification: |s| = {s} >= 1{}", if *.pathological { " (s = 1 is pathological)" } else { "" })]
    SpatialAmplification { s: f64, pathological: bool },

    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            _ => 1,
        }
    }
}
