//! Explicit, unconditionally stable finite-difference solvers built from
//! sequential pair updates ("sweeps") and their symmetric compositions, for
//! the 1D diffusion, advection and advection-diffusion equations.

pub mod coefficients;
pub mod composition;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod oracle;
pub mod spectral;
pub mod sweep;

pub use composition::{preset, Equation, Scheme, SchemeSpec, StepParams};
pub use error::{Error, Result};
pub use grid::{BoundaryKind, Field1D};
pub use sweep::{sweep, PairUpdate, SweepDirection};
