//! Typed errors shared across the library.

use thiserror::Error;

/// Violations of basic domain-type invariants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("non-finite component (NaN or infinity) rejected")]
    NonFinite,
    #[error("field-strength scale k must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("radii must be strictly increasing and positive")]
    BadRadii,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("non-finite entry rejected")]
    NonFinite,
    #[error("input is not antisymmetric (max violation {max_violation:e})")]
    NotAntisymmetric { max_violation: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LagrangianError {
    /// The field configuration leaves the real branch of the Born-Infeld
    /// square root.
    #[error("negative radicand {radicand:e}: field exceeds the Born-Infeld bound")]
    NegativeRadicand { radicand: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VariationalError {
    #[error("no convergence after {iterations} Newton iterations (|f'| = {derivative_norm:e})")]
    NoConvergence {
        iterations: usize,
        derivative_norm: f64,
    },
    #[error("function is not analytic at an iterate (Cauchy-Riemann residual {residual:e})")]
    NonAnalytic { residual: f64 },
    #[error("finite-difference derivative numerically unstable (disagreement {disagreement:e})")]
    NumericallyUnstable { disagreement: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("dt = {dt:e} violates the stability bound {limit:e} for this scheme")]
    UnstableStep { dt: f64, limit: f64 },
    #[error("sources violate discrete continuity (residual {residual:e} > {tolerance:e})")]
    NonconservedSources { residual: f64, tolerance: f64 },
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("lattice extent along {axis} is {n}, need at least 4")]
    ExtentTooSmall { axis: &'static str, n: usize },
    #[error("lattice spacing along {axis} must be positive and finite")]
    BadSpacing { axis: &'static str },
    #[error("field data length {got} does not match lattice node count {expected}")]
    ShapeMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("quadrature tolerance not met on [{a:e}, {b:e}] (estimate {estimate:e})")]
    ToleranceNotMet { a: f64, b: f64, estimate: f64 },
}
