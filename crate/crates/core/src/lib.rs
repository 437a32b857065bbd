//! fieldlab-core: a verification laboratory for classical field dynamics
//! built on the complex field vector F = E + iB and its rank-2 tensor.
//!
//! The crate provides, as pure library code:
//!
//! * tensor algebra of the real, dual, and complex field tensors with exact
//!   (rational) and floating determinant identities ([`tensor`], [`identities`]);
//! * the four Lagrangian densities in every form the lab cross-checks
//!   ([`lagrangian`]);
//! * saddle-point variational calculus for complex-valued functions
//!   ([`variational`]);
//! * a discretized least-action engine on a periodic space-time lattice with
//!   exact structure-preserving identities and analytic action gradients
//!   ([`lattice`]);
//! * time-domain evolution of the complex field vector, cross-validated
//!   against a staggered two-field scheme ([`solver`]);
//! * the point-charge electrostatics study showing the nonlinear theory's
//!   finite self-energy ([`electrostatic`]).
//!
//! Numerical code is generic over the floating scalar (`f32`/`f64`) and the
//! polynomial identities additionally run over exact rationals; the aliases
//! below pin the default `f64` instantiation.

pub mod electrostatic;
pub mod error;
pub mod identities;
pub mod lagrangian;
pub mod lattice;
pub mod quad;
pub mod scalar;
pub mod solver;
pub mod spectral;
pub mod stationarity;
pub mod suite;
pub mod tensor;
pub mod variational;
pub mod vec3;

/// Default floating scalar.
pub type Real = f64;
/// Complex over the default scalar.
pub type C64 = num_complex::Complex<f64>;
/// Exact rational scalar for identity proofs.
pub type Rational = num_rational::BigRational;
/// Gaussian rational: complex with exact rational parts.
pub type CRational = num_complex::Complex<Rational>;

/// Real 3-vector over the default scalar.
pub type Vec3R = vec3::Vec3<Real>;
/// The complex field vector F = E + iB over the default scalar.
pub type RsVector = vec3::Vec3<C64>;
/// Float-complex 4×4 tensor.
pub type Tensor4C = tensor::Tensor4<C64>;
/// Exact rational-complex 4×4 tensor.
pub type Tensor4Q = tensor::Tensor4<CRational>;

pub use error::{
    DomainError, LagrangianError, QuadratureError, SolverError, TensorError, VariationalError,
};
pub use lagrangian::{BiParameter, FieldPoint, LagrangianKind, SourcePoint};
pub use vec3::{rs_square, rs_vector, Vec3};
