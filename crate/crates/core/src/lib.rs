//! Factorized (generalized oscillator) representations of the Calogero
//! Hamiltonian `−d²/dx² + α/x²` on the half-line, with the special
//! functions, quadrature, ODE and root-finding tools they need and an
//! independent shooting oracle for the closed-form spectra.
//!
//! Everything is generic over [`Real`]; the aliases at the crate root fix
//! the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod extensions;
pub mod factorization;
pub mod fit;
pub mod grid;
pub mod ode;
pub mod oracle;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision aliases of the generic types.
pub type Coupling = factorization::CouplingParams<f64>;
pub type Params = factorization::FactorizationParams<f64>;
pub type Family = factorization::PhiFamily<f64>;
pub type Extension = extensions::ExtensionParam<f64>;
pub type Ground = extensions::GroundState<f64>;
pub type Zeros = extensions::ZeroSequence<f64>;
pub type Shooting = oracle::ShootingConfig<f64>;
pub type Spectral = oracle::SpectralResult<f64>;
