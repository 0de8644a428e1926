//! Numerical toolkit for symmetric operators whose uncertainty is bounded
//! away from zero.
//!
//! The crate builds model operators (momentum on an interval, the
//! half-line derivative, a second-order Laguerre-basis operator), exposes
//! their one-parameter families of self-adjoint extensions, computes
//! eigenvalue lattices, uncertainty curves and their envelope over the
//! family, brackets minimum uncertainties with a constrained-quadratic
//! oracle, and machine-checks the spectral-gap statements behind all of
//! it. A Shannon-type sampling demonstration on shifted eigenvalue
//! lattices rounds out the set.
//!
//! Everything is deterministic: random sweeps are seeded per check, and
//! all reductions are order-independent, so results do not depend on how
//! work is scheduled.

pub mod error;
pub mod extensions;
pub mod harness;
pub mod interval;
pub mod models;
pub mod quad;
pub mod sampling;
pub mod spectral;
pub mod uncertainty;

/// Complex scalar used throughout; operations validate finiteness on
/// entry rather than wrapping the type.
pub type ComplexValue = num_complex::Complex64;

pub use error::{Error, Result};
pub use extensions::{ExtensionFamily, Spectrum};
pub use interval::Interval;
pub use spectral::{
    cayley, constrained_min_bracket, eig_sym_tridiagonal, inverse_cayley, Bracket,
    ConstrainedPair, SymMatrix, SymTridiagonal,
};
