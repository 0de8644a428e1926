//! Foundational numerics: Cayley/Möbius transforms, symmetric
//! eigensolvers, and the constrained-quadratic dual bracket.

pub mod cayley;
pub mod constrained;
pub mod tridiag;

pub use cayley::{cayley, inverse_cayley};
pub use constrained::{
    constrained_min_bracket, restricted_diag_lambda_min, Bracket, ConstrainedPair,
    DiagonalRestriction, DEFAULT_DUAL_GRID,
};
pub use tridiag::{eig_sym_tridiagonal, eigvals_sym_tridiagonal, SymMatrix, SymTridiagonal};
