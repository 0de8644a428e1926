//! Catalog of the concrete model operators with analytic deficiency
//! indices, truncated representations, and quasi-eigenstate families.

pub mod halfline;
pub mod laguerre;
pub mod momentum;
pub mod states;

pub use halfline::{
    gaussian_overlap, quasi_overlap, quasi_overlap_limit, quasi_state_moments,
    HalfLineDerivativeModel, QuasiMoments,
};
pub use laguerre::{
    bump_corpus, laguerre_entry_oracle, laguerre_matrix, laguerre_uncertainty, C2Function,
    LaguerreSecondOrderModel, PolyBump,
};
pub use momentum::{
    momentum_restricted_pair, momentum_spectrum, momentum_uncertainty_bracket,
    momentum_uncertainty_bracket_default, MomentumBracket, MomentumIntervalModel,
};
pub use states::{BasisTag, StateRepr, TestState};
