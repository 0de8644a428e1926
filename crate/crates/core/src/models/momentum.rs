//! Momentum of a particle in a box: i d/dx on [0, L] with φ(0) = φ(L) = 0.
//!
//! The symmetric operator has deficiency indices (1, 1); its self-adjoint
//! extensions are the boundary conditions φ(L) = e^{iθ}φ(0) with spectra
//! λ_k(θ) = (2πk − θ)/L, θ ∈ [0, 2π). The domain of the symmetric
//! operator is realized inside the θ = 0 eigenbasis e_k = e^{−2πikx/L}/√L
//! as the hyperplane Σ c_k = 0, which makes the second-moment matrix
//! exactly diagonal before restriction.

use crate::error::{ensure_finite, Error, Result};
use crate::extensions::Spectrum;
use crate::interval::Interval;
use crate::spectral::constrained::{
    constrained_min_bracket, Bracket, ConstrainedPair, DEFAULT_DUAL_GRID,
};

use std::f64::consts::TAU;

/// Interval length L > 0 (position units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumIntervalModel {
    length: f64,
}

impl MomentumIntervalModel {
    pub fn new(length: f64) -> Result<Self> {
        ensure_finite(length, "interval length")?;
        if length <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "interval length must be positive, got {length}"
            )));
        }
        Ok(Self { length })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Lattice spacing 2π/L of every extension spectrum.
    pub fn spacing(&self) -> f64 {
        TAU / self.length
    }
}

/// Extension spectrum over an explicit k-range: λ_k = (2πk − θ)/L for
/// k_lo ≤ k ≤ k_hi, ascending, all simple. The window is the span of the
/// emitted lattice.
pub fn momentum_spectrum(
    m: &MomentumIntervalModel,
    theta: f64,
    k_range: (i64, i64),
) -> Result<Spectrum> {
    ensure_finite(theta, "theta")?;
    let theta = theta.rem_euclid(TAU);
    let (k_lo, k_hi) = k_range;
    if k_lo > k_hi {
        return Err(Error::InvalidInput(format!(
            "empty k range [{k_lo}, {k_hi}]"
        )));
    }
    let vals: Vec<f64> = (k_lo..=k_hi)
        .map(|k| (TAU * k as f64 - theta) / m.length)
        .collect();
    let window = Interval::new(vals[0], *vals.last().unwrap())?;
    Spectrum::simple(vals, window)
}

/// Restriction of the θ = 0 extension to dom(S): basis e_k, |k| ≤ n,
/// constraint Σ c_k = 0. B = Qᵀ diag(2πk/L) Q, A = Qᵀ diag((2πk/L)²) Q,
/// restricted dimension 2n.
pub fn momentum_restricted_pair(m: &MomentumIntervalModel, n: usize) -> Result<ConstrainedPair> {
    if n < 1 {
        return Err(Error::InvalidInput("truncation must be at least 1".into()));
    }
    let ambient = 2 * n + 1;
    let d: Vec<f64> = (-(n as i64)..=n as i64)
        .map(|k| TAU * k as f64 / m.length)
        .collect();
    let u = vec![1.0 / (ambient as f64).sqrt(); ambient];
    ConstrainedPair::from_diagonal_restriction(d, u)
}

/// Truncation-corrected oracle bracket for the minimum uncertainty of the
/// momentum model at expectation `t`.
#[derive(Debug, Clone)]
pub struct MomentumBracket {
    /// Lower bound with the two-level truncation allowance applied.
    pub lo: f64,
    /// Upper bound: a feasible-state value, valid for the untruncated
    /// problem as-is (the truncated domain embeds in dom(S)).
    pub hi: f64,
    /// Raw bracket at truncation n.
    pub raw: Bracket,
    /// Raw bracket at truncation n/2, used for the allowance.
    pub raw_half: Bracket,
}

/// Runs [`constrained_min_bracket`] on the truncation-`n` pair and on the
/// n/2 pair. Basis truncation shrinks the feasible set, so the per-pair
/// bracket converges to the true minimum uncertainty from above at rate
/// O(1/n); the reported `lo` subtracts twice the observed two-level
/// decrement as a Richardson-style allowance, keeping it below the true
/// value while staying within O(1/n) of it.
pub fn momentum_uncertainty_bracket(
    m: &MomentumIntervalModel,
    n: usize,
    t: f64,
    grid: usize,
) -> Result<MomentumBracket> {
    if n < 4 {
        return Err(Error::InvalidInput(
            "oracle truncation must be at least 4 for the two-level allowance".into(),
        ));
    }
    let pair = momentum_restricted_pair(m, n)?;
    let raw = constrained_min_bracket(&pair, t, None, grid)?;
    let pair_half = momentum_restricted_pair(m, n / 2)?;
    let raw_half = constrained_min_bracket(&pair_half, t, None, grid)?;
    let allowance = (raw_half.lo - raw.lo).max(0.0);
    let lo = (raw.lo - 2.0 * allowance).max(0.0);
    Ok(MomentumBracket { lo, hi: raw.hi, raw, raw_half })
}

/// Convenience wrapper with the default dual-scan grid.
pub fn momentum_uncertainty_bracket_default(
    m: &MomentumIntervalModel,
    n: usize,
    t: f64,
) -> Result<MomentumBracket> {
    momentum_uncertainty_bracket(m, n, t, DEFAULT_DUAL_GRID)
}
