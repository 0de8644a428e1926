//! Concrete test states: quadrature-grid samples or basis coefficients.

use crate::error::{ensure_finite, Error, Result};
use crate::ComplexValue;

use std::f64::consts::TAU;

/// Coefficient basis tags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisTag {
    /// θ = 0 momentum eigenbasis e_k = e^{−2πikx/L}/√L, coefficients for
    /// k = k_min, k_min+1, …
    MomentumThetaZero { length: f64, k_min: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateRepr {
    Grid {
        nodes: Vec<f64>,
        weights: Vec<f64>,
        values: Vec<ComplexValue>,
    },
    Coefficients {
        coeffs: Vec<ComplexValue>,
        basis: BasisTag,
    },
}

/// A state in the domain of a model operator, with its squared norm
/// cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TestState {
    repr: StateRepr,
    norm_sq: f64,
}

impl TestState {
    pub fn from_grid(
        nodes: Vec<f64>,
        weights: Vec<f64>,
        values: Vec<ComplexValue>,
    ) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.len() != values.len() {
            return Err(Error::InvalidInput("grid arrays differ in length".into()));
        }
        if nodes.is_empty() {
            return Err(Error::InvalidInput("empty grid".into()));
        }
        for w in nodes.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidInput("grid nodes must be strictly increasing".into()));
            }
        }
        for (&w, v) in weights.iter().zip(&values) {
            ensure_finite(w, "quadrature weight")?;
            if w <= 0.0 {
                return Err(Error::InvalidInput("quadrature weights must be positive".into()));
            }
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite("grid value"));
            }
        }
        let norm_sq: f64 = weights
            .iter()
            .zip(&values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum();
        Self::check_norm(norm_sq)?;
        Ok(Self {
            repr: StateRepr::Grid { nodes, weights, values },
            norm_sq,
        })
    }

    pub fn from_momentum_coefficients(
        length: f64,
        k_min: i64,
        coeffs: Vec<ComplexValue>,
    ) -> Result<Self> {
        ensure_finite(length, "basis length")?;
        if length <= 0.0 {
            return Err(Error::InvalidInput("basis length must be positive".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient list".into()));
        }
        for c in &coeffs {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite("coefficient"));
            }
        }
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        Self::check_norm(norm_sq)?;
        Ok(Self {
            repr: StateRepr::Coefficients {
                coeffs,
                basis: BasisTag::MomentumThetaZero { length, k_min },
            },
            norm_sq,
        })
    }

    fn check_norm(norm_sq: f64) -> Result<()> {
        if !(norm_sq.is_finite() && norm_sq > 0.0) {
            return Err(Error::InvalidInput(format!(
                "state must have positive finite norm, got norm_sq = {norm_sq}"
            )));
        }
        Ok(())
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn repr(&self) -> &StateRepr {
        &self.repr
    }

    /// ⟨self, other⟩ = ∫ conj(self)·other; both states must share a
    /// representation (same grid or same basis).
    pub fn inner(&self, other: &TestState) -> Result<ComplexValue> {
        match (&self.repr, &other.repr) {
            (
                StateRepr::Grid { nodes: n1, weights: w1, values: v1 },
                StateRepr::Grid { nodes: n2, values: v2, .. },
            ) => {
                if n1 != n2 {
                    return Err(Error::InvalidInput("states live on different grids".into()));
                }
                Ok(w1
                    .iter()
                    .zip(v1.iter().zip(v2))
                    .map(|(w, (a, b))| a.conj() * b * *w)
                    .sum())
            }
            (
                StateRepr::Coefficients { coeffs: c1, basis: b1 },
                StateRepr::Coefficients { coeffs: c2, basis: b2 },
            ) => {
                if b1 != b2 || c1.len() != c2.len() {
                    return Err(Error::InvalidInput("states use different bases".into()));
                }
                Ok(c1.iter().zip(c2).map(|(a, b)| a.conj() * b).sum())
            }
            _ => Err(Error::InvalidInput(
                "cannot pair a grid state with a coefficient state".into(),
            )),
        }
    }

    /// Normalized momentum mean and second moment; coefficient states in
    /// the momentum basis only (moments are exact sums there).
    pub fn momentum_moments(&self) -> Result<(f64, f64)> {
        match &self.repr {
            StateRepr::Coefficients {
                coeffs,
                basis: BasisTag::MomentumThetaZero { length, k_min },
            } => {
                let mut mean = 0.0;
                let mut second = 0.0;
                for (j, c) in coeffs.iter().enumerate() {
                    let lambda = TAU * (k_min + j as i64) as f64 / length;
                    let p = c.norm_sqr();
                    mean += lambda * p;
                    second += lambda * lambda * p;
                }
                Ok((mean / self.norm_sq, second / self.norm_sq))
            }
            _ => Err(Error::InvalidInput(
                "momentum moments need momentum-basis coefficients".into(),
            )),
        }
    }
}
