//! Cayley transform and its inverse.
//!
//! `cayley` maps the closed upper half plane into the closed unit disk,
//! carrying the real line onto the unit circle minus {1}; `inverse_cayley`
//! undoes it. The poles (−i and 1) are rejected as errors.

use crate::error::{Error, Result};
use crate::ComplexValue;

fn ensure_finite_c(z: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// (z − i)/(z + i). Pole at z = −i.
pub fn cayley(z: ComplexValue) -> Result<ComplexValue> {
    let z = ensure_finite_c(z, "cayley argument")?;
    let denom = z + ComplexValue::i();
    if denom.norm() < 1e-300 {
        return Err(Error::Pole {
            transform: "cayley",
            at: "-i".to_string(),
        });
    }
    Ok((z - ComplexValue::i()) / denom)
}

/// i(1 + w)/(1 − w). Pole at w = 1.
pub fn inverse_cayley(w: ComplexValue) -> Result<ComplexValue> {
    let w = ensure_finite_c(w, "inverse_cayley argument")?;
    let denom = ComplexValue::new(1.0, 0.0) - w;
    if denom.norm() < 1e-300 {
        return Err(Error::Pole {
            transform: "inverse_cayley",
            at: "1".to_string(),
        });
    }
    Ok(ComplexValue::i() * (ComplexValue::new(1.0, 0.0) + w) / denom)
}
