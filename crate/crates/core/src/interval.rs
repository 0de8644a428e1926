use crate::error::{ensure_finite, Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerance for endpoint membership ties. Eigenvalues exactly on an
/// endpoint count as inside.
pub const TIE_TOL: f64 = 1e-12;

/// A closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        ensure_finite(lo, "interval lo")?;
        ensure_finite(hi, "interval hi")?;
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval lo {lo} exceeds hi {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Closed-interval membership with the tie tolerance on endpoints.
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo - TIE_TOL && x <= self.hi + TIE_TOL
    }

    /// Whether `other` lies inside `self` (endpoints included, tie tolerance).
    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.lo >= self.lo - TIE_TOL && other.hi <= self.hi + TIE_TOL
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }
}
