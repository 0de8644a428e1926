//! The derivative operator i d/dx on L²[0, ∞) with φ(0) = 0 — deficiency
//! indices (0, 1), so no self-adjoint extensions exist. Its regularized
//! quasi-eigenstate family
//!
//! ```text
//! φ(ε, λ; x) = (e^{−iλx − εx} − e^{−x/√ε}) / √(2π)
//! ```
//!
//! has moments converging to (λ, λ²) while the pairwise overlaps converge
//! to 1/(2πi(λ₂ − λ₁)) ≠ 0. The self-adjoint comparison on the whole line
//! uses Gaussian regularization instead, whose overlaps vanish.
//!
//! Inner products use the convention ⟨f, g⟩ = ∫ conj(f)·g dx, which is
//! the one under which the overlap limit reads 1/(2πi(λ₂ − λ₁)).
//! All values are raw (unnormalized): normalized overlaps of this family
//! tend to zero and would not exhibit the limit.
//!
//! Closed forms are sums of terms 1/(a + ib); the e^{−x/√ε} regulator
//! creates a 1/√ε length-scale disparity that defeats naive quadrature,
//! so quadrature appears only as the cross-check oracle.

use crate::error::{ensure_finite, Error, Result};
use crate::quad::{integrate_complex, QuadOpts};
use crate::ComplexValue;

use std::f64::consts::PI;

/// Marker for the half-line derivative operator (no parameters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HalfLineDerivativeModel;

/// Raw squared norm plus normalized first and second moments of the
/// quasi-eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiMoments {
    pub norm_sq: f64,
    pub mean: f64,
    pub second_moment: f64,
}

impl QuasiMoments {
    pub fn uncertainty(&self) -> f64 {
        (self.second_moment - self.mean * self.mean).max(0.0).sqrt()
    }
}

fn check_eps_open_unit(eps: f64) -> Result<f64> {
    ensure_finite(eps, "epsilon")?;
    if eps <= 0.0 || eps >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "epsilon must lie in (0, 1), got {eps}"
        )));
    }
    Ok(eps)
}

/// ⟨φ,φ⟩, ⟨Dφ,φ⟩/⟨φ,φ⟩ and ⟨Dφ,Dφ⟩/⟨φ,φ⟩ for φ(ε, λ; ·), from closed-form
/// integrals of products of complex exponentials.
pub fn quasi_state_moments(
    _h: &HalfLineDerivativeModel,
    eps: f64,
    lambda: f64,
) -> Result<QuasiMoments> {
    let eps = check_eps_open_unit(eps)?;
    ensure_finite(lambda, "lambda")?;
    let b = 1.0 / eps.sqrt();
    let i = ComplexValue::i();
    let c = |re: f64| ComplexValue::new(re, 0.0);

    // ⟨φ,φ⟩
    let norm_sq = (1.0 / (2.0 * PI))
        * (1.0 / (2.0 * eps) - 2.0 * (b + eps) / ((b + eps) * (b + eps) + lambda * lambda)
            + 1.0 / (2.0 * b));

    // ⟨Dφ,φ⟩ with Dφ = (λ − iε)e^{−(ε+iλ)x} + ib e^{−bx} (up to 1/√2π)
    let lam_p = c(lambda) + i * eps; // λ + iε
    let denom_m = c(b + eps) - i * lambda; // b + ε − iλ
    let denom_p = c(b + eps) + i * lambda; // b + ε + iλ
    let d_phi = (lam_p / (2.0 * eps) - lam_p / denom_m - i * b / denom_p + i * 0.5)
        / (2.0 * PI);

    // ⟨Dφ,Dφ⟩
    let d_d = (c((lambda * lambda + eps * eps) / (2.0 * eps))
        + i * b * lam_p / denom_m
        - i * b * (c(lambda) - i * eps) / denom_p
        + c(b / 2.0))
        / (2.0 * PI);

    // symmetry of D on its domain makes both real; the imaginary parts
    // are pure roundoff
    debug_assert!(d_phi.im.abs() <= 1e-9 * (1.0 + d_phi.re.abs()));
    debug_assert!(d_d.im.abs() <= 1e-9 * (1.0 + d_d.re.abs()));

    Ok(QuasiMoments {
        norm_sq,
        mean: d_phi.re / norm_sq,
        second_moment: d_d.re / norm_sq,
    })
}

/// Raw inner product ⟨φ(ε,λ₁;·), φ(ε,λ₂;·)⟩; converges to
/// 1/(2πi(λ₂ − λ₁)) with error O(√ε).
pub fn quasi_overlap(
    _h: &HalfLineDerivativeModel,
    eps: f64,
    lambda1: f64,
    lambda2: f64,
) -> Result<ComplexValue> {
    let eps = check_eps_open_unit(eps)?;
    ensure_finite(lambda1, "lambda1")?;
    ensure_finite(lambda2, "lambda2")?;
    if lambda1 == lambda2 {
        return Err(Error::InvalidInput(
            "equal quasi-eigenvalues: the norm diverges as eps -> 0; use \
             quasi_state_moments instead"
                .into(),
        ));
    }
    let b = 1.0 / eps.sqrt();
    let i = ComplexValue::i();
    let c = |re: f64| ComplexValue::new(re, 0.0);
    let sum = c(1.0) / (c(2.0 * eps) + i * (lambda2 - lambda1))
        - c(1.0) / (c(b + eps) + i * lambda2)
        - c(1.0) / (c(b + eps) - i * lambda1)
        + c(1.0 / (2.0 * b));
    Ok(sum / (2.0 * PI))
}

/// The ε → 0 limit of [`quasi_overlap`]: 1/(2πi(λ₂ − λ₁)).
pub fn quasi_overlap_limit(lambda1: f64, lambda2: f64) -> ComplexValue {
    ComplexValue::new(1.0, 0.0) / (ComplexValue::new(0.0, 2.0 * PI * (lambda2 - lambda1)))
}

/// Overlap of Gaussian-regularized plane waves on the whole line,
/// φ(ε, λ; x) = e^{−iλx − εx²/2}/√(2π):
/// ⟨φ₁,φ₂⟩ = √(π/ε)·e^{−(λ₂−λ₁)²/(4ε)}/(2π). Vanishes as ε → 0 whenever
/// λ₁ ≠ λ₂, in contrast to the half-line family.
pub fn gaussian_overlap(eps: f64, lambda1: f64, lambda2: f64) -> Result<ComplexValue> {
    ensure_finite(eps, "epsilon")?;
    ensure_finite(lambda1, "lambda1")?;
    ensure_finite(lambda2, "lambda2")?;
    if eps <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    let dl = lambda2 - lambda1;
    let value = (PI / eps).sqrt() * (-dl * dl / (4.0 * eps)).exp() / (2.0 * PI);
    Ok(ComplexValue::new(value, 0.0))
}

// ---- quadrature cross-check oracles ----

fn quasi_state(eps: f64, lambda: f64, x: f64) -> ComplexValue {
    let b = 1.0 / eps.sqrt();
    let phase = ComplexValue::new(-eps * x, -lambda * x).exp();
    let reg = ComplexValue::new((-b * x).exp(), 0.0);
    (phase - reg) / (2.0 * PI).sqrt()
}

fn quasi_state_d(eps: f64, lambda: f64, x: f64) -> ComplexValue {
    let b = 1.0 / eps.sqrt();
    let phase = ComplexValue::new(-eps * x, -lambda * x).exp();
    let reg = ComplexValue::new((-b * x).exp(), 0.0);
    (ComplexValue::new(lambda, -eps) * phase + ComplexValue::new(0.0, b) * reg)
        / (2.0 * PI).sqrt()
}

/// [`quasi_overlap`] recomputed by adaptive quadrature.
pub fn quasi_overlap_quadrature(
    eps: f64,
    lambda1: f64,
    lambda2: f64,
    opts: QuadOpts,
) -> Result<ComplexValue> {
    let cutoff = 20.0 / eps;
    integrate_complex(
        |x| quasi_state(eps, lambda1, x).conj() * quasi_state(eps, lambda2, x),
        0.0,
        cutoff,
        opts,
    )
}

/// [`quasi_state_moments`] recomputed by adaptive quadrature.
pub fn quasi_moments_quadrature(eps: f64, lambda: f64, opts: QuadOpts) -> Result<QuasiMoments> {
    let cutoff = 20.0 / eps;
    let norm_sq = integrate_complex(
        |x| quasi_state(eps, lambda, x).conj() * quasi_state(eps, lambda, x),
        0.0,
        cutoff,
        opts,
    )?
    .re;
    let d_phi = integrate_complex(
        |x| quasi_state_d(eps, lambda, x).conj() * quasi_state(eps, lambda, x),
        0.0,
        cutoff,
        opts,
    )?;
    let d_d = integrate_complex(
        |x| {
            let d = quasi_state_d(eps, lambda, x);
            d.conj() * d
        },
        0.0,
        cutoff,
        opts,
    )?;
    Ok(QuasiMoments {
        norm_sq,
        mean: d_phi.re / norm_sq,
        second_moment: d_d.re / norm_sq,
    })
}

/// [`gaussian_overlap`] recomputed by adaptive quadrature.
pub fn gaussian_overlap_quadrature(
    eps: f64,
    lambda1: f64,
    lambda2: f64,
    opts: QuadOpts,
) -> Result<ComplexValue> {
    let cutoff = (42.0 / eps).sqrt();
    integrate_complex(
        |x| {
            let f1 = ComplexValue::new(-0.5 * eps * x * x, -lambda1 * x).exp();
            let f2 = ComplexValue::new(-0.5 * eps * x * x, -lambda2 * x).exp();
            f1.conj() * f2 / (2.0 * PI)
        },
        -cutoff,
        cutoff,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: HalfLineDerivativeModel = HalfLineDerivativeModel;

    #[test]
    fn moments_approach_lambda() {
        let m = quasi_state_moments(&H, 1e-4, 3.0).unwrap();
        assert!((m.mean - 3.0).abs() < 0.05, "mean {}", m.mean);
        assert!((m.second_moment - 9.0).abs() < 0.5, "second {}", m.second_moment);
    }

    #[test]
    fn uncertainty_decreases_with_eps() {
        let u: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&e| quasi_state_moments(&H, e, 0.0).unwrap().uncertainty())
            .collect();
        assert!(u[0] > u[1] && u[1] > u[2], "{u:?}");
    }

    #[test]
    fn eps_domain_validated() {
        assert!(quasi_state_moments(&H, 0.0, 1.0).is_err());
        assert!(quasi_state_moments(&H, 1.0, 1.0).is_err());
        assert!(quasi_overlap(&H, -0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn equal_lambdas_rejected() {
        assert!(quasi_overlap(&H, 1e-3, 2.0, 2.0).is_err());
    }

    #[test]
    fn overlap_approaches_limit() {
        let v = quasi_overlap(&H, 1e-6, 0.0, 1.0).unwrap();
        let lim = quasi_overlap_limit(0.0, 1.0);
        assert!((v - lim).norm() < 5e-3, "{v} vs {lim}");
        assert!((v.norm() - 1.0 / (2.0 * PI)).abs() < 5e-3);
    }

    #[test]
    fn limit_magnitude_instantiated() {
        // pair (2, 7): |1/(2πi·5)| = 1/(10π)
        assert!((quasi_overlap_limit(2.0, 7.0).norm() - 1.0 / (10.0 * PI)).abs() < 1e-15);
        let v = quasi_overlap(&H, 1e-6, 2.0, 7.0).unwrap();
        assert!((v.norm() - 1.0 / (10.0 * PI)).abs() < 5e-3);
    }

    #[test]
    fn overlap_antisymmetry() {
        let a = quasi_overlap(&H, 1e-4, 0.3, 2.7).unwrap();
        let b = quasi_overlap(&H, 1e-4, 2.7, 0.3).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let opts = QuadOpts { rel_tol: 1e-11, ..QuadOpts::default() };
        for &(eps, l1, l2) in &[(0.05, 0.0, 1.0), (0.01, -1.3, 2.2), (0.002, 0.5, 4.0)] {
            let cf = quasi_overlap(&H, eps, l1, l2).unwrap();
            let q = quasi_overlap_quadrature(eps, l1, l2, opts).unwrap();
            assert!(
                (cf - q).norm() <= 1e-8 * q.norm().max(1e-12),
                "eps {eps}: {cf} vs {q}"
            );
        }
        let cf = quasi_state_moments(&H, 0.01, 1.5).unwrap();
        let q = quasi_moments_quadrature(0.01, 1.5, opts).unwrap();
        assert!((cf.norm_sq - q.norm_sq).abs() <= 1e-8 * q.norm_sq);
        assert!((cf.mean - q.mean).abs() <= 1e-7 * (1.0 + q.mean.abs()));
        assert!((cf.second_moment - q.second_moment).abs() <= 1e-7 * (1.0 + q.second_moment.abs()));
    }

    #[test]
    fn gaussian_vanishes_and_grows() {
        let small = gaussian_overlap(1e-2, 0.0, 1.0).unwrap();
        assert!(small.norm() <= 1e-9, "{}", small.norm());
        // equal lambdas: the raw norm grows as eps -> 0
        let n1 = gaussian_overlap(1e-2, 0.7, 0.7).unwrap().norm();
        let n2 = gaussian_overlap(1e-4, 0.7, 0.7).unwrap().norm();
        assert!(n2 > n1);
        // monotone decay in 1/eps for fixed separation
        let d1 = gaussian_overlap(1e-1, 0.0, 1.0).unwrap().norm();
        let d2 = gaussian_overlap(1e-2, 0.0, 1.0).unwrap().norm();
        let d3 = gaussian_overlap(1e-3, 0.0, 1.0).unwrap().norm();
        assert!(d1 > d2 && d2 > d3);
    }

    #[test]
    fn gaussian_matches_quadrature() {
        let opts = QuadOpts { rel_tol: 1e-11, ..QuadOpts::default() };
        let cf = gaussian_overlap(0.05, 0.0, 1.0).unwrap();
        let q = gaussian_overlap_quadrature(0.05, 0.0, 1.0, opts).unwrap();
        assert!((cf - q).norm() <= 1e-8 * q.norm());
    }
}
