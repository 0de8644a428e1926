//! Shannon-type sampling on shifted lattices.
//!
//! A function band-limited to [0, L] — here F(λ) = ∫₀^L f(x)e^{iλx} dx for
//! a polynomial profile f — is fully determined by its samples on the
//! eigenvalue lattice {(2πk − θ)/L} of any one extension of the interval
//! momentum operator. Reconstruction uses the kernel
//! e^{iL(λ−λ_k)/2}·sinc(L(λ−λ_k)/2), the phase matching supports on
//! [0, L] rather than [−L/2, L/2]; the convention is validated against
//! the quadrature oracle in tests.

use crate::error::{ensure_finite, Error, Result};
use crate::ComplexValue;

use std::f64::consts::TAU;

/// Band-limited test function: polynomial profile on [0, L], transform
/// available in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedTestFunction {
    /// Polynomial coefficients of f, lowest degree first.
    coefficients: Vec<f64>,
    length: f64,
}

impl BandlimitedTestFunction {
    pub fn new(coefficients: Vec<f64>, length: f64) -> Result<Self> {
        ensure_finite(length, "band limit length")?;
        if length <= 0.0 {
            return Err(Error::InvalidInput("length must be positive".into()));
        }
        if coefficients.is_empty() || coefficients.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidInput("profile must have a nonzero coefficient".into()));
        }
        for &c in &coefficients {
            ensure_finite(c, "profile coefficient")?;
        }
        Ok(Self { coefficients, length })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Position-side profile value f(x).
    pub fn profile(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// F(λ) = ∫₀^L f(x)e^{iλx} dx in closed form via the power-moment
/// recurrence I_j = (L^j e^{iλL} − j·I_{j−1})/(iλ), with a series branch
/// near λ = 0 where the recurrence cancels catastrophically.
pub fn transform_value(g: &BandlimitedTestFunction, lambda: f64) -> Result<ComplexValue> {
    ensure_finite(lambda, "transform frequency")?;
    let l = g.length;
    let degree = g.coefficients.len() - 1;
    let moments = power_moments(l, lambda, degree);
    let mut total = ComplexValue::new(0.0, 0.0);
    for (j, &c) in g.coefficients.iter().enumerate() {
        total += c * moments[j];
    }
    Ok(total)
}

/// I_j(λ) = ∫₀^L x^j e^{iλx} dx for j = 0..=degree.
fn power_moments(l: f64, lambda: f64, degree: usize) -> Vec<ComplexValue> {
    let mut out = Vec::with_capacity(degree + 1);
    if (lambda * l).abs() < 0.5 {
        // Taylor branch: I_j = Σ_m (iλ)^m L^{j+m+1} / (m! (j+m+1))
        for j in 0..=degree {
            let mut sum = ComplexValue::new(0.0, 0.0);
            let mut term = ComplexValue::new(1.0, 0.0); // (iλ)^m/m!
            let mut lpow = l.powi(j as i32 + 1);
            for m in 0..40 {
                sum += term * lpow / (j as f64 + m as f64 + 1.0);
                term *= ComplexValue::new(0.0, lambda) / (m as f64 + 1.0);
                lpow *= l;
            }
            out.push(sum);
        }
        return out;
    }
    let il = ComplexValue::new(0.0, lambda);
    let eil = (il * l).exp();
    let mut prev = (eil - ComplexValue::new(1.0, 0.0)) / il;
    out.push(prev);
    let mut lpow = 1.0;
    for j in 1..=degree {
        lpow *= l;
        prev = (lpow * eil - j as f64 * prev) / il;
        out.push(prev);
    }
    out
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        // sin(u)/u = 1 − u²/6 to beyond double precision here
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Shannon-type series over the lattice λ_k = (2πk − θ)/L:
/// Σ_k F(λ_k)·e^{iL(λ−λ_k)/2}·sinc(L(λ−λ_k)/2).
pub fn reconstruct(
    g: &BandlimitedTestFunction,
    theta: f64,
    k_window: (i64, i64),
    lambda: f64,
) -> Result<ComplexValue> {
    ensure_finite(theta, "theta")?;
    ensure_finite(lambda, "lambda")?;
    let (k_lo, k_hi) = k_window;
    if k_lo > k_hi {
        return Err(Error::InvalidInput(format!("empty k window [{k_lo}, {k_hi}]")));
    }
    let theta = theta.rem_euclid(TAU);
    let l = g.length;
    let mut acc = ComplexValue::new(0.0, 0.0);
    for k in k_lo..=k_hi {
        let lambda_k = (TAU * k as f64 - theta) / l;
        let u = 0.5 * l * (lambda - lambda_k);
        let kernel = ComplexValue::new(0.0, u).exp() * sinc(u);
        acc += transform_value(g, lambda_k)? * kernel;
    }
    Ok(acc)
}

/// Sup and RMS reconstruction error against the closed-form transform
/// over a λ grid.
pub fn reconstruction_error(
    g: &BandlimitedTestFunction,
    theta: f64,
    k_window: (i64, i64),
    lambda_grid: &[f64],
) -> Result<(f64, f64)> {
    if lambda_grid.is_empty() {
        return Err(Error::InvalidInput("empty lambda grid".into()));
    }
    let mut sup = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    for &lambda in lambda_grid {
        let err = (reconstruct(g, theta, k_window, lambda)? - transform_value(g, lambda)?).norm();
        sup = sup.max(err);
        sum_sq += err * err;
    }
    Ok((sup, (sum_sq / lambda_grid.len() as f64).sqrt()))
}
