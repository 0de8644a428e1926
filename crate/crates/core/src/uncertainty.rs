//! The uncertainty curve of one extension, its envelope over the family,
//! and the global floor.
//!
//! For a purely discrete extension spectrum σ(S′), the minimum
//! uncertainty at expectation t is min over eigenvalue pairs of
//! √(|λ − t||μ − t|): semicircle arcs between adjacent eigenvalues. The
//! curve reduces exactly to the two smallest distances from t (a
//! multiplicity-two eigenvalue may supply both). Maximizing over the
//! extension family lower-bounds the symmetric operator's minimum
//! uncertainty, with equality of the t-infimum when the deficiency index
//! is one.

use crate::error::{ensure_finite, Error, Result};
use crate::extensions::{spectrum_of, ExtensionFamily, Spectrum};
use crate::interval::Interval;

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

/// Snap-to-zero distance: below this, t counts as an eigenvalue.
const EIGEN_SNAP: f64 = 1e-12;

/// min over λ, μ ∈ σ (with multiplicity) of √(|λ − t||μ − t|).
///
/// Requires the query to sit at least three mean gaps inside the
/// spectrum's window so the two global nearest distances are certainly
/// captured by the listed eigenvalues.
pub fn curve_at(s: &Spectrum, t: f64) -> Result<f64> {
    ensure_finite(t, "curve query t")?;
    let window = s.window();
    if !window.contains(t) {
        return Err(Error::InsufficientWindow(format!(
            "t = {t} outside window [{}, {}]",
            window.lo, window.hi
        )));
    }
    let slots = s.total_count();
    if slots < 2 {
        return Err(Error::InsufficientWindow(
            "need at least two eigenvalue slots in the window".into(),
        ));
    }
    let eigs = s.eigenvalues();
    let span = eigs.last().unwrap() - eigs.first().unwrap();
    let mean_gap = span / (slots as f64 - 1.0);
    if t - window.lo < 3.0 * mean_gap || window.hi - t < 3.0 * mean_gap {
        return Err(Error::InsufficientWindow(format!(
            "t = {t} must sit at least three mean gaps ({:.3e}) inside \
             the window [{}, {}]",
            3.0 * mean_gap,
            window.lo,
            window.hi
        )));
    }

    let (mut d1, mut d2) = (f64::INFINITY, f64::INFINITY);
    for (v, m) in eigs.iter().zip(s.multiplicities()) {
        let d = (v - t).abs();
        if d < d1 {
            d2 = if *m >= 2 { d } else { d1 };
            d1 = d;
        } else if d < d2 {
            d2 = d;
        }
    }
    if d1 <= EIGEN_SNAP {
        return Ok(0.0);
    }
    Ok((d1 * d2).sqrt())
}

/// Coefficient magnitudes of the extremal two-eigenvector combination:
/// |c₁| = √(|μ − t|/|λ − μ|), |c₂| = √(|λ − t|/|λ − μ|).
pub fn pair_coefficients(lambda: f64, mu: f64, t: f64) -> Result<(f64, f64)> {
    ensure_finite(lambda, "lambda")?;
    ensure_finite(mu, "mu")?;
    ensure_finite(t, "t")?;
    if lambda == mu {
        return Err(Error::DegeneratePair);
    }
    let (lo, hi) = (lambda.min(mu), lambda.max(mu));
    if t < lo || t > hi {
        return Err(Error::Infeasible(format!(
            "t = {t} outside [{lo}, {hi}]: no unit combination has that mean"
        )));
    }
    let gap = (lambda - mu).abs();
    Ok((((mu - t).abs() / gap).sqrt(), ((lambda - t).abs() / gap).sqrt()))
}

/// max over θ ∈ [0, 2π) of curve_at(σ(θ), t): coarse grid plus
/// golden-section refinement around the best cell.
///
/// Each grid point regenerates the spectrum, so θ-independent families
/// (the Laguerre truncation) are better served by [`curve_at`] on a
/// single [`spectrum_of`] result.
pub fn envelope_at(
    f: &ExtensionFamily,
    t: f64,
    theta_grid: usize,
    window: Interval,
) -> Result<f64> {
    if theta_grid == 0 {
        return Err(Error::InvalidInput("theta grid must be nonempty".into()));
    }
    let eval = |theta: f64| -> Result<f64> {
        let s = spectrum_of(f, theta, window)?;
        curve_at(&s, t)
    };
    let h = TAU / theta_grid as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_theta = 0.0;
    for i in 0..theta_grid {
        let theta = h * i as f64;
        let v = eval(theta)?;
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    // golden-section maximization in the winning cell's neighbourhood
    let gr = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut a, mut b) = (best_theta - h, best_theta + h);
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    for _ in 0..30 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d)?;
        }
    }
    Ok(best.max(fc).max(fd))
}

/// Result of the t-infimum of the envelope, reported with its grid
/// resolution rather than as a pretended exact infimum.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalFloor {
    pub value: f64,
    pub t_at_min: f64,
    pub t_window: Interval,
    pub t_count: usize,
    pub theta_grid: usize,
}

/// inf over the t grid of [`envelope_at`]. Valid as the exact minimum
/// uncertainty only for deficiency index one; other indices are
/// rejected (only the ΔS/√2 relation survives there).
pub fn global_floor(
    f: &ExtensionFamily,
    t_window: Interval,
    t_count: usize,
    theta_grid: usize,
) -> Result<GlobalFloor> {
    if f.deficiency_index() != 1 {
        return Err(Error::UnsupportedModel(
            "global floor equality requires deficiency index one",
        ));
    }
    if t_count < 2 {
        return Err(Error::InvalidInput("t grid needs at least two points".into()));
    }
    let spacing = f
        .nominal_spacing()
        .ok_or(Error::UnsupportedModel("family has no spacing estimate"))?;
    let pad = 6.0 * spacing;
    let mut best = f64::INFINITY;
    let mut best_t = t_window.lo;
    for i in 0..t_count {
        let t = t_window.lo + t_window.length() * i as f64 / (t_count as f64 - 1.0);
        let window = Interval::new(t - pad, t + pad)?;
        let v = envelope_at(f, t, theta_grid, window)?;
        if v < best {
            best = v;
            best_t = t;
        }
    }
    Ok(GlobalFloor {
        value: best,
        t_at_min: best_t,
        t_window,
        t_count,
        theta_grid,
    })
}

/// The family-envelope floor implied by a given overall bound ΔS:
/// ΔS/√2 in general, ΔS itself when the deficiency index is one.
pub fn corollary_thresholds(delta_s: f64, n: usize) -> Result<(f64, f64)> {
    ensure_finite(delta_s, "delta_s")?;
    if delta_s < 0.0 {
        return Err(Error::InvalidInput(format!(
            "uncertainty bound must be nonnegative, got {delta_s}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("deficiency index must be positive".into()));
    }
    Ok((delta_s * FRAC_1_SQRT_2, delta_s))
}

/// Sampled uncertainty curve of one spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyCurve {
    pub samples: Vec<(f64, f64)>,
    pub source: String,
    pub window: Interval,
}

impl UncertaintyCurve {
    fn validate(samples: &[(f64, f64)], spectrum: &Spectrum) -> Result<()> {
        for w in samples.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidInput("curve samples must be strictly increasing in t".into()));
            }
        }
        for &(t, v) in samples {
            if v < 0.0 {
                return Err(Error::InvalidInput(format!("negative curve value at t = {t}")));
            }
            if v == 0.0 {
                let near = spectrum
                    .eigenvalues()
                    .iter()
                    .any(|e| (e - t).abs() <= EIGEN_SNAP);
                if !near {
                    return Err(Error::InvalidInput(format!(
                        "curve vanishes at t = {t} away from every eigenvalue"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Evaluates the curve on a uniform t grid.
pub fn curve_samples(
    s: &Spectrum,
    source: impl Into<String>,
    t_window: Interval,
    count: usize,
) -> Result<UncertaintyCurve> {
    if count < 2 {
        return Err(Error::InvalidInput("need at least two curve samples".into()));
    }
    let mut samples = Vec::with_capacity(count);
    for i in 0..count {
        let t = t_window.lo + t_window.length() * i as f64 / (count as f64 - 1.0);
        samples.push((t, curve_at(s, t)?));
    }
    UncertaintyCurve::validate(&samples, s)?;
    Ok(UncertaintyCurve {
        samples,
        source: source.into(),
        window: t_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::momentum::MomentumIntervalModel;
    use std::f64::consts::PI;

    fn spec(eigs: Vec<f64>, lo: f64, hi: f64) -> Spectrum {
        Spectrum::simple(eigs, Interval::new(lo, hi).unwrap()).unwrap()
    }

    #[test]
    fn semicircle_midpoint() {
        let s = spec(vec![0.0, TAU], -40.0, 46.0);
        assert!((curve_at(&s, PI).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn nearest_two_distances() {
        let s = spec(vec![0.0, 1.0, 10.0], -40.0, 50.0);
        assert!((curve_at(&s, 0.5).unwrap() - 0.5).abs() < 1e-12);
        assert!((curve_at(&s, 3.0).unwrap() - 6.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_gives_zero() {
        let s = spec(vec![0.0, 1.0, 10.0], -40.0, 50.0);
        assert_eq!(curve_at(&s, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn multiplicity_two_supplies_both_distances() {
        let s = Spectrum::new(
            vec![0.0, 5.0],
            vec![2, 1],
            Interval::new(-20.0, 20.0).unwrap(),
        )
        .unwrap();
        // both nearest distances come from the double eigenvalue at 0
        assert!((curve_at(&s, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn padding_enforced() {
        let s = spec(vec![0.0, 1.0, 10.0], 0.0, 10.0);
        assert!(matches!(
            curve_at(&s, 0.5),
            Err(Error::InsufficientWindow(_))
        ));
    }

    #[test]
    fn pair_coefficient_examples() {
        let (c1, c2) = pair_coefficients(0.0, 2.0, 1.0).unwrap();
        assert!((c1 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((c2 - FRAC_1_SQRT_2).abs() < 1e-15);

        let (c1, c2) = pair_coefficients(0.0, 2.0, 0.0).unwrap();
        assert_eq!((c1, c2), (1.0, 0.0));

        let (c1, c2) = pair_coefficients(1.0, 4.0, 2.0).unwrap();
        assert!((c1 - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((c2 - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        // normalization and mean identities
        assert!((c1 * c1 + c2 * c2 - 1.0).abs() < 1e-14);
        assert!((1.0 * c1 * c1 + 4.0 * c2 * c2 - 2.0).abs() < 1e-14);
        // reconstructed two-level uncertainty
        let second = 1.0 * c1 * c1 + 16.0 * c2 * c2;
        assert!(((second - 4.0).sqrt() - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn pair_coefficient_errors() {
        assert!(matches!(
            pair_coefficients(1.0, 1.0, 1.0),
            Err(Error::DegeneratePair)
        ));
        assert!(matches!(
            pair_coefficients(0.0, 1.0, 2.0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn envelope_is_half_spacing_everywhere() {
        let f = ExtensionFamily::Momentum(MomentumIntervalModel::new(1.0).unwrap());
        for t in [0.0, 0.3, PI, 5.0] {
            let window = Interval::new(t - 40.0, t + 40.0).unwrap();
            let v = envelope_at(&f, t, 64, window).unwrap();
            assert!((v - PI).abs() < 1e-6, "t = {t}: {v}");
        }
        let f2 = ExtensionFamily::Momentum(MomentumIntervalModel::new(2.0).unwrap());
        let window = Interval::new(-20.0, 20.0).unwrap();
        let v = envelope_at(&f2, 0.7, 64, window).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn envelope_shift_consistency() {
        let f = ExtensionFamily::Momentum(MomentumIntervalModel::new(1.0).unwrap());
        let t = 1.234;
        let w1 = Interval::new(t - 40.0, t + 40.0).unwrap();
        let t2 = t + TAU;
        let w2 = Interval::new(t2 - 40.0, t2 + 40.0).unwrap();
        let a = envelope_at(&f, t, 48, w1).unwrap();
        let b = envelope_at(&f, t2, 48, w2).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn floor_scaling() {
        for l in [0.5, 1.0, 2.0] {
            let f = ExtensionFamily::Momentum(MomentumIntervalModel::new(l).unwrap());
            let gf = global_floor(
                &f,
                Interval::new(0.0, TAU / l).unwrap(),
                9,
                32,
            )
            .unwrap();
            assert!((gf.value * l - PI).abs() < 1e-6, "L = {l}: {}", gf.value);
        }
    }

    #[test]
    fn floor_requires_index_one() {
        let f = ExtensionFamily::Laguerre(
            crate::models::laguerre::LaguerreSecondOrderModel::new(8).unwrap(),
        );
        assert!(matches!(
            global_floor(&f, Interval::new(0.0, 1.0).unwrap(), 3, 4),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn corollary_threshold_values() {
        let (gen, n1) = corollary_thresholds(PI, 2).unwrap();
        assert!((gen - PI * FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((n1 - PI).abs() < 1e-15);
        assert_eq!(corollary_thresholds(0.0, 1).unwrap(), (0.0, 0.0));
        assert!(corollary_thresholds(-1.0, 1).is_err());
    }

    #[test]
    fn curve_samples_validate() {
        let s = spec(vec![0.0, TAU], -40.0, 46.0);
        let c = curve_samples(&s, "test", Interval::new(1.0, 5.0).unwrap(), 11).unwrap();
        assert_eq!(c.samples.len(), 11);
        assert!(c.samples.iter().all(|&(_, v)| v > 0.0));
    }
}
