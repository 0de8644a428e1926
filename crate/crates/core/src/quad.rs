//! Adaptive Gauss–Kronrod (G7, K15) quadrature on finite intervals.
//!
//! Serves as the independent oracle the closed-form integrals in this
//! crate are validated against, so it deliberately shares no code with
//! them.

use crate::error::{Error, Result};
use crate::ComplexValue;
use std::collections::BinaryHeap;

// K15 nodes (magnitudes) and weights; G7 weights sit on every second node.
const XK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOpts {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_evals: 4_000_000,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: ComplexValue,
    error: f64,
    seq: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error; seq breaks ties deterministically
        self.error
            .total_cmp(&other.error)
            .then(other.seq.cmp(&self.seq))
    }
}

fn gk15(f: &mut dyn FnMut(f64) -> ComplexValue, a: f64, b: f64) -> (ComplexValue, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut ik = ComplexValue::new(0.0, 0.0);
    let mut ig = ComplexValue::new(0.0, 0.0);
    for (j, (&x, &wk)) in XK.iter().zip(WK.iter()).enumerate() {
        if x == 0.0 {
            let v = f(mid);
            ik += wk * v;
            ig += WG[3] * v;
        } else {
            let v1 = f(mid - half * x);
            let v2 = f(mid + half * x);
            ik += wk * (v1 + v2);
            if j % 2 == 1 {
                ig += WG[j / 2] * (v1 + v2);
            }
        }
    }
    ik *= half;
    ig *= half;
    (ik, (ik - ig).norm())
}

/// Adaptive integration of a complex-valued integrand over [a, b].
pub fn integrate_complex(
    mut f: impl FnMut(f64) -> ComplexValue,
    a: f64,
    b: f64,
    opts: QuadOpts,
) -> Result<ComplexValue> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("quadrature endpoint"));
    }
    if a == b {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let mut evals = 15usize;
    let mut seq = 0usize;
    let (v0, e0) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v0, error: e0, seq });
    let mut total = v0;
    let mut total_err = e0;

    loop {
        let target = (opts.rel_tol * total.norm()).max(opts.abs_tol);
        if total_err <= target {
            return Ok(total);
        }
        let worst = heap.pop().expect("nonempty heap");
        if worst.b - worst.a < f64::EPSILON * (worst.b.abs() + worst.a.abs() + 1.0) {
            // cannot split further; accept what we have
            heap.push(worst);
            return Ok(total);
        }
        if evals + 30 > opts.max_evals {
            return Err(Error::Quadrature(format!(
                "budget of {} evaluations exhausted with error {:.3e} (target {:.3e})",
                opts.max_evals, total_err, target
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (vl, el) = gk15(&mut f, worst.a, mid);
        let (vr, er) = gk15(&mut f, mid, worst.b);
        evals += 30;
        total += vl + vr - worst.value;
        total_err += el + er - worst.error;
        seq += 1;
        heap.push(Segment { a: worst.a, b: mid, value: vl, error: el, seq });
        seq += 1;
        heap.push(Segment { a: mid, b: worst.b, value: vr, error: er, seq });
    }
}

/// Adaptive integration of a real integrand over [a, b].
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, opts: QuadOpts) -> Result<f64> {
    integrate_complex(|x| ComplexValue::new(f(x), 0.0), a, b, opts).map(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x, 0.0, 1.0, QuadOpts::default()).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory() {
        let v = integrate(|x| (10.0 * x).sin(), 0.0, PI, QuadOpts::default()).unwrap();
        let exact = (1.0 - (10.0 * PI).cos()) / 10.0;
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn decaying_exponential_long_range() {
        let v = integrate(|x| (-x).exp(), 0.0, 60.0, QuadOpts::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_phase() {
        let v = integrate_complex(
            |x| (ComplexValue::new(0.0, 3.0) * x).exp(),
            0.0,
            1.0,
            QuadOpts::default(),
        )
        .unwrap();
        let exact = (ComplexValue::new(0.0, 3.0).exp() - ComplexValue::new(1.0, 0.0))
            / ComplexValue::new(0.0, 3.0);
        assert!((v - exact).norm() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_error() {
        let r = integrate(
            |x| (1.0 / (x + 1e-8)).sin(),
            0.0,
            1.0,
            QuadOpts { rel_tol: 1e-15, abs_tol: 1e-300, max_evals: 200 },
        );
        assert!(matches!(r, Err(Error::Quadrature(_))));
    }
}
