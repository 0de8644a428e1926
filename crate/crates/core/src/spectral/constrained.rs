//! Constrained quadratic minimization used as the brute-force uncertainty
//! oracle.
//!
//! A [`ConstrainedPair`] holds the restricted first/second-moment forms
//! (B, A) of an operator compressed onto a finite subspace of its domain.
//! [`constrained_min_bracket`] brackets
//! `Δ_t = min { √(ψᵀAψ − t²) : ‖ψ‖ = 1, ψᵀBψ = t }` (ψ real) between a
//! Lagrangian dual lower bound and a feasible-witness upper bound.
//!
//! Pairs built by restricting a diagonal family to the complement of one
//! unit vector carry a [`DiagonalRestriction`]; for those, λ_min of
//! `A − αB` is computed exactly from the rank-one secular function in
//! O(n) instead of a dense eigensolve. Both routes are cross-checked in
//! tests.

use crate::error::{ensure_finite, Error, Result};
use crate::interval::Interval;
use crate::spectral::tridiag::SymMatrix;

/// Default number of dual-scan grid points.
pub const DEFAULT_DUAL_GRID: usize = 512;
/// Three-point refinement steps after the coarse dual scan.
const DUAL_REFINE_STEPS: usize = 40;
/// Projected-descent iteration cap for the feasible witness.
const DESCENT_STEPS: usize = 200;

/// Restriction of `(diag(d), diag(d)²)` to the hyperplane orthogonal to
/// `unit` (the removed direction), in ambient coordinates.
#[derive(Debug, Clone)]
pub struct DiagonalRestriction {
    pub d: Vec<f64>,
    pub unit: Vec<f64>,
}

/// Restricted first moment B = QᵀS′Q and second moment A = QᵀS′²Q of a
/// truncated operator. Both forms are real symmetric; minimization runs
/// over real unit vectors.
#[derive(Debug, Clone)]
pub struct ConstrainedPair {
    b: SymMatrix,
    a: SymMatrix,
    dim: usize,
    structure: Option<DiagonalRestriction>,
}

impl ConstrainedPair {
    /// General constructor from dense restricted matrices. Enforces the
    /// restriction identity A − B² = QᵀS′(I − QQᵀ)S′Q ⪰ 0 up to roundoff;
    /// pairs violating it are not compressions of any operator.
    pub fn new(b: SymMatrix, a: SymMatrix) -> Result<Self> {
        if b.n() != a.n() {
            return Err(Error::InvalidInput(format!(
                "A is {}x{} but B is {}x{}",
                a.n(),
                a.n(),
                b.n(),
                b.n()
            )));
        }
        if b.n() < 2 {
            return Err(Error::InvalidInput(
                "constrained pair must have dimension at least 2".into(),
            ));
        }
        for i in 0..b.n() {
            for j in 0..b.n() {
                ensure_finite(b.get(i, j), "B entry")?;
                ensure_finite(a.get(i, j), "A entry")?;
            }
        }
        let dim = b.n();
        let pair = Self { b, a, dim, structure: None };
        let defect = pair.psd_defect()?;
        if defect < -1e-10 * pair.a.inf_norm().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "A - B*B has eigenvalue {defect}: the pair is not a restriction \
                 of any operator's first and second moments"
            )));
        }
        Ok(pair)
    }

    /// Builds the pair by compressing `diag(d)` and `diag(d)²` onto the
    /// complement of the unit vector `unit`. Restricted dimension is
    /// `d.len() − 1`.
    pub fn from_diagonal_restriction(d: Vec<f64>, unit: Vec<f64>) -> Result<Self> {
        let n = d.len();
        if unit.len() != n {
            return Err(Error::InvalidInput("unit vector length mismatch".into()));
        }
        if n < 3 {
            return Err(Error::InvalidInput(
                "ambient dimension must be at least 3 (restricted dim >= 2)".into(),
            ));
        }
        for &x in d.iter().chain(unit.iter()) {
            ensure_finite(x, "diagonal restriction entry")?;
        }
        let norm: f64 = unit.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "constraint vector must be unit norm, got {norm}"
            )));
        }

        let q = complement_basis(&unit);
        let m = n - 1;
        let mut b = SymMatrix::zeros(m);
        let mut a = SymMatrix::zeros(m);
        for i in 0..m {
            for j in 0..=i {
                let mut sb = 0.0;
                let mut sa = 0.0;
                for k in 0..n {
                    let qk = q[k * m + i] * q[k * m + j];
                    sb += qk * d[k];
                    sa += qk * d[k] * d[k];
                }
                b.set_sym(i, j, sb);
                a.set_sym(i, j, sa);
            }
        }
        Ok(Self {
            b,
            a,
            dim: m,
            structure: Some(DiagonalRestriction { d, unit }),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn b(&self) -> &SymMatrix {
        &self.b
    }

    pub fn a(&self) -> &SymMatrix {
        &self.a
    }

    pub fn structure(&self) -> Option<&DiagonalRestriction> {
        self.structure.as_ref()
    }

    /// Smallest eigenvalue of A − B·B. Exact identity
    /// A − B² = QᵀS′(I − QQᵀ)S′Q makes this nonnegative up to roundoff.
    pub fn psd_defect(&self) -> Result<f64> {
        let n = self.dim;
        let mut bb = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.b.get(i, k) * self.b.get(k, j);
                }
                bb.set_sym(i, j, s);
            }
        }
        let diff = self.a.sub_scaled(&bb, 1.0);
        diff.lambda_min()
    }
}

/// Orthonormal basis (n×(n−1), row-major) of the complement of the unit
/// vector `u`, taken from the non-pivot columns of a Householder
/// reflector sending e₀ to ∓u.
fn complement_basis(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let s = if u[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = u.to_vec();
    v[0] += s;
    let vtv: f64 = v.iter().map(|x| x * x).sum();
    let m = n - 1;
    let mut q = vec![0.0; n * m];
    for j in 0..m {
        let col = j + 1;
        for i in 0..n {
            let h = if i == col { 1.0 } else { 0.0 };
            q[i * m + j] = h - 2.0 * v[i] * v[col] / vtv;
        }
    }
    q
}

/// Smallest eigenvalue of diag(ms) restricted to the complement of a
/// vector with squared components `weights` (all nonnegative, summing
/// to 1). Smallest root of the secular function
/// g(μ) = Σ wₖ/(mₖ − μ) in the first spectral gap.
pub fn restricted_diag_lambda_min(ms: &[f64], weights: &[f64]) -> f64 {
    debug_assert_eq!(ms.len(), weights.len());
    let scale = ms.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs())).max(1.0);

    let mut order: Vec<usize> = (0..ms.len()).collect();
    order.sort_by(|&i, &j| ms[i].total_cmp(&ms[j]));
    let m1 = ms[order[0]];
    // weightless minima are eigenvalues of the restriction outright
    if weights[order[0]] <= 1e-300 {
        return m1;
    }
    // a tied minimum hosts an eigenvector inside the tie, orthogonal to u
    let m2 = match order.get(1) {
        Some(&i) if ms[i] - m1 > 1e-13 * scale => ms[i],
        _ => return m1,
    };

    let gap = m2 - m1;
    let g = |mu: f64| -> f64 {
        ms.iter()
            .zip(weights)
            .map(|(&m, &w)| w / (m - mu))
            .sum::<f64>()
    };
    // g is increasing from −∞ to +∞ on (m1, m2)
    let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if g(m1 + mid * gap) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    m1 + 0.5 * (lo + hi) * gap
}

/// Eigenvector of the restriction for a secular eigenvalue strictly
/// inside a gap: vₖ ∝ uₖ/(mₖ − μ), normalized.
fn secular_vector(ms: &[f64], u: &[f64], mu: f64) -> Vec<f64> {
    let mut v: Vec<f64> = ms.iter().zip(u).map(|(&m, &uk)| uk / (m - mu)).collect();
    let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

/// All restricted eigenvalues of diag(d) on the complement of `u` that lie
/// in gaps overlapping [t − span, t + span], paired with eigenvectors.
fn restricted_b_eigs_near(d: &[f64], u: &[f64], t: f64, span: f64) -> Vec<(f64, Vec<f64>)> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let weights: Vec<f64> = u.iter().map(|x| x * x).collect();
    let mut out = Vec::new();
    for w in order.windows(2) {
        let (a, b) = (d[w[0]], d[w[1]]);
        if b - a <= 0.0 {
            continue;
        }
        if b < t - span || a > t + span {
            continue;
        }
        // one secular root per gap: bisection on the increasing g
        let g = |mu: f64| -> f64 {
            d.iter().zip(&weights).map(|(&m, &wt)| wt / (m - mu)).sum::<f64>()
        };
        let gap = b - a;
        let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
        for _ in 0..90 {
            let mid = 0.5 * (lo + hi);
            if g(a + mid * gap) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mu = a + 0.5 * (lo + hi) * gap;
        out.push((mu, secular_vector(d, u, mu)));
    }
    out
}

/// Bracket for the truncated minimum uncertainty at expectation `t`.
#[derive(Debug, Clone)]
pub struct Bracket {
    /// Dual lower bound.
    pub lo: f64,
    /// Feasible-witness upper bound.
    pub hi: f64,
    /// Multiplier at which the dual scan peaked.
    pub alpha_star: f64,
    /// Witness coordinates (ambient for structured pairs, restricted
    /// otherwise).
    pub witness: Vec<f64>,
}

struct Workspace<'p> {
    pair: &'p ConstrainedPair,
}

impl<'p> Workspace<'p> {
    fn lambda_min(&self, alpha: f64) -> Result<f64> {
        if let Some(s) = &self.pair.structure {
            let ms: Vec<f64> = s.d.iter().map(|&d| d * d - alpha * d).collect();
            let weights: Vec<f64> = s.unit.iter().map(|x| x * x).collect();
            Ok(restricted_diag_lambda_min(&ms, &weights))
        } else {
            self.pair.a.sub_scaled(&self.pair.b, alpha).lambda_min()
        }
    }

    fn b_range(&self) -> Result<(f64, f64)> {
        if let Some(s) = &self.pair.structure {
            let weights: Vec<f64> = s.unit.iter().map(|x| x * x).collect();
            let lo = restricted_diag_lambda_min(&s.d, &weights);
            let neg: Vec<f64> = s.d.iter().map(|&x| -x).collect();
            let hi = -restricted_diag_lambda_min(&neg, &weights);
            Ok((lo, hi))
        } else {
            let vals = self.pair.b.eigvals()?;
            Ok((vals[0], *vals.last().unwrap()))
        }
    }

    fn ambient_dim(&self) -> usize {
        match &self.pair.structure {
            Some(s) => s.d.len(),
            None => self.pair.dim,
        }
    }

    fn b_quad(&self, c: &[f64]) -> f64 {
        match &self.pair.structure {
            Some(s) => s.d.iter().zip(c).map(|(&d, &x)| d * x * x).sum(),
            None => self.pair.b.quadratic_form(c),
        }
    }

    fn a_quad(&self, c: &[f64]) -> f64 {
        match &self.pair.structure {
            Some(s) => s.d.iter().zip(c).map(|(&d, &x)| d * d * x * x).sum(),
            None => self.pair.a.quadratic_form(c),
        }
    }

    fn b_matvec(&self, c: &[f64]) -> Vec<f64> {
        match &self.pair.structure {
            Some(s) => s.d.iter().zip(c).map(|(&d, &x)| d * x).collect(),
            None => self.pair.b.matvec(c),
        }
    }

    fn a_matvec(&self, c: &[f64]) -> Vec<f64> {
        match &self.pair.structure {
            Some(s) => s.d.iter().zip(c).map(|(&d, &x)| d * d * x).collect(),
            None => self.pair.a.matvec(c),
        }
    }

    /// Removes the linear-constraint component (no-op for dense pairs,
    /// whose coordinates already live in the restricted space).
    fn project_linear(&self, c: &mut [f64]) {
        if let Some(s) = &self.pair.structure {
            let dot: f64 = s.unit.iter().zip(c.iter()).map(|(a, b)| a * b).sum();
            for (x, &u) in c.iter_mut().zip(&s.unit) {
                *x -= dot * u;
            }
        }
    }

    fn b_eigs_near(&self, t: f64) -> Result<Vec<(f64, Vec<f64>)>> {
        if let Some(s) = &self.pair.structure {
            let mut span = 0.0_f64;
            let mut sorted = s.d.clone();
            sorted.sort_by(f64::total_cmp);
            for w in sorted.windows(2) {
                span = span.max(w[1] - w[0]);
            }
            Ok(restricted_b_eigs_near(&s.d, &s.unit, t, 2.5 * span.max(1e-12)))
        } else {
            let eig = self.pair.b.eigen()?;
            Ok(eig)
        }
    }

    /// Bottom two eigenvectors of A − αB on the constraint subspace. At
    /// the refined dual multiplier their span carries the extremizer, so
    /// restoring feasibility inside it inherits the dual's tightness.
    fn bottom_two_vectors(&self, alpha: f64) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
        if let Some(s) = &self.pair.structure {
            let ms: Vec<f64> = s.d.iter().map(|&d| d * d - alpha * d).collect();
            let weights: Vec<f64> = s.unit.iter().map(|x| x * x).collect();
            let mut order: Vec<usize> = (0..ms.len()).collect();
            order.sort_by(|&i, &j| ms[i].total_cmp(&ms[j]));
            let scale = ms.iter().fold(1.0_f64, |a, &x| a.max(x.abs()));
            // near-tied bottom values: coordinate differences inside the
            // tie are exact eigenvectors orthogonal to u
            let (i0, i1) = (order[0], order[1]);
            if ms[i1] - ms[i0] <= 1e-12 * scale {
                let n = ms.len();
                let mut v1 = vec![0.0; n];
                let u0 = s.unit[i0];
                let u1 = s.unit[i1];
                let nrm = (u0 * u0 + u1 * u1).sqrt();
                if nrm < 1e-300 {
                    return Ok(None);
                }
                v1[i0] = u1 / nrm;
                v1[i1] = -u0 / nrm;
                // second vector: secular root of the deflated first gap
                let m2 = order
                    .iter()
                    .map(|&i| ms[i])
                    .find(|&m| m - ms[i0] > 1e-12 * scale);
                let v2 = match m2 {
                    Some(m2) => {
                        let g = |mu: f64| -> f64 {
                            ms.iter().zip(&weights).map(|(&m, &w)| w / (m - mu)).sum()
                        };
                        let gap = m2 - ms[i0];
                        let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
                        for _ in 0..90 {
                            let mid = 0.5 * (lo + hi);
                            if g(ms[i0] + mid * gap) < 0.0 {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        secular_vector(&ms, &s.unit, ms[i0] + 0.5 * (lo + hi) * gap)
                    }
                    None => return Ok(None),
                };
                return Ok(Some((v1, v2)));
            }
            // generic case: secular roots of the first two gaps
            let mut distinct = vec![ms[i0]];
            for &i in order.iter().skip(1) {
                if ms[i] - *distinct.last().unwrap() > 1e-12 * scale {
                    distinct.push(ms[i]);
                }
                if distinct.len() == 3 {
                    break;
                }
            }
            if distinct.len() < 3 {
                return Ok(None);
            }
            let g = |mu: f64| -> f64 {
                ms.iter().zip(&weights).map(|(&m, &w)| w / (m - mu)).sum()
            };
            let mut roots = Vec::with_capacity(2);
            for gap_pair in distinct.windows(2) {
                let (a, b) = (gap_pair[0], gap_pair[1]);
                let gap = b - a;
                let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
                for _ in 0..90 {
                    let mid = 0.5 * (lo + hi);
                    if g(a + mid * gap) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(a + 0.5 * (lo + hi) * gap);
            }
            let v1 = secular_vector(&ms, &s.unit, roots[0]);
            let v2 = secular_vector(&ms, &s.unit, roots[1]);
            Ok(Some((v1, v2)))
        } else {
            let shifted = self.pair.a.sub_scaled(&self.pair.b, alpha);
            let eig = shifted.eigen()?;
            if eig.len() < 2 {
                return Ok(None);
            }
            Ok(Some((eig[0].1.clone(), eig[1].1.clone())))
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(c: &mut [f64]) -> f64 {
    let n = dot(c, c).sqrt();
    if n > 0.0 {
        for x in c.iter_mut() {
            *x /= n;
        }
    }
    n
}

/// Pulls a near-feasible point back onto {⟨u,c⟩=0, ‖c‖=1, cᵀBc=t}.
fn retract(ws: &Workspace, c: &mut [f64], t: f64, scale: f64) -> bool {
    for _ in 0..12 {
        ws.project_linear(c);
        if normalize(c) == 0.0 {
            return false;
        }
        let mean = ws.b_quad(c);
        if (mean - t).abs() <= 1e-12 * scale {
            return true;
        }
        let mut z = ws.b_matvec(c);
        ws.project_linear(&mut z);
        let zc = dot(&z, c);
        for (zi, &ci) in z.iter_mut().zip(c.iter()) {
            *zi -= zc * ci;
        }
        let zz = dot(&z, &z);
        if zz < 1e-28 * scale * scale {
            return false;
        }
        let tau = (t - mean) / (2.0 * zz);
        for (ci, &zi) in c.iter_mut().zip(&z) {
            *ci += tau * zi;
        }
    }
    ws.project_linear(c);
    normalize(c);
    (ws.b_quad(c) - t).abs() <= 1e-10 * scale
}

/// Exact minimization of cᵀAc over the unit circle of span{p, q} subject
/// to cᵀBc = t; p, q must be orthonormal and satisfy the linear
/// constraint. Returns the best feasible point, if the circle meets the
/// mean-t level set.
fn best_in_plane(ws: &Workspace, p: &[f64], q: &[f64], t: f64) -> Option<(f64, Vec<f64>)> {
    let bp = ws.b_matvec(p);
    let bq = ws.b_matvec(q);
    let bpp = dot(&bp, p);
    let bqq = dot(&bq, q);
    let bpq = dot(&bp, q);
    let center = 0.5 * (bpp + bqq);
    let rho = 0.5 * (bpp - bqq);
    let radius = (rho * rho + bpq * bpq).sqrt();
    if radius < 1e-300 {
        // mean is constant on this circle; minimize the A-form directly
        if (center - t).abs() > 1e-12 * (1.0 + t.abs()) {
            return None;
        }
        let ap = ws.a_matvec(p);
        let app = dot(&ap, p);
        let aqq = ws.a_quad(q);
        let apq = dot(&ap, q);
        let phi = 0.5 * (2.0 * apq).atan2(app - aqq) + std::f64::consts::FRAC_PI_2;
        let c: Vec<f64> = p
            .iter()
            .zip(q)
            .map(|(&pi, &qi)| phi.cos() * pi + phi.sin() * qi)
            .collect();
        return Some((ws.a_quad(&c), c));
    }
    // cᵀBc = center + radius·cos(2φ − ψ)
    let psi = bpq.atan2(rho);
    let cosarg = (t - center) / radius;
    if cosarg.abs() > 1.0 + 1e-10 {
        return None;
    }
    let theta = cosarg.clamp(-1.0, 1.0).acos();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for phi2 in [psi + theta, psi - theta] {
        let ang = 0.5 * phi2;
        let c: Vec<f64> = p
            .iter()
            .zip(q)
            .map(|(&pi, &qi)| ang.cos() * pi + ang.sin() * qi)
            .collect();
        let v = ws.a_quad(&c);
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, c));
        }
    }
    best
}

/// Projected-gradient descent of cᵀAc on the feasibility manifold, with
/// step halving.
fn descend(ws: &Workspace, start: Vec<f64>, t: f64, scale: f64) -> (f64, Vec<f64>) {
    let mut c = start;
    let mut value = ws.a_quad(&c);
    let a_scale = value.abs().max(scale * scale);
    let mut step = 0.5 / (a_scale.max(1e-300));
    for _ in 0..DESCENT_STEPS {
        let mut g = ws.a_matvec(&c);
        for x in g.iter_mut() {
            *x *= 2.0;
        }
        // tangent projection against {u, c, P(Bc)}
        ws.project_linear(&mut g);
        let gc = dot(&g, &c);
        for (gi, &ci) in g.iter_mut().zip(c.iter()) {
            *gi -= gc * ci;
        }
        let mut z = ws.b_matvec(&c);
        ws.project_linear(&mut z);
        let zc = dot(&z, &c);
        for (zi, &ci) in z.iter_mut().zip(c.iter()) {
            *zi -= zc * ci;
        }
        let zz = dot(&z, &z);
        if zz > 1e-28 {
            let gz = dot(&g, &z) / zz;
            for (gi, &zi) in g.iter_mut().zip(&z) {
                *gi -= gz * zi;
            }
        }
        let gnorm = dot(&g, &g).sqrt();
        if gnorm * step < 1e-16 {
            break;
        }
        let mut improved = false;
        let mut s = step;
        for _ in 0..25 {
            let mut trial: Vec<f64> = c.iter().zip(&g).map(|(&ci, &gi)| ci - s * gi).collect();
            if retract(ws, &mut trial, t, scale) {
                let tv = ws.a_quad(&trial);
                if tv < value - 1e-16 * value.abs() {
                    c = trial;
                    value = tv;
                    step = s * 1.5;
                    improved = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (value, c)
}

/// Brackets `Δ_t` for the pair: `lo` from the dual scan
/// max_α √max(0, λ_min(A − αB) + αt − t²) with three-point refinement,
/// `hi` from feasible witnesses — the bottom eigenplane of A − α*B,
/// two-eigenvector mixes of B straddling t, and closed-form plane
/// solves — polished by projected descent.
///
/// Defaults follow the module conventions: pass `None` for the α range to
/// scan `[min diag B − ‖B‖∞, max diag B + ‖B‖∞]`, and
/// [`DEFAULT_DUAL_GRID`] grid points.
pub fn constrained_min_bracket(
    pair: &ConstrainedPair,
    t: f64,
    alpha_range: Option<Interval>,
    grid: usize,
) -> Result<Bracket> {
    ensure_finite(t, "bracket expectation t")?;
    if grid < 3 {
        return Err(Error::InvalidInput(format!("grid must be at least 3, got {grid}")));
    }
    if pair.dim < 2 {
        return Err(Error::InvalidInput("degenerate pair of dimension < 2".into()));
    }
    let ws = Workspace { pair };

    let (beta_min, beta_max) = ws.b_range()?;
    let b_scale = beta_min.abs().max(beta_max.abs()).max(1.0);
    if t < beta_min - 1e-9 * b_scale || t > beta_max + 1e-9 * b_scale {
        return Err(Error::Infeasible(format!(
            "t = {t} lies outside the numerical range [{beta_min}, {beta_max}] of B"
        )));
    }

    // ---- dual lower bound ----
    let range = match alpha_range {
        Some(r) => r,
        None => {
            let bnorm = pair.b.inf_norm();
            let (mut dmin, mut dmax) = (f64::INFINITY, f64::NEG_INFINITY);
            for i in 0..pair.dim {
                dmin = dmin.min(pair.b.get(i, i));
                dmax = dmax.max(pair.b.get(i, i));
            }
            Interval::new(dmin - bnorm, dmax + bnorm)?
        }
    };
    let dual = |alpha: f64| -> Result<f64> { Ok(ws.lambda_min(alpha)? + alpha * t - t * t) };

    let h = range.length() / (grid as f64 - 1.0);
    let mut best_val = f64::NEG_INFINITY;
    let mut best_i = 0usize;
    let mut grid_vals = Vec::with_capacity(grid);
    for i in 0..grid {
        let alpha = range.lo + h * i as f64;
        let v = dual(alpha)?;
        grid_vals.push(v);
        if v > best_val {
            best_val = v;
            best_i = i;
        }
    }
    let mut al = range.lo + h * best_i.saturating_sub(1) as f64;
    let mut ar = range.lo + h * (best_i + 1).min(grid - 1) as f64;
    let mut am = range.lo + h * best_i as f64;
    let mut fm = best_val;
    for _ in 0..DUAL_REFINE_STEPS {
        let ml = 0.5 * (al + am);
        let mr = 0.5 * (am + ar);
        let fml = dual(ml)?;
        let fmr = dual(mr)?;
        if fml >= fm && fml >= fmr {
            ar = am;
            am = ml;
            fm = fml;
        } else if fmr >= fm {
            al = am;
            am = mr;
            fm = fmr;
        } else {
            al = ml;
            ar = mr;
        }
        if fm > best_val {
            best_val = fm;
        }
    }
    let alpha_star = am;
    let lo_raw = best_val.max(0.0).sqrt();

    // ---- feasible witness upper bound ----
    let scale = b_scale;
    let mut best_witness: Option<(f64, Vec<f64>)> = None;
    // every candidate is re-snapped onto the exact constraint manifold
    // before its value counts: hi must come from a genuinely feasible
    // state
    let consider = |cand: Option<(f64, Vec<f64>)>, best: &mut Option<(f64, Vec<f64>)>| {
        if let Some((_, mut c)) = cand {
            if !retract(&ws, &mut c, t, scale) {
                return;
            }
            let v = ws.a_quad(&c);
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                *best = Some((v, c));
            }
        }
    };

    // dual-eigenvector seed: the bottom eigenspace of A − α*B carries
    // the extremizer at the refined multiplier, so the feasible point of
    // its two-dimensional span is nearly dual-tight
    if let Some((v1, v2)) = ws.bottom_two_vectors(alpha_star)? {
        consider(best_in_plane(&ws, &v1, &v2, t), &mut best_witness);
        consider(Some((0.0, v1)), &mut best_witness);
    }

    // two-eigenvector mixes of B straddling t, plus plane solves on
    // neighbouring eigenvector pairs
    let eigs = ws.b_eigs_near(t)?;
    let mut below: Option<&(f64, Vec<f64>)> = None;
    let mut above: Option<&(f64, Vec<f64>)> = None;
    for e in &eigs {
        if e.0 <= t + 1e-12 * scale {
            below = Some(e);
        }
        if e.0 >= t - 1e-12 * scale && above.is_none() {
            above = Some(e);
        }
    }
    if let (Some(lo_e), Some(hi_e)) = (below, above) {
        if (hi_e.0 - lo_e.0).abs() > 1e-14 * scale {
            let c1 = ((hi_e.0 - t).abs() / (hi_e.0 - lo_e.0).abs()).sqrt();
            let c2 = ((lo_e.0 - t).abs() / (hi_e.0 - lo_e.0).abs()).sqrt();
            let c: Vec<f64> = lo_e
                .1
                .iter()
                .zip(&hi_e.1)
                .map(|(&x, &y)| c1 * x + c2 * y)
                .collect();
            consider(Some((0.0, c)), &mut best_witness);
        } else {
            // t sits on a (near-)eigenvalue: the eigenvector itself
            consider(Some((0.0, lo_e.1.clone())), &mut best_witness);
        }
    }
    for pair_idx in eigs.windows(2) {
        let (p, q) = (&pair_idx[0].1, &pair_idx[1].1);
        consider(best_in_plane(&ws, p, q, t), &mut best_witness);
    }

    // structured pairs: closed-form solves on coordinate triples near t
    if let Some(s) = &pair.structure {
        let n = ws.ambient_dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            (s.d[i] - t)
                .abs()
                .total_cmp(&(s.d[j] - t).abs())
                .then(i.cmp(&j))
        });
        let near: Vec<usize> = order.into_iter().take(5).collect();
        for i in 0..near.len() {
            for j in (i + 1)..near.len() {
                for k in (j + 1)..near.len() {
                    let idx = [near[i], near[j], near[k]];
                    // basis of the triple subspace orthogonal to u
                    let u3 = [s.unit[idx[0]], s.unit[idx[1]], s.unit[idx[2]]];
                    let mut p3 = [u3[1], -u3[0], 0.0];
                    let n1 = (p3[0] * p3[0] + p3[1] * p3[1]).sqrt();
                    if n1 < 1e-14 {
                        p3 = [0.0, u3[2], -u3[1]];
                    }
                    let np = (p3[0] * p3[0] + p3[1] * p3[1] + p3[2] * p3[2]).sqrt();
                    if np < 1e-14 {
                        continue;
                    }
                    let p3 = [p3[0] / np, p3[1] / np, p3[2] / np];
                    // q3 = u3 × p3
                    let mut q3 = [
                        u3[1] * p3[2] - u3[2] * p3[1],
                        u3[2] * p3[0] - u3[0] * p3[2],
                        u3[0] * p3[1] - u3[1] * p3[0],
                    ];
                    let nq = (q3[0] * q3[0] + q3[1] * q3[1] + q3[2] * q3[2]).sqrt();
                    if nq < 1e-14 {
                        continue;
                    }
                    for x in q3.iter_mut() {
                        *x /= nq;
                    }
                    let embed = |w: &[f64; 3]| -> Vec<f64> {
                        let mut full = vec![0.0; n];
                        for (slot, &ix) in idx.iter().enumerate() {
                            full[ix] = w[slot];
                        }
                        full
                    };
                    consider(
                        best_in_plane(&ws, &embed(&p3), &embed(&q3), t),
                        &mut best_witness,
                    );
                }
            }
        }
    }

    let mut best_witness = match best_witness {
        Some(w) => w,
        None => {
            return Err(Error::Infeasible(format!(
                "no feasible witness found at t = {t}"
            )))
        }
    };
    let (v, c) = descend(&ws, best_witness.1.clone(), t, scale);
    if v < best_witness.0 {
        best_witness = (v, c);
    }
    let hi_raw = (best_witness.0 - t * t).max(0.0).sqrt();

    // both sides carry eps-level noise; keep them ordered
    let lo = lo_raw.min(hi_raw);
    let hi = lo_raw.max(hi_raw);
    Ok(Bracket {
        lo,
        hi,
        alpha_star,
        witness: best_witness.1,
    })
}


#[cfg(test)]
mod psd_gate_tests {
    use super::*;

    #[test]
    fn non_restriction_pair_rejected() {
        // A strictly below B² cannot be a compression
        let b = SymMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 0.0 });
        let a = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 0.0 });
        assert!(matches!(
            ConstrainedPair::new(b, a),
            Err(Error::InvalidInput(_))
        ));
    }
}
