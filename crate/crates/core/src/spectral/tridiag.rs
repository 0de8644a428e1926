//! Symmetric eigensolvers: implicit-shift QL iteration on tridiagonal
//! matrices, with dense symmetric inputs reduced by Householder similarity.
//!
//! Deflation always happens at machine precision; the `tol` argument of
//! [`eig_sym_tridiagonal`] is the caller's acceptance threshold for the
//! residual contract `‖Mv − λv‖ ≤ tol·(1 + ‖M‖_∞)` and is validated, not
//! used to loosen the iteration.

use crate::error::{ensure_finite, Error, Result};

const MAX_QL_SWEEPS: usize = 50;

/// Real symmetric tridiagonal matrix: `diag` of length n, `offdiag` of
/// length n − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("empty diagonal".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "offdiag length {} must be diag length {} minus one",
                offdiag.len(),
                diag.len()
            )));
        }
        for &x in diag.iter().chain(offdiag.iter()) {
            ensure_finite(x, "tridiagonal entry")?;
        }
        Ok(Self { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.offdiag[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// y = M x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(x.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = self.diag[i] * x[i];
            if i > 0 {
                s += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += self.offdiag[i] * x[i + 1];
            }
            y[i] = s;
        }
        y
    }
}

/// Implicit-shift QL sweep over `d`, `e`. `z`, when present, is an n×n
/// row-major matrix accumulating the rotations (pass identity to get
/// eigenvectors as columns).
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    for l in 0..n {
        let mut sweeps = 0usize;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::Convergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(if g == 0.0 { 1.0 } else { g }));
            let (mut s, mut c, mut p) = (1.0_f64, 1.0_f64, 0.0_f64);
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation underflow: deflate and retry the sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    for k in 0..n {
                        f = zm[k * n + i + 1];
                        zm[k * n + i + 1] = s * zm[k * n + i] + c * f;
                        zm[k * n + i] = c * zm[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Sorts eigenvalues ascending, ties broken by ascending original index;
/// returns the permutation applied.
fn sort_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx
}

/// All eigenvalues, ascending. No eigenvectors.
pub fn eigvals_sym_tridiagonal(m: &SymTridiagonal) -> Result<Vec<f64>> {
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(0.0);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues with orthonormal eigenvectors, sorted ascending.
///
/// `tol` is the residual acceptance threshold `‖Mv − λv‖ ≤ tol·(1 + ‖M‖_∞)`;
/// it must be positive. The iteration itself always runs to machine
/// precision.
pub fn eig_sym_tridiagonal(m: &SymTridiagonal, tol: f64) -> Result<Vec<(f64, Vec<f64>)>> {
    ensure_finite(tol, "eigensolver tolerance")?;
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let n = m.n();
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(0.0);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    ql_implicit(&mut d, &mut e, Some(&mut z))?;

    let order = sort_order(&d);
    let mut out = Vec::with_capacity(n);
    for &j in &order {
        let mut v: Vec<f64> = (0..n).map(|k| z[k * n + j]).collect();
        // deterministic sign: largest-magnitude component made positive
        let mut pivot = 0usize;
        for (k, &x) in v.iter().enumerate() {
            if x.abs() > v[pivot].abs() {
                pivot = k;
            }
        }
        if v[pivot] < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        out.push((d[j], v));
    }
    Ok(out)
}

/// Dense real symmetric matrix, row-major full storage.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    /// Builds from the generator, symmetrizing via the lower triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                m.set_sym(i, j, v);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.a[i * self.n..(i + 1) * self.n];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.matvec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// A − c·B element-wise (both symmetric, same size).
    pub fn sub_scaled(&self, b: &SymMatrix, c: f64) -> SymMatrix {
        assert_eq!(self.n, b.n);
        SymMatrix {
            n: self.n,
            a: self.a.iter().zip(&b.a).map(|(x, y)| x - c * y).collect(),
        }
    }

    /// Householder reduction to tridiagonal form. With `accumulate`, also
    /// returns the n×n orthogonal Q (row-major) with QᵀAQ tridiagonal.
    fn householder(&self, accumulate: bool) -> (SymTridiagonal, Option<Vec<f64>>) {
        let n = self.n;
        let mut a = self.clone();
        let mut e = vec![0.0; n.saturating_sub(1)];
        let mut q = if accumulate {
            let mut q = vec![0.0; n * n];
            for i in 0..n {
                q[i * n + i] = 1.0;
            }
            Some(q)
        } else {
            None
        };

        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let x: Vec<f64> = (0..m).map(|i| a.get(k + 1 + i, k)).collect();
            let sigma: f64 = x[1..].iter().map(|&t| t * t).sum();
            if sigma == 0.0 {
                e[k] = x[0];
                continue;
            }
            let mu = (x[0] * x[0] + sigma).sqrt();
            let v0 = if x[0] <= 0.0 { x[0] - mu } else { -sigma / (x[0] + mu) };
            let beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
            let mut v = vec![1.0; m];
            for i in 1..m {
                v[i] = x[i] / v0;
            }
            let vtx: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
            e[k] = x[0] - beta * v[0] * vtx;

            // rank-two update of the trailing block
            let mut p = vec![0.0; m];
            for (i, pi) in p.iter_mut().enumerate() {
                let mut s = 0.0;
                for (j, vj) in v.iter().enumerate() {
                    s += a.get(k + 1 + i, k + 1 + j) * vj;
                }
                *pi = beta * s;
            }
            let ptv: f64 = p.iter().zip(&v).map(|(a, b)| a * b).sum();
            let w: Vec<f64> = p
                .iter()
                .zip(&v)
                .map(|(pi, vi)| pi - 0.5 * beta * ptv * vi)
                .collect();
            for i in 0..m {
                for j in 0..=i {
                    let val = a.get(k + 1 + i, k + 1 + j) - v[i] * w[j] - w[i] * v[j];
                    a.set_sym(k + 1 + i, k + 1 + j, val);
                }
            }
            a.set_sym(k + 1, k, e[k]);
            for i in 1..m {
                a.set_sym(k + 1 + i, k, 0.0);
            }

            if let Some(q) = q.as_deref_mut() {
                // Q ← Q·H, touching columns k+1..n
                for row in 0..n {
                    let mut s = 0.0;
                    for j in 0..m {
                        s += q[row * n + k + 1 + j] * v[j];
                    }
                    let s = beta * s;
                    for j in 0..m {
                        q[row * n + k + 1 + j] -= s * v[j];
                    }
                }
            }
        }
        if n >= 2 {
            e[n - 2] = a.get(n - 1, n - 2);
        }
        let d: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
        (
            SymTridiagonal { diag: d, offdiag: e },
            q,
        )
    }

    pub fn eigvals(&self) -> Result<Vec<f64>> {
        let (t, _) = self.householder(false);
        eigvals_sym_tridiagonal(&t)
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(self.eigvals()?[0])
    }

    /// Full eigendecomposition; vectors returned as columns, sorted
    /// ascending by eigenvalue.
    pub fn eigen(&self) -> Result<Vec<(f64, Vec<f64>)>> {
        let n = self.n;
        let (t, q) = self.householder(true);
        let mut d = t.diag.clone();
        let mut e = t.offdiag.clone();
        e.push(0.0);
        let mut z = q.expect("accumulated");
        ql_implicit(&mut d, &mut e, Some(&mut z))?;
        let order = sort_order(&d);
        let mut out = Vec::with_capacity(n);
        for &j in &order {
            let mut v: Vec<f64> = (0..n).map(|k| z[k * n + j]).collect();
            let mut pivot = 0usize;
            for (k, &x) in v.iter().enumerate() {
                if x.abs() > v[pivot].abs() {
                    pivot = k;
                }
            }
            if v[pivot] < 0.0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
            out.push((d[j], v));
        }
        Ok(out)
    }
}
