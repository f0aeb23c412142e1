//! One-sided (Hestenes) Jacobi SVD.

use nalgebra::{DMatrix, DVector};

/// Thin SVD `F = U·diag(σ)·Vᵀ` with `σ` descending; `U` is `n×r`, `V` is
/// `m×r`, `r = min(n, m)`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DMatrix<f64>,
    pub sigma: DVector<f64>,
    pub v: DMatrix<f64>,
    pub sweeps: usize,
}

/// Orthogonality threshold on normalised column inner products.
pub const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 80;

pub fn jacobi_svd(f: &DMatrix<f64>) -> Svd {
    if f.nrows() < f.ncols() {
        let t = jacobi_svd(&f.transpose());
        return Svd { u: t.v, sigma: t.sigma, v: t.u, sweeps: t.sweeps };
    }
    let (n, m) = f.shape();
    let mut a = f.clone();
    let mut v = DMatrix::<f64>::identity(m, m);
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for i in 0..m {
            for j in (i + 1)..m {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for r in 0..n {
                    let (x, y) = (a[(r, i)], a[(r, j)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || gamma.abs() <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, i, j, c, s);
                rotate(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..m).map(|j| a.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));
    let sigma = DVector::from_iterator(m, order.iter().map(|&j| norms[j]));
    let v_sorted = DMatrix::from_columns(&order.iter().map(|&j| v.column(j).into_owned()).collect::<Vec<_>>());
    let tiny = sigma[0] * (n.max(m) as f64) * f64::EPSILON;
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(m);
    for (k, &j) in order.iter().enumerate() {
        if sigma[k] > tiny && sigma[k] > 0.0 {
            cols.push(a.column(j) / sigma[k]);
        } else {
            cols.push(complement_vector(&cols, n));
        }
    }
    Svd { u: DMatrix::from_columns(&cols), sigma, v: v_sorted, sweeps }
}

fn rotate(m: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64) {
    for r in 0..m.nrows() {
        let (x, y) = (m[(r, i)], m[(r, j)]);
        m[(r, i)] = c * x - s * y;
        m[(r, j)] = s * x + c * y;
    }
}

/// A unit vector orthogonal to `cols`, taken from the standard basis.
fn complement_vector(cols: &[DVector<f64>], n: usize) -> DVector<f64> {
    let mut best = DVector::zeros(n);
    let mut best_norm = -1.0;
    for e in 0..n {
        let mut v = DVector::zeros(n);
        v[e] = 1.0;
        for _ in 0..2 {
            for q in cols {
                let d = q.dot(&v);
                v.axpy(-d, q, 1.0);
            }
        }
        let nv = v.norm();
        if nv > best_norm {
            best_norm = nv;
            best = v / nv;
        }
        if best_norm > 0.5 {
            break;
        }
    }
    best
}
