//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Singular values sorted in descending order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Ratio of the extreme singular values (infinite for a singular matrix).
pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Numerical rank with singular values below `rel_tol * s_max` treated as zero.
pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&hi) if hi > 0.0 => s.iter().filter(|&&v| v > rel_tol * hi).count(),
        _ => 0,
    }
}

/// Orthonormal basis (as columns) of the right nullspace of `a`.
///
/// Tall systems are first compressed by a QR factorization so that the SVD
/// only ever sees a square `ncols x ncols` factor.
pub fn nullspace(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = a.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let square = if a.nrows() > n {
        a.clone().qr().r()
    } else {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    };
    let svd = square.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let null: Vec<usize> =
        order.into_iter().filter(|&i| smax == 0.0 || svd.singular_values[i] <= rel_tol * smax).collect();
    let mut out = DMatrix::zeros(n, null.len());
    for (c, &i) in null.iter().enumerate() {
        let mut v: DVector<f64> = vt.row(i).transpose();
        canonical_sign(&mut v);
        out.set_column(c, &v);
    }
    out
}

/// Flips `v` so that its largest-magnitude entry is positive.
pub fn canonical_sign(v: &mut DVector<f64>) {
    let mut best = 0.0_f64;
    let mut sign = 1.0;
    for &x in v.iter() {
        if x.abs() > best + 1e-12 {
            best = x.abs();
            sign = x.signum();
        }
    }
    if sign < 0.0 {
        v.neg_mut();
    }
}

/// Moore–Penrose pseudoinverse with relative singular-value cutoff.
pub fn pinv(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return DMatrix::zeros(c, r);
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");
    let mut out = DMatrix::zeros(c, r);
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > rel_tol * smax && s > 0.0 {
            out += vt.row(k).transpose() * u.column(k).transpose() / s;
        }
    }
    out
}

/// Gram–Schmidt orthonormalisation of the columns of `m` (two passes).
/// Columns that become numerically dependent are dropped.
pub fn orthonormalize(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v: DVector<f64> = m.column(j).into_owned();
        let scale = v.norm();
        for _ in 0..2 {
            for q in &cols {
                let d = q.dot(&v);
                v.axpy(-d, q, 1.0);
            }
        }
        let n = v.norm();
        if n > tol * scale.max(1e-300) {
            cols.push(v / n);
        }
    }
    if cols.is_empty() {
        DMatrix::zeros(m.nrows(), 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Residual of projecting `v` onto the column span of orthonormal `q`.
pub fn projection_residual(q: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    if q.ncols() == 0 {
        return v.norm();
    }
    let coeff = q.transpose() * v;
    (v - q * coeff).norm()
}

/// Symmetric part `(M + Mᵀ)/2`.
pub fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Maximum absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, &x| a.max(x.abs()))
}
