//! Regularized solutions of `y = Fx + ν` with `‖ν‖ ≤ δ`, expressed in the
//! singular system `{uᵢ, σᵢ, vᵢ}` of `F`.

mod experiment;
mod svd;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use experiment::{
    convergence_experiment, random_orthogonal, seeded_problem, ExperimentRow, ExperimentSpec, LoadedProblem,
    NoiseModel, ProblemFile, Spectrum, Synthetic, XTrue,
};
pub use svd::{jacobi_svd, Svd, JACOBI_TOL};

/// Relative accuracy of the Tikhonov discrepancy match.
pub const DISCREPANCY_TOL: f64 = 1e-10;
const FACTOR_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tikhonov,
    Tsvd,
    Geomfp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Tikhonov => "tikhonov",
            Method::Tsvd => "tsvd",
            Method::Geomfp => "geomfp",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tikhonov" => Ok(Method::Tikhonov),
            "tsvd" => Ok(Method::Tsvd),
            "geomfp" => Ok(Method::Geomfp),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

/// An operator with its singular system, the data and the noise parameters.
#[derive(Debug, Clone)]
pub struct SvdProblem {
    f: DMatrix<f64>,
    u: DMatrix<f64>,
    sigma: DVector<f64>,
    v: DMatrix<f64>,
    y: DVector<f64>,
    coeffs: DVector<f64>,
    delta: f64,
    epsilon: f64,
}

impl SvdProblem {
    /// Factors `f` with the Jacobi SVD.
    pub fn new(f: DMatrix<f64>, y: DVector<f64>, delta: f64, epsilon: f64) -> Result<Self> {
        let svd = jacobi_svd(&f);
        Self::assemble(f, svd.u, svd.sigma, svd.v, y, delta, epsilon)
    }

    /// Uses a known singular system; `F` is formed as `U·diag(σ)·Vᵀ`.
    pub fn from_factors(
        u: DMatrix<f64>,
        sigma: DVector<f64>,
        v: DMatrix<f64>,
        y: DVector<f64>,
        delta: f64,
        epsilon: f64,
    ) -> Result<Self> {
        let r = sigma.len();
        if u.ncols() != r || v.ncols() != r {
            return Err(Error::DimensionMismatch { expected: r, got: u.ncols().max(v.ncols()) });
        }
        let f = &u * DMatrix::from_diagonal(&sigma) * v.transpose();
        Self::assemble(f, u, sigma, v, y, delta, epsilon)
    }

    fn assemble(
        f: DMatrix<f64>,
        u: DMatrix<f64>,
        sigma: DVector<f64>,
        v: DMatrix<f64>,
        y: DVector<f64>,
        delta: f64,
        epsilon: f64,
    ) -> Result<Self> {
        if y.len() != f.nrows() {
            return Err(Error::DimensionMismatch { expected: f.nrows(), got: y.len() });
        }
        if !(delta >= 0.0) || !(epsilon >= 0.0) {
            return Err(Error::InvalidParams(format!("delta and epsilon must be nonnegative, got {delta}, {epsilon}")));
        }
        let r = sigma.len();
        let orth = |q: &DMatrix<f64>| (q.transpose() * q - DMatrix::identity(r, r)).amax();
        if orth(&u) > FACTOR_TOL || orth(&v) > FACTOR_TOL {
            return Err(Error::InvalidParams("singular vectors are not orthonormal".into()));
        }
        if (1..r).any(|k| sigma[k] > sigma[k - 1]) || sigma.iter().any(|&s| s < 0.0) {
            return Err(Error::InvalidParams("singular values must be nonnegative and nonincreasing".into()));
        }
        let coeffs = u.transpose() * &y;
        let p = Self { f, u, sigma, v, y, coeffs, delta, epsilon };
        if p.factorization_defect() > FACTOR_TOL * p.f.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidParams("singular system does not reproduce F".into()));
        }
        Ok(p)
    }

    pub fn f(&self) -> &DMatrix<f64> {
        &self.f
    }

    pub fn u(&self) -> &DMatrix<f64> {
        &self.u
    }

    pub fn sigma(&self) -> &DVector<f64> {
        &self.sigma
    }

    pub fn v(&self) -> &DMatrix<f64> {
        &self.v
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// Same operator with new data.
    pub fn with_y(mut self, y: DVector<f64>) -> Result<Self> {
        if y.len() != self.f.nrows() {
            return Err(Error::DimensionMismatch { expected: self.f.nrows(), got: y.len() });
        }
        self.coeffs = self.u.transpose() * &y;
        self.y = y;
        Ok(self)
    }

    /// `uᵢᵀy` for every singular index.
    pub fn coefficients(&self) -> &DVector<f64> {
        &self.coeffs
    }

    /// `‖UΣVᵀ − F‖`.
    pub fn factorization_defect(&self) -> f64 {
        (&self.u * DMatrix::from_diagonal(&self.sigma) * self.v.transpose() - &self.f).norm()
    }

    /// Number of singular values above `σ₁·max(n,m)·ε_mach`.
    pub fn rank(&self) -> usize {
        let Some(&top) = self.sigma.as_slice().first() else {
            return 0;
        };
        let tiny = top * (self.f.nrows().max(self.f.ncols()) as f64) * f64::EPSILON;
        self.sigma.iter().filter(|&&s| s > tiny && s > 0.0).count()
    }

    /// `‖(I − UUᵀ)y‖`, the smallest achievable discrepancy.
    pub fn discrepancy_floor(&self) -> f64 {
        let r = self.rank();
        let proj = self.u.columns(0, r) * self.coeffs.rows(0, r);
        (&self.y - proj).norm()
    }

    /// `Σ coef_i vᵢ` over the listed indices.
    fn synthesize(&self, parts: &[(usize, f64)]) -> DVector<f64> {
        let mut x = DVector::zeros(self.v.nrows());
        for &(i, c) in parts {
            x.axpy(c, &self.v.column(i), 1.0);
        }
        x
    }

    fn solution(&self, x: DVector<f64>, method: Method, param: f64, retained: Vec<usize>) -> RegularizedSolution {
        let discrepancy = (&self.f * &x - &self.y).norm();
        RegularizedSolution { x, method, gamma_or_epsilon: param, retained_indices: retained, discrepancy }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularizedSolution {
    pub x: DVector<f64>,
    pub method: Method,
    /// `γ` for Tikhonov (infinite when `x = 0` is forced), `ε` for the
    /// geometric fixed point, the truncation level for TSVD.
    pub gamma_or_epsilon: f64,
    pub retained_indices: Vec<usize>,
    /// `‖Fx − y‖`.
    pub discrepancy: f64,
}

/// Residual norm of the Tikhonov solution with parameter `γ`.
fn tikhonov_residual(p: &SvdProblem, gamma: f64, floor_sq: f64) -> f64 {
    let r = p.rank();
    let mut acc = floor_sq;
    for i in 0..r {
        let s2 = p.sigma[i] * p.sigma[i];
        let w = gamma / (s2 + gamma);
        acc += (w * p.coeffs[i]).powi(2);
    }
    acc.sqrt()
}

/// `x = (FᵀF + γI)⁻¹Fᵀy` with `γ` chosen so that `‖Fx − y‖ = δ`.
pub fn tikhonov_discrepancy(p: &SvdProblem) -> Result<RegularizedSolution> {
    let ynorm = p.y.norm();
    let tol = DISCREPANCY_TOL * ynorm.max(f64::MIN_POSITIVE);
    let floor = p.discrepancy_floor();
    let (delta, lo, hi) = (p.delta, floor, ynorm);
    if delta > hi + tol || delta < lo - tol {
        return Err(Error::DeltaOutOfRange { delta, lo, hi });
    }
    let r = p.rank();
    if delta >= hi - tol {
        return Ok(p.solution(DVector::zeros(p.v.nrows()), Method::Tikhonov, f64::INFINITY, vec![]));
    }
    let coef = |gamma: f64| -> Vec<(usize, f64)> {
        (0..r).map(|i| (i, p.sigma[i] * p.coeffs[i] / (p.sigma[i] * p.sigma[i] + gamma))).collect()
    };
    if delta <= lo + tol {
        return Ok(p.solution(p.synthesize(&coef(0.0)), Method::Tikhonov, 0.0, (0..r).collect()));
    }
    let floor_sq = floor * floor;
    let disc = |log_gamma: f64| tikhonov_residual(p, log_gamma.exp(), floor_sq);
    let smax2 = p.sigma[0] * p.sigma[0];
    let smin2 = p.sigma[r - 1] * p.sigma[r - 1];
    let (mut a, mut b) = ((smin2 * 1e-8).ln(), (smax2 * 1e8).ln());
    while disc(a) > delta {
        a -= 10.0;
    }
    while disc(b) < delta {
        b += 10.0;
    }
    let mut mid = 0.5 * (a + b);
    for _ in 0..MAX_BISECTIONS {
        mid = 0.5 * (a + b);
        let d = disc(mid);
        debug_assert!(disc(a) <= delta && delta <= disc(b), "discrepancy must increase with gamma");
        if (d - delta).abs() < tol || b - a < 1e-15 * mid.abs().max(1.0) {
            break;
        }
        if d < delta {
            a = mid;
        } else {
            b = mid;
        }
    }
    let gamma = mid.exp();
    Ok(p.solution(p.synthesize(&coef(gamma)), Method::Tikhonov, gamma, (0..r).collect()))
}

/// `x = Σ_{i<k} (uᵢᵀy/σᵢ) vᵢ`; `k` is clamped to the numerical rank.
pub fn tsvd(p: &SvdProblem, k: usize) -> RegularizedSolution {
    let k = k.min(p.rank());
    let parts: Vec<(usize, f64)> = (0..k).map(|i| (i, p.coeffs[i] / p.sigma[i])).collect();
    p.solution(p.synthesize(&parts), Method::Tsvd, k as f64, (0..k).collect())
}

/// TSVD with the smallest `k` whose residual is at most `δ`; the full rank
/// when even that misses `δ`.
pub fn tsvd_discrepancy(p: &SvdProblem) -> RegularizedSolution {
    let r = p.rank();
    let floor_sq = p.discrepancy_floor().powi(2);
    let mut tail: f64 = (0..r).map(|i| p.coeffs[i] * p.coeffs[i]).sum();
    let target = p.delta * p.delta;
    let mut k = 0;
    while k < r && floor_sq + tail > target {
        tail -= p.coeffs[k] * p.coeffs[k];
        k += 1;
    }
    tsvd(p, k)
}

/// Coefficients `vᵢᵀp` of the geometric fixed point for every retained `i`.
pub fn fixed_point_coefficients(p: &SvdProblem) -> Vec<(usize, f64)> {
    let eps = p.epsilon;
    (0..p.rank())
        .filter(|&i| p.coeffs[i].abs() > 2.0 * eps)
        .map(|i| {
            let c = p.coeffs[i];
            let root = (c * c - 4.0 * eps * eps).max(0.0).sqrt();
            (i, 0.5 * (c + c.signum() * root) / p.sigma[i])
        })
        .collect()
}

/// Closed-form fixed point of `A_ε`, keeping components with `|uᵢᵀy| > 2ε`.
pub fn geometric_fixed_point(p: &SvdProblem) -> RegularizedSolution {
    let parts = fixed_point_coefficients(p);
    let retained = parts.iter().map(|&(i, _)| i).collect();
    p.solution(p.synthesize(&parts), Method::Geomfp, p.epsilon, retained)
}

/// `A_ε[w] = Σᵢ σᵢ(uᵢᵀy)/(σᵢ² + ε²/(vᵢᵀw)²) vᵢ`; a component with `vᵢᵀw = 0` stays zero.
pub fn apply_a(p: &SvdProblem, w: &DVector<f64>) -> DVector<f64> {
    let wc = p.v.transpose() * w;
    let parts = a_coefficients(p, &wc);
    p.synthesize(&parts.iter().copied().enumerate().collect::<Vec<_>>())
}

fn a_coefficients(p: &SvdProblem, wc: &DVector<f64>) -> Vec<f64> {
    let eps2 = p.epsilon * p.epsilon;
    (0..p.sigma.len())
        .map(|i| {
            let s = p.sigma[i];
            if wc[i] == 0.0 || s == 0.0 {
                0.0
            } else {
                s * p.coeffs[i] / (s * s + eps2 / (wc[i] * wc[i]))
            }
        })
        .collect()
}

/// Output of [`iterate_a`].
#[derive(Debug, Clone, PartialEq)]
pub struct IterationReport {
    /// `w₀, A[w₀], A²[w₀], …`.
    pub iterates: Vec<DVector<f64>>,
    /// Distance to the fixed point over the components with `|uᵢᵀy| > 4ε`.
    pub final_distance: f64,
    /// Retained components with `|uᵢᵀy| ∈ (2ε, 4ε]`, where attraction is not guaranteed.
    pub non_attracting: Vec<usize>,
}

pub fn iterate_a(p: &SvdProblem, w0: &DVector<f64>, n_iter: usize) -> IterationReport {
    let mut iterates = Vec::with_capacity(n_iter + 1);
    iterates.push(w0.clone());
    let mut wc = p.v.transpose() * w0;
    for _ in 0..n_iter {
        wc = DVector::from_vec(a_coefficients(p, &wc));
        iterates.push(&p.v * &wc);
    }
    let eps = p.epsilon;
    let mut dist2 = 0.0;
    let mut non_attracting = Vec::new();
    for (i, c) in fixed_point_coefficients(p) {
        if p.coeffs[i].abs() > 4.0 * eps {
            dist2 += (wc[i] - c).powi(2);
        } else {
            non_attracting.push(i);
        }
    }
    IterationReport { iterates, final_distance: dist2.sqrt(), non_attracting }
}

/// `‖A_ε[p] − p‖` at the closed-form fixed point.
pub fn fixed_point_residual(p: &SvdProblem) -> f64 {
    let x = geometric_fixed_point(p).x;
    (apply_a(p, &x) - x).norm()
}

/// `2ε²|σᵢpᵢ||uᵢᵀy| / (σᵢ²pᵢ² + ε²)²` for each retained component: the
/// derivative of the scalar map `pᵢ ↦ A_ε[p]ᵢ` at the fixed point.
pub fn attraction_factors(p: &SvdProblem) -> Vec<(usize, f64)> {
    let eps2 = p.epsilon * p.epsilon;
    fixed_point_coefficients(p)
        .into_iter()
        .map(|(i, c)| {
            let sp = p.sigma[i] * c;
            (i, 2.0 * eps2 * sp.abs() * p.coeffs[i].abs() / (sp * sp + eps2).powi(2))
        })
        .collect()
}

/// Sine of the angle between `∇g` (`g(z) = Π|zᵢ|`) and the gradient of
/// `‖F̂z − y‖²` at the retained coordinates of `x`.
pub fn critical_point_check(p: &SvdProblem, x: &RegularizedSolution) -> Result<f64> {
    let idx = &x.retained_indices;
    let pc = p.v.transpose() * &x.x;
    let scale = x.x.norm();
    let mut a = Vec::with_capacity(idx.len());
    let mut b = Vec::with_capacity(idx.len());
    for &i in idx {
        if !(pc[i].abs() > 1e-14 * scale) {
            return Err(Error::DegenerateCoordinate(i));
        }
        a.push(1.0 / pc[i]);
        b.push(p.sigma[i] * (p.sigma[i] * pc[i] - p.coeffs[i]));
    }
    if idx.len() <= 1 {
        return Ok(0.0);
    }
    let (a, b) = (DVector::from_vec(a), DVector::from_vec(b));
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return Ok(0.0);
    }
    let along = a.dot(&b) / (na * na);
    Ok((&b - &a * along).norm() / nb)
}

/// Relative residual of `p̂ = (F̂ᵀF̂ + ε²C⁻¹)⁻¹F̂ᵀy` with `C = diag(p̂ᵢ²)` and
/// `F̂ = F` restricted to the retained right singular vectors.
pub fn statistical_identity_residual(p: &SvdProblem, x: &RegularizedSolution) -> Result<f64> {
    let idx = &x.retained_indices;
    if idx.is_empty() {
        return Ok(0.0);
    }
    let vr = DMatrix::from_columns(&idx.iter().map(|&i| p.v.column(i).into_owned()).collect::<Vec<_>>());
    let phat = vr.transpose() * &x.x;
    for (k, &i) in idx.iter().enumerate() {
        if phat[k] == 0.0 {
            return Err(Error::DegenerateCoordinate(i));
        }
    }
    let fhat = &p.f * &vr;
    let eps2 = p.epsilon * p.epsilon;
    let mut lhs = fhat.transpose() * &fhat;
    for k in 0..idx.len() {
        lhs[(k, k)] += eps2 / (phat[k] * phat[k]);
    }
    let rhs = fhat.transpose() * &p.y;
    let z = lhs.lu().solve(&rhs).ok_or(Error::DegenerateCoordinate(idx[0]))?;
    Ok((z - &phat).norm() / phat.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_problem(sig: &[f64], y: &[f64], delta: f64, eps: f64) -> SvdProblem {
        let f = DMatrix::from_diagonal(&DVector::from_column_slice(sig));
        SvdProblem::new(f, DVector::from_column_slice(y), delta, eps).unwrap()
    }

    #[test]
    fn tikhonov_examples() {
        let p = diag_problem(&[1.0, 1.0, 1.0], &[0.3, -1.0, 2.0], 1e-12, 0.0);
        let s = tikhonov_discrepancy(&p).unwrap();
        assert!((s.x - p.y()).amax() < 1e-10);

        // Reference values from an independent bracketing root finder.
        let p = diag_problem(&[1.0, 0.1], &[1.0, 1.0], 0.5, 0.0);
        let s = tikhonov_discrepancy(&p).unwrap();
        assert!((s.gamma_or_epsilon - 0.0099960822409757).abs() < 1e-12);
        assert!((s.x[0] - 0.9901028504795817).abs() < 1e-10);
        assert!((s.x[1] - 5.000979631654112).abs() < 1e-8);
        assert!((s.discrepancy - 0.5).abs() < 1e-10 * 2f64.sqrt());

        let f = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = SvdProblem::new(f, DVector::from_vec(vec![0.0, 2.0]), 2.0, 0.0).unwrap();
        let s = tikhonov_discrepancy(&p).unwrap();
        assert_eq!(s.x, DVector::zeros(2));
        assert!(s.gamma_or_epsilon.is_infinite());
    }

    #[test]
    fn tikhonov_rejects_unreachable_delta() {
        let f = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p = SvdProblem::new(f, DVector::from_vec(vec![1.0, 1.0]), 0.5, 0.0).unwrap();
        assert!(matches!(tikhonov_discrepancy(&p), Err(Error::DeltaOutOfRange { .. })));
        let p = p.with_delta(3.0);
        assert!(matches!(tikhonov_discrepancy(&p), Err(Error::DeltaOutOfRange { .. })));
    }

    #[test]
    fn tsvd_examples() {
        let p = diag_problem(&[2.0, 1.0], &[4.0, 3.0], 0.0, 0.0);
        assert_eq!(tsvd(&p, 0).x, DVector::zeros(2));
        assert_eq!(tsvd(&p, 1).x, DVector::from_vec(vec![2.0, 0.0]));
        let full = tsvd(&p, 2).x;
        let pinv = p.f().clone().pseudo_inverse(1e-14).unwrap() * p.y();
        assert!((full - pinv).amax() < 1e-14);
    }

    #[test]
    fn tsvd_discrepancy_picks_the_first_level_below_delta() {
        // Residuals by level: k=0 -> 5, k=1 -> 3, k=2 -> 0.
        let p = diag_problem(&[2.0, 1.0], &[4.0, 3.0], 3.5, 0.0);
        assert_eq!(tsvd_discrepancy(&p).retained_indices, vec![0]);
        assert_eq!(tsvd_discrepancy(&p.clone().with_delta(5.0)).retained_indices, Vec::<usize>::new());
        assert_eq!(tsvd_discrepancy(&p.with_delta(1.0)).retained_indices, vec![0, 1]);
    }

    #[test]
    fn geometric_fixed_point_examples() {
        let p = diag_problem(&[1.0], &[3.0], 0.0, 1.0);
        let s = geometric_fixed_point(&p);
        assert!((s.x[0] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((s.x[0] - 2.6180340).abs() < 1e-7);
        let p = diag_problem(&[1.0], &[1.9], 0.0, 1.0);
        let s = geometric_fixed_point(&p);
        assert!(s.retained_indices.is_empty() && s.x[0] == 0.0);
        let p = diag_problem(&[2.0, 0.5], &[1.0, -3.0], 0.0, 0.0);
        let s = geometric_fixed_point(&p);
        assert!((s.x - DVector::from_vec(vec![0.5, -6.0])).amax() < 1e-14);
    }

    #[test]
    fn iteration_examples() {
        let p = diag_problem(&[1.0], &[3.0], 0.0, 0.5);
        let rep = iterate_a(&p, &DVector::from_vec(vec![3.0]), 100);
        let target = (3.0 + 8f64.sqrt()) / 2.0;
        assert!((rep.iterates.last().unwrap()[0] - target).abs() < 1e-12);
        assert!(rep.final_distance < 1e-12 && rep.non_attracting.is_empty());

        let fp = geometric_fixed_point(&p).x;
        let rep = iterate_a(&p, &fp, 5);
        assert!(rep.iterates.iter().all(|w| (w - &fp).amax() < 1e-15));

        let p = diag_problem(&[2.0, 0.5], &[1.0, -3.0], 0.0, 0.0);
        let rep = iterate_a(&p, &DVector::from_vec(vec![0.1, 7.0]), 1);
        assert!((&rep.iterates[1] - tsvd(&p, 2).x).amax() < 1e-15);

        let p = diag_problem(&[1.0], &[3.0], 0.0, 1.0);
        assert_eq!(iterate_a(&p, &DVector::from_vec(vec![1.0]), 3).non_attracting, vec![0]);
    }

    #[test]
    fn scalar_fixed_point_is_exact() {
        let p = diag_problem(&[0.7, 0.2, 0.05], &[1.0, -0.4, 0.3], 0.0, 0.03);
        assert!(fixed_point_residual(&p) < 1e-12);
        for (i, c) in fixed_point_coefficients(&p) {
            assert!((p.sigma()[i] * c).abs() > p.coefficients()[i].abs() / 2.0);
        }
        for (_, f) in attraction_factors(&p) {
            assert!(f < 1.0);
        }
    }

    #[test]
    fn critical_point_examples() {
        let p = diag_problem(&[1.0], &[3.0], 0.0, 1.0);
        assert_eq!(critical_point_check(&p, &geometric_fixed_point(&p)).unwrap(), 0.0);
        let p = diag_problem(&[1.0, 0.3], &[2.0, -0.9], 0.0, 0.1);
        let s = geometric_fixed_point(&p);
        assert!(critical_point_check(&p, &s).unwrap() < 1e-8);
        let mut bad = s.clone();
        bad.x[1] = 0.0;
        assert_eq!(critical_point_check(&p, &bad), Err(Error::DegenerateCoordinate(1)));
        assert!(statistical_identity_residual(&p, &s).unwrap() < 1e-12);
    }

    #[test]
    fn method_strings() {
        for m in [Method::Tikhonov, Method::Tsvd, Method::Geomfp] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
    }
}
