//! Proto-norm families: symmetric `L` for which `L s⁻¹` is curl-free near
//! the unity, found as the nullspace of sampled curl constraints.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{AlgebraDef, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;

/// Sampling radius around the unity.
pub const SAMPLE_RADIUS: f64 = 0.1;
/// Relative singular-value cutoff separating the nullspace.
pub const RANK_TOL: f64 = 1e-8;
/// Consecutive non-unit draws tolerated before giving up.
pub const MAX_RESAMPLES: usize = 100;

/// Linear span of Proto-norms together with its normalized affine slice.
#[derive(Debug, Clone)]
pub struct ProtoNormFamily {
    pub algebra: AlgebraDef,
    /// Frobenius-orthonormal symmetric matrices.
    pub basis: Vec<DMatrix<f64>>,
    pub normalized_point: Option<DMatrix<f64>>,
    pub normalized_directions: Vec<DMatrix<f64>>,
}

impl ProtoNormFamily {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ θ_k B_k`.
    pub fn member(&self, theta: &[f64]) -> DMatrix<f64> {
        let d = self.algebra.dim();
        let mut m = DMatrix::zeros(d, d);
        for (b, &t) in self.basis.iter().zip(theta) {
            m += b * t;
        }
        m
    }

    /// Frobenius distance from `l` to the span of the basis.
    pub fn span_residual(&self, l: &DMatrix<f64>) -> f64 {
        span_residual(&self.basis, l)
    }

    /// Point on the normalized slice shifted along its directions.
    pub fn normalized_member(&self, t: &[f64]) -> Option<DMatrix<f64>> {
        let mut m = self.normalized_point.clone()?;
        for (dir, &x) in self.normalized_directions.iter().zip(t) {
            m += dir * x;
        }
        Some(m)
    }
}

/// Frobenius distance from `l` to the span of Frobenius-orthonormal `basis`.
pub fn span_residual(basis: &[DMatrix<f64>], l: &DMatrix<f64>) -> f64 {
    let mut r = l.clone();
    for b in basis {
        let c = b.dot(l);
        r -= b * c;
    }
    r.norm()
}

/// `d([Ls⁻¹]·ds)` as the antisymmetric matrix `∂_i(Ls⁻¹)_j − ∂_j(Ls⁻¹)_i`.
pub fn curl_residual(alg: &AlgebraDef, l: &DMatrix<f64>, s: &Element) -> Result<DMatrix<f64>> {
    let d = alg.dim();
    if l.shape() != (d, d) {
        return Err(Error::DimensionMismatch { expected: d, got: l.nrows() });
    }
    if s.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: s.len() });
    }
    if !alg.is_unit(s) {
        return Err(Error::NotAUnit { condition: 1.0 / alg.unit_gap(s) });
    }
    let lj = l * alg.inverse_jacobian(s)?;
    Ok(lj.transpose() - lj)
}

/// Draws `1 + radius·g`, `g` uniform in the unit ball, retrying non-units.
pub fn sample_unit_near_one(alg: &AlgebraDef, stream: &mut rng::Stream, radius: f64) -> Result<Element> {
    for _ in 0..MAX_RESAMPLES {
        let s = alg.unity() + rng::unit_ball(stream, alg.dim()) * radius;
        if alg.is_unit(&s) {
            return Ok(s);
        }
    }
    Err(Error::SamplingFailure(MAX_RESAMPLES))
}

/// Unknown `(p, q)` with `p ≤ q`; off-diagonal units carry weight `1/√2`
/// so that coefficient vectors and matrices share the same Euclidean norm.
fn unknowns(d: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(d * (d + 1) / 2);
    for p in 0..d {
        for q in p..d {
            v.push((p, q));
        }
    }
    v
}

fn unknown_matrix(d: usize, (p, q): (usize, usize)) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(d, d);
    if p == q {
        m[(p, p)] = 1.0;
    } else {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        m[(p, q)] = w;
        m[(q, p)] = w;
    }
    m
}

/// Rows `curl(L)_{ab} = 0` for `a < b`, linear in the unknowns of `L`.
fn constraint_rows(jac: &DMatrix<f64>, unk: &[(usize, usize)], out: &mut DMatrix<f64>, row0: usize) {
    let d = jac.nrows();
    let w = std::f64::consts::FRAC_1_SQRT_2;
    let mut r = row0;
    for a in 0..d {
        for b in (a + 1)..d {
            for (col, &(p, q)) in unk.iter().enumerate() {
                // (E J)[b][a] − (E J)[a][b] for the symmetric unit E of (p, q).
                let v = if p == q {
                    let mut v = 0.0;
                    if b == p {
                        v += jac[(p, a)];
                    }
                    if a == p {
                        v -= jac[(p, b)];
                    }
                    v
                } else {
                    let mut v = 0.0;
                    if b == p {
                        v += jac[(q, a)];
                    }
                    if b == q {
                        v += jac[(p, a)];
                    }
                    if a == p {
                        v -= jac[(q, b)];
                    }
                    if a == q {
                        v -= jac[(p, b)];
                    }
                    v * w
                };
                out[(r, col)] = v;
            }
            r += 1;
        }
    }
}

/// Numerically discovers the Proto-norm family of `alg`.
///
/// Needs `n_samples ≥ 3·dim²`. The returned basis is Frobenius-orthonormal
/// and depends only on `(alg, n_samples, seed)`.
pub fn solve_family(alg: &AlgebraDef, n_samples: usize, seed: u64) -> Result<ProtoNormFamily> {
    let d = alg.dim();
    let needed = 3 * d * d;
    if n_samples < needed {
        return Err(Error::TooFewSamples { needed, got: n_samples });
    }
    let unk = unknowns(d);
    let pairs = d * (d - 1) / 2;
    let basis_vectors = if pairs == 0 {
        DMatrix::identity(unk.len(), unk.len())
    } else {
        let mut stream = rng::stream(seed, &format!("solve-family/{}", alg.name()));
        let mut a = DMatrix::zeros(n_samples * pairs, unk.len());
        for k in 0..n_samples {
            let s = sample_unit_near_one(alg, &mut stream, SAMPLE_RADIUS)?;
            let jac = alg.inverse_jacobian(&s)?;
            constraint_rows(&jac, &unk, &mut a, k * pairs);
        }
        linalg::nullspace(&a, RANK_TOL)
    };
    let basis = (0..basis_vectors.ncols())
        .map(|c| {
            let mut m = DMatrix::zeros(d, d);
            for (i, &u) in unk.iter().enumerate() {
                m += unknown_matrix(d, u) * basis_vectors[(i, c)];
            }
            m
        })
        .collect();
    Ok(ProtoNormFamily { algebra: alg.clone(), basis, normalized_point: None, normalized_directions: Vec::new() })
}

/// Imposes `1'L1 = ‖1‖²` on the span and checks `s'Ls⁻¹ = ‖1‖²` at 50
/// fresh units near the unity.
pub fn normalize_family(family: &ProtoNormFamily) -> Result<ProtoNormFamily> {
    let alg = &family.algebra;
    let k = family.basis.len();
    if k == 0 {
        return Err(Error::NoNormalizedSlice);
    }
    let one = alg.unity();
    let target = alg.one_norm_sq()?;
    let a = DVector::from_iterator(k, family.basis.iter().map(|b| one.dot(&(b * one))));
    let an = a.norm();
    if an < 1e-10 * one.norm_squared() {
        return Err(Error::NoNormalizedSlice);
    }
    let theta = &a * (target / (an * an));
    let point = family.member(theta.as_slice());
    let perp = linalg::nullspace(&DMatrix::from_row_slice(1, k, a.as_slice()), 1e-12);
    let directions: Vec<DMatrix<f64>> = (0..perp.ncols()).map(|c| family.member(perp.column(c).as_slice())).collect();

    let mut stream = rng::stream(0, &format!("normalize-family/{}", alg.name()));
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let s = sample_unit_near_one(alg, &mut stream, SAMPLE_RADIUS)?;
        let sinv = alg.inverse(&s)?;
        worst = worst.max((s.dot(&(&point * &sinv)) - target).abs() / target);
        for dir in &directions {
            worst = worst.max(s.dot(&(dir * &sinv)).abs() / target);
        }
    }
    if worst > 1e-8 {
        return Err(Error::SliceNotConstant(worst));
    }
    Ok(ProtoNormFamily {
        algebra: alg.clone(),
        basis: family.basis.clone(),
        normalized_point: Some(point),
        normalized_directions: directions,
    })
}

/// Coordinate matrix of `s ↦ proj_{span B}(M(s)ᵀ)` for a faithful
/// representation `M(s) = Σ s_i B_i`.
pub fn transpose_induced(alg: &AlgebraDef) -> Result<DMatrix<f64>> {
    let rep = alg.matrix_rep().ok_or(Error::MissingRepresentation)?;
    let d = alg.dim();
    let gram = DMatrix::from_fn(d, d, |i, j| rep[i].dot(&rep[j]));
    let h = DMatrix::from_fn(d, d, |i, j| rep[i].dot(&rep[j].transpose()));
    let t = gram.lu().solve(&h).ok_or(Error::InvalidAlgebra("representation is not faithful".into()))?;
    let asym = linalg::max_abs(&(&t - t.transpose()));
    if asym > 1e-10 {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(linalg::sym(&t))
}
