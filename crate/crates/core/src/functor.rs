//! Quotients by two-sided ideals, pulled-back Proto-norms `KᵀLK`, and the
//! family-level morphism test with its exclusion certificate.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{AlgebraDef, Element, InverseRule};
use crate::error::{Error, Result};
use crate::linalg;
use crate::protonorm::{self, ProtoNormFamily};
use crate::rng;

/// Closure residual allowed for ideal membership.
pub const IDEAL_TOL: f64 = 1e-10;
/// Span residual allowed for a pulled-back family member.
pub const MORPHISM_TOL: f64 = 1e-8;
/// Upper bound on coordinate alignments tried by [`exclusion_certificate`].
pub const MAX_ALIGNMENTS: usize = 50_000;
const OBSTRUCTION_SAMPLES: usize = 16;
const OBSTRUCTION_TOL: f64 = 1e-8;

/// A two-sided ideal, stored as an orthonormal basis of its span.
#[derive(Debug, Clone)]
pub struct IdealSpec<'a> {
    algebra: &'a AlgebraDef,
    basis: DMatrix<f64>,
}

impl<'a> IdealSpec<'a> {
    /// Validates closure under left and right multiplication by every basis
    /// element of the algebra.
    pub fn new(algebra: &'a AlgebraDef, vectors: &[Element]) -> Result<Self> {
        let d = algebra.dim();
        for v in vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: v.len() });
            }
        }
        let raw = if vectors.is_empty() { DMatrix::zeros(d, 0) } else { DMatrix::from_columns(vectors) };
        let mut q = linalg::orthonormalize(&raw, 1e-12);
        for mut col in q.column_iter_mut() {
            let mut c = col.clone_owned();
            linalg::canonical_sign(&mut c);
            col.copy_from(&c);
        }
        let mut worst: f64 = 0.0;
        for j in 0..q.ncols() {
            let v = q.column(j).into_owned();
            for i in 0..d {
                let e = crate::algebra::basis(d, i);
                for prod in [algebra.multiply(&e, &v)?, algebra.multiply(&v, &e)?] {
                    let scale = prod.norm().max(1.0);
                    worst = worst.max(linalg::projection_residual(&q, &prod) / scale);
                }
            }
        }
        if worst > IDEAL_TOL {
            return Err(Error::NotAnIdeal(worst));
        }
        if q.ncols() > 0 && linalg::projection_residual(&q, algebra.unity()) < IDEAL_TOL * algebra.unity().norm() {
            return Err(Error::IdealContainsUnity);
        }
        Ok(Self { algebra, basis: q })
    }

    /// The zero ideal.
    pub fn zero(algebra: &'a AlgebraDef) -> Self {
        Self { algebra, basis: DMatrix::zeros(algebra.dim(), 0) }
    }

    pub fn algebra(&self) -> &AlgebraDef {
        self.algebra
    }

    /// Orthonormal basis, one column per generator.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// `A/I` together with the projection `K` (rows: quotient coordinates).
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: AlgebraDef,
    /// `m×n` coordinate projection `[I_m 0]·P⁻¹`.
    pub k: DMatrix<f64>,
    /// Completed basis `[complement | ideal]` of the parent algebra.
    pub p: DMatrix<f64>,
}

/// Completes the ideal basis with standard basis vectors (in index order) and
/// reads the quotient product off the complementary coordinates.
pub fn quotient_algebra(ideal: &IdealSpec<'_>) -> Result<Quotient> {
    let alg = ideal.algebra;
    let n = alg.dim();
    if ideal.dim() == 0 {
        return Ok(Quotient { algebra: alg.clone(), k: DMatrix::identity(n, n), p: DMatrix::identity(n, n) });
    }
    let mut span = ideal.basis.clone();
    let mut complement: Vec<Element> = Vec::new();
    for i in 0..n {
        if span.ncols() == n {
            break;
        }
        let e = crate::algebra::basis(n, i);
        if linalg::projection_residual(&span, &e) > 1e-8 {
            complement.push(e.clone());
            let mut cols: Vec<Element> = span.column_iter().map(|c| c.into_owned()).collect();
            cols.push(e);
            span = linalg::orthonormalize(&DMatrix::from_columns(&cols), 1e-12);
        }
    }
    let m = complement.len();
    let mut cols = complement.clone();
    cols.extend(ideal.basis.column_iter().map(|c| c.into_owned()));
    let p = DMatrix::from_columns(&cols);
    let pinv = p.clone().try_inverse().ok_or_else(|| Error::InvalidAlgebra("basis completion failed".into()))?;
    let k = pinv.rows(0, m).into_owned();
    let mut constants = vec![0.0; m * m * m];
    for a in 0..m {
        for b in 0..m {
            let prod = &k * alg.multiply(&complement[a], &complement[b])?;
            for c in 0..m {
                let v = prod[c];
                constants[(a * m + b) * m + c] = if v.abs() < 1e-14 { 0.0 } else { v };
            }
        }
    }
    let unity = (&k * alg.unity()).map(|v| if v.abs() < 1e-14 { 0.0 } else { v });
    let quotient = AlgebraDef::new(
        format!("{}/I{}", alg.name(), ideal.dim()),
        m,
        constants,
        unity,
        None,
        InverseRule::AssociativeSolve,
        None,
    )?;
    Ok(Quotient { algebra: quotient, k, p })
}

/// `KᵀLK`.
pub fn pullback_protonorm(k: &DMatrix<f64>, l: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if l.nrows() != l.ncols() || l.nrows() != k.nrows() {
        return Err(Error::DimensionMismatch { expected: k.nrows(), got: l.nrows() });
    }
    Ok(k.transpose() * l * k)
}

/// Largest defect of `K` as a unital homomorphism `A₁ → A₂`.
pub fn homomorphism_defect(a1: &AlgebraDef, a2: &AlgebraDef, k: &DMatrix<f64>) -> Result<f64> {
    let (n, m) = (a1.dim(), a2.dim());
    if k.shape() != (m, n) {
        return Err(Error::DimensionMismatch { expected: m * n, got: k.nrows() * k.ncols() });
    }
    let mut worst = (k * a1.unity() - a2.unity()).amax();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (crate::algebra::basis(n, i), crate::algebra::basis(n, j));
            let lhs = k * a1.multiply(&ei, &ej)?;
            let rhs = a2.multiply(&(k * &ei), &(k * &ej))?;
            worst = worst.max((lhs - rhs).amax());
        }
    }
    Ok(worst)
}

/// `true` when two algebras share dimension, unity and structure constants.
pub fn same_structure(a: &AlgebraDef, b: &AlgebraDef, tol: f64) -> bool {
    a.dim() == b.dim()
        && (a.unity() - b.unity()).amax() <= tol
        && a.structure_constants().iter().zip(b.structure_constants()).all(|(x, y)| (x - y).abs() <= tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub k: Vec<Vec<f64>>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorphismVerdict {
    pub exists: bool,
    pub witness: Option<Witness>,
    /// Relative span residual of `KᵀBK` for each basis member `B` of the target family.
    pub diagnostics: Vec<f64>,
}

/// Checks that every pulled-back member of `f2` lies in the span of `f1`.
pub fn morphism_exists(f1: &ProtoNormFamily, f2: &ProtoNormFamily, k: &DMatrix<f64>) -> MorphismVerdict {
    let mut diagnostics = Vec::with_capacity(f2.dim());
    for b in &f2.basis {
        let r = match pullback_protonorm(k, b) {
            Ok(pb) if pb.nrows() == f1.algebra.dim() => f1.span_residual(&pb) / pb.norm().max(1.0),
            _ => f64::INFINITY,
        };
        diagnostics.push(r);
    }
    let worst = diagnostics.iter().copied().fold(0.0, f64::max);
    let exists = worst < MORPHISM_TOL;
    let witness = exists.then(|| Witness { k: crate::algebra::matrix_rows(k), residual: worst });
    MorphismVerdict { exists, witness, diagnostics }
}

/// Invariant that no similarity transform can reconcile.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The target algebra is larger than the source.
    Dimension { source: usize, target: usize },
    /// A target member has larger rank than every source member.
    Rank { target_rank: usize, source_max_rank: usize },
    /// No source member has the target member's `tr L` and `tr L²`.
    TraceMoments { trace: f64, trace_sq: f64 },
}

/// Searches for a target family member whose eigenvalue data cannot occur in
/// the source family.
///
/// A morphism requires each target member to reappear, up to similarity and
/// zero padding, inside the source family. Similarity preserves rank and the
/// power sums `tr L`, `tr L²`, and zero padding adds only zero eigenvalues, so
/// any mismatch in those rules the morphism out for every alignment.
pub fn spectral_obstruction(f1: &ProtoNormFamily, f2: &ProtoNormFamily, seed: u64) -> Option<Obstruction> {
    let (n, m) = (f1.algebra.dim(), f2.algebra.dim());
    if m > n {
        return Some(Obstruction::Dimension { source: n, target: m });
    }
    let mut stream = rng::stream(seed, "spectral-obstruction");
    let mut source_max_rank = 0;
    for _ in 0..OBSTRUCTION_SAMPLES {
        let theta = rng::normal_vector(&mut stream, f1.dim());
        source_max_rank = source_max_rank.max(linalg::rank(&f1.member(theta.as_slice()), OBSTRUCTION_TOL));
    }
    let traces: Vec<f64> = f1.basis.iter().map(|b| b.trace()).collect();
    let a_sq: f64 = traces.iter().map(|t| t * t).sum();
    let mut targets: Vec<DMatrix<f64>> = f2.basis.clone();
    for _ in 0..OBSTRUCTION_SAMPLES {
        let theta = rng::normal_vector(&mut stream, f2.dim());
        targets.push(f2.member(theta.as_slice()));
    }
    for l2 in &targets {
        let r = linalg::rank(l2, OBSTRUCTION_TOL);
        if r > source_max_rank {
            return Some(Obstruction::Rank { target_rank: r, source_max_rank });
        }
        let t = l2.trace();
        let q = l2.norm_squared();
        let scale = q.max(t * t).max(1e-300);
        let feasible = match f1.dim() {
            0 => q <= OBSTRUCTION_TOL * scale,
            _ if a_sq <= OBSTRUCTION_TOL => t.abs() <= OBSTRUCTION_TOL * scale.sqrt(),
            1 => (q - t * t / a_sq).abs() <= OBSTRUCTION_TOL * scale,
            _ => q >= t * t / a_sq - OBSTRUCTION_TOL * scale,
        };
        if !feasible {
            return Some(Obstruction::TraceMoments { trace: t, trace_sq: q });
        }
    }
    None
}

/// All injective coordinate selections `A₁ → A₂` as `m×n` 0/1 matrices.
pub fn coordinate_alignments(n: usize, m: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(m);
    let mut used = vec![false; n];
    fn rec(n: usize, m: usize, chosen: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<DMatrix<f64>>) {
        if out.len() >= MAX_ALIGNMENTS {
            return;
        }
        if chosen.len() == m {
            out.push(DMatrix::from_fn(m, n, |r, c| if chosen[r] == c { 1.0 } else { 0.0 }));
            return;
        }
        for c in 0..n {
            if !used[c] {
                used[c] = true;
                chosen.push(c);
                rec(n, m, chosen, used, out);
                chosen.pop();
                used[c] = false;
            }
        }
    }
    if m <= n {
        rec(n, m, &mut chosen, &mut used, &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionCertificate {
    pub excluded: bool,
    pub alignments_tried: usize,
    pub alignments_passing: usize,
    pub obstruction: Option<Obstruction>,
}

/// Tries every coordinate alignment and the spectral obstruction. The pair
/// is excluded only when no alignment passes and an obstruction is found.
pub fn exclusion_certificate(a1: &AlgebraDef, a2: &AlgebraDef, seed: u64) -> Result<ExclusionCertificate> {
    let f1 = solve(a1, seed)?;
    let f2 = solve(a2, seed)?;
    let alignments = coordinate_alignments(a1.dim(), a2.dim());
    let passing = alignments.iter().filter(|k| morphism_exists(&f1, &f2, k).exists).count();
    let obstruction = spectral_obstruction(&f1, &f2, seed);
    Ok(ExclusionCertificate {
        excluded: passing == 0 && obstruction.is_some(),
        alignments_tried: alignments.len(),
        alignments_passing: passing,
        obstruction,
    })
}

/// Sound but incomplete: `true` certifies that no epimorphism `A₁ → A₂`
/// exists, `false` only means this test could not rule one out.
pub fn epimorphism_excluded(a1: &AlgebraDef, a2: &AlgebraDef) -> Result<bool> {
    Ok(exclusion_certificate(a1, a2, 0)?.excluded)
}

/// Family solve with the minimum admissible sample count.
pub fn solve(alg: &AlgebraDef, seed: u64) -> Result<ProtoNormFamily> {
    let d = alg.dim();
    protonorm::solve_family(alg, 3 * d * d, seed)
}
