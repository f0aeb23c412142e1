//! Wedge and anti-wedge products on `ℝ^{1,3}` with the boost taken along `γ₁`.
//!
//! Components are ordered `(τ, x, y, z)` on `γ₀, γ₁, γ₂, γ₃`. Throughout,
//! `D(p, q) = b_p a_q − b_q a_p` is the 2×2 determinant with `b` in the top row.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const fn new(tau: f64, x: f64, y: f64, z: f64) -> Self {
        Self([tau, x, y, z])
    }

    pub fn tau(&self) -> f64 {
        self.0[0]
    }

    pub fn x(&self) -> f64 {
        self.0[1]
    }

    pub fn y(&self) -> f64 {
        self.0[2]
    }

    pub fn z(&self) -> f64 {
        self.0[3]
    }
}

impl Add for FourVector {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for FourVector {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;

    fn mul(self, v: FourVector) -> FourVector {
        FourVector(v.0.map(|c| self * c))
    }
}

impl Neg for FourVector {
    type Output = Self;

    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

/// Spatial vector on `γ₁, γ₂, γ₃`.
pub type SpatialVector = [f64; 3];

/// Bivector components on `γ₀∧γ₁, γ₀∧γ₂, γ₀∧γ₃, γ₁∧γ₂, γ₁∧γ₃, γ₂∧γ₃`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bivector(pub [f64; 6]);

/// Basis pairs in storage order.
pub const BIVECTOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl Bivector {
    /// Coefficient of `γ_i∧γ_j`; swapping the indices flips the sign.
    pub fn component(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        let k = BIVECTOR_PAIRS.iter().position(|&p| p == (lo, hi)).expect("indices below 4");
        sign * self.0[k]
    }
}

fn det(a: &FourVector, b: &FourVector, p: usize, q: usize) -> f64 {
    b.0[p] * a.0[q] - b.0[q] * a.0[p]
}

/// `a_τb_τ − a_xb_x − a_yb_y − a_zb_z`.
pub fn minkowski_inner(a: &FourVector, b: &FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

/// `a∧b`, whose `γ_p∧γ_q` coefficient is `−D(p, q) = a_p b_q − a_q b_p`.
pub fn wedge(a: &FourVector, b: &FourVector) -> Bivector {
    Bivector(BIVECTOR_PAIRS.map(|(p, q)| -det(a, b, p, q)))
}

/// `(aγ₀)∨(bγ₀) = (D(τ,x), D(τ,y), D(τ,z))`.
pub fn anti_wedge(a: &FourVector, b: &FourVector) -> SpatialVector {
    [det(a, b, 0, 1), det(a, b, 0, 2), det(a, b, 0, 3)]
}

/// Swaps the time and boost-direction components.
pub fn time_boost_reflection(a: &FourVector) -> FourVector {
    FourVector::new(a.0[1], a.0[0], a.0[2], a.0[3])
}

/// Boost with speed `v` along `γ₁`.
pub fn boost(a: &FourVector, v: f64) -> Result<FourVector> {
    if !(v.abs() < 1.0) {
        return Err(Error::SpeedOutOfRange(v));
    }
    let g = 1.0 / (1.0 - v * v).sqrt();
    let [w0, w1, w2, w3] = a.0;
    Ok(FourVector::new(g * (w0 - v * w1), g * (w1 - v * w0), w2, w3))
}

/// The `γ₂∧γ₃` coefficient of `p∧q` for spatial vectors.
fn spatial_wedge_23(p: &SpatialVector, q: &SpatialVector) -> f64 {
    p[1] * q[2] - p[2] * q[1]
}

/// Component of `∨` along the boost direction.
fn parallel(w: &SpatialVector) -> f64 {
    w[0]
}

/// Part of `∨` orthogonal to the boost direction.
fn perpendicular(w: &SpatialVector) -> SpatialVector {
    [0.0, w[1], w[2]]
}

/// `D(τ,x)·D(y,z) − D(τ,y)·D(x,z) + D(τ,z)·D(x,y)`, the bracket in the
/// expansion of `(a∧b)∧(a∧b)`; it vanishes identically.
pub fn pluecker_residual(a: &FourVector, b: &FourVector) -> f64 {
    let d = |p, q| det(a, b, p, q);
    d(0, 1) * d(2, 3) - d(0, 2) * d(1, 3) + d(0, 3) * d(1, 2)
}

/// Signed areas and residuals of every claim checked by [`verify_theorem`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremReport {
    /// Signed area `D(τ,x)` in the `γ₀γ₁` plane.
    pub a01: f64,
    /// Signed area `D(y,z)` in the `γ₂γ₃` plane.
    pub a23: f64,
    /// `|[a∨b]_∥ − A₀₁| + |[a∨b]_∥ + [â∨b̂]_∥|`.
    pub parallel: f64,
    /// Change of `|[a∨b]_∥|` and `|[â∨b̂]_∥|` under the boost.
    pub parallel_boost: f64,
    /// `|[a∨b]_⊥∧[â∨b̂]_⊥ − A₀₁A₂₃|` on `γ₂∧γ₃`.
    pub identity: f64,
    /// Change of the perpendicular wedge under the boost.
    pub identity_boost: f64,
    /// `|W(â, b̂) + W(a, b)|` for the perpendicular wedge `W`.
    pub identity_reflection: f64,
    /// The `(a∧b)∧(a∧b)` bracket.
    pub pluecker: f64,
}

impl TheoremReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.parallel,
            self.parallel_boost,
            self.identity,
            self.identity_boost,
            self.identity_reflection,
            self.pluecker.abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn perp_wedge(a: &FourVector, b: &FourVector) -> f64 {
    let (ah, bh) = (time_boost_reflection(a), time_boost_reflection(b));
    spatial_wedge_23(&perpendicular(&anti_wedge(a, b)), &perpendicular(&anti_wedge(&ah, &bh)))
}

/// Checks the boost-decomposition identities for `a`, `b` and speed `v`.
pub fn verify_theorem(a: &FourVector, b: &FourVector, v: f64) -> Result<TheoremReport> {
    let (ah, bh) = (time_boost_reflection(a), time_boost_reflection(b));
    let (ab, abh) = (anti_wedge(a, b), anti_wedge(&ah, &bh));
    let a01 = det(a, b, 0, 1);
    let a23 = det(a, b, 2, 3);
    let parallel_res = (parallel(&ab) - a01).abs() + (parallel(&ab) + parallel(&abh)).abs();

    let (ba, bb) = (boost(a, v)?, boost(b, v)?);
    let (bah, bbh) = (time_boost_reflection(&ba), time_boost_reflection(&bb));
    let parallel_boost = (parallel(&anti_wedge(&ba, &bb)).abs() - parallel(&ab).abs()).abs()
        + (parallel(&anti_wedge(&bah, &bbh)).abs() - parallel(&abh).abs()).abs();

    let w = perp_wedge(a, b);
    Ok(TheoremReport {
        a01,
        a23,
        parallel: parallel_res,
        parallel_boost,
        identity: (w - a01 * a23).abs(),
        identity_boost: (perp_wedge(&ba, &bb) - w).abs(),
        identity_reflection: (perp_wedge(&ah, &bh) + w).abs(),
        pluecker: pluecker_residual(a, b),
    })
}
