//! Incomplete Unital Norms `U(s) = exp((1/‖1‖²)∫₁ˢ [Lt⁻¹]·dt)` by path quadrature.

mod closed_form;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDef, Element};
use crate::error::{Error, Result};
use crate::{linalg, quadrature};

pub use closed_form::{
    closed_form, param_count, sample_params, sample_unit, sample_unit_in, table_protonorm, SAMPLE_RADIUS,
};

pub const DEFAULT_QUAD_REL_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;
/// Quadrature tolerance used inside [`UnitalNormEvaluator::gradient`].
pub const GRADIENT_QUAD_REL_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
const KERNEL_TOL: f64 = 1e-8;
const PINV_TOL: f64 = 1e-10;
const SPHERE_TOL: f64 = 1e-6;

/// Route from `1` to the target point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathPolicy {
    /// The straight segment `1 → s`.
    #[default]
    Segment,
    /// Moves one coordinate at a time, in index order.
    AxisPolyline,
}

impl fmt::Display for PathPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathPolicy::Segment => "segment",
            PathPolicy::AxisPolyline => "axis_polyline",
        })
    }
}

impl FromStr for PathPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "segment" => Ok(PathPolicy::Segment),
            "axis_polyline" | "axis-polyline" => Ok(PathPolicy::AxisPolyline),
            other => Err(Error::Parse(format!("unknown path policy `{other}`"))),
        }
    }
}

/// Result of [`UnitalNormEvaluator::unital_decomposition`].
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub magnitude: f64,
    pub sphere_point: Element,
    /// `‖s − magnitude·sphere_point‖ / ‖s‖`.
    pub residual: f64,
    /// `U(sphere_point)`, which should be `1`.
    pub sphere_value: f64,
}

/// Evaluates one member `L` of a Proto-norm family on the units of an algebra.
#[derive(Debug, Clone)]
pub struct UnitalNormEvaluator<'a> {
    algebra: &'a AlgebraDef,
    l: DMatrix<f64>,
    one_norm_sq: f64,
    quad_rel_tol: f64,
    max_subdivisions: usize,
    path_policy: PathPolicy,
}

impl<'a> UnitalNormEvaluator<'a> {
    pub fn new(algebra: &'a AlgebraDef, l: DMatrix<f64>) -> Result<Self> {
        let d = algebra.dim();
        if l.nrows() != d || l.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: l.nrows().max(l.ncols()) });
        }
        let asym = linalg::max_abs(&(&l - l.transpose()));
        if asym > SYMMETRY_TOL * linalg::max_abs(&l).max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self {
            algebra,
            l,
            one_norm_sq: algebra.one_norm_sq()?,
            quad_rel_tol: DEFAULT_QUAD_REL_TOL,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
            path_policy: PathPolicy::Segment,
        })
    }

    pub fn with_quad_rel_tol(mut self, tol: f64) -> Self {
        self.quad_rel_tol = tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn with_path_policy(mut self, policy: PathPolicy) -> Self {
        self.path_policy = policy;
        self
    }

    pub fn algebra(&self) -> &AlgebraDef {
        self.algebra
    }

    pub fn l(&self) -> &DMatrix<f64> {
        &self.l
    }

    pub fn one_norm_sq(&self) -> f64 {
        self.one_norm_sq
    }

    pub fn path_policy(&self) -> PathPolicy {
        self.path_policy
    }

    /// Vertices of the policy path from `1` to `s`.
    pub fn path(&self, s: &Element) -> Vec<Element> {
        let one = self.algebra.unity().clone();
        match self.path_policy {
            PathPolicy::Segment => vec![one, s.clone()],
            PathPolicy::AxisPolyline => {
                let mut cur = one.clone();
                let mut out = vec![one];
                for i in 0..s.len() {
                    if cur[i] != s[i] {
                        cur[i] = s[i];
                        out.push(cur.clone());
                    }
                }
                out
            }
        }
    }

    /// `U(s)` along the configured path.
    pub fn evaluate(&self, s: &Element) -> Result<f64> {
        Ok(self.log_evaluate(s)?.exp())
    }

    /// `log U(s)` along the configured path.
    pub fn log_evaluate(&self, s: &Element) -> Result<f64> {
        self.check_len(s)?;
        self.log_along(&self.path(s))
    }

    /// `U` at the last vertex of an explicit polyline starting at `1`.
    pub fn evaluate_along(&self, vertices: &[Element]) -> Result<f64> {
        Ok(self.log_along(vertices)?.exp())
    }

    /// `log U` at the last vertex of an explicit polyline starting at `1`.
    pub fn log_along(&self, vertices: &[Element]) -> Result<f64> {
        let Some(first) = vertices.first() else {
            return Ok(0.0);
        };
        for v in vertices {
            self.check_len(v)?;
        }
        if first != self.algebra.unity() {
            return Err(Error::InvalidParams("path must start at the multiplicative identity".into()));
        }
        let legs = vertices.len() - 1;
        if legs == 0 {
            return Ok(0.0);
        }
        if !self.algebra.is_unit(&vertices[legs]) {
            return Err(Error::PathCrossesNonUnits { t: 1.0 });
        }
        let abs_tol = self.quad_rel_tol * self.one_norm_sq / legs as f64;
        let mut total = 0.0;
        for (k, pair) in vertices.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            if a == b {
                continue;
            }
            let dir = b - a;
            let integrand = |tau: f64| -> Result<f64> {
                let t = a + &dir * tau;
                let global = (k as f64 + tau) / legs as f64;
                if !self.algebra.is_unit(&t) {
                    return Err(Error::PathCrossesNonUnits { t: global });
                }
                let inv = self.algebra.inverse(&t).map_err(|_| Error::PathCrossesNonUnits { t: global })?;
                Ok((&self.l * inv).dot(&dir))
            };
            total += quadrature::integrate_absolute(integrand, 0.0, 1.0, abs_tol, self.max_subdivisions)?;
        }
        Ok(total / self.one_norm_sq)
    }

    /// Fourth-order central-difference gradient of [`evaluate`](Self::evaluate),
    /// with step `1e-4·max(1, ‖s‖)` and the quadrature tolerance tightened to
    /// [`GRADIENT_QUAD_REL_TOL`].
    pub fn gradient(&self, s: &Element) -> Result<Element> {
        self.check_len(s)?;
        let fine = UnitalNormEvaluator { quad_rel_tol: self.quad_rel_tol.min(GRADIENT_QUAD_REL_TOL), ..self.clone() };
        let h = 1e-4 * s.norm().max(1.0);
        let mut g = Element::zeros(s.len());
        for i in 0..s.len() {
            let at = |k: f64| -> Result<f64> {
                let mut p = s.clone();
                p[i] += k * h;
                fine.evaluate(&p)
            };
            g[i] = (8.0 * (at(1.0)? - at(-1.0)?) - (at(2.0)? - at(-2.0)?)) / (12.0 * h);
        }
        Ok(g)
    }

    /// `U(s)·Ls⁻¹/‖1‖²`, the gradient the construction guarantees.
    pub fn gradient_identity(&self, s: &Element) -> Result<Element> {
        let u = self.evaluate(s)?;
        Ok(&self.l * self.algebra.inverse(s)? * (u / self.one_norm_sq))
    }

    /// Splits `s` into `U(s)` times a point of the unit sphere `U = 1`.
    ///
    /// `s` must have no component in `ker L` beyond `1e-8·‖s‖`.
    pub fn unital_decomposition(&self, s: &Element) -> Result<Decomposition> {
        self.check_len(s)?;
        let norm = s.norm();
        let kernel = linalg::nullspace(&self.l, PINV_TOL);
        if kernel.ncols() > 0 {
            let leak = (kernel.transpose() * s).norm();
            if leak > KERNEL_TOL * norm {
                return Err(Error::KernelComponent(leak / norm));
            }
        }
        let magnitude = self.evaluate(s)?;
        let grad_at_inverse = self.gradient(&self.algebra.inverse(s)?)?;
        let sphere_point = linalg::pinv(&self.l, PINV_TOL) * grad_at_inverse * self.one_norm_sq;
        let residual = (s - &sphere_point * magnitude).norm() / norm;
        let sphere_value = self.evaluate(&sphere_point)?;
        if (sphere_value - 1.0).abs() > SPHERE_TOL {
            return Err(Error::SphereCheck(sphere_value));
        }
        Ok(Decomposition { magnitude, sphere_point, residual, sphere_value })
    }

    /// `|U(s)·U(s⁻¹) − 1|`.
    pub fn inverse_product_check(&self, s: &Element) -> Result<f64> {
        let inv = self.algebra.inverse(s)?;
        Ok((self.evaluate(s)? * self.evaluate(&inv)? - 1.0).abs())
    }

    fn check_len(&self, s: &Element) -> Result<()> {
        if s.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch { expected: self.algebra.dim(), got: s.len() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lookup;
    use crate::{protonorm, rng};
    use std::f64::consts::{E, PI};

    fn v(x: &[f64]) -> Element {
        Element::from_column_slice(x)
    }

    fn eval(id: &str, params: &[f64], s: &[f64]) -> f64 {
        let alg = lookup(id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm(id, params).unwrap()).unwrap();
        ev.evaluate(&v(s)).unwrap()
    }

    #[test]
    fn identity_maps_to_one() {
        for id in ["C", "M2", "uT4", "ipsg(2,1)", "O"] {
            let alg = lookup(id).unwrap();
            let params = vec![0.25; param_count(id).unwrap()];
            let ev = UnitalNormEvaluator::new(&alg, table_protonorm(id, &params).unwrap()).unwrap();
            assert_eq!(ev.evaluate(alg.unity()).unwrap(), 1.0);
        }
    }

    #[test]
    fn evaluate_examples() {
        assert!((eval("C", &[0.0], &[3.0, 4.0]) - 5.0).abs() < 1e-9);
        assert!((eval("dual", &[1.0], &[1.0, 1.0]) - E).abs() < 1e-9);
        assert!((eval("M2", &[], &[2.0, 0.0, 0.0, 3.0]) - 6f64.sqrt()).abs() < 1e-9);
        assert!((eval("C", &[1.0], &[1.0, 1.0]) - 2f64.sqrt() * (PI / 4.0).exp()).abs() < 1e-9);
    }

    #[test]
    fn gradient_examples() {
        let alg = lookup("C").unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("C", &[0.0]).unwrap()).unwrap();
        let g = ev.gradient(&v(&[3.0, 4.0])).unwrap();
        assert!((g - v(&[0.6, 0.8])).amax() < 1e-6);
        let at_one = ev.gradient(alg.unity()).unwrap();
        assert!((at_one - ev.l() * alg.unity() / ev.one_norm_sq()).amax() < 1e-6);

        let alg = lookup("R+R").unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("R+R", &[0.0]).unwrap()).unwrap();
        let g = ev.gradient(&v(&[4.0, 1.0])).unwrap();
        assert!((g - v(&[0.25, 1.0])).amax() < 1e-6);
        let gi = ev.gradient_identity(&v(&[4.0, 1.0])).unwrap();
        assert!((gi - v(&[0.25, 1.0])).amax() < 1e-9);
    }

    #[test]
    fn decomposition_examples() {
        let alg = lookup("C").unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("C", &[0.0]).unwrap()).unwrap();
        let d = ev.unital_decomposition(alg.unity()).unwrap();
        assert!((d.magnitude - 1.0).abs() < 1e-12 && (d.sphere_point.clone() - alg.unity()).amax() < 1e-6);
        let d = ev.unital_decomposition(&v(&[3.0, 4.0])).unwrap();
        assert!((d.magnitude - 5.0).abs() < 1e-9);
        assert!((d.sphere_point - v(&[0.6, 0.8])).amax() < 1e-6);
        assert!(d.residual < 1e-6);

        let alg = lookup("R+R").unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("R+R", &[0.0]).unwrap()).unwrap();
        let d = ev.unital_decomposition(&v(&[4.0, 1.0])).unwrap();
        assert!((d.magnitude - 2.0).abs() < 1e-9);
        assert!((d.sphere_point - v(&[2.0, 0.5])).amax() < 1e-5);
        assert!(d.residual < 1e-6);
    }

    #[test]
    fn singular_protonorm_requires_kernel_free_points() {
        let alg = lookup("dual").unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("dual", &[0.0]).unwrap()).unwrap();
        assert!(matches!(ev.unital_decomposition(&v(&[2.0, 1.0])), Err(Error::KernelComponent(_))));
        let d = ev.unital_decomposition(&v(&[2.0, 0.0])).unwrap();
        assert!(d.residual < 1e-6);
    }

    #[test]
    fn inverse_product_examples() {
        let c = lookup("C").unwrap();
        let ev = UnitalNormEvaluator::new(&c, table_protonorm("C", &[1.0]).unwrap()).unwrap();
        assert_eq!(ev.inverse_product_check(c.unity()).unwrap(), 0.0);
        assert!(ev.inverse_product_check(&v(&[2.0, 1.0])).unwrap() < 1e-8);
        let d = lookup("dual").unwrap();
        let ev = UnitalNormEvaluator::new(&d, table_protonorm("dual", &[1.0]).unwrap()).unwrap();
        assert!(ev.inverse_product_check(&v(&[2.0, 6.0])).unwrap() < 1e-8);
    }

    #[test]
    fn non_units_on_path_are_reported() {
        let alg = lookup("M2").unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("M2", &[]).unwrap()).unwrap();
        // det(-I) = 1 but the segment from I passes through 0.
        let err = ev.evaluate(&v(&[-1.0, 0.0, 0.0, -1.0])).unwrap_err();
        assert!(matches!(err, Error::PathCrossesNonUnits { .. }));
        let err = ev.evaluate(&v(&[1.0, 1.0, 1.0, 1.0])).unwrap_err();
        assert_eq!(err, Error::PathCrossesNonUnits { t: 1.0 });
    }

    #[test]
    fn policies_agree_when_both_paths_are_valid() {
        for (id, params) in [("C", vec![0.6]), ("A12", vec![0.3, -0.2, 0.5]), ("uT5", vec![0.2, -0.4, 0.1, 0.7])] {
            let alg = lookup(id).unwrap();
            let l = table_protonorm(id, &params).unwrap();
            let seg = UnitalNormEvaluator::new(&alg, l.clone()).unwrap();
            let poly = seg.clone().with_path_policy(PathPolicy::AxisPolyline);
            let mut st = rng::stream(2, id);
            for _ in 0..10 {
                let s = protonorm::sample_unit_near_one(&alg, &mut st, 0.4).unwrap();
                let (a, b) = (seg.evaluate(&s).unwrap(), poly.evaluate(&s).unwrap());
                assert!((a - b).abs() < 1e-8 * a, "{id}");
            }
        }
    }

    #[test]
    fn winding_around_the_origin_shifts_the_log() {
        let alg = lookup("C").unwrap();
        let beta = 0.35;
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm("C", &[beta]).unwrap()).unwrap();
        let upper = [v(&[1.0, 0.0]), v(&[1.0, 0.01]), v(&[-1.0, 0.01])];
        let lower = [v(&[1.0, 0.0]), v(&[1.0, -1.0]), v(&[-1.0, -1.0]), v(&[-1.0, 0.01])];
        let diff = ev.log_along(&upper).unwrap() - ev.log_along(&lower).unwrap();
        assert!((diff - beta * 2.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn rejects_asymmetric_or_misshapen_l() {
        let alg = lookup("C").unwrap();
        let l = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, -1.0]);
        assert!(matches!(UnitalNormEvaluator::new(&alg, l), Err(Error::NotSymmetric(_))));
        assert!(matches!(
            UnitalNormEvaluator::new(&alg, DMatrix::identity(3, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn policy_strings_round_trip() {
        for p in [PathPolicy::Segment, PathPolicy::AxisPolyline] {
            assert_eq!(p.to_string().parse::<PathPolicy>().unwrap(), p);
        }
        assert!("zigzag".parse::<PathPolicy>().is_err());
    }
}
