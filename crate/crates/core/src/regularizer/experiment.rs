//! Synthetic problems with prescribed singular spectra and the `ε = δ`
//! convergence experiment.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{geometric_fixed_point, SvdProblem};
use crate::error::{Error, Result};
use crate::rng::{self, Stream};

/// Singular value law `σᵢ = i^{-p}` (1-based `i`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Spectrum {
    PowerLaw(f64),
}

impl Spectrum {
    pub fn values(&self, n: usize) -> DVector<f64> {
        match *self {
            Spectrum::PowerLaw(p) => DVector::from_fn(n, |i, _| ((i + 1) as f64).powf(-p)),
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spectrum::PowerLaw(p) => write!(f, "i^-{p}"),
        }
    }
}

fn parse_power_law(s: &str) -> Option<f64> {
    s.trim().strip_prefix("i^-")?.parse().ok().filter(|p: &f64| p.is_finite() && *p >= 0.0)
}

impl FromStr for Spectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_power_law(s)
            .map(Spectrum::PowerLaw)
            .ok_or_else(|| Error::Parse(format!("spectrum `{s}` is not of the form i^-p")))
    }
}

/// Exact solution, given by its coefficients in the right singular basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum XTrue {
    /// `vᵢᵀx = i^{-p}`.
    PowerLaw(f64),
    Zero,
}

impl XTrue {
    pub fn coefficients(&self, n: usize) -> DVector<f64> {
        match *self {
            XTrue::PowerLaw(p) => DVector::from_fn(n, |i, _| ((i + 1) as f64).powf(-p)),
            XTrue::Zero => DVector::zeros(n),
        }
    }
}

impl FromStr for XTrue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "zero" {
            return Ok(XTrue::Zero);
        }
        parse_power_law(s)
            .map(XTrue::PowerLaw)
            .ok_or_else(|| Error::Parse(format!("x_true `{s}` is not `zero` or i^-p")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseModel {
    /// A seeded unit direction scaled to exactly `δ`.
    #[default]
    Direction,
    /// Independent `N(0, δ²/n)` entries, so `‖ν‖ ≈ δ`.
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub n: usize,
    pub spectrum: Spectrum,
    pub x_true: XTrue,
    pub deltas: Vec<f64>,
    pub seed: u64,
    pub noise: NoiseModel,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            n: 200,
            spectrum: Spectrum::PowerLaw(2.0),
            x_true: XTrue::PowerLaw(3.0),
            deltas: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5],
            seed: 0,
            noise: NoiseModel::Direction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub delta: f64,
    pub epsilon: f64,
    pub retained_count: usize,
    pub discrepancy: f64,
    pub error: f64,
}

/// Haar-distributed orthogonal matrix from the QR factors of a Gaussian matrix.
pub fn random_orthogonal(stream: &mut Stream, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng::normal_vector(stream, 1)[0]);
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Operator, exact solution and noise direction shared by every `δ`.
#[derive(Debug, Clone)]
pub struct Synthetic {
    pub clean: SvdProblem,
    pub x_true: DVector<f64>,
    pub noise: DVector<f64>,
}

impl Synthetic {
    /// Builds `F = U·diag(σ)·Vᵀ` with seeded orthogonal factors and factors it
    /// again with the Jacobi SVD.
    pub fn build(spec: &ExperimentSpec) -> Result<Self> {
        let n = spec.n;
        if n == 0 {
            return Err(Error::InvalidParams("problem size must be positive".into()));
        }
        let u = random_orthogonal(&mut rng::stream(spec.seed, "experiment/u"), n);
        let v = random_orthogonal(&mut rng::stream(spec.seed, "experiment/v"), n);
        let f = &u * DMatrix::from_diagonal(&spec.spectrum.values(n)) * v.transpose();
        let x_true = &v * spec.x_true.coefficients(n);
        let y = &f * &x_true;
        let mut ns = rng::stream(spec.seed, "experiment/noise");
        let noise = match spec.noise {
            NoiseModel::Direction => rng::unit_sphere(&mut ns, n),
            NoiseModel::Gaussian => rng::normal_vector(&mut ns, n) / (n as f64).sqrt(),
        };
        Ok(Self { clean: SvdProblem::new(f, y, 0.0, 0.0)?, x_true, noise })
    }

    /// Data `Fx_true + δ·noise` with `ε = epsilon`.
    pub fn at(&self, delta: f64, epsilon: f64) -> Result<SvdProblem> {
        let y = self.clean.y() + &self.noise * delta;
        self.clean.clone().with_y(y).map(|p| p.with_delta(delta).with_epsilon(epsilon))
    }
}

/// Runs the geometric fixed point with `ε = δ` for each `δ` and records
/// `‖x_true − x^δ‖`.
pub fn convergence_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>> {
    if spec.deltas.iter().any(|&d| !(d >= 0.0)) || spec.deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParams("deltas must be nonnegative and strictly decreasing".into()));
    }
    let syn = Synthetic::build(spec)?;
    spec.deltas
        .iter()
        .map(|&delta| {
            let p = syn.at(delta, delta)?;
            let sol = geometric_fixed_point(&p);
            Ok(ExperimentRow {
                delta,
                epsilon: delta,
                retained_count: sol.retained_indices.len(),
                discrepancy: sol.discrepancy,
                error: (&syn.x_true - &sol.x).norm(),
            })
        })
        .collect()
}

/// Random square problem whose retained coefficients all satisfy
/// `|uᵢᵀy| ≥ 5ε` and whose dropped ones satisfy `|uᵢᵀy| ≤ 1.5ε`.
pub fn seeded_problem(seed: u64, index: usize) -> Result<SvdProblem> {
    let mut st = rng::stream(seed, &format!("seeded-problem/{index}"));
    let n = 3 + (rng::uniform(&mut st, 0.0, 10.0) as usize);
    let u = random_orthogonal(&mut st, n);
    let v = random_orthogonal(&mut st, n);
    let mut sigma: Vec<f64> = (0..n).map(|_| rng::uniform(&mut st, 0.05, 2.0)).collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    let eps = rng::uniform(&mut st, 0.01, 0.1);
    let mut c = DVector::zeros(n);
    for i in 0..n {
        let sign = if rng::uniform(&mut st, -1.0, 1.0) < 0.0 { -1.0 } else { 1.0 };
        let keep = i == 0 || rng::uniform(&mut st, 0.0, 1.0) < 0.7;
        c[i] = sign * if keep { rng::uniform(&mut st, 5.0, 40.0) } else { rng::uniform(&mut st, 0.0, 1.5) } * eps;
    }
    let y = &u * c;
    SvdProblem::from_factors(u, DVector::from_vec(sigma), v, y, eps, eps)
}

/// JSON problem description accepted by the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// Dense operator, one inner vector per row.
    #[serde(default)]
    pub f: Option<Vec<Vec<f64>>>,
    /// Spectrum law for a synthetic operator when `f` is absent.
    #[serde(default)]
    pub spectrum: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub y: Option<Vec<f64>>,
    /// Either a vector or a law such as `i^-3` (coefficients in the `v` basis).
    #[serde(default)]
    pub x_true: Option<serde_json::Value>,
    pub delta: f64,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A problem ready to solve, plus the exact solution when it is known.
#[derive(Debug, Clone)]
pub struct LoadedProblem {
    pub problem: SvdProblem,
    pub x_true: Option<DVector<f64>>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(&self) -> Result<LoadedProblem> {
        let seed = self.seed.unwrap_or(0);
        let eps = self.epsilon.unwrap_or(self.delta);
        if let Some(rows) = &self.f {
            let n = rows.len();
            let m = rows.first().map_or(0, Vec::len);
            if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
                return Err(Error::Parse("f must be a non-empty rectangular array".into()));
            }
            let f = DMatrix::from_fn(n, m, |i, j| rows[i][j]);
            let x_true = match &self.x_true {
                None => None,
                Some(serde_json::Value::Array(_)) => {
                    let v: Vec<f64> = serde_json::from_value(self.x_true.clone().unwrap_or_default())
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    if v.len() != m {
                        return Err(Error::DimensionMismatch { expected: m, got: v.len() });
                    }
                    Some(DVector::from_vec(v))
                }
                Some(_) => return Err(Error::Parse("with an explicit f, x_true must be a vector".into())),
            };
            let y = match (&self.y, &x_true) {
                (Some(y), _) => DVector::from_column_slice(y),
                (None, Some(x)) => &f * x + rng::unit_sphere(&mut rng::stream(seed, "problem/noise"), n) * self.delta,
                (None, None) => return Err(Error::Parse("need y or x_true".into())),
            };
            let problem = SvdProblem::new(f, y, self.delta, eps)?;
            return Ok(LoadedProblem { problem, x_true });
        }
        let spectrum = self.spectrum.as_deref().unwrap_or("i^-2").parse()?;
        let x_law = match &self.x_true {
            None => XTrue::PowerLaw(3.0),
            Some(serde_json::Value::String(s)) => s.parse()?,
            Some(_) => return Err(Error::Parse("with a spectrum law, x_true must be `zero` or i^-p".into())),
        };
        let spec = ExperimentSpec {
            n: self.n.unwrap_or(200),
            spectrum,
            x_true: x_law,
            deltas: vec![self.delta],
            seed,
            noise: NoiseModel::Direction,
        };
        let syn = Synthetic::build(&spec)?;
        Ok(LoadedProblem { problem: syn.at(self.delta, eps)?, x_true: Some(syn.x_true) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_orthogonal_is_orthogonal() {
        let q = random_orthogonal(&mut rng::stream(1, "q"), 9);
        assert!((q.transpose() * &q - DMatrix::identity(9, 9)).amax() < 1e-13);
    }

    #[test]
    fn zero_delta_recovers_x_true() {
        let spec = ExperimentSpec { n: 40, deltas: vec![0.0], ..Default::default() };
        let rows = convergence_experiment(&spec).unwrap();
        assert!(rows[0].error < 1e-10);
    }

    #[test]
    fn zero_signal_is_fully_truncated() {
        let spec = ExperimentSpec { n: 30, x_true: XTrue::Zero, deltas: vec![1e-1, 1e-3], ..Default::default() };
        for row in convergence_experiment(&spec).unwrap() {
            assert_eq!(row.retained_count, 0);
            assert_eq!(row.error, 0.0);
        }
    }

    #[test]
    fn deltas_must_descend() {
        let spec = ExperimentSpec { n: 5, deltas: vec![1e-3, 1e-2], ..Default::default() };
        assert!(convergence_experiment(&spec).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("i^-2".parse::<Spectrum>().unwrap(), Spectrum::PowerLaw(2.0));
        assert!("2^-i".parse::<Spectrum>().is_err());
        assert_eq!("zero".parse::<XTrue>().unwrap(), XTrue::Zero);
        assert_eq!(Spectrum::PowerLaw(2.0).to_string(), "i^-2");
    }

    #[test]
    fn problem_file_variants() {
        let p = ProblemFile::from_json(r#"{"f": [[2, 0], [0, 1]], "y": [4, 3], "delta": 0.0}"#).unwrap();
        let lp = p.load().unwrap();
        assert_eq!(lp.problem.sigma().as_slice(), &[2.0, 1.0]);
        assert!(lp.x_true.is_none());
        let p = ProblemFile::from_json(r#"{"spectrum": "i^-2", "n": 12, "delta": 1e-3}"#).unwrap();
        let lp = p.load().unwrap();
        assert_eq!(lp.problem.f().nrows(), 12);
        assert!(((lp.problem.y() - lp.problem.f() * lp.x_true.unwrap()).norm() - 1e-3).abs() < 1e-15);
        assert!(ProblemFile::from_json(r#"{"delta": 1, "bogus": 2}"#).is_err());
    }

    #[test]
    fn seeded_problems_respect_the_gap() {
        for k in 0..5 {
            let p = seeded_problem(0, k).unwrap();
            let eps = p.epsilon();
            for &c in p.coefficients().iter() {
                assert!(c.abs() >= 5.0 * eps || c.abs() <= 1.5 * eps);
            }
        }
    }
}
