//! Closed-form Unital Norm families and their normalized Proto-norms for the
//! catalog algebras.
//!
//! Parameter vectors per algebra:
//!
//! | id | params |
//! |----|--------|
//! | `R`, `M{n}`, `H`, `O`, `ipsg(m,n)` | none |
//! | `C`, `split-C`, `dual` | `[β]` |
//! | `R+R`, `A10` | `[σ]` |
//! | `diag(n)` | `[σ₁,…,σ_n]` with `Σσ_i = n` |
//! | `A11` | `[β, γ]` |
//! | `A12` | `[β, γ, δ]` |
//! | `A13` | `[σ, β]` |
//! | `uT{n}` | `[γ₂,…,γ_n]` |

use nalgebra::{DMatrix, DVector};

use crate::algebra::{self, Element, InverseRule};
use crate::error::{Error, Result};
use crate::rng::{self, Stream};
use crate::toeplitz::{self, ToeplitzElement};

/// Canonical shape of an algebra id, resolved through the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Real,
    Matrix(usize),
    Quaternion,
    Octonion,
    Complex,
    SplitComplex,
    Dual,
    DirectSum2,
    Diagonal(usize),
    Ipsg(usize, usize),
    A10,
    A11,
    A12,
    A13,
    Toeplitz(usize),
}

fn kind(id: &str) -> Result<Kind> {
    let alg = algebra::lookup(id)?;
    let name = alg.name();
    let k = match name {
        "R" => Kind::Real,
        "C" => Kind::Complex,
        "split-C" => Kind::SplitComplex,
        "R+R" => Kind::DirectSum2,
        "dual" => Kind::Dual,
        "H" => Kind::Quaternion,
        "O" => Kind::Octonion,
        "A10" => Kind::A10,
        "A11" => Kind::A11,
        "A12" => Kind::A12,
        "A13" => Kind::A13,
        _ => {
            if let InverseRule::Ipsg { m, n } = alg.inverse_rule() {
                Kind::Ipsg(m, n)
            } else if let Some(n) = name.strip_prefix("uT") {
                Kind::Toeplitz(n.parse().expect("catalog name"))
            } else if let Some(n) = name.strip_prefix('M') {
                Kind::Matrix(n.parse().expect("catalog name"))
            } else if name.starts_with("diag(") {
                Kind::Diagonal(alg.dim())
            } else {
                return Err(Error::UnknownAlgebra(id.to_string()));
            }
        }
    };
    Ok(k)
}

/// Number of family parameters [`closed_form`] expects for `id`.
pub fn param_count(id: &str) -> Result<usize> {
    Ok(match kind(id)? {
        Kind::Real | Kind::Matrix(_) | Kind::Quaternion | Kind::Octonion | Kind::Ipsg(..) => 0,
        Kind::Complex | Kind::SplitComplex | Kind::Dual | Kind::DirectSum2 | Kind::A10 => 1,
        Kind::Diagonal(n) => n,
        Kind::A11 | Kind::A13 => 2,
        Kind::A12 => 3,
        Kind::Toeplitz(n) => n - 1,
    })
}

fn check_params(id: &str, k: Kind, params: &[f64]) -> Result<()> {
    let expected = param_count(id)?;
    if params.len() != expected {
        return Err(Error::ParamCount { expected, got: params.len() });
    }
    if let Kind::Diagonal(n) = k {
        let sum: f64 = params.iter().sum();
        if (sum - n as f64).abs() > 1e-9 * n as f64 {
            return Err(Error::InvalidParams(format!("diagonal weights must sum to {n}, got {sum}")));
        }
    }
    Ok(())
}

/// The normalized Proto-norm that generates the closed form with the same parameters.
pub fn table_protonorm(id: &str, params: &[f64]) -> Result<DMatrix<f64>> {
    let k = kind(id)?;
    check_params(id, k, params)?;
    let p = |i: usize| params[i];
    let m = match k {
        Kind::Real => DMatrix::identity(1, 1),
        Kind::Matrix(n) => {
            let d = n * n;
            let mut t = DMatrix::zeros(d, d);
            for i in 0..n {
                for j in 0..n {
                    t[(i + n * j, j + n * i)] = 1.0;
                }
            }
            t
        }
        Kind::Quaternion => star_metric(4),
        Kind::Octonion => star_metric(8),
        Kind::Complex => DMatrix::from_row_slice(2, 2, &[1.0, p(0), p(0), -1.0]),
        Kind::SplitComplex => DMatrix::from_row_slice(2, 2, &[1.0, p(0), p(0), 1.0]),
        Kind::Dual => DMatrix::from_row_slice(2, 2, &[1.0, p(0), p(0), 0.0]),
        Kind::DirectSum2 => DMatrix::from_diagonal(&DVector::from_vec(vec![1.0 + p(0), 1.0 - p(0)])),
        Kind::Diagonal(_) => DMatrix::from_diagonal(&DVector::from_column_slice(params)),
        Kind::Ipsg(m, n) => {
            let diag: Vec<f64> = std::iter::once(1.0)
                .chain(std::iter::repeat(1.0).take(m))
                .chain(std::iter::repeat(-1.0).take(n))
                .collect();
            DMatrix::from_diagonal(&DVector::from_vec(diag))
        }
        Kind::A10 => DMatrix::from_diagonal(&DVector::from_vec(vec![1.0 + p(0), 1.0 - p(0), 0.0])),
        Kind::A11 => toeplitz::hankel_protonorm(&[1.0, p(0), p(1)]),
        Kind::A12 => {
            let (b, g, d) = (p(0), p(1), p(2));
            #[rustfmt::skip]
            let rows = [
                1.0, b,       g,       d,
                b,   0.0,     0.5 * d, 0.0,
                g,   0.5 * d, 0.0,     0.0,
                d,   0.0,     0.0,     0.0,
            ];
            DMatrix::from_row_slice(4, 4, &rows)
        }
        Kind::A13 => {
            let (sigma, beta) = (p(0), p(1));
            let mut l = DMatrix::zeros(5, 5);
            l[(0, 0)] = 1.0 + sigma;
            l[(1, 1)] = 1.0 - sigma;
            l[(0, 3)] = beta;
            l[(3, 0)] = beta;
            l
        }
        Kind::Toeplitz(_) => toeplitz::hankel_protonorm(&gammas(params)),
    };
    Ok(m)
}

fn star_metric(d: usize) -> DMatrix<f64> {
    let mut m = -DMatrix::identity(d, d);
    m[(0, 0)] = 1.0;
    m
}

fn gammas(params: &[f64]) -> Vec<f64> {
    std::iter::once(1.0).chain(params.iter().copied()).collect()
}

fn out_of_domain(what: &str) -> Error {
    Error::OutOfDomain(what.to_string())
}

fn positive(v: f64, what: &str) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(out_of_domain(what))
    }
}

/// Evaluates the closed-form family member at `s`.
///
/// Each formula is only claimed on the region that contains `1` and on which
/// its branch is smooth: positive coordinates for the logarithmic families,
/// `x > 0` for the exponential ones, `x > |y|` for split-complex numbers and
/// the right half-plane for complex numbers with `β ≠ 0`.
pub fn closed_form(id: &str, params: &[f64], s: &Element) -> Result<f64> {
    let k = kind(id)?;
    check_params(id, k, params)?;
    let dim = algebra::lookup(id)?.dim();
    if s.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: s.len() });
    }
    let p = |i: usize| params[i];
    let nonzero = |v: f64, what: &str| if v != 0.0 { Ok(v) } else { Err(out_of_domain(what)) };
    let value = match k {
        Kind::Real => nonzero(s[0], "x = 0")?.abs(),
        Kind::Matrix(n) => {
            let det = DMatrix::from_column_slice(n, n, s.as_slice()).determinant();
            nonzero(det, "singular matrix")?.abs().powf(1.0 / n as f64)
        }
        Kind::Quaternion | Kind::Octonion => nonzero(s.norm(), "zero element")?,
        Kind::Complex => {
            let (x, y, beta) = (s[0], s[1], p(0));
            if beta == 0.0 {
                nonzero(x.hypot(y), "zero element")?
            } else {
                positive(x, "complex family with beta != 0 needs x > 0")?;
                x.hypot(y) * (beta * (y / x).atan()).exp()
            }
        }
        Kind::SplitComplex => {
            let (x, y, beta) = (s[0], s[1], p(0));
            if x <= y.abs() {
                return Err(out_of_domain("split-complex family needs x > |y|"));
            }
            (x * x - y * y).sqrt() * (beta * (y / x).atanh()).exp()
        }
        Kind::Dual => {
            let x = positive(s[0], "x > 0")?;
            x * (p(0) * s[1] / x).exp()
        }
        Kind::DirectSum2 => {
            let x = positive(s[0], "x > 0")?;
            let y = positive(s[1], "y > 0")?;
            x.powf(0.5 * (1.0 + p(0))) * y.powf(0.5 * (1.0 - p(0)))
        }
        Kind::Diagonal(n) => {
            let mut log = 0.0;
            for i in 0..n {
                log += params[i] * positive(s[i], "all coordinates > 0")?.ln();
            }
            (log / n as f64).exp()
        }
        Kind::Ipsg(m, _) => nonzero(algebra::ipsg_quadratic(s, m), "null element")?.abs().sqrt(),
        Kind::A10 => {
            let x = positive(s[0], "x > 0")?;
            let y = positive(s[1], "y > 0")?;
            (x * y).sqrt() * (x / y).powf(0.5 * p(0))
        }
        Kind::A11 => {
            let (x, z, w) = (positive(s[0], "x > 0")?, s[1], s[2]);
            let (beta, gamma) = (p(0), p(1));
            x * (beta * z / x + gamma * w / x - 0.5 * gamma * (z / x).powi(2)).exp()
        }
        Kind::A12 => {
            let (x, v, z, w) = (positive(s[0], "x > 0")?, s[1], s[2], s[3]);
            let (beta, gamma, delta) = (p(0), p(1), p(2));
            x * (beta * v / x + gamma * z / x + delta * w / x - 0.5 * delta * z * v / (x * x)).exp()
        }
        Kind::A13 => {
            let x = positive(s[0], "x > 0")?;
            let y = positive(s[1], "y > 0")?;
            let z = s[3];
            let (sigma, beta) = (p(0), p(1));
            (x * y).sqrt() * (x / y).powf(0.5 * sigma) * (0.5 * beta * z / x).exp()
        }
        Kind::Toeplitz(_) => toeplitz::log_series_norm(&gammas(params), &ToeplitzElement::from_element(s))?,
    };
    Ok(value)
}

/// Draws family parameters for `id`: each free parameter uniform in `[-1, 1]`,
/// with diagonal weights shifted so that they sum to `n`.
pub fn sample_params(id: &str, stream: &mut Stream) -> Result<Vec<f64>> {
    let k = kind(id)?;
    let count = param_count(id)?;
    let mut params: Vec<f64> = (0..count).map(|_| rng::uniform(stream, -1.0, 1.0)).collect();
    if let Kind::Diagonal(n) = k {
        let mean = params.iter().sum::<f64>() / n as f64;
        for p in &mut params {
            *p += 1.0 - mean;
        }
    }
    Ok(params)
}

/// Largest perturbation radius used by [`sample_unit`].
pub const SAMPLE_RADIUS: f64 = 0.9;
const MAX_DRAWS: usize = 1000;

/// Draws `α(1 + r)` with `r` uniform in the ball of radius [`SAMPLE_RADIUS`]
/// and `log α` uniform in `[-0.7, 0.7]`, redrawing until the point lies in the
/// region where [`closed_form`] is claimed. That region is a cone containing
/// `1`, so the straight segment from `1` stays inside it.
pub fn sample_unit(id: &str, params: &[f64], stream: &mut Stream) -> Result<Element> {
    sample_unit_in(id, params, stream, SAMPLE_RADIUS)
}

/// [`sample_unit`] with a caller-chosen radius.
pub fn sample_unit_in(id: &str, params: &[f64], stream: &mut Stream, radius: f64) -> Result<Element> {
    let k = kind(id)?;
    let alg = algebra::lookup(id)?;
    for _ in 0..MAX_DRAWS {
        let alpha = rng::uniform(stream, -0.7, 0.7).exp();
        let s = (alg.unity() + rng::unit_ball(stream, alg.dim()) * radius) * alpha;
        if let Kind::Ipsg(m, _) = k {
            if s[0] <= 0.0 || algebra::ipsg_quadratic(&s, m) <= 0.0 {
                continue;
            }
        }
        match closed_form(id, params, &s) {
            Ok(_) => return Ok(s),
            Err(Error::OutOfDomain(_)) | Err(Error::NonPositiveLeading(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailure(MAX_DRAWS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protonorm;

    fn v(x: &[f64]) -> Element {
        Element::from_column_slice(x)
    }

    #[test]
    fn printed_examples() {
        let c = closed_form("C", &[1.0], &v(&[1.0, 1.0])).unwrap();
        assert!((c - 2f64.sqrt() * (std::f64::consts::PI / 4.0).exp()).abs() < 1e-12);
        assert!((c - 3.1017664).abs() < 1e-7);
        assert_eq!(closed_form("split-C", &[0.0], &v(&[5.0, 3.0])).unwrap(), 4.0);
        let ip = closed_form("ipsg(3,0)", &[], &v(&[2.0, 1.0, 0.0, 0.0])).unwrap();
        assert!((ip - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(closed_form("C", &[0.0], &v(&[3.0, 4.0])).unwrap(), 5.0);
        assert!((closed_form("dual", &[1.0], &v(&[1.0, 1.0])).unwrap() - std::f64::consts::E).abs() < 1e-15);
        let m2 = closed_form("M2", &[], &v(&[2.0, 0.0, 0.0, 3.0])).unwrap();
        assert!((m2 - 6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn split_complex_two_forms_agree() {
        for beta in [-0.7, 0.0, 0.4] {
            let (x, y): (f64, f64) = (2.0, -0.6);
            let factored = (x + y).powf(0.5 * (1.0 + beta)) * (x - y).powf(0.5 * (1.0 - beta));
            let u = closed_form("split-C", &[beta], &v(&[x, y])).unwrap();
            assert!((u - factored).abs() < 1e-13);
        }
    }

    #[test]
    fn domain_and_param_errors() {
        assert!(matches!(closed_form("C", &[1.0], &v(&[-1.0, 0.5])), Err(Error::OutOfDomain(_))));
        assert!(closed_form("C", &[0.0], &v(&[-1.0, 0.5])).is_ok());
        assert!(matches!(closed_form("split-C", &[0.0], &v(&[1.0, 2.0])), Err(Error::OutOfDomain(_))));
        assert!(matches!(closed_form("C", &[], &v(&[1.0, 0.0])), Err(Error::ParamCount { expected: 1, got: 0 })));
        assert!(matches!(closed_form("diag(3)", &[1.0, 1.0, 2.0], &v(&[1.0, 1.0, 1.0])), Err(Error::InvalidParams(_))));
        assert!(matches!(closed_form("uT3", &[0.1, 0.2], &v(&[-1.0, 0.0, 0.0])), Err(Error::NonPositiveLeading(_))));
        assert!(matches!(closed_form("nope", &[], &v(&[1.0])), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn sampled_units_stay_in_the_domain() {
        let mut st = rng::stream(0, "sample-unit");
        for id in ["C", "split-C", "A13", "ipsg(2,1)", "uT4", "M3"] {
            let params = sample_params(id, &mut st).unwrap();
            for _ in 0..50 {
                let s = sample_unit(id, &params, &mut st).unwrap();
                assert!(closed_form(id, &params, &s).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(param_count("complex").unwrap(), 1);
        assert_eq!(param_count("uT5").unwrap(), 4);
        assert_eq!(param_count("diag(4)").unwrap(), 4);
        assert_eq!(param_count("ipsg(1,2)").unwrap(), 0);
    }

    /// Every table Proto-norm lies in the numerically solved family, is
    /// normalized, and its closed form has the gradient `U·Ls⁻¹/‖1‖²`.
    #[test]
    fn table_protonorms_are_normalized_family_members() {
        let ids = [
            "R",
            "M2",
            "M3",
            "H",
            "O",
            "C",
            "split-C",
            "dual",
            "R+R",
            "diag(3)",
            "ipsg(2,0)",
            "ipsg(1,2)",
            "A10",
            "A11",
            "A12",
            "A13",
            "uT4",
        ];
        for id in ids {
            let alg = algebra::lookup(id).unwrap();
            let mut st = rng::stream(5, id);
            let params = sample_params(id, &mut st).unwrap();
            let l = table_protonorm(id, &params).unwrap();
            let one = alg.unity();
            let n1 = alg.one_norm_sq().unwrap();
            assert!((one.dot(&(&l * one)) - n1).abs() < 1e-12, "{id}: normalization");
            if alg.is_associative() {
                let fam = protonorm::solve_family(&alg, 3 * alg.dim() * alg.dim(), 1).unwrap();
                assert!(fam.span_residual(&l) < 1e-8, "{id}: span");
            }
            let s = protonorm::sample_unit_near_one(&alg, &mut st, 0.2).unwrap();
            let u = closed_form(id, &params, &s).unwrap();
            let expect = (&l * alg.inverse(&s).unwrap()) * (u / n1);
            for i in 0..alg.dim() {
                let h = 1e-6;
                let mut sp = s.clone();
                let mut sm = s.clone();
                sp[i] += h;
                sm[i] -= h;
                let g = (closed_form(id, &params, &sp).unwrap() - closed_form(id, &params, &sm).unwrap()) / (2.0 * h);
                assert!((g - expect[i]).abs() < 1e-7 * (1.0 + u), "{id}: d/dx{i} {g} vs {}", expect[i]);
            }
        }
    }
}
