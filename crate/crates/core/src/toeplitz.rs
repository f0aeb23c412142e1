//! Upper triangular Toeplitz algebras `uT_n`: recursive inversion, Hankel
//! Proto-norms and the log-series form of their Unital Norms.
//!
//! An element `(x₁,…,x_n)` stands for the polynomial `x₁ + x₂u + … + x_n u^{n−1}`
//! modulo `uⁿ`, which is how the catalog `uT{n}` algebras are laid out.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// Coefficients `(x₁,…,x_n)` of an upper triangular Toeplitz matrix, one per diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzElement {
    coeffs: Vec<f64>,
}

impl ToeplitzElement {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn from_element(s: &Element) -> Self {
        Self { coeffs: s.iter().copied().collect() }
    }

    pub fn to_element(&self) -> Element {
        Element::from_column_slice(&self.coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        match self.coeffs.first() {
            Some(&x1) => x1.abs() > UNIT_TOL * self.norm(),
            None => false,
        }
    }

    fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// The dense `n×n` matrix this element denotes.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| if j >= i { self.coeffs[j - i] } else { 0.0 })
    }
}

fn check_unit(s: &ToeplitzElement) -> Result<f64> {
    if !s.is_unit() {
        let x1 = s.coeffs.first().copied().unwrap_or(0.0);
        let condition = if x1 == 0.0 { f64::INFINITY } else { s.norm() / x1.abs() };
        return Err(Error::NotAUnit { condition });
    }
    Ok(s.coeffs[0])
}

/// Reciprocal of `1 + a₁u + a₂u² + …` truncated to `n` terms.
fn reciprocal_series(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut b = vec![0.0; n];
    if n == 0 {
        return b;
    }
    b[0] = 1.0;
    for k in 1..n {
        b[k] = -(1..=k).map(|j| a[j] * b[k - j]).sum::<f64>();
    }
    b
}

/// Inverse by the triangular recursion; `O(n²)` instead of a dense solve.
pub fn toeplitz_inverse(s: &ToeplitzElement) -> Result<ToeplitzElement> {
    let x1 = check_unit(s)?;
    let scaled: Vec<f64> = s.coeffs.iter().map(|c| c / x1).collect();
    let coeffs = reciprocal_series(&scaled).into_iter().map(|y| y / x1).collect();
    Ok(ToeplitzElement { coeffs })
}

/// Anti-triangular Hankel matrix with `γ_{i+j+1}` on the anti-diagonals above
/// the main one and zeros below it.
pub fn hankel_protonorm(gammas: &[f64]) -> DMatrix<f64> {
    let n = gammas.len();
    DMatrix::from_fn(n, n, |i, j| if i + j < n { gammas[i + j] } else { 0.0 })
}

/// Coefficients `c₁,…,c_{n−1}` of `log(1 + a₁u + … + a_{n−1}u^{n−1})`, from
/// the identity `f·(log f)' = f'`.
pub fn log_series(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut c = vec![0.0; n];
    for k in 1..n {
        let kf = k as f64;
        let conv: f64 = (1..k).map(|j| j as f64 * c[j] * a[k - j]).sum();
        c[k] = (kf * a[k] - conv) / kf;
    }
    c
}

/// `x₁·exp(Σ γ_{k+1} c_k)`, with `c_k` the log-series coefficients of `s/x₁`.
pub fn log_series_norm(gammas: &[f64], s: &ToeplitzElement) -> Result<f64> {
    if gammas.len() != s.len() {
        return Err(Error::DimensionMismatch { expected: s.len(), got: gammas.len() });
    }
    if (gammas[0] - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParams(format!("leading gamma must be 1, got {}", gammas[0])));
    }
    let x1 = check_unit(s)?;
    if x1 <= 0.0 {
        return Err(Error::NonPositiveLeading(x1));
    }
    let scaled: Vec<f64> = s.coeffs.iter().map(|c| c / x1).collect();
    let c = log_series(&scaled);
    let exponent: f64 = (1..s.len()).map(|k| gammas[k] * c[k]).sum();
    Ok(x1 * exponent.exp())
}

/// Largest violation of `∂(s⁻¹)_k/∂x_j = ∂(s⁻¹)_{k−j+1}/∂x₁` (1-based, `j ≤ k`)
/// measured with central differences of step `h`.
pub fn shift_identity_residual(s: &ToeplitzElement, h: f64) -> Result<f64> {
    check_unit(s)?;
    let n = s.len();
    let mut jac = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut plus = s.clone();
        let mut minus = s.clone();
        plus.coeffs[j] += h;
        minus.coeffs[j] -= h;
        let ip = toeplitz_inverse(&plus)?;
        let im = toeplitz_inverse(&minus)?;
        for k in 0..n {
            jac[(k, j)] = (ip.coeffs[k] - im.coeffs[k]) / (2.0 * h);
        }
    }
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for j in 0..=k {
            worst = worst.max((jac[(k, j)] - jac[(k - j, 0)]).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lookup;
    use crate::rng;

    fn t(c: &[f64]) -> ToeplitzElement {
        ToeplitzElement::new(c.to_vec())
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(toeplitz_inverse(&t(&[2.0, 6.0])).unwrap().coeffs(), &[0.5, -1.5]);
        assert_eq!(toeplitz_inverse(&t(&[1.0, 1.0, 1.0])).unwrap().coeffs(), &[1.0, -1.0, 0.0]);
        assert_eq!(toeplitz_inverse(&t(&[1.0, 0.0, 0.0, 0.0])).unwrap().coeffs(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(toeplitz_inverse(&t(&[0.0, 1.0])), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn inverse_matches_dense_lu() {
        let mut st = rng::stream(3, "toeplitz-inverse");
        for n in 1..=8usize {
            for _ in 0..20 {
                let mut c: Vec<f64> = (0..n).map(|_| rng::uniform(&mut st, -2.0, 2.0)).collect();
                c[0] = rng::uniform(&mut st, 0.3, 2.0) * if c[0] < 0.0 { -1.0 } else { 1.0 };
                let s = t(&c);
                let fast = toeplitz_inverse(&s).unwrap().matrix();
                let dense = s.matrix().try_inverse().unwrap();
                assert!((fast - dense).abs().max() < 1e-12 * (1.0 + c[0].abs().recip()).powi(n as i32));
            }
        }
    }

    #[test]
    fn inverse_agrees_with_algebra_core() {
        let alg = lookup("uT5").unwrap();
        let s = t(&[1.3, -0.4, 0.7, 0.2, -1.1]);
        let a = alg.inverse(&s.to_element()).unwrap();
        let b = toeplitz_inverse(&s).unwrap().to_element();
        assert!((a - b).amax() < 1e-12);
    }

    #[test]
    fn hankel_examples() {
        let h = hankel_protonorm(&[1.0, 0.5]);
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 0.0]));
        let h = hankel_protonorm(&[1.0, 2.0, 3.0]);
        assert_eq!(h, DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 3.0, 0.0, 3.0, 0.0, 0.0]));
        assert_eq!(hankel_protonorm(&[0.0; 4]), DMatrix::zeros(4, 4));
    }

    #[test]
    fn log_series_matches_low_order_closed_forms() {
        let (beta, gamma) = (0.7, -0.4);
        let (x, z, w) = (1.6, 0.9, -0.3);
        let v = log_series_norm(&[1.0, beta], &t(&[x, z])).unwrap();
        assert!((v - x * (beta * z / x).exp()).abs() < 1e-14);
        let v = log_series_norm(&[1.0, beta, gamma], &t(&[x, z, w])).unwrap();
        let printed = x * (beta * z / x + gamma * (w / x - 0.5 * (z / x).powi(2))).exp();
        assert!((v - printed).abs() < 1e-14);
        let v = log_series_norm(&[1.0, 0.0, 0.0, 0.0], &t(&[2.0, 5.0, -3.0, 7.0])).unwrap();
        assert_eq!(v, 2.0);
    }

    #[test]
    fn log_series_against_real_logarithm() {
        // For a polynomial with a real root factorisation the series is a sum of
        // geometric logs: log(1 + a u) = Σ (−1)^{k+1} a^k u^k / k.
        let (a, b) = (0.3, -0.8);
        let coeffs = [1.0, a + b, a * b, 0.0, 0.0, 0.0];
        let c = log_series(&coeffs);
        for (k, ck) in c.iter().enumerate().skip(1) {
            let kf = k as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let expect = sign * (a.powi(k as i32) + b.powi(k as i32)) / kf;
            assert!((ck - expect).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn log_series_norm_errors() {
        assert!(matches!(log_series_norm(&[1.0, 0.0], &t(&[-1.0, 0.0])), Err(Error::NonPositiveLeading(_))));
        assert!(matches!(log_series_norm(&[1.0, 0.0], &t(&[0.0, 1.0])), Err(Error::NotAUnit { .. })));
        assert!(matches!(log_series_norm(&[2.0, 0.0], &t(&[1.0, 1.0])), Err(Error::InvalidParams(_))));
        assert!(matches!(log_series_norm(&[1.0], &t(&[1.0, 1.0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn shift_identity_holds() {
        let mut st = rng::stream(11, "toeplitz-shift");
        for n in 1..=6 {
            let mut c: Vec<f64> = (0..n).map(|_| rng::uniform(&mut st, -1.0, 1.0)).collect();
            c[0] = rng::uniform(&mut st, 0.5, 1.5);
            assert!(shift_identity_residual(&t(&c), 1e-5).unwrap() < 1e-6);
        }
    }

    #[test]
    fn determinant_is_leading_power() {
        let s = t(&[1.5, 2.0, -3.0, 0.25]);
        assert!((s.matrix().determinant() - 1.5f64.powi(4)).abs() < 1e-12);
    }
}
