//! Adaptive 15-point Gauss–Legendre quadrature with bisection refinement.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 15;

/// Nodes and weights on `[-1, 1]`, computed once by Newton iteration on `P₁₅`.
fn rule() -> &'static ([f64; ORDER], [f64; ORDER]) {
    static RULE: OnceLock<([f64; ORDER], [f64; ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut x = [0.0; ORDER];
        let mut w = [0.0; ORDER];
        let n = ORDER as f64;
        for i in 0..ORDER {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(ORDER, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    let (_, d) = legendre(ORDER, z);
                    dp = d;
                    break;
                }
            }
            x[i] = -z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (x, w)
    })
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

fn panel<F>(f: &mut F, a: f64, b: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (x, w) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for i in 0..ORDER {
        acc += w[i] * f(mid + half * x[i])?;
    }
    Ok(acc * half)
}

/// Integrates `f` over `[a, b]`.
///
/// A panel is accepted once its two halves agree with it to within its
/// share of `tol·max(1, |I|)`, so `tol` bounds the absolute error of `I`
/// when `|I| ≤ 1` and its relative error otherwise. Errors raised by `f`
/// (for instance a failed unit test at a node) propagate unchanged.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64, max_subdivisions: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let whole = panel(&mut f, a, b)?;
    refine(f, a, b, whole, tol * whole.abs().max(1.0), max_subdivisions)
}

/// Like [`integrate`] but with a purely absolute error target.
pub fn integrate_absolute<F>(mut f: F, a: f64, b: f64, abs_tol: f64, max_subdivisions: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let whole = panel(&mut f, a, b)?;
    refine(f, a, b, whole, abs_tol, max_subdivisions)
}

fn refine<F>(mut f: F, a: f64, b: f64, whole: f64, abs_tol: f64, max_subdivisions: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let len = b - a;
    let mut splits = 0usize;
    let mut total = 0.0;
    let mut stack = vec![(a, b, whole)];
    while let Some((lo, hi, est)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&mut f, lo, mid)?;
        let right = panel(&mut f, mid, hi)?;
        let refined = left + right;
        let budget = abs_tol * ((hi - lo) / len).abs();
        if (refined - est).abs() <= budget || (hi - lo).abs() < 1e-14 * len.abs() {
            total += refined;
            continue;
        }
        splits += 1;
        if splits > max_subdivisions {
            return Err(Error::QuadratureNonConvergent(max_subdivisions));
        }
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }
    Ok(total)
}
