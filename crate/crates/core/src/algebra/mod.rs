//! Real finite-dimensional unital algebras given by structure constants.

mod catalog;
mod io;

pub use catalog::{catalog, entries, lookup, CatalogEntry};
pub use io::{matrix_rows, rows_matrix, AlgebraFile};

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

/// Coordinates of an algebra element in the defining basis.
pub type Element = DVector<f64>;

/// Largest dimension accepted by [`AlgebraDef::new`].
pub const MAX_DIM: usize = 64;

/// Threshold on `σ_min / σ_max` of the left-multiplication matrix below
/// which an element is not considered a unit.
pub const UNIT_GAP: f64 = 1e-10;

/// Condition number above which [`AlgebraDef::inverse`] refuses to solve.
pub const MAX_CONDITION: f64 = 1e12;

/// How inverses are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseRule {
    /// Solve `M(s)·x = 1` with the left-multiplication matrix.
    AssociativeSolve,
    /// Favored inverse `(σ − 𝘀)/(σ² − 𝘀'Q𝘀)` of IPSG{ℝ^{m,n}}.
    Ipsg { m: usize, n: usize },
    /// `s*/N(s)` with `s* = 2s₀e₀ − s` and `N(s) = (s s*)₀`.
    StarAlgebra,
}

impl fmt::Display for InverseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InverseRule::AssociativeSolve => write!(f, "associative_solve"),
            InverseRule::Ipsg { m, n } => write!(f, "ipsg({m},{n})"),
            InverseRule::StarAlgebra => write!(f, "star_algebra"),
        }
    }
}

impl FromStr for InverseRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "associative_solve" => return Ok(InverseRule::AssociativeSolve),
            "star_algebra" => return Ok(InverseRule::StarAlgebra),
            _ => {}
        }
        let (m, n) = parse_pair(t, "ipsg").ok_or_else(|| Error::Parse(format!("unknown inverse rule `{t}`")))?;
        Ok(InverseRule::Ipsg { m, n })
    }
}

/// Parses `name(a,b)` into `(a, b)`.
pub(crate) fn parse_pair(s: &str, name: &str) -> Option<(usize, usize)> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    let mut it = inner.split(',');
    let a = it.next()?.trim().parse().ok()?;
    let b = it.next()?.trim().parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// A real unital algebra `e_i·e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDef {
    name: String,
    dim: usize,
    /// Row-major `c[i][j][k]` at index `(i*dim + j)*dim + k`.
    constants: Vec<f64>,
    unity: Element,
    matrix_rep: Option<Vec<DMatrix<f64>>>,
    inverse_rule: InverseRule,
    one_norm_sq_override: Option<f64>,
    associative: bool,
}

impl AlgebraDef {
    /// Validates and assembles an algebra definition.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        constants: Vec<f64>,
        unity: Element,
        matrix_rep: Option<Vec<DMatrix<f64>>>,
        inverse_rule: InverseRule,
        one_norm_sq: Option<f64>,
    ) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidAlgebra(format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: constants.len() });
        }
        if unity.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: unity.len() });
        }
        if let Some(v) = one_norm_sq {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidAlgebra(format!("one_norm_sq must be positive, got {v}")));
            }
        }
        if let InverseRule::Ipsg { m, n } = inverse_rule {
            if m + n + 1 != dim {
                return Err(Error::InvalidAlgebra(format!("ipsg({m},{n}) needs dimension {}", m + n + 1)));
            }
        }
        let mut alg = AlgebraDef {
            name: name.into(),
            dim,
            constants,
            unity,
            matrix_rep,
            inverse_rule,
            one_norm_sq_override: one_norm_sq,
            associative: false,
        };
        alg.check_unity()?;
        alg.check_representation()?;
        if inverse_rule == InverseRule::StarAlgebra {
            let e0 = Element::from_fn(dim, |i, _| if i == 0 { 1.0 } else { 0.0 });
            if (&alg.unity - e0).amax() > 1e-12 {
                return Err(Error::InvalidAlgebra("star_algebra rule requires unity = e0".into()));
            }
        }
        alg.associative = alg.associativity_probe() < 1e-12;
        Ok(alg)
    }

    /// Builds an algebra from a faithful matrix representation: structure
    /// constants are read off by projecting `B_i B_j` onto `span{B_k}`.
    pub fn from_matrix_rep(name: impl Into<String>, rep: Vec<DMatrix<f64>>, inverse_rule: InverseRule) -> Result<Self> {
        let dim = rep.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("empty representation".into()));
        }
        let n = rep[0].nrows();
        let flat = DMatrix::from_fn(n * n, dim, |r, k| rep[k][(r % n, r / n)]);
        let gram = flat.transpose() * &flat;
        let lu = gram.clone().lu();
        let coords = |m: &DMatrix<f64>| -> Result<DVector<f64>> {
            let rhs = flat.transpose() * DVector::from_column_slice(m.as_slice());
            lu.solve(&rhs).ok_or_else(|| Error::InvalidAlgebra("representation is not faithful".into()))
        };
        let mut constants = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let c = coords(&(&rep[i] * &rep[j]))?;
                for k in 0..dim {
                    constants[(i * dim + j) * dim + k] = c[k];
                }
            }
        }
        let unity = coords(&DMatrix::identity(n, n))?;
        AlgebraDef::new(name, dim, constants, unity, Some(rep), inverse_rule, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unity(&self) -> &Element {
        &self.unity
    }

    pub fn matrix_rep(&self) -> Option<&[DMatrix<f64>]> {
        self.matrix_rep.as_deref()
    }

    pub fn inverse_rule(&self) -> InverseRule {
        self.inverse_rule
    }

    /// Row-major structure constants, `c[i][j][k]` at `(i*dim + j)*dim + k`.
    pub fn structure_constants(&self) -> &[f64] {
        &self.constants
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn one_norm_sq_override(&self) -> Option<f64> {
        self.one_norm_sq_override
    }

    /// True when a random-triple associator probe vanishes.
    pub fn is_associative(&self) -> bool {
        self.associative
    }

    /// Renamed copy.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Copy with an explicit ‖1‖² value.
    pub fn with_one_norm_sq(mut self, v: f64) -> Self {
        self.one_norm_sq_override = Some(v);
        self
    }

    fn check_len(&self, v: &Element) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// Bilinear product `Σ a_i b_j c[i][j][·]`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        let d = self.dim;
        let mut out = Element::zeros(d);
        for i in 0..d {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = a[i] * b[j];
                if w == 0.0 {
                    continue;
                }
                let row = &self.constants[(i * d + j) * d..(i * d + j + 1) * d];
                for k in 0..d {
                    out[k] += w * row[k];
                }
            }
        }
        out
    }

    /// Matrix of `b ↦ s·b`.
    pub fn left_mult_matrix(&self, s: &Element) -> Result<DMatrix<f64>> {
        self.check_len(s)?;
        Ok(self.left_mult(s))
    }

    pub(crate) fn left_mult(&self, s: &Element) -> DMatrix<f64> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            if s[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let row = &self.constants[(i * d + j) * d..(i * d + j + 1) * d];
                for k in 0..d {
                    m[(k, j)] += s[i] * row[k];
                }
            }
        }
        m
    }

    /// `σ_min/σ_max` of the left-multiplication matrix, or the analogous
    /// normalised quantity for the IPSG and star rules.
    pub fn unit_gap(&self, s: &Element) -> f64 {
        match self.inverse_rule {
            InverseRule::AssociativeSolve => {
                let sv = linalg::singular_values(&self.left_mult(s));
                match (sv.first(), sv.last()) {
                    (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
                    _ => 0.0,
                }
            }
            InverseRule::Ipsg { m, .. } => {
                let n2 = s.norm_squared();
                if n2 == 0.0 {
                    0.0
                } else {
                    ipsg_quadratic(s, m).abs() / n2
                }
            }
            InverseRule::StarAlgebra => {
                let n2 = s.norm_squared();
                if n2 == 0.0 {
                    0.0
                } else {
                    self.star_norm(s).abs() / n2
                }
            }
        }
    }

    /// Unit test used throughout the toolkit.
    pub fn is_unit(&self, s: &Element) -> bool {
        s.len() == self.dim && self.unit_gap(s) > UNIT_GAP
    }

    fn star_norm(&self, s: &Element) -> f64 {
        self.mul(s, &self.conjugate(s))[0]
    }

    fn conjugate(&self, s: &Element) -> Element {
        let mut c = -s;
        c[0] = s[0];
        c
    }

    /// Inverse of a unit under the algebra's inverse rule.
    pub fn inverse(&self, s: &Element) -> Result<Element> {
        self.check_len(s)?;
        match self.inverse_rule {
            InverseRule::AssociativeSolve => {
                let m = self.left_mult(s);
                let cond = linalg::condition_number(&m);
                if !(cond <= MAX_CONDITION) {
                    return Err(Error::NotAUnit { condition: cond });
                }
                m.lu().solve(&self.unity).ok_or(Error::NotAUnit { condition: f64::INFINITY })
            }
            InverseRule::Ipsg { m, .. } => {
                let q = ipsg_quadratic(s, m);
                let n2 = s.norm_squared();
                if q == 0.0 || n2 / q.abs() > MAX_CONDITION {
                    return Err(Error::NotAUnit { condition: if q == 0.0 { f64::INFINITY } else { n2 / q.abs() } });
                }
                let mut out = -s / q;
                out[0] = s[0] / q;
                Ok(out)
            }
            InverseRule::StarAlgebra => {
                let nrm = self.star_norm(s);
                let n2 = s.norm_squared();
                if nrm == 0.0 || n2 / nrm.abs() > MAX_CONDITION {
                    return Err(Error::NotAUnit { condition: if nrm == 0.0 { f64::INFINITY } else { n2 / nrm.abs() } });
                }
                Ok(self.conjugate(s) / nrm)
            }
        }
    }

    /// Jacobian `J[k][j] = ∂(s⁻¹)_k/∂s_j`.
    ///
    /// Uses `−s⁻¹ e_j s⁻¹` on associative algebras and central differences
    /// with step `1e-5·max(1, ‖s‖)` otherwise.
    pub fn inverse_jacobian(&self, s: &Element) -> Result<DMatrix<f64>> {
        let d = self.dim;
        let sinv = self.inverse(s)?;
        let mut jac = DMatrix::zeros(d, d);
        if self.associative {
            // Column j is −(s⁻¹e_j)s⁻¹ = −R(s⁻¹)L(s⁻¹)e_j.
            jac = -(self.right_mult(&sinv) * self.left_mult(&sinv));
        } else {
            let h = 1e-5 * s.norm().max(1.0);
            for j in 0..d {
                let mut p = s.clone();
                let mut m = s.clone();
                p[j] += h;
                m[j] -= h;
                let col = (self.inverse(&p)? - self.inverse(&m)?) / (2.0 * h);
                jac.set_column(j, &col);
            }
        }
        Ok(jac)
    }

    /// Matrix of `b ↦ b·s`.
    pub(crate) fn right_mult(&self, s: &Element) -> DMatrix<f64> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if s[j] == 0.0 {
                    continue;
                }
                let row = &self.constants[(i * d + j) * d..(i * d + j + 1) * d];
                for k in 0..d {
                    m[(k, i)] += s[j] * row[k];
                }
            }
        }
        m
    }

    /// ‖1‖²: explicit override, the IPSG value 1, or the rank of
    /// `x ↦ diag(Σ x_i B_i)` with singular-value threshold 1e-10.
    pub fn one_norm_sq(&self) -> Result<f64> {
        if let Some(v) = self.one_norm_sq_override {
            return Ok(v);
        }
        if let InverseRule::Ipsg { .. } = self.inverse_rule {
            return Ok(1.0);
        }
        let rep = self.matrix_rep.as_ref().ok_or(Error::MissingRepresentation)?;
        let n = rep[0].nrows();
        let diag = DMatrix::from_fn(n, self.dim, |r, k| rep[k][(r, r)]);
        Ok(linalg::rank(&diag, 1e-10) as f64)
    }

    /// Largest deviation of the unity from a two-sided identity on the basis.
    pub fn unity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            let e = basis(self.dim, i);
            worst = worst.max((self.mul(&self.unity, &e) - &e).amax()).max((self.mul(&e, &self.unity) - &e).amax());
        }
        worst
    }

    fn check_unity(&self) -> Result<()> {
        let scale = self.constants.iter().fold(1.0_f64, |a, &x| a.max(x.abs()));
        let defect = self.unity_defect();
        if defect > 1e-12 * scale {
            return Err(Error::InvalidAlgebra(format!("unity fails identity test (defect {defect:.3e})")));
        }
        Ok(())
    }

    /// Largest entrywise mismatch between `B_i B_j` and `Σ_k c[i][j][k] B_k`.
    pub fn representation_defect(&self) -> Option<f64> {
        let rep = self.matrix_rep.as_ref()?;
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut m = -(&rep[i] * &rep[j]);
                for (k, rk) in rep.iter().enumerate() {
                    let c = self.constant(i, j, k);
                    if c != 0.0 {
                        m += rk * c;
                    }
                }
                worst = worst.max(linalg::max_abs(&m));
            }
        }
        Some(worst)
    }

    fn check_representation(&self) -> Result<()> {
        let Some(rep) = self.matrix_rep.as_ref() else { return Ok(()) };
        if rep.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: rep.len() });
        }
        let n = rep[0].nrows();
        if rep.iter().any(|b| b.nrows() != n || b.ncols() != n) {
            return Err(Error::InvalidAlgebra("representation matrices must share a square shape".into()));
        }
        let defect = self.representation_defect().unwrap_or(0.0);
        if defect > 1e-12 {
            return Err(Error::InvalidAlgebra(format!(
                "matrix representation disagrees with structure constants (defect {defect:.3e})"
            )));
        }
        Ok(())
    }

    /// Associator `‖(ab)c − a(bc)‖` on two fixed pseudo-random triples,
    /// relative to the product scale. Zero for associative algebras.
    fn associativity_probe(&self) -> f64 {
        let mut rng = crate::rng::stream(0x5eed, "associativity-probe");
        let mut worst: f64 = 0.0;
        for _ in 0..2 {
            let a = crate::rng::normal_vector(&mut rng, self.dim);
            let b = crate::rng::normal_vector(&mut rng, self.dim);
            let c = crate::rng::normal_vector(&mut rng, self.dim);
            let lhs = self.mul(&self.mul(&a, &b), &c);
            let rhs = self.mul(&a, &self.mul(&b, &c));
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            worst = worst.max((lhs - rhs).norm() / scale);
        }
        worst
    }

    /// Same algebra in the basis `f_a = Σ_i P[i][a] e_i`.
    ///
    /// Only available for the associative-solve rule, whose inverse does not
    /// depend on coordinates.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<AlgebraDef> {
        if self.inverse_rule != InverseRule::AssociativeSolve {
            return Err(Error::InvalidAlgebra("change of basis needs the associative_solve rule".into()));
        }
        let d = self.dim;
        if p.shape() != (d, d) {
            return Err(Error::DimensionMismatch { expected: d, got: p.nrows() });
        }
        let pinv = p.clone().try_inverse().ok_or(Error::NotAUnit { condition: f64::INFINITY })?;
        let cols: Vec<Element> = (0..d).map(|a| p.column(a).into_owned()).collect();
        let mut constants = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                let prod = &pinv * self.mul(&cols[a], &cols[b]);
                for k in 0..d {
                    constants[(a * d + b) * d + k] = prod[k];
                }
            }
        }
        let unity = &pinv * &self.unity;
        let rep = self.matrix_rep.as_ref().map(|rep| {
            (0..d)
                .map(|a| {
                    let mut m = DMatrix::zeros(rep[0].nrows(), rep[0].ncols());
                    for i in 0..d {
                        m += &rep[i] * p[(i, a)];
                    }
                    m
                })
                .collect()
        });
        let mut out = AlgebraDef {
            name: format!("{}'", self.name),
            dim: d,
            constants,
            unity,
            matrix_rep: rep,
            inverse_rule: self.inverse_rule,
            one_norm_sq_override: self.one_norm_sq_override,
            associative: false,
        };
        out.associative = out.associativity_probe() < 1e-9;
        Ok(out)
    }
}

/// `σ² − 𝘀'Q𝘀` for IPSG coordinates `(σ, 𝘀)` with `Q = diag(+1 ×m, −1 ×n)`.
pub fn ipsg_quadratic(s: &Element, m: usize) -> f64 {
    let mut q = s[0] * s[0];
    for (idx, &v) in s.iter().enumerate().skip(1) {
        if idx <= m {
            q -= v * v;
        } else {
            q += v * v;
        }
    }
    q
}

/// Standard basis vector `e_i` of length `d`.
pub fn basis(d: usize, i: usize) -> Element {
    Element::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 })
}
