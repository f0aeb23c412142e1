//! Built-in algebras.

use nalgebra::DMatrix;

use super::{parse_pair, AlgebraDef, Element, InverseRule};
use crate::error::{Error, Result};

/// Catalog metadata for one built-in algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    /// Row of the classification table the algebra illustrates, if any.
    pub table_row: Option<u8>,
    pub description: String,
}

impl CatalogEntry {
    fn new(id: impl Into<String>, table_row: Option<u8>, description: impl Into<String>) -> Self {
        CatalogEntry { id: id.into(), table_row, description: description.into() }
    }
}

/// Metadata for every catalog algebra, in listing order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        CatalogEntry::new("R", Some(1), "real numbers"),
        CatalogEntry::new("C", Some(2), "complex numbers, (x,y) <-> [[x,-y],[y,x]]"),
        CatalogEntry::new("split-C", Some(3), "split-complex numbers, (x,y) <-> [[x,y],[y,x]]"),
        CatalogEntry::new("R+R", Some(4), "direct sum R (+) R, component-wise product"),
        CatalogEntry::new("dual", Some(5), "dual numbers, (x,y) <-> [[x,y],[0,x]]"),
        CatalogEntry::new("H", Some(6), "quaternions (4x4 real left-multiplication representation)"),
        CatalogEntry::new("O", Some(7), "octonions (Cayley-Dickson doubling of H)"),
        CatalogEntry::new("M2", Some(1), "2x2 real matrices, column-stacked coordinates"),
        CatalogEntry::new("M3", Some(1), "3x3 real matrices, column-stacked coordinates"),
    ];
    for n in 1..=6 {
        out.push(CatalogEntry::new(format!("diag({n})"), Some(9), format!("direct sum of {n} copies of R")));
    }
    out.extend([
        CatalogEntry::new("A10", Some(10), "(x,y,z) <-> [[x,z],[0,y]]"),
        CatalogEntry::new("A11", Some(11), "(x,z,w) <-> [[x,z,w],[0,x,z],[0,0,x]]"),
        CatalogEntry::new("A12", Some(12), "(x,v,z,w) <-> [[x,z,w],[0,x,v],[0,0,x]]"),
        CatalogEntry::new("A13", Some(13), "(x,y,v,z,w) <-> [[x,z,w],[0,x,v],[0,0,y]]"),
    ]);
    for n in 1..=6 {
        out.push(CatalogEntry::new(format!("uT{n}"), Some(14), format!("{n}x{n} upper triangular Toeplitz matrices")));
    }
    for total in 1..=4 {
        for m in (0..=total).rev() {
            let n = total - m;
            let row = if n == 0 && m > 1 { Some(8) } else { None };
            out.push(CatalogEntry::new(format!("ipsg({m},{n})"), row, format!("IPSG algebra on R^{{{m},{n}}}")));
        }
    }
    out
}

/// Every catalog algebra, in listing order.
pub fn catalog() -> Vec<AlgebraDef> {
    entries().iter().map(|e| lookup(&e.id).expect("catalog ids resolve")).collect()
}

/// Resolves a catalog id (a few aliases are accepted).
pub fn lookup(id: &str) -> Result<AlgebraDef> {
    let key = id.trim();
    let unknown = || Error::UnknownAlgebra(key.to_string());
    let alg = match key {
        "R" | "real" => from_rep("R", vec![mat(1, &[1.0])]),
        "C" | "complex" => from_rep("C", vec![eye(2), mat(2, &[0.0, -1.0, 1.0, 0.0])]),
        "split-C" | "splitC" | "split" => from_rep("split-C", vec![eye(2), mat(2, &[0.0, 1.0, 1.0, 0.0])]),
        "R+R" | "RxR" => from_rep("R+R", vec![unit(2, 0, 0), unit(2, 1, 1)]),
        "dual" | "D" => from_rep("dual", vec![eye(2), unit(2, 0, 1)]),
        "H" | "quaternions" => from_rep("H", quaternion_rep()),
        "O" | "octonions" => octonions(),
        "A10" => from_rep("A10", vec![unit(2, 0, 0), unit(2, 1, 1), unit(2, 0, 1)]),
        "A11" => from_rep("A11", toeplitz_rep(3)),
        "A12" => from_rep("A12", vec![eye(3), unit(3, 1, 2), unit(3, 0, 1), unit(3, 0, 2)]),
        "A13" => from_rep(
            "A13",
            vec![&unit(3, 0, 0) + &unit(3, 1, 1), unit(3, 2, 2), unit(3, 1, 2), unit(3, 0, 1), unit(3, 0, 2)],
        ),
        _ => {
            if let Some(n) = key.strip_prefix("uT").and_then(|r| r.parse::<usize>().ok()) {
                if !(1..=8).contains(&n) {
                    return Err(unknown());
                }
                from_rep(&format!("uT{n}"), toeplitz_rep(n))
            } else if let Some(n) = key.strip_prefix('M').and_then(|r| r.parse::<usize>().ok()) {
                if !(1..=8).contains(&n) {
                    return Err(unknown());
                }
                from_rep(&format!("M{n}"), full_matrix_rep(n))
            } else if let Some(n) =
                key.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')).and_then(|r| r.trim().parse::<usize>().ok())
            {
                if !(1..=64).contains(&n) {
                    return Err(unknown());
                }
                from_rep(&format!("diag({n})"), (0..n).map(|i| unit(n, i, i)).collect())
            } else if let Some((m, n)) = parse_pair(key, "ipsg") {
                if m + n == 0 || m + n + 1 > super::MAX_DIM {
                    return Err(unknown());
                }
                ipsg(m, n)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(alg)
}

fn from_rep(name: &str, rep: Vec<DMatrix<f64>>) -> AlgebraDef {
    AlgebraDef::from_matrix_rep(name, rep, InverseRule::AssociativeSolve).expect("built-in representation is valid")
}

fn mat(n: usize, row_major: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(n, n, row_major)
}

fn eye(n: usize) -> DMatrix<f64> {
    DMatrix::identity(n, n)
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

/// Superdiagonal shift powers `I, N, N², …`.
fn toeplitz_rep(n: usize) -> Vec<DMatrix<f64>> {
    (0..n).map(|k| DMatrix::from_fn(n, n, |i, j| if j == i + k { 1.0 } else { 0.0 })).collect()
}

/// Matrix units ordered so that coordinate `i + n·j` is `E_ij`.
fn full_matrix_rep(n: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            out.push(unit(n, i, j));
        }
    }
    out
}

fn quaternion_rep() -> Vec<DMatrix<f64>> {
    let q = |a: f64, b: f64, c: f64, d: f64| mat(4, &[a, -b, -c, -d, b, a, -d, c, c, d, a, -b, d, -c, b, a]);
    vec![q(1.0, 0.0, 0.0, 0.0), q(0.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0), q(0.0, 0.0, 0.0, 1.0)]
}

fn ipsg(m: usize, n: usize) -> AlgebraDef {
    let d = m + n + 1;
    let mut c = vec![0.0; d * d * d];
    let idx = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    for a in 0..d {
        c[idx(0, a, a)] = 1.0;
        c[idx(a, 0, a)] = 1.0;
    }
    for a in 1..d {
        c[idx(a, a, 0)] = if a <= m { 1.0 } else { -1.0 };
    }
    let unity = super::basis(d, 0);
    AlgebraDef::new(format!("ipsg({m},{n})"), d, c, unity, None, InverseRule::Ipsg { m, n }, None)
        .expect("ipsg constants are valid")
}

/// Cayley–Dickson product `(p,q)(r,s) = (pr − s̄q, sp + q r̄)`.
fn cayley_dickson(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let conj = |x: &[f64]| -> Vec<f64> { x.iter().enumerate().map(|(i, &v)| if i == 0 { v } else { -v }).collect() };
    let pr = cayley_dickson(p, r);
    let sq = cayley_dickson(&conj(s), q);
    let sp = cayley_dickson(s, p);
    let qr = cayley_dickson(q, &conj(r));
    let mut out = Vec::with_capacity(n);
    out.extend(pr.iter().zip(&sq).map(|(x, y)| x - y));
    out.extend(sp.iter().zip(&qr).map(|(x, y)| x + y));
    out
}

fn octonions() -> AlgebraDef {
    let d = 8;
    let mut c = vec![0.0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let mut a = vec![0.0; d];
            let mut b = vec![0.0; d];
            a[i] = 1.0;
            b[j] = 1.0;
            let p = cayley_dickson(&a, &b);
            c[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&p);
        }
    }
    AlgebraDef::new(
        "O",
        d,
        c,
        Element::from_fn(d, |i, _| if i == 0 { 1.0 } else { 0.0 }),
        None,
        InverseRule::StarAlgebra,
        Some(1.0),
    )
    .expect("octonion constants are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn every_entry_resolves_and_names_match() {
        for e in entries() {
            let a = lookup(&e.id).unwrap();
            assert_eq!(a.name(), e.id);
        }
    }

    #[test]
    fn lookup_examples() {
        let d = lookup("dual").unwrap();
        assert_eq!(d.dim(), 2);
        let eps = super::super::basis(2, 1);
        assert_eq!(d.multiply(&eps, &eps).unwrap(), Element::zeros(2));
        let t = lookup("uT3").unwrap();
        assert_eq!(t.dim(), 3);
        let p = lookup("ipsg(3,0)").unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.inverse_rule(), InverseRule::Ipsg { m: 3, n: 0 });
        assert!(lookup("nope").is_err());
        assert!(lookup("uT9").is_err());
    }

    #[test]
    fn catalog_covers_the_table() {
        let ids: Vec<String> = entries().into_iter().map(|e| e.id).collect();
        for id in [
            "R",
            "C",
            "split-C",
            "R+R",
            "dual",
            "H",
            "M2",
            "M3",
            "A10",
            "A11",
            "A12",
            "A13",
            "uT6",
            "diag(6)",
            "ipsg(2,2)",
        ] {
            assert!(ids.iter().any(|x| x == id), "{id}");
        }
    }

    #[test]
    fn representations_are_consistent() {
        for a in catalog() {
            if let Some(d) = a.representation_defect() {
                assert!(d < 1e-12, "{}", a.name());
            }
            assert!(a.unity_defect() < 1e-12, "{}", a.name());
        }
    }

    #[test]
    fn associative_catalog_members_associate() {
        let mut s = rng::stream(0, "catalog-assoc");
        for a in catalog().into_iter().filter(|a| a.inverse_rule() == InverseRule::AssociativeSolve) {
            for _ in 0..100 {
                let x = rng::normal_vector(&mut s, a.dim());
                let y = rng::normal_vector(&mut s, a.dim());
                let z = rng::normal_vector(&mut s, a.dim());
                let l = a.mul(&a.mul(&x, &y), &z);
                let r = a.mul(&x, &a.mul(&y, &z));
                assert!((l - r).norm() < 1e-12, "{}", a.name());
            }
        }
    }

    #[test]
    fn octonions_are_alternative_with_multiplicative_norm() {
        let o = lookup("O").unwrap();
        let mut s = rng::stream(0, "octonion");
        for _ in 0..20 {
            let x = rng::normal_vector(&mut s, 8);
            let y = rng::normal_vector(&mut s, 8);
            let xxy = o.mul(&o.mul(&x, &x), &y);
            let x_xy = o.mul(&x, &o.mul(&x, &y));
            assert!((xxy - x_xy).norm() < 1e-12);
            let p = o.mul(&x, &y);
            assert!((p.norm() - x.norm() * y.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn matrix_coordinates_stack_columns() {
        let m = lookup("M2").unwrap();
        // coordinate 2 is E_01, coordinate 1 is E_10; E_01·E_10 = E_00.
        let e01 = super::super::basis(4, 2);
        let e10 = super::super::basis(4, 1);
        assert_eq!(m.multiply(&e01, &e10).unwrap(), super::super::basis(4, 0));
    }
}
