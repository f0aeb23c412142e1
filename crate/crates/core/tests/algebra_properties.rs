use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use unital::algebra::{lookup, AlgebraDef};
use unital::protonorm::{self, solve_family, transpose_induced};
use unital::Element;

const IDS: [&str; 8] = ["C", "split-C", "dual", "H", "A11", "A12", "uT4", "M2"];

fn near_one(alg: &AlgebraDef, raw: &[f64], radius: f64) -> Element {
    let d = alg.dim();
    alg.unity() + DVector::from_iterator(d, raw.iter().take(d).map(|r| r * radius))
}

fn coords(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn left_mult_is_linear(idx in 0usize..IDS.len(), a in -2.0f64..2.0, b in -2.0f64..2.0,
                           s in coords(9), t in coords(9)) {
        let alg = lookup(IDS[idx]).unwrap();
        let d = alg.dim();
        let s = DVector::from_column_slice(&s[..d]);
        let t = DVector::from_column_slice(&t[..d]);
        let lhs = alg.left_mult_matrix(&(&s * a + &t * b)).unwrap();
        let rhs = alg.left_mult_matrix(&s).unwrap() * a + alg.left_mult_matrix(&t).unwrap() * b;
        prop_assert!((lhs - rhs).amax() < 1e-14 * 8.0);
    }

    #[test]
    fn left_mult_reproduces_product(idx in 0usize..IDS.len(), s in coords(9), t in coords(9)) {
        let alg = lookup(IDS[idx]).unwrap();
        let d = alg.dim();
        let s = DVector::from_column_slice(&s[..d]);
        let t = DVector::from_column_slice(&t[..d]);
        let via_matrix = alg.left_mult_matrix(&s).unwrap() * &t;
        prop_assert!((via_matrix - alg.multiply(&s, &t).unwrap()).amax() < 1e-13);
    }

    #[test]
    fn inverse_is_an_involution(idx in 0usize..IDS.len(), raw in coords(9)) {
        let alg = lookup(IDS[idx]).unwrap();
        let s = near_one(&alg, &raw, 0.4);
        let back = alg.inverse(&alg.inverse(&s).unwrap()).unwrap();
        prop_assert!((back - &s).norm() < 1e-8);
    }

    #[test]
    fn associative_catalog_rows_associate(idx in 0usize..IDS.len(), a in coords(9), b in coords(9), c in coords(9)) {
        let alg = lookup(IDS[idx]).unwrap();
        prop_assume!(alg.is_associative());
        let d = alg.dim();
        let (a, b, c) = (
            DVector::from_column_slice(&a[..d]),
            DVector::from_column_slice(&b[..d]),
            DVector::from_column_slice(&c[..d]),
        );
        let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        prop_assert!((left - right).amax() < 1e-12);
    }

    #[test]
    fn ipsg_inverse_is_a_right_inverse(m in 0usize..3, n in 0usize..3, raw in coords(5)) {
        prop_assume!(m + n >= 1);
        let alg = lookup(&format!("ipsg({m},{n})")).unwrap();
        let s = near_one(&alg, &raw, 0.3);
        let prod = alg.multiply(&s, &alg.inverse(&s).unwrap()).unwrap();
        prop_assert!((prod - alg.unity()).amax() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn family_survives_change_of_basis(idx in 0usize..4, raw in coords(25)) {
        let id = ["C", "A10", "A11", "uT3"][idx];
        let alg = lookup(id).unwrap();
        let d = alg.dim();
        let p = DMatrix::identity(d, d) + DMatrix::from_column_slice(d, d, &raw[..d * d]) * 0.3;
        prop_assume!(p.determinant().abs() > 0.2);
        let moved = alg.change_basis(&p).unwrap();
        let base = solve_family(&alg, 3 * d * d, 7).unwrap();
        let image = solve_family(&moved, 3 * d * d, 7).unwrap();
        prop_assert_eq!(base.dim(), image.dim());
        for l in &base.basis {
            let pulled = p.transpose() * l * &p;
            prop_assert!(image.span_residual(&pulled) < 1e-6 * pulled.norm());
        }
    }
}

#[test]
fn solve_family_is_bit_reproducible() {
    let alg = lookup("A12").unwrap();
    let a = solve_family(&alg, 48, 3).unwrap();
    let b = solve_family(&alg, 48, 3).unwrap();
    assert_eq!(a.basis, b.basis);
}

#[test]
fn transpose_induced_lies_in_the_family() {
    for id in ["C", "split-C", "dual", "R+R", "H", "M2", "A10", "A11", "A12", "A13", "uT3", "uT5", "diag(3)"] {
        let alg = lookup(id).unwrap();
        let d = alg.dim();
        let fam = solve_family(&alg, 3 * d * d, 0).unwrap();
        let t = transpose_induced(&alg).unwrap();
        let scale = t.norm().max(1.0);
        assert!(fam.span_residual(&t) < 1e-8 * scale, "{id}: {}", fam.span_residual(&t));
    }
}

#[test]
fn matrix_algebra_family_is_the_transpose_permutation() {
    let alg = lookup("M2").unwrap();
    let fam = solve_family(&alg, 48, 0).unwrap();
    assert_eq!(fam.dim(), 1);
    // Column-stacked coordinates: transposition swaps entries 1 and 2.
    let mut perm = DMatrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        perm[(i, j)] = 1.0;
    }
    assert!(fam.span_residual(&perm) < 1e-10 * perm.norm());
}

#[test]
fn printed_transpose_induced_maps() {
    let c = transpose_induced(&lookup("C").unwrap()).unwrap();
    assert!((c - DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])).amax() < 1e-14);
    let sc = transpose_induced(&lookup("split-C").unwrap()).unwrap();
    assert!((sc - DMatrix::identity(2, 2)).amax() < 1e-14);
    let dual = transpose_induced(&lookup("dual").unwrap()).unwrap();
    assert!((dual - DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).amax() < 1e-14);
}

#[test]
fn curl_vanishes_on_family_members_away_from_samples() {
    let alg = lookup("A13").unwrap();
    let fam = solve_family(&alg, 75, 0).unwrap();
    let mut stream = unital::rng::stream(11, "curl-probe");
    for _ in 0..20 {
        let s = protonorm::sample_unit_near_one(&alg, &mut stream, 0.3).unwrap();
        for l in &fam.basis {
            assert!(protonorm::curl_residual(&alg, l, &s).unwrap().amax() < 1e-9);
        }
    }
}
