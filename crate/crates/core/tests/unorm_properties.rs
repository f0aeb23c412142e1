use nalgebra::DVector;
use proptest::prelude::*;
use unital::algebra::lookup;
use unital::toeplitz::{self, ToeplitzElement};
use unital::unorm::{closed_form, sample_params, table_protonorm, UnitalNormEvaluator};
use unital::{linalg, rng, Element};

const ROWS: [&str; 14] =
    ["R", "C", "split-C", "R+R", "dual", "H", "M2", "diag(3)", "A10", "A11", "A12", "A13", "uT4", "ipsg(2,1)"];

struct Case {
    id: &'static str,
    params: Vec<f64>,
    s: Element,
}

fn case(row: usize, seed: u64, raw: &[f64]) -> Case {
    let id = ROWS[row];
    let alg = lookup(id).unwrap();
    let params = sample_params(id, &mut rng::stream(seed, "unorm-props")).unwrap();
    let s = alg.unity() + DVector::from_iterator(alg.dim(), raw.iter().take(alg.dim()).map(|r| 0.3 * r));
    Case { id, params, s }
}

fn units() -> impl Strategy<Value = (usize, u64, Vec<f64>)> {
    (0..ROWS.len(), any::<u64>(), prop::collection::vec(-1.0f64..1.0, 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn agrees_with_closed_form((row, seed, raw) in units()) {
        let c = case(row, seed, &raw);
        let alg = lookup(c.id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm(c.id, &c.params).unwrap()).unwrap();
        let exact = closed_form(c.id, &c.params, &c.s).unwrap();
        let numeric = ev.evaluate(&c.s).unwrap();
        prop_assert!((numeric - exact).abs() / exact < 1e-6, "{}: {} vs {}", c.id, numeric, exact);
    }

    #[test]
    fn homogeneous_of_degree_one((row, seed, raw) in units(), k in 0usize..4) {
        let alpha = [0.5, 0.9, 1.1, 2.0][k];
        let c = case(row, seed, &raw);
        let alg = lookup(c.id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm(c.id, &c.params).unwrap()).unwrap();
        let scaled = ev.evaluate(&(&c.s * alpha)).unwrap();
        let base = ev.evaluate(&c.s).unwrap();
        prop_assert!((scaled - alpha * base).abs() / scaled < 1e-8);
    }

    #[test]
    fn inverse_product_is_one((row, seed, raw) in units()) {
        let c = case(row, seed, &raw);
        let alg = lookup(c.id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm(c.id, &c.params).unwrap()).unwrap();
        prop_assert!(ev.inverse_product_check(&c.s).unwrap() < 1e-8);
    }

    #[test]
    fn euler_relation((row, seed, raw) in units()) {
        let c = case(row, seed, &raw);
        let alg = lookup(c.id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm(c.id, &c.params).unwrap()).unwrap();
        let u = ev.evaluate(&c.s).unwrap();
        let euler = c.s.dot(&ev.gradient(&c.s).unwrap());
        prop_assert!((euler - u).abs() < 1e-4 * u.max(1.0));
    }

    #[test]
    fn finite_difference_gradient_matches_identity((row, seed, raw) in units()) {
        let c = case(row, seed, &raw);
        let alg = lookup(c.id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, table_protonorm(c.id, &c.params).unwrap()).unwrap();
        let fd = ev.gradient(&c.s).unwrap();
        let exact = ev.gradient_identity(&c.s).unwrap();
        prop_assert!((fd - &exact).norm() < 1e-5 * exact.norm().max(1.0));
    }

    #[test]
    fn decomposition_lands_on_the_sphere((row, seed, raw) in units()) {
        let c = case(row, seed, &raw);
        let l = table_protonorm(c.id, &c.params).unwrap();
        prop_assume!(linalg::condition_number(&l) < 1e6);
        let alg = lookup(c.id).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, l).unwrap();
        let d = ev.unital_decomposition(&c.s).unwrap();
        prop_assert!(d.residual < 1e-6);
        prop_assert!((d.sphere_value - 1.0).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_series_matches_path_integral(n in 2usize..=6, seed in any::<u64>(), raw in prop::collection::vec(-1.0f64..1.0, 6)) {
        let id = format!("uT{n}");
        let alg = lookup(&id).unwrap();
        let mut st = rng::stream(seed, "toeplitz-props");
        let gammas: Vec<f64> = std::iter::once(1.0).chain((1..n).map(|_| rng::uniform(&mut st, -1.0, 1.0))).collect();
        let s = alg.unity() + DVector::from_iterator(n, raw.iter().take(n).map(|r| 0.3 * r));
        let series = toeplitz::log_series_norm(&gammas, &ToeplitzElement::from_element(&s)).unwrap();
        let ev = UnitalNormEvaluator::new(&alg, toeplitz::hankel_protonorm(&gammas)).unwrap();
        let path = ev.evaluate(&s).unwrap();
        prop_assert!((series - path).abs() / path < 1e-8);
    }

    #[test]
    fn toeplitz_determinant_is_a_power_of_the_diagonal(n in 1usize..=6, raw in prop::collection::vec(-1.0f64..1.0, 6)) {
        let mut c: Vec<f64> = raw[..n].to_vec();
        c[0] += 2.0;
        let t = ToeplitzElement::new(c.clone());
        let det = t.matrix().determinant();
        prop_assert!((det - c[0].powi(n as i32)).abs() < 1e-12 * c[0].abs().powi(n as i32).max(1.0));
    }

    #[test]
    fn shift_identity_holds(n in 1usize..=6, raw in prop::collection::vec(-1.0f64..1.0, 6)) {
        let mut c: Vec<f64> = raw[..n].iter().map(|r| 0.3 * r).collect();
        c[0] += 1.0;
        prop_assert!(toeplitz::shift_identity_residual(&ToeplitzElement::new(c), 1e-5).unwrap() < 1e-6);
    }
}

#[test]
fn log_series_norm_sees_the_subleading_coordinate() {
    let gammas = [1.0, 0.5, -0.25];
    let a = toeplitz::log_series_norm(&gammas, &ToeplitzElement::new(vec![1.2, 0.1, 0.0])).unwrap();
    let b = toeplitz::log_series_norm(&gammas, &ToeplitzElement::new(vec![1.2, 0.3, 0.0])).unwrap();
    assert!((a - b).abs() > 1e-6);
    let det_a = ToeplitzElement::new(vec![1.2, 0.1, 0.0]).matrix().determinant();
    let det_b = ToeplitzElement::new(vec![1.2, 0.3, 0.0]).matrix().determinant();
    assert!((det_a - det_b).abs() < 1e-15);
}

#[test]
fn singular_members_decompose_off_their_kernel() {
    // R+R with σ = 1 keeps only the first coordinate.
    let alg = lookup("R+R").unwrap();
    let ev = UnitalNormEvaluator::new(&alg, table_protonorm("R+R", &[1.0]).unwrap()).unwrap();
    assert!(ev.unital_decomposition(&Element::from_column_slice(&[1.3, 0.7])).is_err());
}
