use nalgebra::DVector;
use unital::algebra::lookup;
use unital::functor::{self, pullback_protonorm, quotient_algebra, IdealSpec};
use unital::protonorm::{curl_residual, sample_unit_near_one};
use unital::{rng, Element};

fn v(x: &[f64]) -> Element {
    DVector::from_column_slice(x)
}

/// Parent algebra and the ideal generators of each quotient under test.
fn quotients() -> Vec<(&'static str, Vec<Element>)> {
    vec![
        ("R+R", vec![v(&[0.0, 1.0])]),
        ("A10", vec![v(&[0.0, 0.0, 1.0])]),
        ("A13", vec![v(&[0.0, 0.0, 1.0, 0.0, 0.0]), v(&[0.0, 0.0, 0.0, 0.0, 1.0])]),
        ("A12", vec![v(&[0.0, 0.0, 1.0, 0.0]), v(&[0.0, 0.0, 0.0, 1.0])]),
        ("A11", vec![v(&[0.0, 0.0, 1.0])]),
        ("uT4", vec![v(&[0.0, 0.0, 1.0, 0.0]), v(&[0.0, 0.0, 0.0, 1.0])]),
    ]
}

#[test]
fn pullbacks_are_curl_free_in_the_parent() {
    for (id, gens) in quotients() {
        let parent = lookup(id).unwrap();
        let ideal = IdealSpec::new(&parent, &gens).unwrap();
        let q = quotient_algebra(&ideal).unwrap();
        assert!(functor::homomorphism_defect(&parent, &q.algebra, &q.k).unwrap() < 1e-12, "{id}");
        let family = functor::solve(&q.algebra, 0).unwrap();
        let mut st = rng::stream(5, id);
        for l in &family.basis {
            let pulled = pullback_protonorm(&q.k, l).unwrap();
            for _ in 0..10 {
                let s = sample_unit_near_one(&parent, &mut st, 0.3).unwrap();
                let r = curl_residual(&parent, &pulled, &s).unwrap().amax();
                assert!(r < 1e-6, "{id}: curl {r}");
            }
        }
    }
}

#[test]
fn quotients_are_valid_algebras() {
    for (id, gens) in quotients() {
        let parent = lookup(id).unwrap();
        let q = quotient_algebra(&IdealSpec::new(&parent, &gens).unwrap()).unwrap();
        assert!(q.algebra.unity_defect() < 1e-12, "{id}");
        assert!(q.algebra.is_associative(), "{id}");
        assert_eq!(q.algebra.dim() + gens.len(), parent.dim());
    }
}

#[test]
fn quotient_family_embeds_in_the_parent_family() {
    for (id, gens) in quotients() {
        let parent = lookup(id).unwrap();
        let q = quotient_algebra(&IdealSpec::new(&parent, &gens).unwrap()).unwrap();
        let f1 = functor::solve(&parent, 0).unwrap();
        let f2 = functor::solve(&q.algebra, 0).unwrap();
        assert!(functor::morphism_exists(&f1, &f2, &q.k).exists, "{id}");
    }
}
