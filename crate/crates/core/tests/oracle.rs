use icat_core::fixtures;
use icat_core::intcat::verify_internal_category;
use icat_core::kleisli::{kleisli_object, verify_monad};
use icat_core::oracle::{
    classical_kleisli, compare, linearize, linearize_monad, verify_finite_category, verify_set_monad, FiniteCategory,
    SetMonad,
};
use icat_core::{Error, Field};

const Q: Field = Field::Rational;

fn small_categories() -> Vec<FiniteCategory> {
    vec![
        FiniteCategory::discrete(1),
        FiniteCategory::discrete(2),
        FiniteCategory::chain(2),
        FiniteCategory::chain(3),
        FiniteCategory::codiscrete(2),
        FiniteCategory::preorder(3, |a, b| a == 0 && b > 0).unwrap(),
        FiniteCategory::cyclic_group(2),
        FiniteCategory::cyclic_group(3),
    ]
}

fn monads(c: &FiniteCategory) -> Vec<SetMonad> {
    let thin = (0..c.object_count()).all(|a| (0..c.object_count()).all(|b| c.hom(a, b).len() <= 1));
    if thin {
        SetMonad::all_thin(c)
    } else {
        vec![SetMonad::identity(c)]
    }
}

#[test]
fn chain_linearizes_to_the_bundled_poset() {
    let doc = fixtures::load("F3");
    let poset = doc.internal_categories.get("poset").unwrap();
    assert_eq!(linearize(&FiniteCategory::chain(2), Q).unwrap(), **poset);
    let c = FiniteCategory::chain(2);
    let ceiling = SetMonad::thin(&c, &[1, 1]).unwrap();
    let m = linearize_monad(&c, &ceiling, Q).unwrap();
    assert_eq!(&m.t, doc.functors.get("t").unwrap());
    assert_eq!(&m.mu, doc.naturals.get("mu").unwrap());
    assert_eq!(&m.eta, doc.naturals.get("eta").unwrap());
}

#[test]
fn ceiling_kleisli_has_one_morphism_per_pair() {
    let c = FiniteCategory::chain(2);
    let t = SetMonad::thin(&c, &[1, 1]).unwrap();
    let k = classical_kleisli(&c, &t).unwrap();
    assert_eq!(k.morphism_count(), 4);
    let internal = kleisli_object(&linearize_monad(&c, &t, Q).unwrap()).unwrap();
    assert_eq!(internal.dim(), 4);
    assert!(compare(&internal, &k).unwrap().passed());
}

#[test]
fn every_monad_on_every_small_category_agrees() {
    let mut checked = 0;
    for c in small_categories() {
        assert!(c.object_count() <= 3 && c.morphism_count() <= 6);
        assert!(verify_finite_category(&c).passed());
        let ic = linearize(&c, Q).unwrap();
        assert!(verify_internal_category(&ic).unwrap().passed());
        for t in monads(&c) {
            assert!(verify_set_monad(&c, &t).passed());
            let m = linearize_monad(&c, &t, Q).unwrap();
            assert!(verify_monad(&m).unwrap().passed());
            let internal = kleisli_object(&m).unwrap();
            let classical = classical_kleisli(&c, &t).unwrap();
            let rep = compare(&internal, &classical).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} monads");
}

#[test]
fn codiscrete_constant_monad() {
    let c = FiniteCategory::codiscrete(2);
    let t = SetMonad::thin(&c, &[0, 0]).unwrap();
    let k = classical_kleisli(&c, &t).unwrap();
    // every object maps to 0, so each hom-set has a single morphism
    assert_eq!(k.morphism_count(), 4);
}

#[test]
fn constant_functor_on_discrete_is_not_a_monad() {
    let c = FiniteCategory::discrete(2);
    assert!(SetMonad::thin(&c, &[0, 0]).is_none());
    let mut t = SetMonad::identity(&c);
    t.obj = vec![0, 0];
    assert!(!verify_set_monad(&c, &t).passed());
    assert!(matches!(classical_kleisli(&c, &t), Err(Error::LawViolation(_))));
}

#[test]
fn mismatched_categories_are_reported() {
    let c = FiniteCategory::chain(2);
    let internal = linearize(&FiniteCategory::codiscrete(2), Q).unwrap();
    assert!(matches!(compare(&internal, &c), Err(Error::Mismatch(_))));
    // same hom-set sizes, different composition: a left-zero monoid with identity
    let z3 = linearize(&FiniteCategory::cyclic_group(3), Q).unwrap();
    let mut other = FiniteCategory::cyclic_group(3);
    for g in 0..3 {
        for f in 0..3 {
            other.compose[g * 3 + f] = Some(if g == 0 { f } else { g });
        }
    }
    assert!(verify_finite_category(&other).passed());
    assert!(matches!(compare(&z3, &other), Err(Error::Mismatch(_))));
    assert!(compare(&z3, &FiniteCategory::cyclic_group(3)).is_ok());
    let two_two = linearize(&FiniteCategory::discrete(2), Q).unwrap();
    assert!(matches!(compare(&two_two, &FiniteCategory::cyclic_group(2)), Err(Error::Mismatch(_))));
}
