use std::sync::Arc;

use icat_core::coring::hopf::{
    canonical_map, coaction_eigenspace, grouplike_monad_data, grouplikes, mu_action, translation_map,
    verify_hopf_galois_instance, HopfGaloisInstance,
};
use icat_core::coring::sweedler::{
    kleisli_coring_via_duality, mt, sweedler_kleisli_adjunction, sweedler_kleisli_coring, unit_monad_data,
    verify_sweedler_monad_data, SweedlerContext, SweedlerMonadData,
};
use icat_core::coring::twisting::{
    kleisli_twisting_datum, convolution_inverse_of_l, sweedler_twisting_datum, twist_corings, verify_twisting_datum, TwistingDatum,
};
use icat_core::coring::{verify_coring_map, dualize_coring, is_grouplike, undualize_category, verify_coring, Algebra, Coring};
use icat_core::intcat::verify_internal_category;
use icat_core::matrix::grid_span;
use icat_core::{Error, Field, Matrix};

const Q: Field = Field::Rational;

fn f5() -> SweedlerContext {
    SweedlerContext::over_ground(Arc::new(Algebra::cyclic_group(Q, 2))).unwrap()
}

fn col(v: &[i64]) -> Matrix {
    Matrix::int_column(Q, v)
}

fn one() -> Matrix {
    col(&[1, 0])
}

fn g() -> Matrix {
    col(&[0, 1])
}

fn g_data(ctx: &SweedlerContext) -> SweedlerMonadData {
    unit_monad_data(ctx, &g()).unwrap()
}

#[test]
fn sweedler_coring_on_f5() {
    let ctx = f5();
    assert_eq!(ctx.aa.dim(), 4);
    assert_eq!(ctx.aa.projection, Matrix::identity(Q, 4));
    let c = ctx.coring().unwrap();
    assert!(verify_coring(&c).unwrap().passed());
    assert_eq!(c.counit.mul(&ctx.pure(&one(), &g())), g());
    assert!(is_grouplike(&ctx.pure(&one(), &one()), &c));
    assert!(!is_grouplike(&ctx.pure(&one(), &g()), &c));
}

#[test]
fn sweedler_coring_over_itself_is_trivial() {
    let a = Arc::new(Algebra::cyclic_group(Q, 2));
    let ctx = SweedlerContext::over_self(a.clone()).unwrap();
    let c = ctx.coring().unwrap();
    assert_eq!(c.dim(), 2);
    // the counit a⊗a' ↦ aa' is a coring isomorphism onto A
    assert!(verify_coring_map(&c.counit, &c, &Coring::trivial(&a)).unwrap().passed());
    assert!(c.counit.inverse().is_some());
}

#[test]
fn monad_data_examples() {
    let ctx = f5();
    let id = unit_monad_data(&ctx, &one()).unwrap();
    assert_eq!(id.t, ctx.pure(&one(), &one()));
    assert!(verify_sweedler_monad_data(&ctx, &id).unwrap().passed());
    let gd = g_data(&ctx);
    assert_eq!(gd, SweedlerMonadData { t: ctx.pure(&g(), &g()), m: g(), u: g() });
    assert!(verify_sweedler_monad_data(&ctx, &gd).unwrap().passed());
    let odd = SweedlerMonadData { t: ctx.pure(&g(), &g()), m: one(), u: one() };
    let r = verify_sweedler_monad_data(&ctx, &odd).unwrap();
    assert!(r.law_passed("(a)") && r.law_passed("(d)") && r.law_passed("(e)"));
    assert!(!r.law_passed("(b)") && !r.law_passed("(c)"));
    assert!(matches!(unit_monad_data(&ctx, &col(&[1, 1])), Err(Error::NotInvertible(_))));
}

#[test]
fn kleisli_coring_for_g() {
    let ctx = f5();
    let gd = g_data(&ctx);
    let kc = sweedler_kleisli_coring(&ctx, &gd).unwrap();
    assert!(verify_coring(&kc).unwrap().passed());
    let x = ctx.pure(&one(), &one());
    let expected = kc.cc.projection.mul(&ctx.pure(&one(), &g()).tensor(&ctx.pure(&one(), &one())));
    assert_eq!(kc.delta.mul(&x), expected);
    assert_eq!(kc.counit.mul(&x), g());
    assert_eq!(mt(&ctx, &gd), ctx.pure(&one(), &g()));
    assert!(is_grouplike(&mt(&ctx, &gd), &kc));
    let id = unit_monad_data(&ctx, &one()).unwrap();
    assert_eq!(sweedler_kleisli_coring(&ctx, &id).unwrap(), ctx.coring().unwrap());
}

#[test]
fn kleisli_coring_matches_the_dual_kleisli_object() {
    let ctx = f5();
    for u in [one(), g()] {
        let d = unit_monad_data(&ctx, &u).unwrap();
        assert_eq!(
            kleisli_coring_via_duality(&ctx, &d).unwrap(),
            sweedler_kleisli_coring(&ctx, &d).unwrap()
        );
    }
}

#[test]
fn kleisli_adjunction_maps() {
    let ctx = f5();
    let (l1, r1, rep) = sweedler_kleisli_adjunction(&ctx, &g_data(&ctx)).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    let x = ctx.pure(&one(), &one());
    assert_eq!(l1.mul(&x), ctx.pure(&one(), &g()));
    assert_eq!(r1.mul(&x), ctx.pure(&g(), &one()));
}

#[test]
fn grouplike_mt_for_every_searched_datum() {
    let ctx = f5();
    let vals = [-1, 0, 1];
    let basis2: Vec<Matrix> = (0..2).map(|i| Matrix::basis_vector(Q, 2, i)).collect();
    let basis4: Vec<Matrix> = (0..4).map(|i| Matrix::basis_vector(Q, 4, i)).collect();
    let elems = grid_span(Q, 2, 1, &basis2, &vals);
    let mut found = 0;
    for t in grid_span(Q, 4, 1, &basis4, &vals) {
        for m in &elems {
            for u in &elems {
                let d = SweedlerMonadData { t: t.clone(), m: m.clone(), u: u.clone() };
                if verify_sweedler_monad_data(&ctx, &d).unwrap().passed() {
                    found += 1;
                    let kc = sweedler_kleisli_coring(&ctx, &d).unwrap();
                    assert!(is_grouplike(&mt(&ctx, &d), &kc));
                }
            }
        }
    }
    assert!(found >= 2);
}

#[test]
fn duality_round_trip_and_soundness() {
    let ctx = f5();
    let c = ctx.coring().unwrap();
    let ic = dualize_coring(&c).unwrap();
    assert_eq!(undualize_category(&ic).unwrap(), c);
    assert_eq!(
        verify_coring(&c).unwrap().passed(),
        verify_internal_category(&ic).unwrap().passed()
    );
    let bad = c.with_structure(c.delta.clone(), c.counit.scale(&Q.int(3))).unwrap();
    assert!(!verify_coring(&bad).unwrap().passed());
    assert!(!verify_internal_category(&dualize_coring(&bad).unwrap()).unwrap().passed());
}

#[test]
fn identity_twisting_datum() {
    let c = f5().coring().unwrap();
    let td = TwistingDatum::identity(&c);
    assert!(verify_twisting_datum(&td).unwrap().passed());
    let (ct, dt) = twist_corings(&td).unwrap();
    assert_eq!((ct, dt), (c.clone(), c.clone()));
    let (next, rep) = kleisli_twisting_datum(&td).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    assert_eq!(next, td);
    let (l_inv, rep) = convolution_inverse_of_l(&td).unwrap();
    assert!(rep.passed());
    assert_eq!(l_inv, c.id());
}

#[test]
fn sweedler_twisting_datum_reproduces_the_kleisli_coring() {
    let ctx = f5();
    let gd = g_data(&ctx);
    let td = sweedler_twisting_datum(&ctx, &gd).unwrap();
    let rep = verify_twisting_datum(&td).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    let (ct, dt) = twist_corings(&td).unwrap();
    assert_eq!(ct, sweedler_kleisli_coring(&ctx, &gd).unwrap());
    assert!(verify_coring(&dt).unwrap().passed());
    let (next, rep) = kleisli_twisting_datum(&td).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    let (again, rep2) = kleisli_twisting_datum(&next).unwrap();
    assert!(rep2.passed());
    assert_eq!(again, next);
    let (_, rep) = convolution_inverse_of_l(&td).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
}

#[test]
fn perturbed_theta_fails() {
    let ctx = f5();
    let mut td = sweedler_twisting_datum(&ctx, &g_data(&ctx)).unwrap();
    // x ↦ gx is still an invertible bimodule map, but not colinear
    td.theta = td.c.carrier.act_left(&g()).mul(&td.theta);
    let rep = verify_twisting_datum(&td).unwrap();
    assert!(rep.law_passed("θ invertible"));
    assert!(!verify_twisting_datum(&td).unwrap().passed());
}

#[test]
fn non_invertible_counit_composite() {
    let ctx = f5();
    let c = ctx.coring().unwrap();
    // θ⁻¹(a⊗a') = a y a' with y = 2·1⊗1 + 1⊗g − g⊗g, so e(y) = 1 + g
    let theta_inv = Matrix::ints(Q, &[&[2, 1, -1, 0], &[1, 2, 0, -1], &[0, -1, 2, 1], &[-1, 0, 1, 2]]);
    let theta = theta_inv.inverse().expect("invertible");
    let td = TwistingDatum { c: c.clone(), d: c.clone(), l: c.id(), r: c.id(), theta };
    assert!(matches!(convolution_inverse_of_l(&td), Err(Error::NotConvolutionInvertible(_))));
}

#[test]
fn hopf_galois_f6() {
    let hg = HopfGaloisInstance::cyclic_group(Q, 2);
    assert!(verify_hopf_galois_instance(&hg).unwrap().passed());
    assert_eq!(hg.coinvariants, col(&[1, 0]));
    let ctx = &hg.ctx;
    let can = canonical_map(&hg);
    assert_eq!(can.mul(&ctx.pure(&one(), &g())), g().tensor(&g()));
    assert_eq!(can.mul(&ctx.pure(&g(), &g())), one().tensor(&g()));
    let tau = translation_map(&hg).unwrap();
    assert_eq!(tau.mul(&g()), ctx.pure(&g(), &g()));
    for a in [one(), g(), col(&[2, -3])] {
        for h in [one(), g()] {
            assert_eq!(mu_action(&hg, &a, &h).unwrap(), a);
        }
    }
    let found = grouplikes(&hg, &[-1, 0, 1]);
    assert_eq!(found.len(), 2);
    assert!(found.contains(&one()) && found.contains(&g()));
    assert_eq!(coaction_eigenspace(&hg, &g()), g());
}

#[test]
fn hopf_galois_forms_agree() {
    let hg = HopfGaloisInstance::cyclic_group(Q, 2);
    let basis2: Vec<Matrix> = (0..2).map(|i| Matrix::basis_vector(Q, 2, i)).collect();
    let elems = grid_span(Q, 2, 1, &basis2, &[-1, 0, 1]);
    for x in [one(), g()] {
        for m in &elems {
            for u in &elems {
                let (_, rep) = grouplike_monad_data(&hg, &x, m, u).unwrap();
                assert!(rep.passed(), "{}", rep.to_text());
            }
        }
    }
    assert!(matches!(
        grouplike_monad_data(&hg, &col(&[1, 1]), &one(), &one()),
        Err(Error::NotGrouplike)
    ));
}
