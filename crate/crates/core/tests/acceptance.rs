//! One line per acceptance criterion. Every comparison is exact.

use std::sync::Arc;
use std::time::Instant;

use icat_core::bicomod::cotensor;
use icat_core::cofun::{co_vertical, cotrans_space, enumerate_cofunctors, Cotrans};
use icat_core::coring::hopf::{
    canonical_map, grouplike_monad_data, is_galois, mu_action, translation_map, HopfGaloisInstance,
};
use icat_core::coring::sweedler::{
    dual_monad, mt, sweedler_kleisli_adjunction, sweedler_kleisli_coring, unit_monad_data, verify_sweedler_monad_data,
    SweedlerContext,
};
use icat_core::coring::twisting::{kleisli_twisting_datum, convolution_inverse_of_l, sweedler_twisting_datum, twist_corings};
use icat_core::coring::{dualize_coring, is_grouplike, undualize_category, verify_coring, Coring};
use icat_core::fixtures;
use icat_core::intcat::{
    enumerate_functors, horizontal_compose, natural_space, vertical_compose, verify_internal_category, InternalCategory,
    NatTrans,
};
use icat_core::klbicat::{
    embed_phi, embed_phi_2cell, embed_psi, embed_psi_2cell, kl_horizontal, kl_vertical, phi_composite_comparison,
    phi_local_lift, verify_kl_onecell, verify_kl_twocell,
};
use icat_core::kleisli::{
    adjunction_to_binatural, binatural_to_adjunction, compare_kleisli_cokleisli, enumerate_opmonads, enumerate_talgebras,
    kleisli_adjunction, kleisli_object, kleisli_object_wreath, kleisli_theta_endomorphism, mate_comonad,
    monad_of_adjunction, opmonad_kleisli, theta_correspondence, theta_inverse, verify_adjunction, verify_comonad,
    Adjunction, Monad, Opmonad,
};
use icat_core::matrix::grid_span;
use icat_core::oracle::{classical_kleisli, compare, linearize_monad, FiniteCategory, SetMonad};
use icat_core::{Field, Matrix};

const Q: Field = Field::Rational;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn categories() -> Vec<(String, Arc<InternalCategory>)> {
    let mut out = Vec::new();
    for (name, _) in fixtures::ALL {
        let doc = fixtures::load(name);
        for (n, ic) in &doc.internal_categories.0 {
            out.push((format!("{name}/{n}"), ic.clone()));
        }
    }
    out
}

fn f5() -> SweedlerContext {
    let doc = fixtures::load("F5");
    let (ctx, _) = doc.sweedler_data.get("g").unwrap();
    ctx.clone()
}

/// Monads of the fixture documents, identity monads on their categories, and
/// the duals of the Sweedler monad data in F5.
fn fixture_monads() -> Vec<(String, Monad)> {
    let mut out = Vec::new();
    for (name, _) in fixtures::ALL {
        let doc = fixtures::load(name);
        for (n, m) in &doc.monads.0 {
            out.push((format!("{name}/{n}"), m.clone()));
        }
    }
    for (n, ic) in categories() {
        out.push((format!("identity on {n}"), Monad::identity(&ic)));
    }
    let doc = fixtures::load("F5");
    for (n, (ctx, d)) in &doc.sweedler_data.0 {
        out.push((format!("F5/{n} dualized"), dual_monad(ctx, d).unwrap()));
    }
    out
}

fn c1_oracle() -> Outcome {
    let doc = fixtures::load("F3");
    let m = ok(doc.monads.get("ceiling"))?;
    let chain = FiniteCategory::chain(2);
    let ceiling = SetMonad::thin(&chain, &[1, 1]).ok_or("ceiling is not a monad")?;
    ensure(ok(linearize_monad(&chain, &ceiling, Q))? == *m, "F3 monad is not the linearized ceiling")?;
    let kt = ok(kleisli_object(m))?;
    ensure(kt.dim() == 4, format!("Kleisli object has dimension {}", kt.dim()))?;
    let rep = ok(compare(&kt, &ok(classical_kleisli(&chain, &ceiling))?))?;
    ensure(rep.passed(), rep.to_text())
}

fn round_trip(name: &str, a: &Adjunction) -> Outcome {
    let th = ok(adjunction_to_binatural(a))?;
    let back = ok(binatural_to_adjunction(&a.l, &a.r, &th))?;
    ensure(back.eps.alpha == a.eps.alpha, format!("{name}: ε differs"))?;
    ensure(back.eta.alpha == a.eta.alpha, format!("{name}: η differs"))?;
    let again = ok(adjunction_to_binatural(&back))?;
    ensure(again.theta == th.theta, format!("{name}: θ differs"))?;
    ensure(again.theta_inv == th.theta_inv, format!("{name}: θ⁻¹ differs"))
}

fn c2_binatural_round_trip() -> Outcome {
    for (n, ic) in categories() {
        round_trip(&format!("identity on {n}"), &Adjunction::identity(&ic))?;
    }
    for (n, m) in fixture_monads() {
        round_trip(&format!("Kleisli of {n}"), &ok(kleisli_adjunction(&m))?)?;
    }
    let doc = fixtures::load("F3");
    round_trip("floor ⊣ ceiling", ok(doc.adjunctions.get("floor_ceiling"))?)
}

fn c3_kleisli_adjunctions() -> Outcome {
    for (n, m) in fixture_monads() {
        let adj = ok(kleisli_adjunction(&m))?;
        let rep = ok(verify_adjunction(&adj))?;
        ensure(rep.passed(), format!("{n}: {}", rep.to_text()))?;
        let back = ok(monad_of_adjunction(&adj))?;
        ensure(
            back.t.f0 == m.t.f0 && back.t.f1 == m.t.f1 && back.mu.alpha == m.mu.alpha && back.eta.alpha == m.eta.alpha,
            format!("{n}: monad of the adjunction differs"),
        )?;
        let th = ok(adjunction_to_binatural(&adj))?;
        let endo = ok(kleisli_theta_endomorphism(&m, &th))?;
        ensure(endo == Matrix::identity(Q, endo.cols()), format!("{n}: θ is not the identity"))?;
    }
    Ok(())
}

fn c4_dual_paths() -> Outcome {
    for (n, m) in fixture_monads() {
        ensure(ok(kleisli_object(&m))? == ok(kleisli_object_wreath(&m))?, format!("{n}: paths differ"))?;
    }
    Ok(())
}

fn c5_mates() -> Outcome {
    let doc = fixtures::load("F3");
    let adj = ok(doc.adjunctions.get("floor_ceiling"))?;
    let m = ok(doc.monads.get("ceiling"))?;
    let w = ok(mate_comonad(adj, m))?;
    let rep = ok(verify_comonad(&w))?;
    ensure(rep.passed(), rep.to_text())?;
    let th = ok(adjunction_to_binatural(adj))?;
    let rep = ok(compare_kleisli_cokleisli(m, &w, &th))?;
    ensure(rep.passed(), rep.to_text())
}

fn c6_opmonads() -> Outcome {
    for (name, ic_name) in [("F3", "poset"), ("F2", "two_points")] {
        let doc = fixtures::load(name);
        let ic = ok(doc.internal_categories.get(ic_name))?;
        let k = ok(opmonad_kleisli(&Opmonad::identity(ic)))?;
        ensure(k.mult == ic.mult && k.unit == ic.unit, format!("{name}: identity opmonad changes the category"))?;
        let found = ok(enumerate_opmonads(ic, &[-1, 0, 1]))?;
        ensure(!found.is_empty(), format!("{name}: search found nothing"))?;
        for o in &found {
            let rep = ok(verify_internal_category(&ok(opmonad_kleisli(o))?))?;
            ensure(rep.passed(), format!("{name}: {}", rep.to_text()))?;
        }
    }
    Ok(())
}

fn c7_theta() -> Outcome {
    let doc = fixtures::load("F3");
    let m = ok(doc.monads.get("ceiling"))?;
    let poset = m.category().clone();
    let algebras = ok(enumerate_talgebras(m, &poset, &[0, 1]))?;
    ensure(algebras.len() >= 2, format!("only {} t-algebras", algebras.len()))?;
    for alg in &algebras {
        let g = ok(theta_correspondence(m, alg))?;
        ensure(ok(theta_inverse(m, &g))? == *alg, "Θ⁻¹Θ ≠ id")?;
        ensure(ok(theta_correspondence(m, &ok(theta_inverse(m, &g))?))? == g, "ΘΘ⁻¹ ≠ id")?;
    }
    Ok(())
}

fn c8_sweedler_kleisli() -> Outcome {
    let ctx = f5();
    let (one, g) = (Matrix::int_column(Q, &[1, 0]), Matrix::int_column(Q, &[0, 1]));
    let d = ok(unit_monad_data(&ctx, &g))?;
    let rep = ok(verify_sweedler_monad_data(&ctx, &d))?;
    ensure(rep.passed(), rep.to_text())?;
    let kc = ok(sweedler_kleisli_coring(&ctx, &d))?;
    let x = ctx.pure(&one, &one);
    let expected = kc.cc.projection.mul(&ctx.pure(&one, &g).tensor(&x));
    ensure(kc.delta.mul(&x) == expected, "Δ_t(1⊗1) ≠ (1⊗g)⊗(1⊗1)")?;
    ensure(kc.counit.mul(&x) == g, "e_t(1⊗1) ≠ g")?;
    ensure(is_grouplike(&mt(&ctx, &d), &kc), "mt is not group-like")?;
    let (_, _, rep) = ok(sweedler_kleisli_adjunction(&ctx, &d))?;
    ensure(rep.passed(), rep.to_text())
}

fn c9_twisting() -> Outcome {
    let ctx = f5();
    let d = ok(unit_monad_data(&ctx, &Matrix::int_column(Q, &[0, 1])))?;
    let td = ok(sweedler_twisting_datum(&ctx, &d))?;
    let (ct, _) = ok(twist_corings(&td))?;
    ensure(ct == ok(sweedler_kleisli_coring(&ctx, &d))?, "C_θ differs from the Kleisli coring")?;
    let (_, rep) = ok(kleisli_twisting_datum(&td))?;
    ensure(rep.law_passed("C_θ̄ = C_θ") && rep.law_passed("(C_θ)^θ̄ = C"), rep.to_text())?;
    ensure(rep.passed(), rep.to_text())?;
    let (_, rep) = ok(convolution_inverse_of_l(&td))?;
    ensure(rep.passed(), rep.to_text())
}

fn c10_hopf_galois() -> Outcome {
    let doc = fixtures::load("F6");
    let hg: &HopfGaloisInstance = ok(doc.hopf_galois.get("H_over_k"))?;
    let ctx = &hg.ctx;
    let (one, g) = (Matrix::int_column(Q, &[1, 0]), Matrix::int_column(Q, &[0, 1]));
    ensure(is_galois(hg), "can is singular")?;
    ensure(canonical_map(hg).mul(&ctx.pure(&one, &g)) == g.tensor(&g), "can(1⊗g) ≠ g⊗g")?;
    ensure(ok(translation_map(hg))?.mul(&g) == ctx.pure(&g, &g), "τ(g) ≠ g⊗g")?;
    let basis: Vec<Matrix> = (0..2).map(|i| Matrix::basis_vector(Q, 2, i)).collect();
    let elems = grid_span(Q, 2, 1, &basis, &[-1, 0, 1]);
    for a in &elems {
        for h in [&one, &g] {
            ensure(ok(mu_action(hg, a, h))? == *a, "a◁h ≠ a")?;
        }
    }
    for x in [&one, &g] {
        for m in &elems {
            for u in &elems {
                let (_, rep) = ok(grouplike_monad_data(hg, x, m, u))?;
                ensure(rep.passed(), rep.to_text())?;
            }
        }
    }
    Ok(())
}

fn c11_duality() -> Outcome {
    let mut corings: Vec<(String, Coring)> = Vec::new();
    for (name, _) in fixtures::ALL {
        let doc = fixtures::load(name);
        for (n, c) in &doc.corings.0 {
            corings.push((format!("{name}/{n}"), c.clone()));
        }
    }
    let ctx = f5();
    for u in [[1, 0], [0, 1]] {
        let d = ok(unit_monad_data(&ctx, &Matrix::int_column(Q, &u)))?;
        corings.push((format!("Kleisli coring u = {u:?}"), ok(sweedler_kleisli_coring(&ctx, &d))?));
    }
    ensure(corings.len() >= 5, "too few corings")?;
    let mut perturbed = Vec::new();
    for (n, c) in &corings {
        let bad = ok(c.with_structure(c.delta.clone(), c.counit.scale(&Q.int(2))))?;
        perturbed.push((format!("{n} with doubled counit"), bad));
    }
    for (n, c) in corings.iter().chain(&perturbed) {
        let ic = ok(dualize_coring(c))?;
        let direct = ok(verify_coring(c))?.passed();
        let dual = ok(verify_internal_category(&ic))?.passed();
        ensure(direct == dual, format!("{n}: verdicts differ ({direct} vs {dual})"))?;
        ensure(ok(undualize_category(&ic))? == *c, format!("{n}: round trip differs"))?;
        ensure(ok(dualize_coring(&ok(undualize_category(&ic))?))? == ic, format!("{n}: dual round trip differs"))?;
    }
    ensure(perturbed.iter().all(|(_, c)| !verify_coring(c).unwrap().passed()), "perturbation went unnoticed")
}

fn c12_embeddings() -> Outcome {
    let doc = fixtures::load("F3");
    let poset = ok(doc.internal_categories.get("poset"))?.clone();
    let functors = enumerate_functors(&poset, &poset, &[0, 1]);
    let mut naturals: Vec<NatTrans> = Vec::new();
    for f in &functors {
        for g in &functors {
            let basis = natural_space(f, g);
            for alpha in grid_span(Q, poset.dim(), poset.objects.dim, &basis, &[0, 1]) {
                let n = ok(NatTrans::new(f.clone(), g.clone(), alpha))?;
                if icat_core::intcat::verify_nat(&n).map(|r| r.passed()).unwrap_or(false) {
                    naturals.push(n);
                }
            }
        }
    }
    ensure(naturals.len() >= 4, format!("only {} naturals", naturals.len()))?;
    for a in &naturals {
        let chi = ok(embed_phi_2cell(a))?;
        ensure(ok(verify_kl_twocell(&chi))?.passed(), "Φ(α) fails")?;
        ensure(ok(verify_kl_onecell(&chi.source))?.passed(), "Φ(f) fails")?;
        ensure(ok(phi_local_lift(&chi, &a.source, &a.target))? == *a, "local lift differs")?;
    }
    for b in &naturals {
        for a in &naturals {
            if b.source == a.target {
                let lhs = ok(embed_phi_2cell(&ok(vertical_compose(b, a))?))?;
                let rhs = ok(kl_vertical(&ok(embed_phi_2cell(b))?, &ok(embed_phi_2cell(a))?))?;
                ensure(lhs == rhs, "Φ does not preserve vertical composition")?;
            }
        }
    }
    // horizontal composites on the last natural of evenly spaced (source, target) pairs
    let mut sample: Vec<&NatTrans> = Vec::new();
    for n in &naturals {
        match sample.iter_mut().find(|s| s.source == n.source && s.target == n.target) {
            Some(s) => *s = n,
            None => sample.push(n),
        }
    }
    let stride = sample.len().div_ceil(12);
    let sample: Vec<&NatTrans> = sample.into_iter().step_by(stride).collect();
    for b in &sample {
        for a in &sample {
            // β ∘ α : gf => g'f' against Φβ ∘ Φα through the comparisons C^{gf} ≅ Cᶠ □ C^g
            let (f, f2, g, g2) = (&a.source, &a.target, &b.source, &b.target);
            let whole = ok(embed_phi_2cell(&ok(horizontal_compose(b, a))?))?;
            let kl = ok(kl_horizontal(&ok(embed_phi_2cell(b))?, &ok(embed_phi_2cell(a))?))?;
            let (c, c2) = (ok(phi_composite_comparison(g, f))?, ok(phi_composite_comparison(g2, f2))?);
            let p2 = ok(cotensor(&ok(embed_phi(f2))?.m, &ok(embed_phi(g2))?.m))?;
            let e = poset.id();
            let lhs = p2.inclusion.tensor(&e).mul(&kl.chi_flat()).mul(&c);
            let rhs = p2.inclusion.mul(&c2).tensor(&e).mul(&whole.chi_flat());
            ensure(lhs == rhs, "Φ does not preserve horizontal composition")?;
            ensure(ok(verify_kl_twocell(&kl))?.passed(), "Φβ ∘ Φα fails")?;
        }
    }
    // Ψ on every cotransformation between cofunctors of the two-point category
    let doc = fixtures::load("F2");
    let two = ok(doc.internal_categories.get("two_points"))?.clone();
    let cofunctors = ok(enumerate_cofunctors(&two, &two, &[-1, 0, 1]))?;
    ensure(cofunctors.len() >= 2, "too few cofunctors")?;
    let mut cotrans: Vec<Cotrans> = Vec::new();
    for f in &cofunctors {
        for g in &cofunctors {
            let basis = cotrans_space(f, g);
            for alpha in grid_span(Q, two.dim(), two.objects.dim, &basis, &[-1, 0, 1]) {
                cotrans.push(ok(Cotrans::new(f.clone(), g.clone(), alpha))?);
            }
        }
    }
    for a in &cotrans {
        ensure(ok(verify_kl_onecell(&ok(embed_psi(&a.source))?))?.passed(), "Ψ(f) fails")?;
        ensure(ok(verify_kl_twocell(&ok(embed_psi_2cell(a))?))?.passed(), "Ψ(α) fails")?;
    }
    for b in &cotrans {
        for a in &cotrans {
            if b.source == a.target {
                let lhs = ok(embed_psi_2cell(&ok(co_vertical(b, a))?))?;
                let rhs = ok(kl_vertical(&ok(embed_psi_2cell(b))?, &ok(embed_psi_2cell(a))?))?;
                ensure(lhs == rhs, "Ψ does not preserve ∗̲")?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("internal Kleisli object of the poset monad matches the classical one", c1_oracle),
        ("adjunctions and bi-natural maps round trip", c2_binatural_round_trip),
        ("Kleisli adjunctions recover their monads with θ = id", c3_kleisli_adjunctions),
        ("direct and wreath Kleisli objects agree", c4_dual_paths),
        ("mate comonad and Kleisli / co-Kleisli comparison", c5_mates),
        ("opmonad Kleisli objects", c6_opmonads),
        ("t-algebras correspond to functors out of the Kleisli object", c7_theta),
        ("Sweedler monad data and its Kleisli coring", c8_sweedler_kleisli),
        ("twisting by the Sweedler datum", c9_twisting),
        ("Hopf-Galois extension of the group algebra", c10_hopf_galois),
        ("duality between corings and internal categories", c11_duality),
        ("embeddings into the Kleisli bicategory", c12_embeddings),
    ];
    let mut failures = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match &outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {title} ({ms} ms)", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {title} ({ms} ms): {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
