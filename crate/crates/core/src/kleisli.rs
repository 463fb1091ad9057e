//! Adjunctions, bi-natural isomorphisms, monads, comonads and opmonads, and
//! their Kleisli-type objects.
//!
//! Laws are checked on component maps: the vertical composite of two
//! transformations is the convolution `m (β ⊗ α) Δ`, whiskering is pre- or
//! post-composition with the object or morphism part.

use std::sync::Arc;

use crate::bicomod::{cotensor, cotensor_chain, cotensor_map, induce_left, induce_right, iterate_coaction, Bicomodule, Cotensor};
use crate::cofun::{
    co_horizontal, co_vertical, compose_cofunctors, cotrans_space, enumerate_cofunctors, lifted_objects, verify_cofunctor,
    verify_cotrans, Cofunctor, Cotrans,
};
use crate::error::{Error, Result};
use crate::intcat::{
    compose_functors, convolve, enumerate_functors, iterate_mult_flat, natural_space, verify_functor, verify_internal_category,
    verify_nat, InternalCategory, InternalFunctor, NatTrans,
};
use crate::klbicat::{embed_phi, embed_phi_2cell, embed_psi, embed_psi_2cell, phi_carrier, phi_composite_comparison};
use crate::matrix::{factor_with, grid_span, Matrix};
use crate::report::Report;

fn same_functor(a: &InternalFunctor, b: &InternalFunctor) -> bool {
    a.f0 == b.f0 && a.f1 == b.f1 && a.dom == b.dom && a.cod == b.cod
}

fn same_cofunctor(a: &Cofunctor, b: &Cofunctor) -> bool {
    a.f0 == b.f0 && a.f1 == b.f1 && a.dom == b.dom && a.cod == b.cod
}

/// `f1 u_A`, the components of the identity transformation on `f`.
fn identity_components(f: &InternalFunctor) -> Matrix {
    f.f1.mul(&f.dom.unit)
}

/// An adjunction `l ⊣ r` with counit `eps : lr => 1` and unit `eta : 1 => rl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub l: InternalFunctor,
    pub r: InternalFunctor,
    pub eps: NatTrans,
    pub eta: NatTrans,
}

impl Adjunction {
    /// `1 ⊣ 1` with identity unit and counit.
    pub fn identity(ic: &Arc<InternalCategory>) -> Adjunction {
        let id = InternalFunctor::identity(ic);
        let one = NatTrans {
            source: id.clone(),
            target: id.clone(),
            alpha: ic.unit.clone(),
        };
        Adjunction {
            l: id.clone(),
            r: id,
            eps: one.clone(),
            eta: one,
        }
    }

    /// Assembles an adjunction from functors and component maps.
    pub fn from_components(l: InternalFunctor, r: InternalFunctor, eps: Matrix, eta: Matrix) -> Result<Adjunction> {
        let eps = NatTrans::new(compose_functors(&l, &r)?, InternalFunctor::identity(&l.cod), eps)?;
        let eta = NatTrans::new(InternalFunctor::identity(&l.dom), compose_functors(&r, &l)?, eta)?;
        Ok(Adjunction { l, r, eps, eta })
    }
}

pub fn verify_adjunction(a: &Adjunction) -> Result<Report> {
    let (l, r) = (&a.l, &a.r);
    if l.cod != r.dom || r.cod != l.dom {
        return Err(Error::DomainMismatch("l and r do not run in opposite directions".into()));
    }
    let (ca, db) = (&l.dom, &l.cod);
    let (c, d) = (&ca.objects, &db.objects);
    if a.eps.alpha.shape() != (db.dim(), d.dim) || a.eta.alpha.shape() != (ca.dim(), c.dim) {
        return Err(Error::ShapeMismatch("unit or counit has the wrong shape".into()));
    }
    let mut rep = Report::new("adjunction");
    rep.absorb("l", verify_functor(l)?);
    rep.absorb("r", verify_functor(r)?);
    rep.record(
        "counit typing",
        "ε : lr ⇒ 1",
        same_functor(&a.eps.source, &compose_functors(l, r)?) && same_functor(&a.eps.target, &InternalFunctor::identity(db)),
    );
    rep.record(
        "unit typing",
        "η : 1 ⇒ rl",
        same_functor(&a.eta.source, &InternalFunctor::identity(ca)) && same_functor(&a.eta.target, &compose_functors(r, l)?),
    );
    rep.absorb("eps", verify_nat(&a.eps)?);
    rep.absorb("eta", verify_nat(&a.eta)?);
    rep.equal(
        "first triangle",
        "εl₀ ∗ l₁η = l",
        &convolve(db, c, &a.eps.alpha.mul(&l.f0), &l.f1.mul(&a.eta.alpha)),
        &identity_components(l),
    );
    rep.equal(
        "second triangle",
        "r₁ε ∗ ηr₀ = r",
        &convolve(ca, d, &r.f1.mul(&a.eps.alpha), &a.eta.alpha.mul(&r.f0)),
        &identity_components(r),
    );
    Ok(rep)
}

/// A map `Dʳ □_C A -> B □_D ˡC`, optionally with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiNatural {
    pub theta: Matrix,
    pub theta_inv: Option<Matrix>,
}

/// `ˡC`: the objects of `l.dom` as a `D`-`C`-bicomodule through `l0`.
pub fn left_lifted(l: &InternalFunctor) -> Bicomodule {
    lifted_objects(&l.cod, &l.dom, &l.f0)
}

/// `(Dʳ □_C A, B □_D ˡC)`.
pub fn binatural_spaces(l: &InternalFunctor, r: &InternalFunctor) -> Result<(Cotensor, Cotensor)> {
    let src = cotensor(&phi_carrier(r), &l.dom.morphisms)?;
    let dst = cotensor(&l.cod.morphisms, &left_lifted(l))?;
    Ok((src, dst))
}

pub fn adjunction_to_binatural(a: &Adjunction) -> Result<BiNatural> {
    let (l, r) = (&a.l, &a.r);
    let (ca, db) = (&l.dom, &l.cod);
    let (c, d) = (&ca.objects, &db.objects);
    let (src, dst) = binatural_spaces(l, r)?;
    let theta_flat = db
        .mult_flat()
        .tensor(&c.id())
        .mul(&Matrix::tensor_all(c.field, &[&a.eps.alpha, &l.f1, &c.id()]))
        .mul(&d.id().tensor(&ca.morphisms.rho));
    let theta = dst.factor(&src.restrict(&theta_flat))?;
    let inv_flat = d
        .id()
        .tensor(&ca.mult_flat())
        .mul(&Matrix::tensor_all(c.field, &[&d.id(), &r.f1, &a.eta.alpha]))
        .mul(&db.morphisms.lambda.tensor(&c.id()));
    let theta_inv = src.factor(&dst.restrict(&inv_flat))?;
    if theta.mul(&theta_inv) != dst.result.id() || theta_inv.mul(&theta) != src.result.id() {
        return Err(Error::NotInvertible(
            "the maps built from the unit and counit are not mutually inverse".into(),
        ));
    }
    Ok(BiNatural {
        theta,
        theta_inv: Some(theta_inv),
    })
}

pub fn verify_binatural(th: &BiNatural, l: &InternalFunctor, r: &InternalFunctor) -> Result<Report> {
    let (ca, db) = (&l.dom, &l.cod);
    let (c, d) = (&ca.objects, &db.objects);
    let (src, dst) = binatural_spaces(l, r)?;
    if th.theta.shape() != (dst.dim(), src.dim()) {
        return Err(Error::ShapeMismatch(format!(
            "bi-natural map must be {}x{}",
            dst.dim(),
            src.dim()
        )));
    }
    let mut rep = Report::new("bi-natural map");
    rep.equal(
        "left colinear",
        "λ θ = (D⊗θ) λ",
        &dst.result.lambda.mul(&th.theta),
        &d.id().tensor(&th.theta).mul(&src.result.lambda),
    );
    rep.equal(
        "right colinear",
        "ρ θ = (θ⊗C) ρ",
        &dst.result.rho.mul(&th.theta),
        &th.theta.tensor(&c.id()).mul(&src.result.rho),
    );
    let tf = dst.inclusion.mul(&th.theta).mul(&src.projection);
    let (ida, idb, idc, idd) = (ca.id(), db.id(), c.id(), d.id());
    let br = cotensor(&induce_right(&r.f0, c, &db.morphisms)?, &ca.morphisms)?;
    let lhs = db
        .mult_flat()
        .tensor(&idc)
        .mul(&idb.tensor(&tf))
        .mul(&db.morphisms.rho.tensor(&ida))
        .mul(&br.inclusion);
    let rhs = tf
        .mul(&idd.tensor(&ca.mult_flat()))
        .mul(&Matrix::tensor_all(c.field, &[&idd, &r.f1, &ida]))
        .mul(&db.morphisms.lambda.tensor(&ida))
        .mul(&br.inclusion);
    rep.equal(
        "covariant naturality",
        "(m_B□ˡC)(B□θ)(ρ□A) = θ(Dʳ□m_A)(D□r₁□A)(λ□A)",
        &lhs,
        &rhs,
    );
    let chain = cotensor_chain(&[&phi_carrier(r), &ca.morphisms, &ca.morphisms])?;
    let lu = l.f1.mul(&ca.unit);
    let lhs = iterate_mult_flat(db, 2)
        .tensor(&idc)
        .mul(&Matrix::tensor_all(c.field, &[&idb, &lu, &l.f1, &idc]))
        .mul(&tf.tensor(&ca.morphisms.rho))
        .mul(&chain.inclusion);
    let rhs = tf.mul(&idd.tensor(&ca.mult_flat())).mul(&chain.inclusion);
    rep.equal(
        "contravariant naturality",
        "(m²_B□ˡC)(B□l□l₁□ˡC)(θ□ρ) = θ(Dʳ□m_A)",
        &lhs,
        &rhs,
    );
    if let Some(inv) = &th.theta_inv {
        if inv.shape() != (src.dim(), dst.dim()) {
            return Err(Error::ShapeMismatch("inverse has the wrong shape".into()));
        }
        rep.equal("right inverse", "θ θ⁻¹ = 1", &th.theta.mul(inv), &dst.result.id());
        rep.equal("left inverse", "θ⁻¹ θ = 1", &inv.mul(&th.theta), &src.result.id());
    }
    Ok(rep)
}

pub fn binatural_to_adjunction(l: &InternalFunctor, r: &InternalFunctor, th: &BiNatural) -> Result<Adjunction> {
    let rep = verify_binatural(th, l, r)?;
    if !rep.passed() {
        return Err(Error::NotBiNatural(rep.failed_laws().join(", ")));
    }
    let inv = match &th.theta_inv {
        Some(m) => m.clone(),
        None => th
            .theta
            .inverse()
            .ok_or_else(|| Error::NotInvertible("bi-natural map is singular".into()))?,
    };
    let (ca, db) = (&l.dom, &l.cod);
    let (c, d) = (&ca.objects, &db.objects);
    let (src, dst) = binatural_spaces(l, r)?;
    let tf = dst.inclusion.mul(&th.theta).mul(&src.projection);
    let tf_inv = src.inclusion.mul(&inv).mul(&dst.projection);
    let lu = l.f1.mul(&ca.unit);
    let ru = r.f1.mul(&db.unit);
    let eps = db
        .mult_flat()
        .mul(&db.id().tensor(&lu))
        .mul(&tf)
        .mul(&d.id().tensor(&ru))
        .mul(&d.delta);
    let eta = ca
        .mult_flat()
        .mul(&ru.tensor(&ca.id()))
        .mul(&tf_inv)
        .mul(&lu.tensor(&c.id()))
        .mul(&c.delta);
    let adj = Adjunction::from_components(l.clone(), r.clone(), eps, eta)?;
    let rep = verify_adjunction(&adj)?;
    if !rep.passed() {
        return Err(Error::NotBiNatural(rep.failed_laws().join(", ")));
    }
    Ok(adj)
}

/// A monad `(t, μ, η)` on an internal category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monad {
    pub t: InternalFunctor,
    pub mu: NatTrans,
    pub eta: NatTrans,
}

impl Monad {
    pub fn new(t: InternalFunctor, mu: Matrix, eta: Matrix) -> Result<Monad> {
        let ic = t.dom.clone();
        let mu = NatTrans::new(compose_functors(&t, &t)?, t.clone(), mu)?;
        let eta = NatTrans::new(InternalFunctor::identity(&ic), t.clone(), eta)?;
        Ok(Monad { t, mu, eta })
    }

    pub fn identity(ic: &Arc<InternalCategory>) -> Monad {
        Monad::new(InternalFunctor::identity(ic), ic.unit.clone(), ic.unit.clone()).expect("identity monad")
    }

    pub fn category(&self) -> &Arc<InternalCategory> {
        &self.t.dom
    }
}

pub fn verify_monad(m: &Monad) -> Result<Report> {
    let t = &m.t;
    let ic = &t.dom;
    if t.cod != *ic {
        return Err(Error::DomainMismatch("a monad needs an endofunctor".into()));
    }
    let c = &ic.objects;
    let mut rep = Report::new("monad");
    rep.absorb("t", verify_functor(t)?);
    rep.record(
        "multiplication typing",
        "μ : tt ⇒ t",
        same_functor(&m.mu.source, &compose_functors(t, t)?) && same_functor(&m.mu.target, t),
    );
    rep.record(
        "unit typing",
        "η : 1 ⇒ t",
        same_functor(&m.eta.source, &InternalFunctor::identity(ic)) && same_functor(&m.eta.target, t),
    );
    rep.absorb("mu", verify_nat(&m.mu)?);
    rep.absorb("eta", verify_nat(&m.eta)?);
    let (mu, eta) = (&m.mu.alpha, &m.eta.alpha);
    rep.equal(
        "associativity",
        "μ ∗ t₁μ = μ ∗ μt₀",
        &convolve(ic, c, mu, &t.f1.mul(mu)),
        &convolve(ic, c, mu, &mu.mul(&t.f0)),
    );
    let one = identity_components(t);
    rep.equal("left unit", "μ ∗ t₁η = t", &convolve(ic, c, mu, &t.f1.mul(eta)), &one);
    rep.equal("right unit", "μ ∗ ηt₀ = t", &convolve(ic, c, mu, &eta.mul(&t.f0)), &one);
    Ok(rep)
}

/// `(rl, r₁εl₀, η)`.
pub fn monad_of_adjunction(a: &Adjunction) -> Result<Monad> {
    let t = compose_functors(&a.r, &a.l)?;
    let mu = a.r.f1.mul(&a.eps.alpha).mul(&a.l.f0);
    Monad::new(t, mu, a.eta.alpha.clone())
}

/// An algebra `(y, σ : yt => y)` for a monad `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TAlgebra {
    pub y: InternalFunctor,
    pub sigma: NatTrans,
}

impl TAlgebra {
    pub fn new(m: &Monad, y: InternalFunctor, sigma: Matrix) -> Result<TAlgebra> {
        let sigma = NatTrans::new(compose_functors(&y, &m.t)?, y.clone(), sigma)?;
        Ok(TAlgebra { y, sigma })
    }
}

pub fn verify_talgebra(m: &Monad, alg: &TAlgebra) -> Result<Report> {
    let (t, y) = (&m.t, &alg.y);
    if y.dom != t.dom {
        return Err(Error::DomainMismatch("the algebra is not defined on the monad's category".into()));
    }
    let cod = &y.cod;
    let c = &t.dom.objects;
    let s = &alg.sigma.alpha;
    let mut rep = Report::new("t-algebra");
    rep.absorb("y", verify_functor(y)?);
    rep.record(
        "action typing",
        "σ : yt ⇒ y",
        same_functor(&alg.sigma.source, &compose_functors(y, t)?) && same_functor(&alg.sigma.target, y),
    );
    rep.absorb("sigma", verify_nat(&alg.sigma)?);
    rep.equal(
        "unit",
        "σ ∗ y₁η = y",
        &convolve(cod, c, s, &y.f1.mul(&m.eta.alpha)),
        &identity_components(y),
    );
    rep.equal(
        "associativity",
        "σ ∗ y₁μ = σ ∗ σt₀",
        &convolve(cod, c, s, &y.f1.mul(&m.mu.alpha)),
        &convolve(cod, c, s, &s.mul(&t.f0)),
    );
    Ok(rep)
}

/// `f^t(y, σ) = (fy, f₁σ)`.
pub fn talg_pushforward(m: &Monad, f: &InternalFunctor, alg: &TAlgebra) -> Result<TAlgebra> {
    let y = compose_functors(f, &alg.y)?;
    TAlgebra::new(m, y, f.f1.mul(&alg.sigma.alpha))
}

/// `C^t □_C A`, the carrier of the Kleisli object.
pub fn kleisli_carrier(m: &Monad) -> Result<Cotensor> {
    cotensor(&phi_carrier(&m.t), &m.category().morphisms)
}

/// Inclusion and projection of `K □ K` into the fully flat `(C ⊗ A) ⊗ (C ⊗ A)`.
fn flat_square(k: &Cotensor) -> Result<(Cotensor, Matrix, Matrix)> {
    let kk = cotensor(&k.result, &k.result)?;
    let incl = k.inclusion.tensor(&k.inclusion).mul(&kk.inclusion);
    let proj = kk.projection.mul(&k.projection.tensor(&k.projection));
    Ok((kk, incl, proj))
}

/// The Kleisli object `A_t = C^t □_C A` with `u_t = (C □ η) Δ_C` and
/// `m_t = (C^t □ m²_A)(C^t □ μ □ t₁ □ A)(Δ_C □ A^t □ A)`, the last factor dropping the middle object label.
pub fn kleisli_object(m: &Monad) -> Result<InternalCategory> {
    let ic = m.category();
    let (c, field) = (&ic.objects, ic.field());
    let k = kleisli_carrier(m)?;
    let ida = ic.id();
    let unit = k.factor(&c.id().tensor(&m.eta.alpha).mul(&c.delta))?;
    let (_, incl, _) = flat_square(&k)?;
    let flat = c
        .id()
        .tensor(&iterate_mult_flat(ic, 2))
        .mul(&Matrix::tensor_all(field, &[&c.id(), &m.mu.alpha, &m.t.f1, &ida]))
        .mul(&Matrix::tensor_all(field, &[&c.delta, &ida, &ida]))
        .mul(&Matrix::tensor_all(field, &[&c.id(), &ida, &c.counit, &ida]));
    let mult = factor_with(&k.inclusion, &k.projection, &flat.mul(&incl))?;
    InternalCategory::new(k.result, mult, unit)
}

/// The Kleisli object assembled as a wreath product in the Kleisli completion:
/// `Φ(t)` supplies the distributive law, `Φ(μ)` and `Φ(η)` the multiplication
/// and unit, and `Φ(t) ; Φ(t) ≅ Φ(tt)` is the composite comparison.
pub fn kleisli_object_wreath(m: &Monad) -> Result<InternalCategory> {
    let ic = m.category();
    let field = ic.field();
    let c = &ic.objects;
    let phi = embed_phi(&m.t)?;
    let chi_mu = embed_phi_2cell(&m.mu)?;
    let chi_eta = embed_phi_2cell(&m.eta)?;
    let pair = cotensor(&phi.m, &phi.m)?;
    let comparison = phi_composite_comparison(&m.t, &m.t)?
        .inverse()
        .ok_or_else(|| Error::NotInvertible("composite comparison is singular".into()))?;
    let mu_on_pair = chi_mu.chi_flat().mul(&comparison).mul(&pair.projection);
    let ida = ic.id();
    let (ma, idc) = (ic.mult_flat(), c.id());
    let flat = idc
        .tensor(&ma)
        .mul(&mu_on_pair.tensor(&ida))
        .mul(&Matrix::tensor_all(field, &[&idc, &idc, &ma]))
        .mul(&Matrix::tensor_all(field, &[&idc, &phi.phi_flat(), &ida]));
    let k = cotensor(&phi.m, &ic.morphisms)?;
    let (_, incl, _) = flat_square(&k)?;
    let mult = factor_with(&k.inclusion, &k.projection, &flat.mul(&incl))?;
    let unit = k.factor(&chi_eta.chi_flat())?;
    InternalCategory::new(k.result, mult, unit)
}

/// The Kleisli adjunction `l ⊣ r` into `A_t`, with `l₁ = (C^t □ m_A)(C □ η □ A) λ²`,
/// `r₁ = m_A (μ □ t₁)`, `ε = (C^t □ t) Δ_C` and unit `η`.
pub fn kleisli_adjunction(m: &Monad) -> Result<Adjunction> {
    let ic = m.category();
    let field = ic.field();
    let c = &ic.objects;
    let kt = Arc::new(kleisli_object(m)?);
    let k = kleisli_carrier(m)?;
    let ida = ic.id();
    let l1 = k.factor(
        &c.id()
            .tensor(&ic.mult_flat())
            .mul(&Matrix::tensor_all(field, &[&c.id(), &m.eta.alpha, &ida]))
            .mul(&iterate_coaction(&ic.morphisms, 2)),
    )?;
    let l = InternalFunctor::new(ic.clone(), kt.clone(), c.id(), l1)?;
    let r1 = ic
        .mult_flat()
        .mul(&m.mu.alpha.tensor(&m.t.f1))
        .mul(&k.inclusion);
    let r = InternalFunctor::new(kt, ic.clone(), m.t.f0.clone(), r1)?;
    let eps = k.factor(&c.id().tensor(&identity_components(&m.t)).mul(&c.delta))?;
    Adjunction::from_components(l, r, eps, m.eta.alpha.clone())
}

/// `θ` read as an endomorphism of `A_t` through `A_t □_C C ≅ A_t`.
pub fn kleisli_theta_endomorphism(m: &Monad, th: &BiNatural) -> Result<Matrix> {
    let ic = m.category();
    let k = kleisli_carrier(m)?;
    let kc = cotensor(&k.result, &ic.objects.regular())?;
    let drop = k.result.id().tensor(&ic.objects.counit).mul(&kc.inclusion);
    Ok(drop.mul(&th.theta))
}

/// `Θ(y, σ)`: object part `y₀`, morphism part `m_B (σ □ y₁)` on `A_t`.
pub fn theta_correspondence(m: &Monad, alg: &TAlgebra) -> Result<InternalFunctor> {
    let rep = verify_talgebra(m, alg)?;
    if !rep.passed() {
        return Err(Error::NotTAlgebra(rep.failed_laws().join(", ")));
    }
    let kt = Arc::new(kleisli_object(m)?);
    let k = kleisli_carrier(m)?;
    let cod = &alg.y.cod;
    let f1 = cod
        .mult_flat()
        .mul(&alg.sigma.alpha.tensor(&alg.y.f1))
        .mul(&k.inclusion);
    InternalFunctor::new(kt, cod.clone(), alg.y.f0.clone(), f1)
}

/// `Θ⁻¹(g) = (gl, g₁ε)`.
pub fn theta_inverse(m: &Monad, g: &InternalFunctor) -> Result<TAlgebra> {
    let adj = kleisli_adjunction(m)?;
    if g.dom != adj.l.cod {
        return Err(Error::DomainMismatch("functor does not start at the Kleisli object".into()));
    }
    let y = compose_functors(g, &adj.l)?;
    TAlgebra::new(m, y, g.f1.mul(&adj.eps.alpha))
}

/// All t-algebras into `cod` whose functor and action have coordinates in `values`.
pub fn enumerate_talgebras(m: &Monad, cod: &Arc<InternalCategory>, values: &[i64]) -> Result<Vec<TAlgebra>> {
    let ic = m.category();
    let mut out = Vec::new();
    for y in enumerate_functors(ic, cod, values) {
        let yt = compose_functors(&y, &m.t)?;
        let basis = natural_space(&yt, &y);
        for sigma in grid_span(ic.field(), cod.dim(), ic.objects.dim, &basis, values) {
            let alg = TAlgebra::new(m, y.clone(), sigma)?;
            if verify_talgebra(m, &alg)?.passed() {
                out.push(alg);
            }
        }
    }
    Ok(out)
}

/// A comonad `(g, δ, ε)` on an internal category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comonad {
    pub g: InternalFunctor,
    pub delta: NatTrans,
    pub eps: NatTrans,
}

impl Comonad {
    pub fn new(g: InternalFunctor, delta: Matrix, eps: Matrix) -> Result<Comonad> {
        let ic = g.dom.clone();
        let delta = NatTrans::new(g.clone(), compose_functors(&g, &g)?, delta)?;
        let eps = NatTrans::new(g.clone(), InternalFunctor::identity(&ic), eps)?;
        Ok(Comonad { g, delta, eps })
    }

    pub fn identity(ic: &Arc<InternalCategory>) -> Comonad {
        Comonad::new(InternalFunctor::identity(ic), ic.unit.clone(), ic.unit.clone()).expect("identity comonad")
    }
}

pub fn verify_comonad(w: &Comonad) -> Result<Report> {
    let g = &w.g;
    let ic = &g.dom;
    if g.cod != *ic {
        return Err(Error::DomainMismatch("a comonad needs an endofunctor".into()));
    }
    let c = &ic.objects;
    let mut rep = Report::new("comonad");
    rep.absorb("g", verify_functor(g)?);
    rep.record(
        "comultiplication typing",
        "δ : g ⇒ gg",
        same_functor(&w.delta.source, g) && same_functor(&w.delta.target, &compose_functors(g, g)?),
    );
    rep.record(
        "counit typing",
        "ε : g ⇒ 1",
        same_functor(&w.eps.source, g) && same_functor(&w.eps.target, &InternalFunctor::identity(ic)),
    );
    rep.absorb("delta", verify_nat(&w.delta)?);
    rep.absorb("eps", verify_nat(&w.eps)?);
    let (d, e) = (&w.delta.alpha, &w.eps.alpha);
    rep.equal(
        "coassociativity",
        "g₁δ ∗ δ = δg₀ ∗ δ",
        &convolve(ic, c, &g.f1.mul(d), d),
        &convolve(ic, c, &d.mul(&g.f0), d),
    );
    let one = identity_components(g);
    rep.equal("left counit", "g₁ε ∗ δ = g", &convolve(ic, c, &g.f1.mul(e), d), &one);
    rep.equal("right counit", "εg₀ ∗ δ = g", &convolve(ic, c, &e.mul(&g.f0), d), &one);
    Ok(rep)
}

/// `A □_C ᵍC`, the carrier of the co-Kleisli object.
pub fn cokleisli_carrier(w: &Comonad) -> Result<Cotensor> {
    let ic = &w.g.dom;
    cotensor(&ic.morphisms, &lifted_objects(ic, ic, &w.g.f0))
}

/// The co-Kleisli object `A □_C ᵍC` with `u_g = (ε □ C) Δ_C` and
/// `m_g = (m²_A □ ᵍC)(A □ g₁ □ δ □ ᵍC)(A □ ᵍA □ Δ_C)`.
pub fn cokleisli_object(w: &Comonad) -> Result<InternalCategory> {
    let ic = &w.g.dom;
    let (c, field) = (&ic.objects, ic.field());
    let k = cokleisli_carrier(w)?;
    let (ida, idc) = (ic.id(), c.id());
    let unit = k.factor(&w.eps.alpha.tensor(&idc).mul(&c.delta))?;
    let (_, incl, _) = flat_square(&k)?;
    let flat = iterate_mult_flat(ic, 2)
        .tensor(&idc)
        .mul(&Matrix::tensor_all(field, &[&ida, &w.g.f1, &w.delta.alpha, &idc]))
        .mul(&Matrix::tensor_all(field, &[&ida, &ida, &c.delta]))
        .mul(&Matrix::tensor_all(field, &[&ida, &c.counit, &ida, &idc]));
    let mult = factor_with(&k.inclusion, &k.projection, &flat.mul(&incl))?;
    InternalCategory::new(k.result, mult, unit)
}

/// The comonad on `l` induced by `l ⊣ r` (unit `ι`, counit `σ`) and a monad on `r`:
/// `δ = σl₀² ∗ l₁μl₀² ∗ l₁r₁ιl₀ ∗ l₁ι`, `ε = σ ∗ l₁η`.
pub fn mate_comonad(a: &Adjunction, m: &Monad) -> Result<Comonad> {
    if !same_functor(&m.t, &a.r) {
        return Err(Error::DomainMismatch("the monad is not carried by the right adjoint".into()));
    }
    let (l, r) = (&a.l, &a.r);
    let ic = &l.dom;
    if l.cod != *ic {
        return Err(Error::DomainMismatch("mates need endofunctors".into()));
    }
    let c = &ic.objects;
    let (iota, sigma) = (&a.eta.alpha, &a.eps.alpha);
    let l00 = l.f0.mul(&l.f0);
    let inner = convolve(ic, c, &l.f1.mul(&r.f1).mul(iota).mul(&l.f0), &l.f1.mul(iota));
    let inner = convolve(ic, c, &l.f1.mul(&m.mu.alpha).mul(&l00), &inner);
    let delta = convolve(ic, c, &sigma.mul(&l00), &inner);
    let eps = convolve(ic, c, sigma, &l.f1.mul(&m.eta.alpha));
    Comonad::new(l.clone(), delta, eps)
}

/// Checks that `f` is an isomorphism of internal categories `a -> b` on their carriers.
pub fn verify_isomorphism(f: &Matrix, a: &InternalCategory, b: &InternalCategory) -> Result<Report> {
    if f.shape() != (b.dim(), a.dim()) {
        return Err(Error::ShapeMismatch(format!("comparison must be {}x{}", b.dim(), a.dim())));
    }
    let mut rep = Report::new("isomorphism of internal categories");
    let c = &a.objects;
    rep.equal("left colinear", "λ f = (C⊗f) λ", &b.morphisms.lambda.mul(f), &c.id().tensor(f).mul(&a.morphisms.lambda));
    rep.equal("right colinear", "ρ f = (f⊗C) ρ", &b.morphisms.rho.mul(f), &f.tensor(&c.id()).mul(&a.morphisms.rho));
    rep.equal("unit", "f u = u'", &f.mul(&a.unit), &b.unit);
    match cotensor_map(f, f, a.square()?, b.square()?) {
        Ok(ff) => {
            rep.equal("multiplication", "f m = m' (f□f)", &f.mul(&a.mult), &b.mult.mul(&ff));
        }
        Err(_) => {
            rep.record_note("multiplication", "f m = m' (f□f)", false, "f □ f does not exist");
        }
    }
    rep.record("invertible", "f⁻¹ exists", f.inverse().is_some());
    Ok(rep)
}

/// Certifies that `θ : A_t -> ᵍA` intertwines the Kleisli and co-Kleisli structures.
pub fn compare_kleisli_cokleisli(m: &Monad, w: &Comonad, th: &BiNatural) -> Result<Report> {
    let kt = kleisli_object(m)?;
    let cg = cokleisli_object(w)?;
    if th.theta.shape() != (cg.dim(), kt.dim()) {
        return Err(Error::NotIsomorphism(format!(
            "θ is {}x{}, expected {}x{}",
            th.theta.rows(),
            th.theta.cols(),
            cg.dim(),
            kt.dim()
        )));
    }
    let mut rep = verify_isomorphism(&th.theta, &kt, &cg)?;
    rep.subject = "Kleisli and co-Kleisli comparison".into();
    if !rep.passed() {
        return Err(Error::NotIsomorphism(rep.failed_laws().join(", ")));
    }
    Ok(rep)
}

/// An opmonad: an endo-cofunctor `t` with `μ : tt => t` and `η : 1 => t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opmonad {
    pub t: Cofunctor,
    pub mu: Cotrans,
    pub eta: Cotrans,
}

impl Opmonad {
    pub fn new(t: Cofunctor, mu: Matrix, eta: Matrix) -> Result<Opmonad> {
        let ic = t.dom.clone();
        let mu = Cotrans::new(compose_cofunctors(&t, &t)?, t.clone(), mu)?;
        let eta = Cotrans::new(Cofunctor::identity(&ic), t.clone(), eta)?;
        Ok(Opmonad { t, mu, eta })
    }

    pub fn identity(ic: &Arc<InternalCategory>) -> Opmonad {
        Opmonad::new(Cofunctor::identity(ic), ic.unit.clone(), ic.unit.clone()).expect("identity opmonad")
    }
}

pub fn verify_opmonad(o: &Opmonad) -> Result<Report> {
    let t = &o.t;
    let ic = &t.dom;
    if t.cod != *ic {
        return Err(Error::DomainMismatch("an opmonad needs an endo-cofunctor".into()));
    }
    let mut rep = Report::new("opmonad");
    rep.absorb("t", verify_cofunctor(t)?);
    let tt = compose_cofunctors(t, t)?;
    let id = Cofunctor::identity(ic);
    rep.record(
        "multiplication typing",
        "μ : tt ⇒ t",
        same_cofunctor(&o.mu.source, &tt) && same_cofunctor(&o.mu.target, t),
    );
    rep.record(
        "unit typing",
        "η : 1 ⇒ t",
        same_cofunctor(&o.eta.source, &id) && same_cofunctor(&o.eta.target, t),
    );
    rep.absorb("mu", verify_cotrans(&o.mu)?);
    rep.absorb("eta", verify_cotrans(&o.eta)?);
    let one = Cotrans::identity(t);
    let mu = Cotrans {
        source: tt.clone(),
        target: t.clone(),
        alpha: o.mu.alpha.clone(),
    };
    let eta = Cotrans {
        source: id,
        target: t.clone(),
        alpha: o.eta.alpha.clone(),
    };
    let left = co_horizontal(&one, &mu)?;
    let right = co_horizontal(&mu, &one)?;
    rep.equal(
        "associativity",
        "μ ∗̲ (1•̲μ) = μ ∗̲ (μ•̲1)",
        &co_vertical(&retarget(&mu, &left.target), &left)?.alpha,
        &co_vertical(&retarget(&mu, &right.target), &right)?.alpha,
    );
    let left = co_horizontal(&one, &eta)?;
    let right = co_horizontal(&eta, &one)?;
    rep.equal(
        "left unit",
        "μ ∗̲ (1•̲η) = 1",
        &co_vertical(&retarget(&mu, &left.target), &left)?.alpha,
        &ic.unit,
    );
    rep.equal(
        "right unit",
        "μ ∗̲ (η•̲1) = 1",
        &co_vertical(&retarget(&mu, &right.target), &right)?.alpha,
        &ic.unit,
    );
    Ok(rep)
}

/// The same components read with a given (equal up to bracketing) source cofunctor.
fn retarget(a: &Cotrans, source: &Cofunctor) -> Cotrans {
    Cotrans {
        source: source.clone(),
        target: a.target.clone(),
        alpha: a.alpha.clone(),
    }
}

/// `ᵗA`: `A` with left coaction `(t₀ ⊗ A) λ_A`.
pub fn opmonad_carrier(o: &Opmonad) -> Result<Bicomodule> {
    let ic = &o.t.dom;
    induce_left(&o.t.f0, &ic.objects, &ic.morphisms)
}

/// The Kleisli object of an opmonad, on `ᵗA` with unit `η` and
/// `m^t(a □ a') = μ ∘ t₁(a □ cod a') ∘ a'`, i.e.
/// `m²_A (μ ⊗ A ⊗ A)(λ_A ⊗ A)(t₁ ⊗ A)(A ⊗ λ_A)`.
pub fn opmonad_kleisli(o: &Opmonad) -> Result<InternalCategory> {
    let ic = &o.t.dom;
    let field = ic.field();
    let ta = opmonad_carrier(o)?;
    let sq = cotensor(&ta, &ta)?;
    let ida = ic.id();
    let a = &ic.morphisms;
    let flat = iterate_mult_flat(ic, 2)
        .mul(&Matrix::tensor_all(field, &[&o.mu.alpha, &ida, &ida]))
        .mul(&a.lambda.tensor(&ida))
        .mul(&o.t.f1_flat().tensor(&ida))
        .mul(&ida.tensor(&a.lambda));
    InternalCategory::new(ta, sq.restrict(&flat), o.eta.alpha.clone())
}

/// The same object as a wreath product of `(C, A)` with `Ψ(t)`, transported
/// along `ᵗC □_C A ≅ ᵗA`.
pub fn opmonad_kleisli_wreath(o: &Opmonad) -> Result<InternalCategory> {
    let ic = &o.t.dom;
    let field = ic.field();
    let c = &ic.objects;
    let psi = embed_psi(&o.t)?;
    let chi_mu = embed_psi_2cell(&o.mu)?;
    let chi_eta = embed_psi_2cell(&o.eta)?;
    let (ida, idc) = (ic.id(), c.id());
    // ᵗC □ ᵗC ≅ ᵗᵗC keeps the second label.
    let pair_to_tt = c.counit.tensor(&idc);
    let w = idc
        .tensor(&iterate_mult_flat(ic, 2))
        .mul(&Matrix::tensor_all(field, &[&chi_mu.chi_flat().mul(&pair_to_tt), &ida, &ida]))
        .mul(&Matrix::tensor_all(field, &[&idc, &psi.phi_flat(), &ida]));
    let to_ta = c.counit.tensor(&ida);
    let from_ta = &ic.morphisms.lambda;
    let flat = to_ta.mul(&w).mul(&from_ta.tensor(from_ta));
    let ta = opmonad_carrier(o)?;
    let sq = cotensor(&ta, &ta)?;
    let unit = to_ta.mul(&chi_eta.chi_flat());
    InternalCategory::new(ta, sq.restrict(&flat), unit)
}

/// All opmonads on `ic` whose cofunctor and components have coordinates in `values`.
pub fn enumerate_opmonads(ic: &Arc<InternalCategory>, values: &[i64]) -> Result<Vec<Opmonad>> {
    let field = ic.field();
    let mut out = Vec::new();
    for t in enumerate_cofunctors(ic, ic, values)? {
        let tt = compose_cofunctors(&t, &t)?;
        let id = Cofunctor::identity(ic);
        let mus = grid_span(field, ic.dim(), ic.objects.dim, &cotrans_space(&tt, &t), values);
        let etas = grid_span(field, ic.dim(), ic.objects.dim, &cotrans_space(&id, &t), values);
        for mu in &mus {
            for eta in &etas {
                let o = Opmonad::new(t.clone(), mu.clone(), eta.clone())?;
                if verify_opmonad(&o)?.passed() {
                    out.push(o);
                }
            }
        }
    }
    Ok(out)
}

/// Passes when the Kleisli object of the identity monad on `ic` is isomorphic to `ic`
/// through `λ_A : A -> C □ A`.
pub fn identity_kleisli_comparison(ic: &Arc<InternalCategory>) -> Result<Report> {
    let m = Monad::identity(ic);
    let k = kleisli_carrier(&m)?;
    let kt = kleisli_object(&m)?;
    let f = k.factor(&ic.morphisms.lambda)?;
    let mut rep = verify_isomorphism(&f, ic, &kt)?;
    rep.absorb("kleisli", verify_internal_category(&kt)?);
    Ok(rep)
}
