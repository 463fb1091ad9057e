//! The Kleisli completion of the bicategory of comonoids and bicomodules.
//!
//! A 1-cell `(C, A) -> (D, B)` is a `C`-`D`-bicomodule `M` with a
//! distributive law `φ : A □ M -> M □ B`; a 2-cell `(M, φ) => (N, ψ)` is a
//! bicolinear `χ : M -> N □ B`. Internal functors embed through `Φ`
//! (carrier `Cᶠ`), through `Φ̂` into the mirrored bicategory (carrier `ᶠC`),
//! and cofunctors embed through `Ψ` (carrier `ᶠD`).

use std::sync::Arc;

use crate::bicomod::{co_opposite, cotensor, cotensor_chain, Bicomodule, Cotensor};
use crate::cofun::{lifted_objects, Cofunctor, Cotrans};
use crate::error::{Error, Result};
use crate::intcat::{InternalCategory, InternalFunctor, NatTrans};
use crate::matrix::{factor_with, Matrix};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlOneCell {
    pub src: Arc<InternalCategory>,
    pub dst: Arc<InternalCategory>,
    pub m: Bicomodule,
    /// `φ : A □ M -> M □ B` on canonical cotensor bases.
    pub phi: Matrix,
    am: Arc<Cotensor>,
    mb: Arc<Cotensor>,
}

impl KlOneCell {
    pub fn new(src: Arc<InternalCategory>, dst: Arc<InternalCategory>, m: Bicomodule, phi: Matrix) -> Result<KlOneCell> {
        if m.left != src.objects || m.right != dst.objects {
            return Err(Error::ComonoidMismatch(
                "carrier must be a bicomodule between the object comonoids".into(),
            ));
        }
        let am = cotensor(&src.morphisms, &m)?;
        let mb = cotensor(&m, &dst.morphisms)?;
        if phi.shape() != (mb.dim(), am.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "distributive law must be {}x{}",
                mb.dim(),
                am.dim()
            )));
        }
        Ok(KlOneCell {
            src,
            dst,
            m,
            phi,
            am: Arc::new(am),
            mb: Arc::new(mb),
        })
    }

    /// Builds the cell from `φ` given as a map `A (x) M -> M (x) B` of flat products.
    pub fn from_flat(src: Arc<InternalCategory>, dst: Arc<InternalCategory>, m: Bicomodule, phi_flat: &Matrix) -> Result<KlOneCell> {
        let am = cotensor(&src.morphisms, &m)?;
        let mb = cotensor(&m, &dst.morphisms)?;
        let phi = mb.factor(&am.restrict(phi_flat))?;
        KlOneCell::new(src, dst, m, phi)
    }

    /// The identity 1-cell: `C` with `φ(a □ x) = cod(a) □ a`.
    pub fn identity(ic: &Arc<InternalCategory>) -> KlOneCell {
        let flat = ic.morphisms.lambda.mul(&ic.id().tensor(&ic.objects.counit));
        KlOneCell::from_flat(ic.clone(), ic.clone(), ic.objects.regular(), &flat).expect("identity 1-cell")
    }

    /// `A □ M`.
    pub fn source_cotensor(&self) -> &Cotensor {
        &self.am
    }

    /// `M □ B`.
    pub fn target_cotensor(&self) -> &Cotensor {
        &self.mb
    }

    /// `φ` as a map of flat products, valid on `A □ M`.
    pub fn phi_flat(&self) -> Matrix {
        self.mb.inclusion.mul(&self.phi).mul(&self.am.projection)
    }
}

pub fn verify_kl_onecell(x: &KlOneCell) -> Result<Report> {
    let (a, b) = (&x.src, &x.dst);
    let m = &x.m;
    let (am, mb) = (&x.am, &x.mb);
    let mut r = Report::new("Kleisli 1-cell");
    r.equal(
        "phi left colinear",
        "λ φ = (C⊗φ) λ",
        &mb.result.lambda.mul(&x.phi),
        &a.objects.id().tensor(&x.phi).mul(&am.result.lambda),
    );
    r.equal(
        "phi right colinear",
        "ρ φ = (φ⊗D) ρ",
        &mb.result.rho.mul(&x.phi),
        &x.phi.tensor(&b.objects.id()).mul(&am.result.rho),
    );
    let triple = cotensor_chain(&[&a.morphisms, &a.morphisms, m])?;
    let pf = x.phi_flat();
    let (ida, idb, idm) = (a.id(), b.id(), m.id());
    let lhs = idm
        .tensor(&b.mult_flat())
        .mul(&pf.tensor(&idb))
        .mul(&ida.tensor(&pf))
        .mul(&triple.inclusion);
    let rhs = pf.mul(&a.mult_flat().tensor(&idm)).mul(&triple.inclusion);
    r.equal("multiplication", "(M□m_B)(φ□B)(A□φ) = φ(m_A□M)", &lhs, &rhs);
    r.equal(
        "unit",
        "φ(u_A□M) λ_M = (M□u_B) ρ_M",
        &pf.mul(&a.unit.tensor(&idm)).mul(&m.lambda),
        &idm.tensor(&b.unit).mul(&m.rho),
    );
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlTwoCell {
    pub source: KlOneCell,
    pub target: KlOneCell,
    /// `χ : M -> N □ B` on the canonical basis of `N □ B`.
    pub chi: Matrix,
}

impl KlTwoCell {
    pub fn new(source: KlOneCell, target: KlOneCell, chi: Matrix) -> Result<KlTwoCell> {
        if source.src != target.src || source.dst != target.dst {
            return Err(Error::DomainMismatch("1-cells must be parallel".into()));
        }
        if chi.shape() != (target.mb.dim(), source.m.dim) {
            return Err(Error::ShapeMismatch(format!(
                "2-cell must be {}x{}",
                target.mb.dim(),
                source.m.dim
            )));
        }
        Ok(KlTwoCell { source, target, chi })
    }

    pub fn from_flat(source: KlOneCell, target: KlOneCell, chi_flat: &Matrix) -> Result<KlTwoCell> {
        let chi = target.mb.factor(chi_flat)?;
        KlTwoCell::new(source, target, chi)
    }

    /// `(M □ u_B) ρ_M`.
    pub fn identity(x: &KlOneCell) -> KlTwoCell {
        let flat = x.m.id().tensor(&x.dst.unit).mul(&x.m.rho);
        KlTwoCell::from_flat(x.clone(), x.clone(), &flat).expect("identity 2-cell")
    }

    /// `χ` into the flat `N (x) B`.
    pub fn chi_flat(&self) -> Matrix {
        self.target.mb.inclusion.mul(&self.chi)
    }
}

pub fn verify_kl_twocell(x: &KlTwoCell) -> Result<Report> {
    let (m, n) = (&x.source, &x.target);
    let b = &m.dst;
    let nb = &n.mb;
    let mut r = Report::new("Kleisli 2-cell");
    r.equal(
        "chi left colinear",
        "λ χ = (C⊗χ) λ_M",
        &nb.result.lambda.mul(&x.chi),
        &m.src.objects.id().tensor(&x.chi).mul(&m.m.lambda),
    );
    r.equal(
        "chi right colinear",
        "ρ χ = (χ⊗D) ρ_M",
        &nb.result.rho.mul(&x.chi),
        &x.chi.tensor(&b.objects.id()).mul(&m.m.rho),
    );
    let cf = x.chi_flat();
    let (idn, idb) = (n.m.id(), b.id());
    let mult = idn.tensor(&b.mult_flat());
    let lhs = mult.mul(&cf.tensor(&idb)).mul(&m.phi_flat()).mul(&m.am.inclusion);
    let rhs = mult
        .mul(&n.phi_flat().tensor(&idb))
        .mul(&m.src.id().tensor(&cf))
        .mul(&m.am.inclusion);
    r.equal("compatibility", "(N□m_B)(χ□B)φ = (N□m_B)(ψ□B)(A□χ)", &lhs, &rhs);
    Ok(r)
}

/// `χ' · χ = (Q □ m_B)(χ' □ B) χ`.
pub fn kl_vertical(chi2: &KlTwoCell, chi1: &KlTwoCell) -> Result<KlTwoCell> {
    if chi2.source != chi1.target {
        return Err(Error::DomainMismatch(
            "source of the outer 2-cell is not the target of the inner one".into(),
        ));
    }
    let b = &chi1.source.dst;
    let flat = chi2
        .target
        .m
        .id()
        .tensor(&b.mult_flat())
        .mul(&chi2.chi_flat().tensor(&b.id()))
        .mul(&chi1.chi_flat());
    KlTwoCell::from_flat(chi1.source.clone(), chi2.target.clone(), &flat)
}

/// An inclusion of a cotensor whose left factor is itself a cotensor, into the fully flat product.
fn flatten_left(outer: &Cotensor, inner: &Cotensor, right_dim: usize) -> (Matrix, Matrix) {
    let f = outer.inclusion.field();
    let id = Matrix::identity(f, right_dim);
    (
        inner.inclusion.tensor(&id).mul(&outer.inclusion),
        outer.projection.mul(&inner.projection.tensor(&id)),
    )
}

fn flatten_right(outer: &Cotensor, left_dim: usize, inner: &Cotensor) -> (Matrix, Matrix) {
    let f = outer.inclusion.field();
    let id = Matrix::identity(f, left_dim);
    (
        id.tensor(&inner.inclusion).mul(&outer.inclusion),
        outer.projection.mul(&id.tensor(&inner.projection)),
    )
}

/// `(M, φ) ; (M', φ') = (M □ M', (M □ φ')(φ □ M'))`.
pub fn kl_compose_onecells(y: &KlOneCell, x: &KlOneCell) -> Result<KlOneCell> {
    if x.dst != y.src {
        return Err(Error::DomainMismatch(
            "target of the first 1-cell is not the source of the second".into(),
        ));
    }
    let p = cotensor(&x.m, &y.m)?;
    let carrier = p.result.clone();
    let am = cotensor(&x.src.morphisms, &carrier)?;
    let mb = cotensor(&carrier, &y.dst.morphisms)?;
    let flat = x
        .m
        .id()
        .tensor(&y.phi_flat())
        .mul(&x.phi_flat().tensor(&y.m.id()));
    let (src_incl, _) = flatten_right(&am, x.src.dim(), &p);
    let (dst_incl, dst_proj) = flatten_left(&mb, &p, y.dst.dim());
    let phi = factor_with(&dst_incl, &dst_proj, &flat.mul(&src_incl))?;
    KlOneCell::new(x.src.clone(), y.dst.clone(), carrier, phi)
}

/// `χ' ∘ χ : M □ M' => N □ N'`, via `(N □ N' □ m)(N □ χ' □ B')(N □ φ')(χ □ M')`.
pub fn kl_horizontal(chi2: &KlTwoCell, chi1: &KlTwoCell) -> Result<KlTwoCell> {
    if chi1.source.dst != chi2.source.src {
        return Err(Error::DomainMismatch(
            "the 2-cells do not meet at a common internal category".into(),
        ));
    }
    let source = kl_compose_onecells(&chi2.source, &chi1.source)?;
    let target = kl_compose_onecells(&chi2.target, &chi1.target)?;
    let last = &chi2.source.dst;
    let (n, n2) = (&chi1.target.m, &chi2.target.m);
    let flat = n
        .id()
        .tensor(&n2.id())
        .tensor(&last.mult_flat())
        .mul(&n.id().tensor(&chi2.chi_flat()).tensor(&last.id()))
        .mul(&n.id().tensor(&chi2.source.phi_flat()))
        .mul(&chi1.chi_flat().tensor(&chi2.source.m.id()));
    let p_src = cotensor(&chi1.source.m, &chi2.source.m)?;
    let p_dst = cotensor(n, n2)?;
    let (dst_incl, dst_proj) = flatten_left(&target.mb, &p_dst, last.dim());
    let chi = factor_with(&dst_incl, &dst_proj, &flat.mul(&p_src.inclusion))?;
    KlTwoCell::new(source, target, chi)
}

/// `Cᶠ`: `C` with left coaction `Δ_C` and right coaction `(C ⊗ f0) Δ_C`.
pub fn phi_carrier(f: &InternalFunctor) -> Bicomodule {
    let c = &f.dom.objects;
    Bicomodule {
        left: c.clone(),
        right: f.cod.objects.clone(),
        dim: c.dim,
        lambda: c.delta.clone(),
        rho: c.id().tensor(&f.f0).mul(&c.delta),
    }
}

/// `Φ(f) = (Cᶠ, (C □ f1) λ_A)`.
pub fn embed_phi(f: &InternalFunctor) -> Result<KlOneCell> {
    let a = &f.dom;
    let flat = a
        .objects
        .id()
        .tensor(&f.f1)
        .mul(&a.morphisms.lambda)
        .mul(&a.id().tensor(&a.objects.counit));
    KlOneCell::from_flat(a.clone(), f.cod.clone(), phi_carrier(f), &flat)
}

/// `Φ(α) = (Cᵍ □ α) Δ_C`.
pub fn embed_phi_2cell(alpha: &NatTrans) -> Result<KlTwoCell> {
    let c = &alpha.source.dom.objects;
    let flat = c.id().tensor(&alpha.alpha).mul(&c.delta);
    KlTwoCell::from_flat(embed_phi(&alpha.source)?, embed_phi(&alpha.target)?, &flat)
}

/// Recovers `α = m_B (u_B g0 □ B) χ` from a 2-cell between `Φ(f)` and `Φ(g)`.
pub fn phi_local_lift(chi: &KlTwoCell, f: &InternalFunctor, g: &InternalFunctor) -> Result<NatTrans> {
    if chi.source != embed_phi(f)? || chi.target != embed_phi(g)? {
        return Err(Error::NotPhiImage);
    }
    let b = &f.cod;
    let alpha = b
        .mult_flat()
        .mul(&b.unit.mul(&g.f0).tensor(&b.id()))
        .mul(&chi.chi_flat());
    NatTrans::new(f.clone(), g.clone(), alpha)
}

/// The comparison `C^{gf} -> Cᶠ □ D^g`, `x ↦ x □ f0(x)`.
pub fn phi_composite_comparison(g: &InternalFunctor, f: &InternalFunctor) -> Result<Matrix> {
    let c = &f.dom.objects;
    let p = cotensor(&phi_carrier(f), &phi_carrier(g))?;
    p.factor(&c.id().tensor(&f.f0).mul(&c.delta))
}

/// The mirror image of an internal category: co-opposite comonoid,
/// coactions exchanged, multiplication precomposed with the symmetry.
pub fn mirror_category(ic: &InternalCategory) -> Result<InternalCategory> {
    let c = Arc::new(co_opposite(&ic.objects));
    let a = ic.morphisms.mirror(c.clone(), c);
    let n = ic.dim();
    let flat = ic.mult_flat().mul(&Matrix::swap(ic.field(), n, n));
    InternalCategory::from_flat_mult(a, flat, ic.unit.clone())
}

/// A functor between mirrored categories; its components are unchanged.
pub fn mirror_functor(f: &InternalFunctor) -> Result<InternalFunctor> {
    InternalFunctor::new(
        Arc::new(mirror_category(&f.dom)?),
        Arc::new(mirror_category(&f.cod)?),
        f.f0.clone(),
        f.f1.clone(),
    )
}

/// `α : f => g` read in the mirrored categories, where it runs `g => f`.
pub fn mirror_nat(alpha: &NatTrans) -> Result<NatTrans> {
    NatTrans::new(
        mirror_functor(&alpha.target)?,
        mirror_functor(&alpha.source)?,
        alpha.alpha.clone(),
    )
}

/// `Φ̂(f) = (ᶠC, (f1 □ C) ρ_A)`, transported into the Kleisli completion of the mirrored categories.
pub fn embed_phi_hat(f: &InternalFunctor) -> Result<KlOneCell> {
    let a = &f.dom;
    let field = a.field();
    let (c, b) = (&a.objects, &f.cod);
    let hat_flat = f
        .f1
        .tensor(&c.id())
        .mul(&a.morphisms.rho)
        .mul(&c.counit.tensor(&a.id()));
    let flat = Matrix::swap(field, b.dim(), c.dim)
        .mul(&hat_flat)
        .mul(&Matrix::swap(field, a.dim(), c.dim));
    let src = Arc::new(mirror_category(a)?);
    let dst = Arc::new(mirror_category(b)?);
    let induced = Bicomodule {
        left: b.objects.clone(),
        right: c.clone(),
        dim: c.dim,
        lambda: f.f0.tensor(&c.id()).mul(&c.delta),
        rho: c.delta.clone(),
    };
    let carrier = induced.mirror(src.objects.clone(), dst.objects.clone());
    KlOneCell::from_flat(src, dst, carrier, &flat)
}

/// `Φ̂(α) = (α □ ᵍC) Δ_C`, transported like [`embed_phi_hat`]; it runs from `Φ̂(g)` to `Φ̂(f)`.
pub fn embed_phi_hat_2cell(alpha: &NatTrans) -> Result<KlTwoCell> {
    let c = &alpha.source.dom.objects;
    let field = c.field;
    let hat = alpha.alpha.tensor(&c.id()).mul(&c.delta);
    let flat = Matrix::swap(field, alpha.source.cod.dim(), c.dim).mul(&hat);
    KlTwoCell::from_flat(embed_phi_hat(&alpha.target)?, embed_phi_hat(&alpha.source)?, &flat)
}

/// `Ψ(f) = (ᶠD, λ_B f1)`.
pub fn embed_psi(f: &Cofunctor) -> Result<KlOneCell> {
    let carrier = lifted_objects(&f.dom, &f.cod, &f.f0);
    let flat = f.cod.morphisms.lambda.mul(&f.f1_flat());
    KlOneCell::from_flat(f.dom.clone(), f.cod.clone(), carrier, &flat)
}

/// `Ψ(α) = λ_B α`.
pub fn embed_psi_2cell(alpha: &Cotrans) -> Result<KlTwoCell> {
    let flat = alpha.source.cod.morphisms.lambda.mul(&alpha.alpha);
    KlTwoCell::from_flat(embed_psi(&alpha.source)?, embed_psi(&alpha.target)?, &flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intcat::{identity_nat, vertical_compose};

    #[test]
    fn identity_cells_verify() {
        let doc = crate::fixtures::load("F3");
        let ic = doc.internal_categories.get("poset").unwrap();
        let one = KlOneCell::identity(ic);
        assert!(verify_kl_onecell(&one).unwrap().passed());
        assert_eq!(embed_phi(&InternalFunctor::identity(ic)).unwrap(), one);
        let two = KlTwoCell::identity(&one);
        assert!(verify_kl_twocell(&two).unwrap().passed());
        assert_eq!(kl_vertical(&two, &two).unwrap(), two);
    }

    #[test]
    fn monad_data_embeds() {
        let doc = crate::fixtures::load("F3");
        let t = doc.functors.get("t").unwrap();
        let eta = doc.naturals.get("eta").unwrap();
        let cell = embed_phi(t).unwrap();
        assert!(verify_kl_onecell(&cell).unwrap().passed());
        let chi = embed_phi_2cell(eta).unwrap();
        assert!(verify_kl_twocell(&chi).unwrap().passed());
        let back = phi_local_lift(&chi, &eta.source, &eta.target).unwrap();
        assert_eq!(back, *eta);
        assert!(matches!(
            phi_local_lift(&chi, t, t),
            Err(Error::NotPhiImage)
        ));
        let id_t = identity_nat(t).unwrap();
        let composed = vertical_compose(&id_t, eta).unwrap();
        assert_eq!(
            embed_phi_2cell(&composed).unwrap(),
            kl_vertical(&embed_phi_2cell(&id_t).unwrap(), &chi).unwrap()
        );
    }

    #[test]
    fn zeroed_column_breaks_unit_diagram() {
        let doc = crate::fixtures::load("F3");
        let cell = embed_phi(doc.functors.get("t").unwrap()).unwrap();
        let mut phi = cell.phi.clone();
        for i in 0..phi.rows() {
            phi.set(i, 0, cell.src.field().zero());
        }
        let bad = KlOneCell::new(cell.src.clone(), cell.dst.clone(), cell.m.clone(), phi).unwrap();
        assert!(!verify_kl_onecell(&bad).unwrap().law_passed("unit"));
    }

    #[test]
    fn phi_hat_is_phi_of_the_mirror() {
        let doc = crate::fixtures::load("F3");
        let t = doc.functors.get("t").unwrap();
        let hat = embed_phi_hat(t).unwrap();
        assert!(verify_kl_onecell(&hat).unwrap().passed());
        assert_eq!(hat, embed_phi(&mirror_functor(t).unwrap()).unwrap());
        let eta = doc.naturals.get("eta").unwrap();
        let chi = embed_phi_hat_2cell(eta).unwrap();
        assert!(verify_kl_twocell(&chi).unwrap().passed());
        assert_eq!(chi, embed_phi_2cell(&mirror_nat(eta).unwrap()).unwrap());
    }
}
