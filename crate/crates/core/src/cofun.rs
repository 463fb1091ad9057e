//! Internal cofunctors and natural cotransformations.
//!
//! A cofunctor `(C, A) -> (D, B)` has its object part going backwards,
//! `f0 : D -> C`, and lifts a morphism `a` out of `f0(d)` to a morphism of `B`
//! out of `d`: `f1 : A □_C ᶠD -> B`.

use std::sync::Arc;

use crate::bicomod::{comonoid_map_checks, cotensor, enumerate_comonoid_maps, Bicomodule, Cotensor};
use crate::error::{Error, Result};
use crate::intcat::InternalCategory;
use crate::matrix::{grid_span, solution_space, Matrix};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofunctor {
    pub dom: Arc<InternalCategory>,
    pub cod: Arc<InternalCategory>,
    pub f0: Matrix,
    /// On the canonical basis of `A □_C ᶠD`.
    pub f1: Matrix,
    source: Arc<Cotensor>,
}

/// `ᶠD`: the objects of `cod` as a `C`-`D`-bicomodule through `f0 : D -> C`.
pub fn lifted_objects(dom: &InternalCategory, cod: &InternalCategory, f0: &Matrix) -> Bicomodule {
    let d = &cod.objects;
    Bicomodule {
        left: dom.objects.clone(),
        right: d.clone(),
        dim: d.dim,
        lambda: f0.tensor(&d.id()).mul(&d.delta),
        rho: d.delta.clone(),
    }
}

impl Cofunctor {
    pub fn new(dom: Arc<InternalCategory>, cod: Arc<InternalCategory>, f0: Matrix, f1: Matrix) -> Result<Cofunctor> {
        if f0.shape() != (dom.objects.dim, cod.objects.dim) {
            return Err(Error::ShapeMismatch(format!(
                "object part must be {}x{}",
                dom.objects.dim, cod.objects.dim
            )));
        }
        let source = cotensor(&dom.morphisms, &lifted_objects(&dom, &cod, &f0))?;
        if f1.shape() != (cod.dim(), source.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "morphism part must be {}x{}",
                cod.dim(),
                source.dim()
            )));
        }
        Ok(Cofunctor {
            dom,
            cod,
            f0,
            f1,
            source: Arc::new(source),
        })
    }

    /// Builds the cofunctor from a morphism part given on the flat `A (x) D`.
    pub fn from_flat(dom: Arc<InternalCategory>, cod: Arc<InternalCategory>, f0: Matrix, f1_flat: Matrix) -> Result<Cofunctor> {
        let source = cotensor(&dom.morphisms, &lifted_objects(&dom, &cod, &f0))?;
        if f1_flat.cols() != source.flat_dim() {
            return Err(Error::ShapeMismatch("flat morphism part has the wrong width".into()));
        }
        let f1 = source.restrict(&f1_flat);
        Cofunctor::new(dom, cod, f0, f1)
    }

    /// `f0 = C`, `f1 = A □ C ≅ A`.
    pub fn identity(ic: &Arc<InternalCategory>) -> Cofunctor {
        let flat = ic.id().tensor(&ic.objects.counit);
        Cofunctor::from_flat(ic.clone(), ic.clone(), ic.objects.id(), flat).expect("identity cofunctor")
    }

    /// `A □_C ᶠD`.
    pub fn source(&self) -> &Cotensor {
        &self.source
    }

    /// The morphism part extended to the flat `A (x) D`.
    pub fn f1_flat(&self) -> Matrix {
        self.source.extend(&self.f1)
    }
}

pub fn verify_cofunctor(f: &Cofunctor) -> Result<Report> {
    let (a, b) = (&f.dom, &f.cod);
    let (c, d) = (&a.objects, &b.objects);
    let src = f.source();
    let mut r = Report::new("cofunctor");
    comonoid_map_checks(&mut r, "f0", &f.f0, d, c)?;
    r.equal(
        "f1 left colinear",
        "(f0⊗B) λ_B f1 = (C⊗f1) λ",
        &f.f0.tensor(&b.id()).mul(&b.morphisms.lambda).mul(&f.f1),
        &c.id().tensor(&f.f1).mul(&src.result.lambda),
    );
    r.equal(
        "f1 right colinear",
        "ρ_B f1 = (f1⊗D) ρ",
        &b.morphisms.rho.mul(&f.f1),
        &f.f1.tensor(&d.id()).mul(&src.result.rho),
    );
    let triple = crate::bicomod::cotensor_chain(&[&a.morphisms, &a.morphisms, &lifted_objects(a, b, &f.f0)])?;
    let f1 = f.f1_flat();
    let ida = a.id();
    let idd = d.id();
    let lhs = f1.mul(&a.mult_flat().tensor(&idd)).mul(&triple.inclusion);
    let rhs = b
        .mult_flat()
        .mul(&f1.tensor(&b.id()))
        .mul(&ida.tensor(&b.morphisms.lambda))
        .mul(&ida.tensor(&f1))
        .mul(&triple.inclusion);
    r.equal("multiplicative", "f1(m_A□D) = m_B(f1□B)(A□λ_B)(A□f1)", &lhs, &rhs);
    r.equal(
        "unital",
        "f1(u_A f0 □ D) Δ_D = u_B",
        &f1.mul(&a.unit.mul(&f.f0).tensor(&idd)).mul(&d.delta),
        &b.unit,
    );
    Ok(r)
}

/// `h ∘̄ f`: object part `f0 h0`, morphism part `h1 (f1 □ E)(A □ (h0⊗E) Δ_E)`.
pub fn compose_cofunctors(h: &Cofunctor, f: &Cofunctor) -> Result<Cofunctor> {
    if f.cod != h.dom {
        return Err(Error::DomainMismatch(
            "codomain of the first cofunctor is not the domain of the second".into(),
        ));
    }
    let e = &h.cod.objects;
    let f0 = f.f0.mul(&h.f0);
    let flat = h
        .f1_flat()
        .mul(&f.f1_flat().tensor(&e.id()))
        .mul(&f.dom.id().tensor(&h.f0.tensor(&e.id()).mul(&e.delta)));
    Cofunctor::from_flat(f.dom.clone(), h.cod.clone(), f0, flat)
}

/// A natural cotransformation `source => target`, given by `α : ᶠD -> ᵍB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotrans {
    pub source: Cofunctor,
    pub target: Cofunctor,
    pub alpha: Matrix,
}

impl Cotrans {
    pub fn new(source: Cofunctor, target: Cofunctor, alpha: Matrix) -> Result<Cotrans> {
        if source.dom != target.dom || source.cod != target.cod {
            return Err(Error::DomainMismatch(
                "source and target cofunctors must share domain and codomain".into(),
            ));
        }
        if alpha.shape() != (source.cod.dim(), source.cod.objects.dim) {
            return Err(Error::ShapeMismatch(format!(
                "components must be {}x{}",
                source.cod.dim(),
                source.cod.objects.dim
            )));
        }
        Ok(Cotrans { source, target, alpha })
    }

    /// The identity cotransformation `u_B` on `f`.
    pub fn identity(f: &Cofunctor) -> Cotrans {
        Cotrans {
            source: f.clone(),
            target: f.clone(),
            alpha: f.cod.unit.clone(),
        }
    }
}

pub fn verify_cotrans(a: &Cotrans) -> Result<Report> {
    let (f, g) = (&a.source, &a.target);
    let (dom, cod) = (&f.dom, &f.cod);
    let d = &cod.objects;
    let b = &cod.morphisms;
    if a.alpha.shape() != (cod.dim(), d.dim) {
        return Err(Error::ShapeMismatch("components have the wrong shape".into()));
    }
    let mb = cod.mult_flat();
    let ida = dom.id();
    let mut r = Report::new("natural cotransformation");
    r.equal(
        "left colinear",
        "(g0⊗B) λ_B α = (C⊗α)(f0⊗D) Δ_D",
        &g.f0.tensor(&cod.id()).mul(&b.lambda).mul(&a.alpha),
        &dom.objects.id().tensor(&a.alpha).mul(&f.f0.tensor(&d.id())).mul(&d.delta),
    );
    r.equal(
        "right colinear",
        "ρ_B α = (α⊗D) Δ_D",
        &b.rho.mul(&a.alpha),
        &a.alpha.tensor(&d.id()).mul(&d.delta),
    );
    let iota = &f.source().inclusion;
    let lhs = mb
        .mul(&g.f1_flat().tensor(&cod.id()))
        .mul(&ida.tensor(&b.lambda))
        .mul(&ida.tensor(&a.alpha))
        .mul(iota);
    let rhs = mb.mul(&a.alpha.tensor(&cod.id())).mul(&b.lambda).mul(&f.f1);
    r.equal("co-naturality", "m_B(g1□B)(A□λ_B)(A□α) = m_B(α□B) λ_B f1", &lhs, &rhs);
    Ok(r)
}

/// `β ∗̲ α = m_B (β□B) λ_B α`.
pub fn co_vertical(beta: &Cotrans, alpha: &Cotrans) -> Result<Cotrans> {
    if beta.source != alpha.target {
        return Err(Error::DomainMismatch(
            "source of the outer cotransformation is not the target of the inner one".into(),
        ));
    }
    let cod = &alpha.source.cod;
    let alpha_m = cod
        .mult_flat()
        .mul(&beta.alpha.tensor(&cod.id()))
        .mul(&cod.morphisms.lambda)
        .mul(&alpha.alpha);
    Ok(Cotrans {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        alpha: alpha_m,
    })
}

/// `β •̲ α : h ∘̄ f => k ∘̄ g` for `α : f => g` and `β : h => k`.
pub fn co_horizontal(beta: &Cotrans, alpha: &Cotrans) -> Result<Cotrans> {
    if alpha.source.cod != beta.source.dom {
        return Err(Error::DomainMismatch(
            "the cotransformations do not meet at a common internal category".into(),
        ));
    }
    let (h, k) = (&beta.source, &beta.target);
    let mid = &alpha.source.cod;
    let last = &h.cod;
    let e = &last.objects;
    let alpha_m = last
        .mult_flat()
        .mul(&k.f1_flat().tensor(&last.id()))
        .mul(&mid.id().tensor(&last.morphisms.lambda))
        .mul(&alpha.alpha.tensor(&beta.alpha))
        .mul(&h.f0.tensor(&e.id()))
        .mul(&e.delta);
    Ok(Cotrans {
        source: compose_cofunctors(h, &alpha.source)?,
        target: compose_cofunctors(k, &alpha.target)?,
        alpha: alpha_m,
    })
}

/// Basis of the morphism parts `A □ ᶠD -> B` that are bicolinear.
pub fn colinear_lifts(dom: &InternalCategory, cod: &InternalCategory, f0: &Matrix) -> Result<Vec<Matrix>> {
    let field = dom.field();
    let src = cotensor(&dom.morphisms, &lifted_objects(dom, cod, f0))?;
    let (c, d) = (&dom.objects, &cod.objects);
    Ok(solution_space(field, cod.dim(), src.dim(), |x| {
        let left = f0
            .tensor(&cod.id())
            .mul(&cod.morphisms.lambda)
            .mul(x)
            .sub(&c.id().tensor(x).mul(&src.result.lambda));
        let right = cod.morphisms.rho.mul(x).sub(&x.tensor(&d.id()).mul(&src.result.rho));
        Matrix::vstack(field, 1, &[&left.vectorize(), &right.vectorize()])
    }))
}

/// Every cofunctor `dom -> cod` with object part entries and lift coordinates in `values`.
pub fn enumerate_cofunctors(dom: &Arc<InternalCategory>, cod: &Arc<InternalCategory>, values: &[i64]) -> Result<Vec<Cofunctor>> {
    let mut out = Vec::new();
    for f0 in enumerate_comonoid_maps(&cod.objects, &dom.objects, values) {
        let basis = colinear_lifts(dom, cod, &f0)?;
        let cols = cotensor(&dom.morphisms, &lifted_objects(dom, cod, &f0))?.dim();
        for f1 in grid_span(dom.field(), cod.dim(), cols, &basis, values) {
            let f = Cofunctor::new(dom.clone(), cod.clone(), f0.clone(), f1)?;
            if verify_cofunctor(&f)?.passed() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// Basis of the space of natural cotransformations `f => g`.
pub fn cotrans_space(f: &Cofunctor, g: &Cofunctor) -> Vec<Matrix> {
    let (dom, cod) = (&f.dom, &f.cod);
    let field = dom.field();
    let d = &cod.objects;
    let b = &cod.morphisms;
    let mb = cod.mult_flat();
    let ida = dom.id();
    let iota = &f.source().inclusion;
    let g1 = g.f1_flat();
    solution_space(field, cod.dim(), d.dim, |x| {
        let left = g
            .f0
            .tensor(&cod.id())
            .mul(&b.lambda)
            .mul(x)
            .sub(&dom.objects.id().tensor(x).mul(&f.f0.tensor(&d.id())).mul(&d.delta));
        let right = b.rho.mul(x).sub(&x.tensor(&d.id()).mul(&d.delta));
        let lhs = mb
            .mul(&g1.tensor(&cod.id()))
            .mul(&ida.tensor(&b.lambda))
            .mul(&ida.tensor(x))
            .mul(iota);
        let rhs = mb.mul(&x.tensor(&cod.id())).mul(&b.lambda).mul(&f.f1);
        Matrix::vstack(
            field,
            1,
            &[&left.vectorize(), &right.vectorize(), &lhs.sub(&rhs).vectorize()],
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomod::Comonoid;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn two_points() -> Arc<InternalCategory> {
        Arc::new(InternalCategory::discrete(Arc::new(Comonoid::grouplike(Q, 2))))
    }

    fn swap_cofunctor(ic: &Arc<InternalCategory>) -> Cofunctor {
        let s = Matrix::ints(Q, &[&[0, 1], &[1, 0]]);
        // On the discrete category a lift of id_{s(d)} at d is id_d.
        let flat = ic.objects.counit.tensor(&ic.objects.id());
        Cofunctor::from_flat(ic.clone(), ic.clone(), s, flat).unwrap()
    }

    #[test]
    fn identity_and_swap_cofunctors_verify() {
        let ic = two_points();
        let id = Cofunctor::identity(&ic);
        assert!(verify_cofunctor(&id).unwrap().passed());
        let s = swap_cofunctor(&ic);
        assert!(verify_cofunctor(&s).unwrap().passed());
        assert_eq!(compose_cofunctors(&s, &s).unwrap(), id);
        assert_eq!(compose_cofunctors(&id, &s).unwrap(), s);
    }

    #[test]
    fn scaled_morphism_part_fails_unit_law() {
        let ic = two_points();
        let id = Cofunctor::identity(&ic);
        let bad = Cofunctor::new(ic.clone(), ic, id.f0.clone(), id.f1.scale(&Q.int(2))).unwrap();
        assert!(!verify_cofunctor(&bad).unwrap().law_passed("unital"));
    }

    #[test]
    fn identity_cotransformation_laws() {
        let ic = two_points();
        let id = Cofunctor::identity(&ic);
        let one = Cotrans::identity(&id);
        assert!(verify_cotrans(&one).unwrap().passed());
        assert_eq!(co_vertical(&one, &one).unwrap(), one);
        assert_eq!(co_horizontal(&one, &one).unwrap(), one);
    }

    // Doubling the component at 0 breaks co-naturality along the arrow 0 -> 1.
    #[test]
    fn perturbed_component_fails_co_naturality() {
        let doc = crate::fixtures::load("F3");
        let ic = doc.internal_categories.get("poset").unwrap().clone();
        let id = Cofunctor::identity(&ic);
        assert!(verify_cofunctor(&id).unwrap().passed());
        let mut alpha = ic.unit.clone();
        alpha.set(0, 0, Q.int(2));
        let bad = Cotrans::new(id.clone(), id, alpha).unwrap();
        let r = verify_cotrans(&bad).unwrap();
        assert!(r.law_passed("left colinear"));
        assert!(!r.law_passed("co-naturality"));
    }
}
