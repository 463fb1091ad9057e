//! Internal categories, internal functors and internal natural transformations.
//!
//! Basis conventions: in `A (x) A` the first factor is the later morphism, so
//! the flat multiplication sends `a (x) a'` to the composite "`a` after `a'`";
//! `λ` records codomains and `ρ` domains.

use std::sync::{Arc, OnceLock};

use crate::bicomod::{comonoid_map_checks, cotensor_chain, enumerate_comonoid_maps, Bicomodule, Comonoid, Cotensor};
use crate::error::{Error, Result};
use crate::matrix::{grid_span, solution_space, Matrix};
use crate::report::Report;
use crate::scalar::Field;

/// A monoid `(A, m, u)` in `C`-bicomodules. `mult` is expressed on the
/// canonical basis of `A □_C A`.
#[derive(Clone, Debug)]
pub struct InternalCategory {
    pub objects: Arc<Comonoid>,
    pub morphisms: Bicomodule,
    pub mult: Matrix,
    pub unit: Matrix,
    square: OnceLock<Cotensor>,
    cube: OnceLock<Cotensor>,
}

impl PartialEq for InternalCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.mult == other.mult
            && self.unit == other.unit
    }
}

impl Eq for InternalCategory {}

impl InternalCategory {
    pub fn new(morphisms: Bicomodule, mult: Matrix, unit: Matrix) -> Result<InternalCategory> {
        if morphisms.left != morphisms.right {
            return Err(Error::ComonoidMismatch(
                "morphisms must be a bicomodule over a single comonoid".into(),
            ));
        }
        let ic = InternalCategory {
            objects: morphisms.left.clone(),
            morphisms,
            mult,
            unit,
            square: OnceLock::new(),
            cube: OnceLock::new(),
        };
        let sq = ic.square()?.dim();
        let (a, c) = (ic.morphisms.dim, ic.objects.dim);
        if ic.mult.shape() != (a, sq) || ic.unit.shape() != (a, c) {
            return Err(Error::ShapeMismatch(format!(
                "multiplication must be {a}x{sq} and unit {a}x{c}; got {:?} and {:?}",
                ic.mult.shape(),
                ic.unit.shape()
            )));
        }
        Ok(ic)
    }

    /// Builds the category from a multiplication given on the flat `A (x) A`,
    /// keeping only its restriction to the cotensor.
    pub fn from_flat_mult(morphisms: Bicomodule, mult_flat: Matrix, unit: Matrix) -> Result<InternalCategory> {
        let n = morphisms.dim;
        if mult_flat.shape() != (n, n * n) {
            return Err(Error::ShapeMismatch(format!(
                "flat multiplication must be {n}x{}",
                n * n
            )));
        }
        let sq = cotensor_chain(&[&morphisms, &morphisms])?;
        let mult = sq.restrict(&mult_flat);
        InternalCategory::new(morphisms, mult, unit)
    }

    /// The internal category whose morphisms are only identities: `A = C`, `m` the
    /// canonical `C □ C ≅ C`, `u` the identity.
    pub fn discrete(objects: Arc<Comonoid>) -> InternalCategory {
        let reg = objects.regular();
        let flat = objects.counit.tensor(&objects.id());
        InternalCategory::from_flat_mult(reg, flat, objects.id()).expect("discrete category")
    }

    pub fn field(&self) -> Field {
        self.objects.field
    }

    pub fn dim(&self) -> usize {
        self.morphisms.dim
    }

    pub fn id(&self) -> Matrix {
        self.morphisms.id()
    }

    /// `A □ A`, computed once.
    pub fn square(&self) -> Result<&Cotensor> {
        if let Some(s) = self.square.get() {
            return Ok(s);
        }
        let s = cotensor_chain(&[&self.morphisms, &self.morphisms])?;
        Ok(self.square.get_or_init(|| s))
    }

    /// `A □ A □ A`, computed once.
    pub fn cube(&self) -> Result<&Cotensor> {
        if let Some(s) = self.cube.get() {
            return Ok(s);
        }
        let a = &self.morphisms;
        let s = cotensor_chain(&[a, a, a])?;
        Ok(self.cube.get_or_init(|| s))
    }

    /// `A^{□n}`.
    pub fn power(&self, n: usize) -> Result<Cotensor> {
        match n {
            2 => self.square().cloned(),
            3 => self.cube().cloned(),
            _ => {
                let factors = vec![&self.morphisms; n];
                cotensor_chain(&factors)
            }
        }
    }

    /// The multiplication extended to the flat `A (x) A`.
    pub fn mult_flat(&self) -> Matrix {
        self.square().expect("validated at construction").extend(&self.mult)
    }
}

pub fn verify_internal_category(ic: &InternalCategory) -> Result<Report> {
    let sq = ic.square()?;
    let cube = ic.cube()?;
    let a = &ic.morphisms;
    let c = &ic.objects;
    if ic.mult.shape() != (a.dim, sq.dim()) || ic.unit.shape() != (a.dim, c.dim) {
        return Err(Error::ShapeMismatch("structure maps do not match the carrier".into()));
    }
    let ida = a.id();
    let idc = c.id();
    let mf = ic.mult_flat();
    let u = &ic.unit;
    let mut r = Report::new("internal category");
    r.equal(
        "mult left colinear",
        "λ_A m = (C□m) λ_{A□A}",
        &a.lambda.mul(&ic.mult),
        &idc.tensor(&ic.mult).mul(&sq.result.lambda),
    );
    r.equal(
        "mult right colinear",
        "ρ_A m = (m□C) ρ_{A□A}",
        &a.rho.mul(&ic.mult),
        &ic.mult.tensor(&idc).mul(&sq.result.rho),
    );
    r.equal(
        "unit left colinear",
        "λ_A u = (C⊗u) Δ_C",
        &a.lambda.mul(u),
        &idc.tensor(u).mul(&c.delta),
    );
    r.equal(
        "unit right colinear",
        "ρ_A u = (u⊗C) Δ_C",
        &a.rho.mul(u),
        &u.tensor(&idc).mul(&c.delta),
    );
    r.equal(
        "associativity",
        "m(m□A) = m(A□m)",
        &cube.restrict(&mf.mul(&mf.tensor(&ida))),
        &cube.restrict(&mf.mul(&ida.tensor(&mf))),
    );
    r.equal("left unit", "m(u□A)λ_A = A", &mf.mul(&u.tensor(&ida)).mul(&a.lambda), &ida);
    r.equal("right unit", "m(A□u)ρ_A = A", &mf.mul(&ida.tensor(u)).mul(&a.rho), &ida);
    Ok(r)
}

/// `mⁿ : A^{□(n+1)} -> A`, with `m¹ = m` and `mⁿ = m(m^{n-1} □ A)`.
pub fn iterate_mult(ic: &InternalCategory, n: usize) -> Result<Matrix> {
    assert!(n >= 1, "multiplication power must be positive");
    let mf = ic.mult_flat();
    let mut flat = mf.clone();
    for _ in 1..n {
        flat = mf.mul(&flat.tensor(&ic.id()));
    }
    Ok(ic.power(n + 1)?.restrict(&flat))
}

/// The flat extension of `mⁿ`, valid on `A^{□(n+1)}`.
pub fn iterate_mult_flat(ic: &InternalCategory, n: usize) -> Matrix {
    let mf = ic.mult_flat();
    let mut flat = mf.clone();
    for _ in 1..n {
        flat = mf.mul(&flat.tensor(&ic.id()));
    }
    flat
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalFunctor {
    pub dom: Arc<InternalCategory>,
    pub cod: Arc<InternalCategory>,
    /// Object part `C -> D`.
    pub f0: Matrix,
    /// Morphism part `A -> B`.
    pub f1: Matrix,
}

impl InternalFunctor {
    pub fn new(dom: Arc<InternalCategory>, cod: Arc<InternalCategory>, f0: Matrix, f1: Matrix) -> Result<InternalFunctor> {
        if f0.shape() != (cod.objects.dim, dom.objects.dim) || f1.shape() != (cod.dim(), dom.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "functor components must be {}x{} and {}x{}",
                cod.objects.dim,
                dom.objects.dim,
                cod.dim(),
                dom.dim()
            )));
        }
        Ok(InternalFunctor { dom, cod, f0, f1 })
    }

    pub fn identity(ic: &Arc<InternalCategory>) -> InternalFunctor {
        InternalFunctor {
            dom: ic.clone(),
            cod: ic.clone(),
            f0: ic.objects.id(),
            f1: ic.id(),
        }
    }
}

pub fn verify_functor(f: &InternalFunctor) -> Result<Report> {
    let (a, b) = (&f.dom, &f.cod);
    if f.f0.shape() != (b.objects.dim, a.objects.dim) || f.f1.shape() != (b.dim(), a.dim()) {
        return Err(Error::ShapeMismatch("functor components have the wrong shape".into()));
    }
    let mut r = Report::new("internal functor");
    comonoid_map_checks(&mut r, "f0", &f.f0, &a.objects, &b.objects)?;
    r.equal(
        "f1 left colinear",
        "λ_B f1 = (f0⊗f1) λ_A",
        &b.morphisms.lambda.mul(&f.f1),
        &f.f0.tensor(&f.f1).mul(&a.morphisms.lambda),
    );
    r.equal(
        "f1 right colinear",
        "ρ_B f1 = (f1⊗f0) ρ_A",
        &b.morphisms.rho.mul(&f.f1),
        &f.f1.tensor(&f.f0).mul(&a.morphisms.rho),
    );
    r.equal(
        "multiplicative",
        "m_B (f1□f1) = f1 m_A",
        &b.mult_flat().mul(&f.f1.tensor(&f.f1)).mul(&a.square()?.inclusion),
        &f.f1.mul(&a.mult),
    );
    r.equal("unital", "f1 u_A = u_B f0", &f.f1.mul(&a.unit), &b.unit.mul(&f.f0));
    Ok(r)
}

/// `g ∘ f`, componentwise.
pub fn compose_functors(g: &InternalFunctor, f: &InternalFunctor) -> Result<InternalFunctor> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch(
            "codomain of the first functor is not the domain of the second".into(),
        ));
    }
    Ok(InternalFunctor {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        f0: g.f0.mul(&f.f0),
        f1: g.f1.mul(&f.f1),
    })
}

/// A natural transformation `source => target`, given by its component map `C -> B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub source: InternalFunctor,
    pub target: InternalFunctor,
    pub alpha: Matrix,
}

impl NatTrans {
    pub fn new(source: InternalFunctor, target: InternalFunctor, alpha: Matrix) -> Result<NatTrans> {
        if source.dom != target.dom || source.cod != target.cod {
            return Err(Error::DomainMismatch(
                "source and target functors must share domain and codomain".into(),
            ));
        }
        if alpha.shape() != (source.cod.dim(), source.dom.objects.dim) {
            return Err(Error::ShapeMismatch(format!(
                "components must be {}x{}",
                source.cod.dim(),
                source.dom.objects.dim
            )));
        }
        Ok(NatTrans { source, target, alpha })
    }
}

pub fn verify_nat(a: &NatTrans) -> Result<Report> {
    let (f, g) = (&a.source, &a.target);
    let (dom, cod) = (&f.dom, &f.cod);
    if a.alpha.shape() != (cod.dim(), dom.objects.dim) {
        return Err(Error::ShapeMismatch("components have the wrong shape".into()));
    }
    let c = &dom.objects;
    let b = &cod.morphisms;
    let mb = cod.mult_flat();
    let mut r = Report::new("natural transformation");
    r.equal(
        "left colinear",
        "λ_B α = (g0⊗α) Δ_C",
        &b.lambda.mul(&a.alpha),
        &g.f0.tensor(&a.alpha).mul(&c.delta),
    );
    r.equal(
        "right colinear",
        "ρ_B α = (α⊗f0) Δ_C",
        &b.rho.mul(&a.alpha),
        &a.alpha.tensor(&f.f0).mul(&c.delta),
    );
    r.equal(
        "naturality",
        "m_B (g1□α) ρ_A = m_B (α□f1) λ_A",
        &mb.mul(&g.f1.tensor(&a.alpha)).mul(&dom.morphisms.rho),
        &mb.mul(&a.alpha.tensor(&f.f1)).mul(&dom.morphisms.lambda),
    );
    Ok(r)
}

/// The convolution product of component maps, `m_B (β (x) α) Δ_C`.
pub fn convolve(cod: &InternalCategory, objects: &Comonoid, beta: &Matrix, alpha: &Matrix) -> Matrix {
    cod.mult_flat().mul(&beta.tensor(alpha)).mul(&objects.delta)
}

/// Vertical composite `β ∗ α`.
pub fn vertical_compose(beta: &NatTrans, alpha: &NatTrans) -> Result<NatTrans> {
    if beta.source != alpha.target {
        return Err(Error::DomainMismatch(
            "source of the outer transformation is not the target of the inner one".into(),
        ));
    }
    let dom = &alpha.source.dom;
    Ok(NatTrans {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        alpha: convolve(&alpha.source.cod, &dom.objects, &beta.alpha, &alpha.alpha),
    })
}

/// `f1 u_A`, after checking that it agrees with `u_B f0`.
pub fn identity_nat(f: &InternalFunctor) -> Result<NatTrans> {
    let left = f.f1.mul(&f.dom.unit);
    if left != f.cod.unit.mul(&f.f0) {
        return Err(Error::IdentityMismatch);
    }
    Ok(NatTrans {
        source: f.clone(),
        target: f.clone(),
        alpha: left,
    })
}

/// `β f0 : h f => k f` for `β : h => k`.
pub fn whisker_right(beta: &NatTrans, f: &InternalFunctor) -> Result<NatTrans> {
    Ok(NatTrans {
        source: compose_functors(&beta.source, f)?,
        target: compose_functors(&beta.target, f)?,
        alpha: beta.alpha.mul(&f.f0),
    })
}

/// `h1 α : h f => h g` for `α : f => g`.
pub fn whisker_left(h: &InternalFunctor, alpha: &NatTrans) -> Result<NatTrans> {
    Ok(NatTrans {
        source: compose_functors(h, &alpha.source)?,
        target: compose_functors(h, &alpha.target)?,
        alpha: h.f1.mul(&alpha.alpha),
    })
}

/// Godement product `β • α = β g0 ∗ h1 α`, checked against `k1 α ∗ β f0`.
pub fn horizontal_compose(beta: &NatTrans, alpha: &NatTrans) -> Result<NatTrans> {
    if alpha.source.cod != beta.source.dom {
        return Err(Error::DomainMismatch(
            "the transformations do not meet at a common internal category".into(),
        ));
    }
    let first = vertical_compose(&whisker_right(beta, &alpha.target)?, &whisker_left(&beta.source, alpha)?)?;
    let second = vertical_compose(&whisker_left(&beta.target, alpha)?, &whisker_right(beta, &alpha.source)?)?;
    if first.alpha != second.alpha {
        return Err(Error::GodementMismatch);
    }
    Ok(first)
}

/// Basis of the morphism parts `A -> B` that are colinear along `f0`.
pub fn colinear_morphism_parts(dom: &InternalCategory, cod: &InternalCategory, f0: &Matrix) -> Vec<Matrix> {
    let field = dom.field();
    solution_space(field, cod.dim(), dom.dim(), |x| {
        let left = cod.morphisms.lambda.mul(x).sub(&f0.tensor(x).mul(&dom.morphisms.lambda));
        let right = cod.morphisms.rho.mul(x).sub(&x.tensor(f0).mul(&dom.morphisms.rho));
        Matrix::vstack(field, 1, &[&left.vectorize(), &right.vectorize()])
    })
}

/// Every internal functor `dom -> cod` whose object part has entries in `values`
/// and whose morphism part has coordinates in `values` over the colinear solution basis.
pub fn enumerate_functors(dom: &Arc<InternalCategory>, cod: &Arc<InternalCategory>, values: &[i64]) -> Vec<InternalFunctor> {
    let mut out = Vec::new();
    for f0 in enumerate_comonoid_maps(&dom.objects, &cod.objects, values) {
        let basis = colinear_morphism_parts(dom, cod, &f0);
        for f1 in grid_span(dom.field(), cod.dim(), dom.dim(), &basis, values) {
            let f = InternalFunctor {
                dom: dom.clone(),
                cod: cod.clone(),
                f0: f0.clone(),
                f1,
            };
            if verify_functor(&f).map(|r| r.passed()).unwrap_or(false) {
                out.push(f);
            }
        }
    }
    out
}

/// Basis of the space of natural transformations `f => g`; every law is linear in the components.
pub fn natural_space(f: &InternalFunctor, g: &InternalFunctor) -> Vec<Matrix> {
    let (dom, cod) = (&f.dom, &f.cod);
    let field = dom.field();
    let c = &dom.objects;
    let mb = cod.mult_flat();
    solution_space(field, cod.dim(), c.dim, |x| {
        let left = cod.morphisms.lambda.mul(x).sub(&g.f0.tensor(x).mul(&c.delta));
        let right = cod.morphisms.rho.mul(x).sub(&x.tensor(&f.f0).mul(&c.delta));
        let nat = mb
            .mul(&g.f1.tensor(x))
            .mul(&dom.morphisms.rho)
            .sub(&mb.mul(&x.tensor(&f.f1)).mul(&dom.morphisms.lambda));
        Matrix::vstack(field, 1, &[&left.vectorize(), &right.vectorize(), &nat.vectorize()])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn algebra_over_k(mult_flat: Matrix, unit: Matrix) -> InternalCategory {
        let k = Arc::new(Comonoid::trivial(Q));
        let n = unit.rows();
        let a = Bicomodule::new(k.clone(), k, Matrix::identity(Q, n), Matrix::identity(Q, n)).unwrap();
        InternalCategory::from_flat_mult(a, mult_flat, unit).unwrap()
    }

    #[test]
    fn over_the_ground_field_categories_are_algebras() {
        // Dual numbers k[x]/x², basis (1, x).
        let dual = algebra_over_k(
            Matrix::ints(Q, &[&[1, 0, 0, 0], &[0, 1, 1, 0]]),
            Matrix::int_column(Q, &[1, 0]),
        );
        assert!(verify_internal_category(&dual).unwrap().passed());
        // x·x = 1 but 1·x = 0 breaks the unit law.
        let broken = algebra_over_k(
            Matrix::ints(Q, &[&[1, 0, 0, 1], &[0, 0, 1, 0]]),
            Matrix::int_column(Q, &[1, 0]),
        );
        assert!(!verify_internal_category(&broken).unwrap().passed());
    }

    #[test]
    fn discrete_category_passes() {
        let ic = InternalCategory::discrete(Arc::new(Comonoid::grouplike(Q, 2)));
        assert!(verify_internal_category(&ic).unwrap().passed());
        let ic = Arc::new(ic);
        let id = InternalFunctor::identity(&ic);
        assert!(verify_functor(&id).unwrap().passed());
        let one = identity_nat(&id).unwrap();
        assert!(verify_nat(&one).unwrap().passed());
        assert_eq!(vertical_compose(&one, &one).unwrap(), one);
    }

    #[test]
    fn poset_fixture_structures_verify() {
        let doc = crate::fixtures::load("F3");
        let ic = doc.internal_categories.get("poset").unwrap();
        assert!(verify_internal_category(ic).unwrap().passed());
        assert_eq!(ic.square().unwrap().dim(), 4);
        assert_eq!(ic.cube().unwrap().dim(), 5);
        for name in ["id", "t", "tt"] {
            assert!(verify_functor(doc.functors.get(name).unwrap()).unwrap().passed(), "{name}");
        }
        for name in ["eta", "mu"] {
            assert!(verify_nat(doc.naturals.get(name).unwrap()).unwrap().passed(), "{name}");
        }
        let t = doc.functors.get("t").unwrap();
        assert_eq!(identity_nat(t).unwrap().alpha, Matrix::ints(Q, &[&[0, 0], &[1, 1], &[0, 0]]));
    }

    // Swapping the images of (id1, f) and (f, id0) breaks a structure law.
    #[test]
    fn perturbed_poset_composition_fails() {
        let doc = crate::fixtures::load("F3");
        let ic = doc.internal_categories.get("poset").unwrap();
        let mut flat = ic.mult_flat();
        flat.set(2, 5, Q.zero());
        flat.set(1, 5, Q.one());
        let broken = InternalCategory::from_flat_mult(ic.morphisms.clone(), flat, ic.unit.clone()).unwrap();
        assert!(!verify_internal_category(&broken).unwrap().passed());
    }

    #[test]
    fn functor_with_wrong_morphism_part_is_not_colinear() {
        let doc = crate::fixtures::load("F3");
        let t = doc.functors.get("t").unwrap();
        let bad = InternalFunctor::new(t.dom.clone(), t.cod.clone(), t.f0.clone(), t.dom.id()).unwrap();
        let r = verify_functor(&bad).unwrap();
        assert!(!r.law_passed("f1 left colinear"));
    }
}
