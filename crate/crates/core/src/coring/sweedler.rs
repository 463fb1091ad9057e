//! The Sweedler coring `A ⊗_B A` of an algebra map `B -> A`, monad data
//! `(t, m, u)` on it and the Kleisli coring they produce.

use std::sync::Arc;

use super::{
    algebra_map_checks, coring_map_checks, dualize_coring, tensor_over, tensor_over_chain, undualize_category, verify_coring,
    Algebra, Bimodule, Coring, TensorOver,
};
use crate::bicomod::cotensor_map;
use crate::error::{Error, Result};
use crate::intcat::{InternalCategory, InternalFunctor};
use crate::kleisli::{kleisli_carrier, kleisli_object, verify_monad, Monad};
use crate::matrix::{factor_with, Matrix};
use crate::report::Report;
use crate::scalar::Field;

/// An algebra map `B -> A` with the tensor products over `B` it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweedlerContext {
    pub a: Arc<Algebra>,
    pub b: Arc<Algebra>,
    pub incl: Matrix,
    /// `A ⊗_B A` as an `A`-bimodule.
    pub aa: TensorOver,
    /// `A ⊗_B A ⊗_B A`.
    pub aaa: TensorOver,
}

impl SweedlerContext {
    pub fn new(a: Arc<Algebra>, b: Arc<Algebra>, incl: Matrix) -> Result<SweedlerContext> {
        let mut r = Report::new("inclusion");
        if !algebra_map_checks(&mut r, "inclusion", &incl, &b, &a)? {
            return Err(Error::LawViolation(format!(
                "B -> A is not a unital algebra map ({})",
                r.failed_laws().join(", ")
            )));
        }
        let left = Bimodule::new(a.clone(), b.clone(), a.mult.clone(), a.right_mult_by(&incl))?;
        let middle = Bimodule::new(b.clone(), b.clone(), a.left_mult_by(&incl), a.right_mult_by(&incl))?;
        let right = Bimodule::new(b.clone(), a.clone(), a.left_mult_by(&incl), a.mult.clone())?;
        let aa = tensor_over(&left, &right)?;
        let aaa = tensor_over_chain(&[&left, &middle, &right])?;
        Ok(SweedlerContext { a, b, incl, aa, aaa })
    }

    /// `A` over itself, `B = A`.
    pub fn over_self(a: Arc<Algebra>) -> Result<SweedlerContext> {
        let id = a.id();
        SweedlerContext::new(a.clone(), a, id)
    }

    /// `A` over the ground field.
    pub fn over_ground(a: Arc<Algebra>) -> Result<SweedlerContext> {
        let k = Arc::new(Algebra::ground(a.field));
        let incl = a.unit.clone();
        SweedlerContext::new(a, k, incl)
    }

    pub fn field(&self) -> Field {
        self.a.field
    }

    /// `a ⊗ a'` as a coordinate vector of `A ⊗_B A`.
    pub fn pure(&self, x: &Matrix, y: &Matrix) -> Matrix {
        self.aa.projection.mul(&x.tensor(y))
    }

    /// `Σ sᵢ x tᵢ` for `t = Σ sᵢ ⊗ tᵢ`.
    pub fn sandwich(&self, t: &Matrix, x: &Matrix) -> Matrix {
        let a = &self.a;
        a.mult
            .mul(&a.mult.tensor(&a.id()))
            .mul(&a.id().tensor(x).tensor(&a.id()))
            .mul(&self.aa.section)
            .mul(t)
    }

    /// `x · t`.
    pub fn left_act(&self, x: &Matrix, t: &Matrix) -> Matrix {
        self.aa.result.lact.mul(&x.tensor(t))
    }

    /// `t · x`.
    pub fn right_act(&self, t: &Matrix, x: &Matrix) -> Matrix {
        self.aa.result.ract.mul(&t.tensor(x))
    }

    /// `Σ sᵢ tᵢ`.
    pub fn multiply_out(&self, t: &Matrix) -> Matrix {
        self.a.mult.mul(&self.aa.section).mul(t)
    }

    /// `t² = Σ sᵢsⱼ ⊗ tⱼtᵢ`.
    pub fn square(&self, t: &Matrix) -> Matrix {
        let n = self.a.dim;
        let st = self.aa.section.mul(t);
        let perm = Matrix::permute_factors(self.field(), &[n, n, n, n], &[0, 2, 3, 1]);
        self.aa
            .projection
            .mul(&self.a.mult.tensor(&self.a.mult))
            .mul(&perm)
            .mul(&st.tensor(&st))
    }

    /// `A^B`.
    pub fn centralizer_a(&self) -> Matrix {
        self.a.regular().centralizer(&self.incl)
    }

    /// `(A ⊗_B A)^B`.
    pub fn centralizer_aa(&self) -> Matrix {
        self.aa.result.centralizer(&self.incl)
    }

    /// The Sweedler coring `Δ(a⊗a') = a⊗1⊗1⊗a'`, `e(a⊗a') = aa'`.
    pub fn coring(&self) -> Result<Coring> {
        let a = &self.a;
        let carrier = self.aa.result.clone();
        let p = &self.aa.projection;
        let flat = p
            .tensor(p)
            .mul(&Matrix::tensor_all(self.field(), &[&a.id(), &a.unit, &a.unit, &a.id()]))
            .mul(&self.aa.section);
        let counit = a.mult.mul(&self.aa.section);
        Coring::from_flat(carrier, flat, counit)
    }
}

impl Algebra {
    /// `x ⊗ a ↦ f(x)a` for `f : B -> A`.
    pub fn left_mult_by(&self, f: &Matrix) -> Matrix {
        self.mult.mul(&f.tensor(&self.id()))
    }

    /// `a ⊗ x ↦ a f(x)` for `f : B -> A`.
    pub fn right_mult_by(&self, f: &Matrix) -> Matrix {
        self.mult.mul(&self.id().tensor(f))
    }
}

/// `t ∈ (A ⊗_B A)^B` and `m, u ∈ A^B`, as coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweedlerMonadData {
    pub t: Matrix,
    pub m: Matrix,
    pub u: Matrix,
}

fn require_central(basis: &Matrix, x: &Matrix, what: &str) -> Result<()> {
    if x.rows() != basis.rows() || x.cols() != 1 {
        return Err(Error::ShapeMismatch(format!("{what} has shape {:?}", x.shape())));
    }
    let inside = if basis.cols() == 0 {
        x.is_zero()
    } else {
        basis.factor_left(x).is_ok()
    };
    if inside {
        Ok(())
    } else {
        Err(Error::NotCentral(what.into()))
    }
}

pub fn verify_sweedler_monad_data(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<Report> {
    require_central(&ctx.centralizer_aa(), &d.t, "t")?;
    require_central(&ctx.centralizer_a(), &d.m, "m")?;
    require_central(&ctx.centralizer_a(), &d.u, "u")?;
    let a = &ctx.a;
    let f = ctx.field();
    let (t, m, u) = (&d.t, &d.m, &d.u);
    let one = &a.unit;
    let mut r = Report::new("Sweedler monad data");
    let st = ctx.aa.section.mul(t);
    let swallow = ctx
        .aaa
        .projection
        .mul(&Matrix::tensor_all(f, &[&a.id(), &a.mult, &a.id()]))
        .mul(&st.tensor(&st));
    let insert = ctx
        .aaa
        .projection
        .mul(&Matrix::tensor_all(f, &[&a.id(), one, &a.id()]))
        .mul(&st);
    r.equal(
        "(a)",
        "Σ sᵢtᵢ = 1 and Σ sᵢ⊗tᵢsⱼ⊗tⱼ = Σ sᵢ⊗1⊗tᵢ",
        &Matrix::vstack(f, 1, &[&ctx.multiply_out(t), &swallow]),
        &Matrix::vstack(f, 1, &[one, &insert]),
    );
    r.equal(
        "(b)",
        "tm = mt²",
        &ctx.right_act(t, m),
        &ctx.left_act(m, &ctx.square(t)),
    );
    r.equal("(c)", "tu = u⊗1", &ctx.right_act(t, u), &ctx.pure(u, one));
    r.equal(
        "(d)",
        "m² = Σ msᵢmtᵢ",
        &a.product(m, m),
        &a.product(m, &ctx.sandwich(t, m)),
    );
    r.equal(
        "(e)",
        "mu = Σ msᵢutᵢ = 1",
        &Matrix::vstack(f, 1, &[&a.product(m, u), &a.product(m, &ctx.sandwich(t, u))]),
        &Matrix::vstack(f, 1, &[one, one]),
    );
    Ok(r)
}

/// `(u ⊗ u⁻¹, u⁻¹, u)`.
pub fn unit_monad_data(ctx: &SweedlerContext, u: &Matrix) -> Result<SweedlerMonadData> {
    require_central(&ctx.centralizer_a(), u, "u")?;
    let inv = ctx
        .a
        .inverse_of(u)
        .ok_or_else(|| Error::NotInvertible("u has no inverse in A".into()))?;
    Ok(SweedlerMonadData {
        t: ctx.pure(u, &inv),
        m: inv,
        u: u.clone(),
    })
}

fn require_verified(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<()> {
    let r = verify_sweedler_monad_data(ctx, d)?;
    if r.passed() {
        Ok(())
    } else {
        Err(Error::LawViolation(format!(
            "monad data fails {}",
            r.failed_laws().join(", ")
        )))
    }
}

/// `mt`.
pub fn mt(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Matrix {
    ctx.left_act(&d.m, &d.t)
}

/// The Kleisli coring `Δ_t(a⊗a') = amt⊗a'`, `e_t(a⊗a') = aua'`.
pub fn sweedler_kleisli_coring(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<Coring> {
    require_verified(ctx, d)?;
    let base = ctx.coring()?;
    let a = &ctx.a;
    let f = ctx.field();
    let p = &ctx.aa.projection;
    let s = &ctx.aa.section;
    // a ⊗ a' ↦ amsᵢ ⊗ tᵢ ⊗ a' in A⊗A⊗A, then into C ⊗_A C via a⊗b⊗c ↦ (a⊗b)⊗(1⊗c)
    let triple_to_cc = base
        .cc
        .projection
        .mul(&p.tensor(p))
        .mul(&Matrix::tensor_all(f, &[&a.id(), &a.id(), &a.unit, &a.id()]));
    let rm = a.right_mult(&d.m);
    let spread = Matrix::tensor_all(f, &[&a.mult, &a.id(), &a.id()])
        .mul(&Matrix::tensor_all(f, &[&rm, &s.mul(&d.t), &a.id()]));
    let delta = triple_to_cc.mul(&spread).mul(s);
    let counit = a
        .mult
        .mul(&a.mult.tensor(&a.id()))
        .mul(&Matrix::tensor_all(f, &[&a.id(), &d.u, &a.id()]))
        .mul(s);
    base.with_structure(delta, counit)
}

/// `l₁(a⊗a') = a·mt·a'` into the Kleisli coring and `r₁(a⊗a') = au⊗a'` out of it,
/// with their coring-map verification.
pub fn sweedler_kleisli_adjunction(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<(Matrix, Matrix, Report)> {
    let c = ctx.coring()?;
    let ct = sweedler_kleisli_coring(ctx, d)?;
    let a = &ctx.a;
    let f = ctx.field();
    let x = ctx.aa.section.mul(&mt(ctx, d));
    let l1 = ctx
        .aa
        .projection
        .mul(&a.mult.tensor(&a.mult))
        .mul(&Matrix::tensor_all(f, &[&a.id(), &x, &a.id()]))
        .mul(&ctx.aa.section);
    let r1 = ctx
        .aa
        .projection
        .mul(&a.right_mult(&d.u).tensor(&a.id()))
        .mul(&ctx.aa.section);
    let mut r = Report::new("Kleisli adjunction");
    coring_map_checks(&mut r, "l₁", &l1, &c, &ct)?;
    coring_map_checks(&mut r, "r₁", &r1, &ct, &c)?;
    Ok((l1, r1, r))
}

/// The monad on the dual internal category of the Sweedler coring:
/// `t₁(a⊗a') = a t a'`, `μ(a⊗a') = ama'`, `η(a⊗a') = aua'`, all transposed.
pub fn dual_monad(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<Monad> {
    let ic = Arc::new(dualize_coring(&ctx.coring()?)?);
    let a = &ctx.a;
    let f = ctx.field();
    let s = &ctx.aa.section;
    let t1 = ctx
        .aa
        .projection
        .mul(&a.mult.tensor(&a.mult))
        .mul(&Matrix::tensor_all(f, &[&a.id(), &s.mul(&d.t), &a.id()]))
        .mul(s);
    let two_sided = |x: &Matrix| {
        a.mult
            .mul(&a.mult.tensor(&a.id()))
            .mul(&Matrix::tensor_all(f, &[&a.id(), x, &a.id()]))
            .mul(s)
    };
    let t = InternalFunctor::new(ic.clone(), ic.clone(), ic.objects.id(), t1.transpose())?;
    Monad::new(t, two_sided(&d.m).transpose(), two_sided(&d.u).transpose())
}

/// The Kleisli coring obtained by dualizing, taking the Kleisli object of the
/// dual monad, moving it onto `C*` along `C* ≅ A*_t □ C*` and dualizing back.
pub fn kleisli_coring_via_duality(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<Coring> {
    let monad = dual_monad(ctx, d)?;
    let rep = verify_monad(&monad)?;
    if !rep.passed() {
        return Err(Error::LawViolation(format!(
            "dual monad fails {}",
            rep.failed_laws().join(", ")
        )));
    }
    let ic = monad.category().clone();
    let k = kleisli_object(&monad)?;
    // t₀ = 1, so the left coaction of C* factors through the Kleisli carrier
    let carrier = kleisli_carrier(&monad)?;
    let iso = factor_with(&carrier.inclusion, &carrier.projection, &ic.morphisms.lambda)?;
    let inv = iso
        .inverse()
        .ok_or_else(|| Error::NotInvertible("carrier comparison".into()))?;
    let mult = inv.mul(&k.mult).mul(&cotensor_map(&iso, &iso, ic.square()?, k.square()?)?);
    let moved = InternalCategory::new(ic.morphisms.clone(), mult, inv.mul(&k.unit))?;
    undualize_category(&moved)
}

/// Verifies data, builds the Kleisli coring and checks it.
pub fn verified_kleisli_coring(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<(Coring, Report)> {
    let c = sweedler_kleisli_coring(ctx, d)?;
    let r = verify_coring(&c)?;
    Ok((c, r))
}
