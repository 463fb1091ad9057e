//! Hopf-Galois extensions: a Hopf algebra `H`, a right `H`-comodule algebra `A`
//! and its coinvariants `B`, with the canonical map, the translation map and
//! the Miyashita-Ulbrich action.

use std::sync::Arc;

use super::sweedler::{verify_sweedler_monad_data, SweedlerContext, SweedlerMonadData};
use super::{verify_algebra, Algebra};
use crate::error::{Error, Result};
use crate::matrix::{grid_span, Matrix};
use crate::report::Report;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfGaloisInstance {
    pub h: Arc<Algebra>,
    /// `H -> H ⊗ H`.
    pub h_delta: Matrix,
    /// `H -> k`.
    pub h_counit: Matrix,
    pub antipode: Matrix,
    pub a: Arc<Algebra>,
    /// `A -> A ⊗ H`.
    pub rho: Matrix,
    /// Basis of the coinvariants inside `A`.
    pub coinvariants: Matrix,
    pub ctx: SweedlerContext,
}

impl HopfGaloisInstance {
    pub fn new(h: Arc<Algebra>, h_delta: Matrix, h_counit: Matrix, antipode: Matrix, a: Arc<Algebra>, rho: Matrix) -> Result<Self> {
        let (dh, da) = (h.dim, a.dim);
        if h_delta.shape() != (dh * dh, dh)
            || h_counit.shape() != (1, dh)
            || antipode.shape() != (dh, dh)
            || rho.shape() != (da * dh, da)
        {
            return Err(Error::ShapeMismatch("Hopf-Galois data has inconsistent shapes".into()));
        }
        let coinvariants = rho.sub(&a.id().tensor(&h.unit)).kernel_basis();
        let b = Algebra::new(
            coinvariants.factor_left(&a.mult.mul(&coinvariants.tensor(&coinvariants)))?,
            coinvariants.factor_left(&a.unit)?,
        )?;
        let ctx = SweedlerContext::new(a.clone(), Arc::new(b), coinvariants.clone())?;
        Ok(HopfGaloisInstance {
            h,
            h_delta,
            h_counit,
            antipode,
            a,
            rho,
            coinvariants,
            ctx,
        })
    }

    /// `H = A = k[ℤ/n]` with `ϱ = Δ`.
    pub fn cyclic_group(field: Field, n: usize) -> HopfGaloisInstance {
        let h = Arc::new(Algebra::cyclic_group(field, n));
        let mut delta = Matrix::zeros(field, n * n, n);
        let mut antipode = Matrix::zeros(field, n, n);
        for i in 0..n {
            delta.set(i * n + i, i, field.one());
            antipode.set((n - i) % n, i, field.one());
        }
        let counit = Matrix::from_rows(field, 1, n, vec![vec![field.one(); n]]).expect("counit row");
        HopfGaloisInstance::new(h.clone(), delta.clone(), counit, antipode, h, delta).expect("group algebra")
    }

    pub fn field(&self) -> Field {
        self.a.field
    }
}

pub fn verify_hopf_galois_instance(hg: &HopfGaloisInstance) -> Result<Report> {
    let f = hg.field();
    let h = &hg.h;
    let a = &hg.a;
    let (idh, ida) = (h.id(), a.id());
    let (dl, e) = (&hg.h_delta, &hg.h_counit);
    let one = Matrix::identity(f, 1);
    let mut rep = Report::new("Hopf-Galois instance");
    rep.absorb("H", verify_algebra(h)?);
    rep.absorb("A", verify_algebra(a)?);
    rep.equal("coassociativity", "(Δ⊗H)Δ = (H⊗Δ)Δ", &dl.tensor(&idh).mul(dl), &idh.tensor(dl).mul(dl));
    rep.equal("left counit", "(e⊗H)Δ = H", &e.tensor(&idh).mul(dl), &idh);
    rep.equal("right counit", "(H⊗e)Δ = H", &idh.tensor(e).mul(dl), &idh);
    let mid = Matrix::tensor_all(f, &[&idh, &Matrix::swap(f, h.dim, h.dim), &idh]);
    rep.equal(
        "comultiplication multiplicative",
        "Δm = (m⊗m)(H⊗σ⊗H)(Δ⊗Δ)",
        &dl.mul(&h.mult),
        &h.mult.tensor(&h.mult).mul(&mid).mul(&dl.tensor(dl)),
    );
    rep.equal("comultiplication unital", "Δu = u⊗u", &dl.mul(&h.unit), &h.unit.tensor(&h.unit));
    rep.equal("counit multiplicative", "e m = e⊗e", &e.mul(&h.mult), &e.tensor(e));
    rep.equal("counit unital", "e u = 1", &e.mul(&h.unit), &one);
    let ue = h.unit.mul(e);
    rep.equal("left antipode", "m(S⊗H)Δ = ue", &h.mult.mul(&hg.antipode.tensor(&idh)).mul(dl), &ue);
    rep.equal("right antipode", "m(H⊗S)Δ = ue", &h.mult.mul(&idh.tensor(&hg.antipode)).mul(dl), &ue);
    let rho = &hg.rho;
    rep.equal(
        "coaction coassociative",
        "(ϱ⊗H)ϱ = (A⊗Δ)ϱ",
        &rho.tensor(&idh).mul(rho),
        &ida.tensor(dl).mul(rho),
    );
    rep.equal("coaction counital", "(A⊗e)ϱ = A", &ida.tensor(e).mul(rho), &ida);
    let amid = Matrix::tensor_all(f, &[&ida, &Matrix::swap(f, h.dim, a.dim), &idh]);
    rep.equal(
        "coaction multiplicative",
        "ϱm = (m⊗m)(A⊗σ⊗H)(ϱ⊗ϱ)",
        &rho.mul(&a.mult),
        &a.mult.tensor(&h.mult).mul(&amid).mul(&rho.tensor(rho)),
    );
    rep.equal("coaction unital", "ϱu = u⊗u", &rho.mul(&a.unit), &a.unit.tensor(&h.unit));
    Ok(rep)
}

/// `can(a'⊗a) = a'ϱ(a)`, from `A ⊗_B A` to `A ⊗ H`.
pub fn canonical_map(hg: &HopfGaloisInstance) -> Matrix {
    let (a, h) = (&hg.a, &hg.h);
    a.mult
        .tensor(&h.id())
        .mul(&a.id().tensor(&hg.rho))
        .mul(&hg.ctx.aa.section)
}

pub fn is_galois(hg: &HopfGaloisInstance) -> bool {
    canonical_map(hg).inverse().is_some()
}

/// `τ(h) = can⁻¹(1⊗h)`, as a map `H -> A ⊗_B A`.
pub fn translation_map(hg: &HopfGaloisInstance) -> Result<Matrix> {
    let inv = canonical_map(hg).inverse().ok_or(Error::NotGalois)?;
    Ok(inv.mul(&hg.a.unit.tensor(&hg.h.id())))
}

/// `a ◁ h = Σ h⁽¹⁾ a h⁽²⁾` for `τ(h) = Σ h⁽¹⁾ ⊗ h⁽²⁾`.
pub fn mu_action(hg: &HopfGaloisInstance, a: &Matrix, h: &Matrix) -> Result<Matrix> {
    let tau = translation_map(hg)?;
    Ok(hg.ctx.sandwich(&tau.mul(h), a))
}

/// The action on basis vectors: entry `(i, j)` is `aᵢ ◁ hⱼ` for the basis `aᵢ` of `A^B`.
pub fn mu_action_table(hg: &HopfGaloisInstance) -> Result<Vec<Vec<Matrix>>> {
    let f = hg.field();
    let cent = hg.ctx.centralizer_a();
    (0..cent.cols())
        .map(|i| {
            (0..hg.h.dim)
                .map(|j| mu_action(hg, &cent.column_matrix(i), &Matrix::basis_vector(f, hg.h.dim, j)))
                .collect()
        })
        .collect()
}

/// `Δx = x⊗x` and `e(x) = 1` in `H`.
pub fn is_grouplike_in(hg: &HopfGaloisInstance, x: &Matrix) -> bool {
    x.shape() == (hg.h.dim, 1)
        && hg.h_delta.mul(x) == x.tensor(x)
        && hg.h_counit.mul(x) == Matrix::identity(hg.field(), 1)
}

/// The group-likes of `H` with coordinates in `values`.
pub fn grouplikes(hg: &HopfGaloisInstance, values: &[i64]) -> Vec<Matrix> {
    let f = hg.field();
    let basis: Vec<Matrix> = (0..hg.h.dim).map(|i| Matrix::basis_vector(f, hg.h.dim, i)).collect();
    grid_span(f, hg.h.dim, 1, &basis, values)
        .into_iter()
        .filter(|x| is_grouplike_in(hg, x))
        .collect()
}

/// A basis of `{a | ϱ(a) = a⊗x}`.
pub fn coaction_eigenspace(hg: &HopfGaloisInstance, x: &Matrix) -> Matrix {
    hg.rho.sub(&hg.a.id().tensor(x)).kernel_basis()
}

fn rho_is(hg: &HopfGaloisInstance, a: &Matrix, x: &Matrix) -> bool {
    hg.rho.mul(a) == a.tensor(x)
}

/// Monad data `(τ(x), m, u)` for a group-like `x`, with a report comparing the
/// conditions (a)–(e) against their coaction and Miyashita-Ulbrich forms.
pub fn grouplike_monad_data(hg: &HopfGaloisInstance, x: &Matrix, m: &Matrix, u: &Matrix) -> Result<(SweedlerMonadData, Report)> {
    if !is_grouplike_in(hg, x) {
        return Err(Error::NotGrouplike);
    }
    let tau = translation_map(hg)?;
    let d = SweedlerMonadData {
        t: tau.mul(x),
        m: m.clone(),
        u: u.clone(),
    };
    let direct = verify_sweedler_monad_data(&hg.ctx, &d)?;
    let a = &hg.a;
    let x_inv = hg.antipode.mul(x);
    let mut rep = Report::new("group-like monad data");
    rep.record("τ(x) satisfies (a)", "x group-like ⇒ (a)", direct.law_passed("(a)"));
    rep.record(
        "(b) ⇔ ϱ(m) = m⊗x",
        "tm = mt² ⇔ ϱ(m) = m⊗x",
        direct.law_passed("(b)") == rho_is(hg, m, x),
    );
    rep.record(
        "(c) ⇔ ϱ(u) = u⊗x⁻¹",
        "tu = u⊗1 ⇔ ϱ(u) = u⊗x⁻¹",
        direct.law_passed("(c)") == rho_is(hg, u, &x_inv),
    );
    let hg_d = a.product(m, m) == a.product(m, &mu_action(hg, m, x)?);
    let hg_e = a.product(m, u) == a.unit && a.product(m, &mu_action(hg, u, x)?) == a.unit;
    rep.record("(d) ⇔ m² = m(m◁x)", "m² = m(m◁x)", direct.law_passed("(d)") == hg_d);
    rep.record("(e) ⇔ mu = m(u◁x) = 1", "mu = m(u◁x) = 1", direct.law_passed("(e)") == hg_e);
    for (k, h) in grouplikes(hg, &[-1, 0, 1]).iter().enumerate() {
        let holds = a.product(m, m) == a.product(m, &mu_action(hg, m, h)?);
        rep.record_note(
            &format!("m² = m(m◁h) at group-like {k}"),
            "m² = m(m◁h)",
            true,
            format!("holds: {holds}"),
        );
    }
    Ok((d, rep))
}
