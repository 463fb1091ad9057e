//! Twisting data between corings: coring maps `l : D -> C`, `r : C -> D` and an
//! invertible bicomodule map `θ : Dˡ -> ʳC`, the twisted corings they produce,
//! and the Kleisli datum obtained by twisting once.

use super::sweedler::{sweedler_kleisli_adjunction, sweedler_kleisli_coring, SweedlerContext, SweedlerMonadData};
use super::{
    bimodule_map_checks, convolution_inverse, coring_convolve, coring_map_checks, tensor_over, tensor_over_map, Coring,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingDatum {
    pub c: Coring,
    pub d: Coring,
    /// `D -> C`.
    pub l: Matrix,
    /// `C -> D`.
    pub r: Matrix,
    /// `D -> C`.
    pub theta: Matrix,
}

impl TwistingDatum {
    /// `l = r = θ = id` on a single coring.
    pub fn identity(c: &Coring) -> TwistingDatum {
        TwistingDatum {
            c: c.clone(),
            d: c.clone(),
            l: c.id(),
            r: c.id(),
            theta: c.id(),
        }
    }

    pub fn theta_inverse(&self) -> Result<Matrix> {
        self.theta
            .inverse()
            .ok_or_else(|| Error::NotInvertible("θ is singular".into()))
    }
}

pub fn verify_twisting_datum(td: &TwistingDatum) -> Result<Report> {
    let (c, d) = (&td.c, &td.d);
    let mut rep = Report::new("twisting datum");
    coring_map_checks(&mut rep, "l", &td.l, d, c)?;
    coring_map_checks(&mut rep, "r", &td.r, c, d)?;
    bimodule_map_checks(&mut rep, "θ", &td.theta, &d.carrier, &c.carrier)?;
    let dc = tensor_over(&d.carrier, &c.carrier)?;
    let (idc, idd) = (c.id(), d.id());
    rep.equal(
        "θ left colinear",
        "(r⊗C)Δ_C θ = (D⊗θ)Δ_D",
        &tensor_over_map(&td.r, &idc, &c.cc, &dc)?.mul(&c.delta).mul(&td.theta),
        &tensor_over_map(&idd, &td.theta, &d.cc, &dc)?.mul(&d.delta),
    );
    rep.equal(
        "θ right colinear",
        "Δ_C θ = (θ⊗C)(D⊗l)Δ_D",
        &c.delta.mul(&td.theta),
        &tensor_over_map(&td.theta, &idc, &dc, &c.cc)?
            .mul(&tensor_over_map(&idd, &td.l, &d.cc, &dc)?)
            .mul(&d.delta),
    );
    rep.record("θ invertible", "θ⁻¹ exists", td.theta.inverse().is_some());
    Ok(rep)
}

/// `C_θ` with `Δ = (θr⊗C)Δ_C`, `e = e_D θ⁻¹`, and `D^θ` with `Δ = (D⊗θ⁻¹l)Δ_D`, `e = e_C θ`.
pub fn twist_corings(td: &TwistingDatum) -> Result<(Coring, Coring)> {
    let (c, d) = (&td.c, &td.d);
    let inv = td.theta_inverse()?;
    let c_theta = c.with_structure(
        tensor_over_map(&td.theta.mul(&td.r), &c.id(), &c.cc, &c.cc)?.mul(&c.delta),
        d.counit.mul(&inv),
    )?;
    let d_theta = d.with_structure(
        tensor_over_map(&d.id(), &inv.mul(&td.l), &d.cc, &d.cc)?.mul(&d.delta),
        c.counit.mul(&td.theta),
    )?;
    Ok((c_theta, d_theta))
}

/// The datum `C_θ ⇄ C` with `r̄ = θr`, `l̄ = (e_Dθ⁻¹⊗C)Δ_C` and `θ̄ = id`, and a
/// report asserting that twisting by it changes nothing further.
pub fn kleisli_twisting_datum(td: &TwistingDatum) -> Result<(TwistingDatum, Report)> {
    let c = &td.c;
    let inv = td.theta_inverse()?;
    let (c_theta, _) = twist_corings(td)?;
    let counit = td.d.counit.mul(&inv);
    let l_bar = c
        .carrier
        .lact
        .mul(&counit.tensor(&c.id()))
        .mul(&c.delta_flat());
    let next = TwistingDatum {
        c: c.clone(),
        d: c_theta.clone(),
        l: l_bar,
        r: td.theta.mul(&td.r),
        theta: c.id(),
    };
    let mut rep = Report::new("Kleisli twisting datum");
    rep.absorb("datum", verify_twisting_datum(&next)?);
    let (c_bar, d_bar) = twist_corings(&next)?;
    rep.record("C_θ̄ = C_θ", "(θ̄r̄⊗C)Δ_C, e_{C_θ}θ̄⁻¹", c_bar == c_theta);
    rep.record("(C_θ)^θ̄ = C", "(C_θ⊗θ̄⁻¹l̄)Δ_{C_θ}, e_C θ̄", d_bar == *c);
    Ok((next, rep))
}

/// `l⁻¹ = ū ∗ r ∗ u` for `u = e_D θ⁻¹` and its convolution inverse `ū`,
/// with a report certifying that it inverts `l` as a coring map.
pub fn convolution_inverse_of_l(td: &TwistingDatum) -> Result<(Matrix, Report)> {
    let (c, d) = (&td.c, &td.d);
    let inv = td.theta_inverse()?;
    let u = d.counit.mul(&inv);
    let u_bar = convolution_inverse(c, &u)?;
    convolution_inverse(d, &c.counit.mul(&td.theta))?;
    let sd = c.delta_flat();
    let twice = sd.tensor(&c.id()).mul(&sd);
    let a = &c.base;
    let act = d.carrier.lact.mul(&a.id().tensor(&d.carrier.ract));
    let l_inv = act
        .mul(&Matrix::tensor_all(c.field(), &[&u_bar, &td.r, &u]))
        .mul(&twice);
    let mut rep = Report::new("inverse of l");
    rep.equal("l l⁻¹ = C", "l ∘ l⁻¹ = id", &td.l.mul(&l_inv), &c.id());
    rep.equal("l⁻¹ l = D", "l⁻¹ ∘ l = id", &l_inv.mul(&td.l), &d.id());
    coring_map_checks(&mut rep, "l⁻¹", &l_inv, c, d)?;
    rep.equal(
        "convolution inverse",
        "ū ∗ u = e_C",
        &coring_convolve(c, &u_bar, &u),
        &c.counit,
    );
    Ok((l_inv, rep))
}

/// The datum of the Kleisli adjunction of Sweedler monad data: `D` the Kleisli
/// coring, `l = r₁ : D -> C`, `r = l₁ : C -> D`, `θ = id`.
pub fn sweedler_twisting_datum(ctx: &SweedlerContext, d: &SweedlerMonadData) -> Result<TwistingDatum> {
    let c = ctx.coring()?;
    let kc = sweedler_kleisli_coring(ctx, d)?;
    let (l1, r1, _) = sweedler_kleisli_adjunction(ctx, d)?;
    Ok(TwistingDatum {
        theta: c.id(),
        c,
        d: kc,
        l: r1,
        r: l1,
    })
}
