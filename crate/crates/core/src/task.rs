//! Named tasks inside a document: each names an operation and its inputs,
//! and produces a report plus, for constructions, the built structure in the
//! document format.

use serde_json::{json, Map, Value};

use crate::bicomod::{cotensor, verify_bicomodule, verify_comonoid};
use crate::cofun::{verify_cofunctor, verify_cotrans};
use crate::coring::hopf::{
    canonical_map, grouplike_monad_data, is_galois, mu_action_table, translation_map, verify_hopf_galois_instance,
};
use crate::coring::sweedler::{
    kleisli_coring_via_duality, mt, sweedler_kleisli_adjunction, verified_kleisli_coring, verify_sweedler_monad_data,
};
use crate::coring::twisting::{kleisli_twisting_datum, convolution_inverse_of_l, twist_corings, verify_twisting_datum};
use crate::coring::{is_grouplike, verify_algebra, verify_coring};
use crate::document::{coring_document, field_str, internal_category_document, matrix_json, Document};
use crate::error::{Error, Result};
use crate::intcat::{verify_functor, verify_internal_category, verify_nat, InternalCategory};
use crate::kleisli::{
    adjunction_to_binatural, binatural_to_adjunction, cokleisli_object, compare_kleisli_cokleisli, enumerate_talgebras,
    kleisli_object, kleisli_object_wreath, opmonad_kleisli, opmonad_kleisli_wreath, theta_correspondence,
    theta_inverse, verify_adjunction, verify_binatural, verify_comonad, verify_monad, verify_opmonad,
};
use crate::oracle::{classical_kleisli, compare, linearize_monad, verify_finite_category, verify_set_monad};
use crate::report::Report;

/// The result of a task.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskOutput {
    pub report: Report,
    /// The constructed structure, if the task builds one.
    pub output: Option<Value>,
}

impl TaskOutput {
    fn report(report: Report) -> TaskOutput {
        TaskOutput { report, output: None }
    }
}

/// Every operation name accepted in a task's `op` field.
pub const OPERATIONS: &[&str] = &[
    "verify",
    "cotensor",
    "kleisli",
    "cokleisli",
    "opkleisli",
    "adjoint-check",
    "theta",
    "twist",
    "sweedler",
    "hopf-galois",
    "oracle-compare",
];

/// Runs the task of the given name.
pub fn run(doc: &Document, task: &str) -> Result<TaskOutput> {
    run_task(doc, doc.tasks.get(task)?)
}

/// Runs a task definition `{"op": ..., inputs...}`.
pub fn run_task(doc: &Document, def: &Value) -> Result<TaskOutput> {
    let op = field_str(def, "op")?;
    let name = |key: &str| field_str(def, key);
    match op {
        "verify" => match def.get("target").and_then(Value::as_str) {
            Some(t) => verify_target(doc, t).map(TaskOutput::report),
            None => verify_all(doc).map(TaskOutput::report),
        },
        "cotensor" => cotensor_task(doc, name("left")?, name("right")?),
        "kleisli" => kleisli_task(doc, name("monad")?),
        "cokleisli" => cokleisli_task(doc, def),
        "opkleisli" => opkleisli_task(doc, name("opmonad")?),
        "adjoint-check" => adjoint_task(doc, name("adjunction")?),
        "theta" => theta_task(doc, def),
        "twist" => twist_task(doc, name("datum")?),
        "sweedler" => sweedler_task(doc, name("data")?),
        "hopf-galois" => hopf_task(doc, def),
        "oracle-compare" => oracle_task(doc, name("monad")?),
        other => Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("unknown operation `{other}`"),
        }),
    }
}

/// The verifier of whichever definition carries this name.
pub fn verify_target(doc: &Document, name: &str) -> Result<Report> {
    let mut rep = Report::new(name);
    if let Ok(x) = doc.comonoids.get(name) {
        rep.absorb("comonoid", verify_comonoid(x)?);
    } else if let Ok(x) = doc.algebras.get(name) {
        rep.absorb("algebra", verify_algebra(x)?);
    } else if let Ok(x) = doc.bicomodules.get(name) {
        rep.absorb("bicomodule", verify_bicomodule(x)?);
    } else if let Ok(x) = doc.internal_categories.get(name) {
        rep.absorb("internal category", verify_internal_category(x)?);
    } else if let Ok(x) = doc.corings.get(name) {
        rep.absorb("coring", verify_coring(x)?);
    } else if let Ok(x) = doc.functors.get(name) {
        rep.absorb("functor", verify_functor(x)?);
    } else if let Ok(x) = doc.naturals.get(name) {
        rep.absorb("natural", verify_nat(x)?);
    } else if let Ok(x) = doc.cofunctors.get(name) {
        rep.absorb("cofunctor", verify_cofunctor(x)?);
    } else if let Ok(x) = doc.cotransformations.get(name) {
        rep.absorb("cotransformation", verify_cotrans(x)?);
    } else if let Ok(x) = doc.monads.get(name) {
        rep.absorb("monad", verify_monad(x)?);
    } else if let Ok(x) = doc.adjunctions.get(name) {
        rep.absorb("adjunction", verify_adjunction(x)?);
    } else if let Ok(x) = doc.comonads.get(name) {
        rep.absorb("comonad", verify_comonad(x)?);
    } else if let Ok(x) = doc.opmonads.get(name) {
        rep.absorb("opmonad", verify_opmonad(x)?);
    } else if let Ok((ctx, d)) = doc.sweedler_data.get(name) {
        rep.absorb("monad data", verify_sweedler_monad_data(ctx, d)?);
    } else if let Ok(x) = doc.twisting_data.get(name) {
        rep.absorb("twisting datum", verify_twisting_datum(x)?);
    } else if let Ok(x) = doc.hopf_galois.get(name) {
        rep.absorb("Hopf-Galois", verify_hopf_galois_instance(x)?);
    } else if let Ok(x) = doc.finite_categories.get(name) {
        rep.absorb("finite category", verify_finite_category(x));
    } else if let Ok((cat, t)) = doc.set_monads.get(name) {
        rep.absorb("monad", verify_set_monad(doc.finite_categories.get(cat)?, t));
    } else {
        return Err(Error::UnresolvedReference(name.to_string()));
    }
    Ok(rep)
}

/// Every definition in the document, in section order.
pub fn verify_all(doc: &Document) -> Result<Report> {
    let mut names: Vec<&str> = Vec::new();
    names.extend(doc.comonoids.names());
    names.extend(doc.algebras.names());
    names.extend(doc.bicomodules.names());
    names.extend(doc.internal_categories.names());
    names.extend(doc.corings.names());
    names.extend(doc.functors.names());
    names.extend(doc.naturals.names());
    names.extend(doc.cofunctors.names());
    names.extend(doc.cotransformations.names());
    names.extend(doc.monads.names());
    names.extend(doc.adjunctions.names());
    names.extend(doc.comonads.names());
    names.extend(doc.opmonads.names());
    names.extend(doc.sweedler_data.names());
    names.extend(doc.twisting_data.names());
    names.extend(doc.hopf_galois.names());
    names.extend(doc.finite_categories.names());
    names.extend(doc.set_monads.names());
    let mut rep = Report::new("document");
    for n in names {
        rep.absorb(n, verify_target(doc, n)?);
    }
    Ok(rep)
}

fn cotensor_task(doc: &Document, left: &str, right: &str) -> Result<TaskOutput> {
    let (m, n) = (doc.bicomodules.get(left)?, doc.bicomodules.get(right)?);
    let ct = cotensor(m, n)?;
    let i = &ct.inclusion;
    let mut rep = Report::new(format!("{left} □ {right}"));
    rep.record("inclusion injective", "rank ι = dim", i.rank() == i.cols());
    rep.equal(
        "equalizer",
        "(ρ⊗N)ι = (M⊗λ)ι",
        &m.rho.tensor(&n.id()).mul(i),
        &m.id().tensor(&n.lambda).mul(i),
    );
    let output = json!({"dim": ct.dim(), "inclusion": matrix_json(i)});
    Ok(TaskOutput {
        report: rep,
        output: Some(output),
    })
}

fn category_output(doc: &Document, name: &str, ic: &InternalCategory) -> Value {
    internal_category_document(doc.field, name, ic)
}

fn kleisli_task(doc: &Document, name: &str) -> Result<TaskOutput> {
    let m = doc.monads.get(name)?;
    let mut rep = Report::new(format!("Kleisli object of {name}"));
    rep.absorb("monad", verify_monad(m)?);
    let kt = kleisli_object(m)?;
    rep.absorb("result", verify_internal_category(&kt)?);
    rep.record("direct = wreath", "A_t via both paths", kleisli_object_wreath(m)? == kt);
    Ok(TaskOutput {
        report: rep,
        output: Some(category_output(doc, &format!("{name}_kleisli"), &kt)),
    })
}

/// `comonad`, and optionally `adjunction` with its `monad` for the comparison.
fn cokleisli_task(doc: &Document, def: &Value) -> Result<TaskOutput> {
    let name = field_str(def, "comonad")?;
    let w = doc.comonads.get(name)?;
    let mut rep = Report::new(format!("co-Kleisli object of {name}"));
    rep.absorb("comonad", verify_comonad(w)?);
    let cg = cokleisli_object(w)?;
    rep.absorb("result", verify_internal_category(&cg)?);
    if let Some(a) = def.get("adjunction").and_then(Value::as_str) {
        let adj = doc.adjunctions.get(a)?;
        let m = doc.monads.get(field_str(def, "monad")?)?;
        rep.absorb("comparison", compare_kleisli_cokleisli(m, w, &adjunction_to_binatural(adj)?)?);
    }
    Ok(TaskOutput {
        report: rep,
        output: Some(category_output(doc, &format!("{name}_cokleisli"), &cg)),
    })
}

fn opkleisli_task(doc: &Document, name: &str) -> Result<TaskOutput> {
    let o = doc.opmonads.get(name)?;
    let mut rep = Report::new(format!("Kleisli object of the opmonad {name}"));
    rep.absorb("opmonad", verify_opmonad(o)?);
    let k = opmonad_kleisli(o)?;
    rep.absorb("result", verify_internal_category(&k)?);
    rep.record("direct = wreath", "ᵗA via both paths", opmonad_kleisli_wreath(o)? == k);
    Ok(TaskOutput {
        report: rep,
        output: Some(category_output(doc, &format!("{name}_kleisli"), &k)),
    })
}

fn adjoint_task(doc: &Document, name: &str) -> Result<TaskOutput> {
    let a = doc.adjunctions.get(name)?;
    let mut rep = Report::new(format!("adjunction {name}"));
    rep.absorb("adjunction", verify_adjunction(a)?);
    let th = adjunction_to_binatural(a)?;
    rep.absorb("θ", verify_binatural(&th, &a.l, &a.r)?);
    let back = binatural_to_adjunction(&a.l, &a.r, &th)?;
    rep.equal("ε round trip", "ε from θ", &back.eps.alpha, &a.eps.alpha);
    rep.equal("η round trip", "η from θ⁻¹", &back.eta.alpha, &a.eta.alpha);
    let again = adjunction_to_binatural(&back)?;
    rep.record("θ round trip", "θ, θ⁻¹ from (ε, η)", again == th);
    let mut out = Map::new();
    out.insert("theta".into(), matrix_json(&th.theta));
    if let Some(inv) = &th.theta_inv {
        out.insert("theta_inverse".into(), matrix_json(inv));
    }
    Ok(TaskOutput {
        report: rep,
        output: Some(Value::Object(out)),
    })
}

/// `monad`, optional `codomain` (default: the monad's category) and search `values` (default `[0, 1]`).
fn theta_task(doc: &Document, def: &Value) -> Result<TaskOutput> {
    let name = field_str(def, "monad")?;
    let m = doc.monads.get(name)?;
    let cod = match def.get("codomain").and_then(Value::as_str) {
        Some(c) => doc.internal_categories.get(c)?.clone(),
        None => m.category().clone(),
    };
    let values: Vec<i64> = match def.get("values") {
        Some(Value::Array(xs)) => xs
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::BadScalar(x.to_string())))
            .collect::<Result<_>>()?,
        _ => vec![0, 1],
    };
    let algebras = enumerate_talgebras(m, &cod, &values)?;
    let mut rep = Report::new(format!("Θ for {name}"));
    let mut ok = true;
    for alg in &algebras {
        let g = theta_correspondence(m, alg)?;
        ok &= verify_functor(&g)?.passed();
        ok &= theta_inverse(m, &g)? == *alg;
    }
    rep.record_note(
        "Θ⁻¹Θ = id",
        "t-algebras ↔ functors out of A_t",
        ok,
        format!("{} t-algebras", algebras.len()),
    );
    Ok(TaskOutput {
        report: rep,
        output: Some(json!({"talgebras": algebras.len()})),
    })
}

fn twist_task(doc: &Document, name: &str) -> Result<TaskOutput> {
    let td = doc.twisting_data.get(name)?;
    let mut rep = Report::new(format!("twisting datum {name}"));
    rep.absorb("datum", verify_twisting_datum(td)?);
    let (ct, dt) = twist_corings(td)?;
    rep.absorb("C_θ", verify_coring(&ct)?);
    rep.absorb("D^θ", verify_coring(&dt)?);
    let (_, kl) = kleisli_twisting_datum(td)?;
    rep.absorb("Kleisli datum", kl);
    match convolution_inverse_of_l(td) {
        Ok((_, r)) => rep.absorb("l⁻¹", r),
        Err(Error::NotConvolutionInvertible(why)) => {
            rep.record_note("l⁻¹", "convolution units invertible", true, format!("not applicable: {why}"));
        }
        Err(e) => return Err(e),
    }
    let f = doc.field;
    let mut out = coring_document(f, &format!("{name}_c"), &ct);
    let d = coring_document(f, &format!("{name}_d"), &dt);
    merge(&mut out, &d);
    Ok(TaskOutput {
        report: rep,
        output: Some(out),
    })
}

fn merge(into: &mut Value, from: &Value) {
    for key in ["algebras", "corings"] {
        if let (Some(Value::Object(a)), Some(Value::Object(b))) = (into.get_mut(key), from.get(key)) {
            for (k, v) in b {
                a.insert(k.clone(), v.clone());
            }
        }
    }
}

fn sweedler_task(doc: &Document, name: &str) -> Result<TaskOutput> {
    let (ctx, d) = doc.sweedler_data.get(name)?;
    let mut rep = Report::new(format!("Sweedler monad data {name}"));
    let direct = verify_sweedler_monad_data(ctx, d)?;
    let ok = direct.passed();
    rep.absorb("data", direct);
    if !ok {
        return Ok(TaskOutput::report(rep));
    }
    let (kc, r) = verified_kleisli_coring(ctx, d)?;
    rep.absorb("Kleisli coring", r);
    let (_, _, adj) = sweedler_kleisli_adjunction(ctx, d)?;
    rep.absorb("adjunction", adj);
    rep.record("direct = dual path", "C_t via the Kleisli object", kleisli_coring_via_duality(ctx, d)? == kc);
    rep.record("mt group-like", "Δ_t(mt) = mt⊗mt, e_t(mt) = 1", is_grouplike(&mt(ctx, d), &kc));
    Ok(TaskOutput {
        report: rep,
        output: Some(coring_document(doc.field, &format!("{name}_kleisli"), &kc)),
    })
}

/// `instance`; optional `x`, `m`, `u` compare the monad-data conditions.
fn hopf_task(doc: &Document, def: &Value) -> Result<TaskOutput> {
    let name = field_str(def, "instance")?;
    let hg = doc.hopf_galois.get(name)?;
    let mut rep = Report::new(format!("Hopf-Galois instance {name}"));
    rep.absorb("instance", verify_hopf_galois_instance(hg)?);
    let galois = is_galois(hg);
    rep.record("Galois", "can bijective", galois);
    let can = canonical_map(hg);
    let mut out = Map::new();
    out.insert("coinvariants".into(), matrix_json(&hg.coinvariants));
    out.insert("can".into(), matrix_json(&can));
    if galois {
        out.insert("tau".into(), matrix_json(&translation_map(hg)?));
        let table: Vec<Value> = mu_action_table(hg)?
            .iter()
            .map(|row| Value::Array(row.iter().map(matrix_json).collect()))
            .collect();
        out.insert("mu_action".into(), Value::Array(table));
    }
    if def.get("x").is_some() {
        let (x, m, u) = (doc.vector(def, "x")?, doc.vector(def, "m")?, doc.vector(def, "u")?);
        let (_, r) = grouplike_monad_data(hg, &x, &m, &u)?;
        rep.absorb("monad data", r);
    }
    Ok(TaskOutput {
        report: rep,
        output: Some(Value::Object(out)),
    })
}

/// The internal Kleisli object of the linearized monad against the classical Kleisli category.
fn oracle_task(doc: &Document, name: &str) -> Result<TaskOutput> {
    let (cat, t) = doc.set_monads.get(name)?;
    let c = doc.finite_categories.get(cat)?;
    let internal = kleisli_object(&linearize_monad(c, t, doc.field)?)?;
    let classical = classical_kleisli(c, t)?;
    let rep = compare(&internal, &classical)?;
    Ok(TaskOutput {
        report: rep,
        output: Some(category_output(doc, &format!("{name}_kleisli"), &internal)),
    })
}
