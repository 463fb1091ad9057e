//! The JSON document format: a field declaration, named definitions grouped
//! by kind, and named tasks.
//!
//! Definitions may only refer to names defined earlier (sections are read in
//! dependency order, entries within a section in file order).

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::bicomod::{Bicomodule, Comonoid};
use crate::cofun::{Cofunctor, Cotrans};
use crate::coring::hopf::HopfGaloisInstance;
use crate::coring::sweedler::{unit_monad_data, SweedlerContext, SweedlerMonadData};
use crate::coring::twisting::{sweedler_twisting_datum, TwistingDatum};
use crate::coring::{undualize_category, Algebra, Bimodule, Coring};
use crate::error::{Error, Result};
use crate::intcat::{compose_functors, InternalCategory, InternalFunctor, NatTrans};
use crate::kleisli::{kleisli_adjunction, mate_comonad, Adjunction, Comonad, Monad, Opmonad};
use crate::matrix::Matrix;
use crate::oracle::{FiniteCategory, Morphism, SetMonad};
use crate::scalar::{Field, Scalar};

/// Entries of one section, in file order.
#[derive(Clone, Debug)]
pub struct Named<T>(pub Vec<(String, T)>);

impl<T> Default for Named<T> {
    fn default() -> Self {
        Named(Vec::new())
    }
}

impl<T> Named<T> {
    pub fn get(&self, name: &str) -> Result<&T> {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }

    fn insert(&mut self, name: &str, value: T) {
        self.0.push((name.to_string(), value));
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub field: Field,
    /// The definitions as read, used to serialize the document back.
    pub source: Value,
    pub comonoids: Named<Arc<Comonoid>>,
    pub bicomodules: Named<Bicomodule>,
    pub internal_categories: Named<Arc<InternalCategory>>,
    pub functors: Named<InternalFunctor>,
    pub naturals: Named<NatTrans>,
    pub algebras: Named<Arc<Algebra>>,
    pub corings: Named<Coring>,
    pub cofunctors: Named<Cofunctor>,
    pub cotransformations: Named<Cotrans>,
    pub monads: Named<Monad>,
    pub comonads: Named<Comonad>,
    pub opmonads: Named<Opmonad>,
    pub adjunctions: Named<Adjunction>,
    pub sweedler_data: Named<(SweedlerContext, SweedlerMonadData)>,
    pub twisting_data: Named<TwistingDatum>,
    pub hopf_galois: Named<HopfGaloisInstance>,
    pub finite_categories: Named<FiniteCategory>,
    /// Each monad with the name of its category.
    pub set_monads: Named<(String, SetMonad)>,
    pub tasks: Named<Value>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn malformed(what: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: what.into(),
    }
}

/// Parses a document; `field_override` replaces the declared field.
pub fn parse(text: &str, field_override: Option<Field>) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(parse_error)?;
    from_value(value, field_override)
}

pub fn parse_field(v: &Value) -> Result<Field> {
    match v.get("field").and_then(Value::as_str) {
        None | Some("Q") => Ok(Field::Rational),
        Some("Fp") => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| malformed("field Fp requires an integer \"p\""))?;
            Field::prime(p)
        }
        Some(other) => Err(malformed(format!("unknown field `{other}`"))),
    }
}

pub fn from_value(value: Value, field_override: Option<Field>) -> Result<Document> {
    if !value.is_object() {
        return Err(malformed("document must be a JSON object"));
    }
    let field = match field_override {
        Some(f) => f,
        None => parse_field(&value)?,
    };
    let mut doc = Document {
        field,
        source: value.clone(),
        comonoids: Named::default(),
        bicomodules: Named::default(),
        internal_categories: Named::default(),
        functors: Named::default(),
        naturals: Named::default(),
        algebras: Named::default(),
        corings: Named::default(),
        cofunctors: Named::default(),
        cotransformations: Named::default(),
        monads: Named::default(),
        comonads: Named::default(),
        opmonads: Named::default(),
        adjunctions: Named::default(),
        sweedler_data: Named::default(),
        twisting_data: Named::default(),
        hopf_galois: Named::default(),
        finite_categories: Named::default(),
        set_monads: Named::default(),
        tasks: Named::default(),
    };
    for (name, def) in section(&value, "comonoids")? {
        let c = doc.comonoid(def)?;
        doc.comonoids.insert(name, Arc::new(c));
    }
    for (name, def) in section(&value, "algebras")? {
        let a = doc.algebra(def)?;
        doc.algebras.insert(name, Arc::new(a));
    }
    for (name, def) in section(&value, "bicomodules")? {
        let b = doc.bicomodule(def)?;
        doc.bicomodules.insert(name, b);
    }
    for (name, def) in section(&value, "internal_categories")? {
        let ic = doc.internal_category(def)?;
        doc.internal_categories.insert(name, Arc::new(ic));
    }
    for (name, def) in section(&value, "corings")? {
        let c = doc.coring(def)?;
        doc.corings.insert(name, c);
    }
    for (name, def) in section(&value, "functors")? {
        let f = doc.functor(def)?;
        doc.functors.insert(name, f);
    }
    for (name, def) in section(&value, "naturals")? {
        let n = doc.natural(def)?;
        doc.naturals.insert(name, n);
    }
    for (name, def) in section(&value, "cofunctors")? {
        let f = doc.cofunctor(def)?;
        doc.cofunctors.insert(name, f);
    }
    for (name, def) in section(&value, "cotransformations")? {
        let source = doc.cofunctor_ref(required(def, "source")?)?;
        let target = doc.cofunctor_ref(required(def, "target")?)?;
        let a = Cotrans::new(source, target, doc.matrix(def, "alpha")?)?;
        doc.cotransformations.insert(name, a);
    }
    for (name, def) in section(&value, "monads")? {
        let m = doc.monad(def)?;
        doc.monads.insert(name, m);
    }
    for (name, def) in section(&value, "adjunctions")? {
        let a = doc.adjunction(def)?;
        doc.adjunctions.insert(name, a);
    }
    for (name, def) in section(&value, "comonads")? {
        let w = doc.comonad(def)?;
        doc.comonads.insert(name, w);
    }
    for (name, def) in section(&value, "opmonads")? {
        let o = doc.opmonad(def)?;
        doc.opmonads.insert(name, o);
    }
    for (name, def) in section(&value, "sweedler_data")? {
        let d = doc.sweedler(def)?;
        doc.sweedler_data.insert(name, d);
    }
    for (name, def) in section(&value, "twisting_data")? {
        let td = doc.twisting(def)?;
        doc.twisting_data.insert(name, td);
    }
    for (name, def) in section(&value, "hopf_galois")? {
        let hg = doc.hopf(def)?;
        doc.hopf_galois.insert(name, hg);
    }
    for (name, def) in section(&value, "finite_categories")? {
        let c = doc.finite_category(def)?;
        doc.finite_categories.insert(name, c);
    }
    for (name, def) in section(&value, "set_monads")? {
        let cat = field_str(def, "category")?;
        let t = doc.set_monad(self_cat(&doc, cat)?, def)?;
        doc.set_monads.insert(name, (cat.to_string(), t));
    }
    for (name, def) in section(&value, "tasks")? {
        doc.tasks.insert(name, def.clone());
    }
    Ok(doc)
}

fn section<'a>(v: &'a Value, key: &str) -> Result<Vec<(&'a str, &'a Value)>> {
    match v.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => Ok(m.iter().map(|(k, v)| (k.as_str(), v)).collect()),
        Some(_) => Err(malformed(format!("section `{key}` must be an object"))),
    }
}

fn self_cat<'a>(doc: &'a Document, name: &str) -> Result<&'a FiniteCategory> {
    doc.finite_categories.get(name)
}

fn required<'a>(def: &'a Value, key: &str) -> Result<&'a Value> {
    def.get(key).ok_or_else(|| malformed(format!("missing `{key}`")))
}

fn index_of(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
}

fn string_list(def: &Value, key: &str) -> Result<Vec<String>> {
    required(def, key)?
        .as_array()
        .and_then(|xs| xs.iter().map(|x| x.as_str().map(String::from)).collect())
        .ok_or_else(|| malformed(format!("`{key}` must be an array of strings")))
}

pub fn field_str<'a>(def: &'a Value, key: &str) -> Result<&'a str> {
    def.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| malformed(format!("missing string field `{key}`")))
}

pub fn field_usize(def: &Value, key: &str) -> Result<usize> {
    def.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| malformed(format!("missing integer field `{key}`")))
}

pub fn parse_scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.int(i)),
            None => field.parse(&n.to_string()),
        },
        Value::String(s) => field.parse(s),
        other => Err(Error::BadScalar(other.to_string())),
    }
}

/// A matrix written as nested rows, or `{"rows", "cols", "data"}` (needed for empty shapes).
pub fn parse_matrix(field: Field, v: &Value) -> Result<Matrix> {
    let (rows_v, shape) = match v {
        Value::Array(rows) => (rows.as_slice(), None),
        Value::Object(m) => {
            let r = m.get("rows").and_then(Value::as_u64).ok_or_else(|| malformed("matrix needs `rows`"))?;
            let c = m.get("cols").and_then(Value::as_u64).ok_or_else(|| malformed("matrix needs `cols`"))?;
            let data = match m.get("data") {
                Some(Value::Array(d)) => d.as_slice(),
                None => &[],
                Some(_) => return Err(malformed("matrix `data` must be an array")),
            };
            (data, Some((r as usize, c as usize)))
        }
        _ => return Err(malformed("matrix must be an array of rows")),
    };
    let mut dense = Vec::with_capacity(rows_v.len());
    for row in rows_v {
        let row = row.as_array().ok_or_else(|| malformed("matrix row must be an array"))?;
        dense.push(row.iter().map(|x| parse_scalar(field, x)).collect::<Result<Vec<_>>>()?);
    }
    let (rows, cols) = match shape {
        Some(s) => s,
        None => (dense.len(), dense.first().map_or(0, |r| r.len())),
    };
    if rows > 0 && dense.is_empty() {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    Matrix::from_rows(field, rows, cols, dense)
}

pub fn scalar_json(s: &Scalar) -> Value {
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(text),
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    if m.rows() == 0 || m.cols() == 0 {
        return json!({"rows": m.rows(), "cols": m.cols(), "data": []});
    }
    Value::Array(
        m.to_dense()
            .iter()
            .map(|row| Value::Array(row.iter().map(scalar_json).collect()))
            .collect(),
    )
}

impl Document {
    pub fn matrix(&self, def: &Value, key: &str) -> Result<Matrix> {
        let v = def
            .get(key)
            .ok_or_else(|| malformed(format!("missing matrix `{key}`")))?;
        parse_matrix(self.field, v)
    }

    fn comonoid(&self, def: &Value) -> Result<Comonoid> {
        if let Some(n) = def.get("grouplike") {
            let n = n.as_u64().ok_or_else(|| malformed("`grouplike` takes a dimension"))?;
            return Ok(Comonoid::grouplike(self.field, n as usize));
        }
        if def.get("trivial").is_some() {
            return Ok(Comonoid::trivial(self.field));
        }
        Comonoid::new(self.matrix(def, "delta")?, self.matrix(def, "counit")?)
    }

    /// A comonoid reference; `"k"` is the ground field when no comonoid of that name exists.
    pub fn comonoid_ref(&self, name: &str) -> Result<Arc<Comonoid>> {
        match self.comonoids.get(name) {
            Ok(c) => Ok(c.clone()),
            Err(_) if name == "k" => Ok(Arc::new(Comonoid::trivial(self.field))),
            Err(e) => Err(e),
        }
    }

    fn bicomodule(&self, def: &Value) -> Result<Bicomodule> {
        if let Some(c) = def.get("regular").and_then(Value::as_str) {
            return Ok(self.comonoid_ref(c)?.regular());
        }
        let left = self.comonoid_ref(field_str(def, "left")?)?;
        let right = self.comonoid_ref(field_str(def, "right")?)?;
        Bicomodule::new(left, right, self.matrix(def, "lambda")?, self.matrix(def, "rho")?)
    }

    fn internal_category(&self, def: &Value) -> Result<InternalCategory> {
        if let Some(c) = def.get("discrete").and_then(Value::as_str) {
            return Ok(InternalCategory::discrete(self.comonoid_ref(c)?));
        }
        let a = self.bicomodules.get(field_str(def, "morphisms")?)?.clone();
        let unit = self.matrix(def, "unit")?;
        if def.get("mult_flat").is_some() {
            InternalCategory::from_flat_mult(a, self.matrix(def, "mult_flat")?, unit)
        } else {
            InternalCategory::new(a, self.matrix(def, "mult")?, unit)
        }
    }

    pub fn functor_ref(&self, v: &Value) -> Result<InternalFunctor> {
        match v {
            Value::String(name) => self.functors.get(name).cloned(),
            other => self.functor(other),
        }
    }

    fn functor(&self, def: &Value) -> Result<InternalFunctor> {
        if let Some(ic) = def.get("identity").and_then(Value::as_str) {
            return Ok(InternalFunctor::identity(self.internal_categories.get(ic)?));
        }
        if let Some(Value::Array(parts)) = def.get("compose") {
            let mut fs = parts.iter().map(|p| self.functor_ref(p));
            let mut acc = fs.next().ok_or_else(|| malformed("empty composite"))??;
            for f in fs {
                acc = compose_functors(&acc, &f?)?;
            }
            return Ok(acc);
        }
        let dom = self.internal_categories.get(field_str(def, "dom")?)?.clone();
        let cod = self.internal_categories.get(field_str(def, "cod")?)?.clone();
        InternalFunctor::new(dom, cod, self.matrix(def, "f0")?, self.matrix(def, "f1")?)
    }

    fn natural(&self, def: &Value) -> Result<NatTrans> {
        let source = self.functor_ref(def.get("source").ok_or_else(|| malformed("missing `source`"))?)?;
        let target = self.functor_ref(def.get("target").ok_or_else(|| malformed("missing `target`"))?)?;
        NatTrans::new(source, target, self.matrix(def, "alpha")?)
    }

    /// A column vector written as a flat array, or any matrix.
    pub fn vector(&self, def: &Value, key: &str) -> Result<Matrix> {
        match required(def, key)? {
            Value::Array(xs) if xs.iter().all(|x| !x.is_array()) => {
                let entries = xs.iter().map(|x| parse_scalar(self.field, x)).collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(self.field, entries.len(), 1, entries.into_iter().map(|x| vec![x]).collect())
            }
            other => parse_matrix(self.field, other),
        }
    }

    fn algebra(&self, def: &Value) -> Result<Algebra> {
        if let Some(n) = def.get("cyclic_group") {
            let n = n.as_u64().ok_or_else(|| malformed("`cyclic_group` takes an order"))?;
            return Ok(Algebra::cyclic_group(self.field, n as usize));
        }
        if def.get("ground").is_some() {
            return Ok(Algebra::ground(self.field));
        }
        Algebra::new(self.matrix(def, "mult")?, self.matrix(def, "unit")?)
    }

    /// An algebra reference; `"k"` is the ground field when no algebra of that name exists.
    pub fn algebra_ref(&self, name: &str) -> Result<Arc<Algebra>> {
        match self.algebras.get(name) {
            Ok(a) => Ok(a.clone()),
            Err(_) if name == "k" => Ok(Arc::new(Algebra::ground(self.field))),
            Err(e) => Err(e),
        }
    }

    /// `{"algebra", "sub", "incl"}`; without `sub` the subalgebra is the ground field.
    fn sweedler_context(&self, def: &Value) -> Result<SweedlerContext> {
        let a = self.algebra_ref(field_str(def, "algebra")?)?;
        match def.get("sub").and_then(Value::as_str) {
            None => SweedlerContext::over_ground(a),
            Some(b) if b == field_str(def, "algebra")? && def.get("incl").is_none() => SweedlerContext::over_self(a),
            Some(b) => SweedlerContext::new(a, self.algebra_ref(b)?, self.matrix(def, "incl")?),
        }
    }

    fn coring(&self, def: &Value) -> Result<Coring> {
        if let Some(a) = def.get("trivial").and_then(Value::as_str) {
            return Ok(Coring::trivial(&self.algebra_ref(a)?));
        }
        if let Some(c) = def.get("coalgebra").and_then(Value::as_str) {
            return Coring::from_coalgebra(&*self.comonoid_ref(c)?);
        }
        if let Some(sw) = def.get("sweedler") {
            return self.sweedler_context(sw)?.coring();
        }
        if let Some(ic) = def.get("dual_of").and_then(Value::as_str) {
            return undualize_category(self.internal_categories.get(ic)?);
        }
        let base = self.algebra_ref(field_str(def, "base")?)?;
        let carrier = Bimodule::new(base.clone(), base, self.matrix(def, "lact")?, self.matrix(def, "ract")?)?;
        if def.get("delta_flat").is_some() {
            Coring::from_flat(carrier, self.matrix(def, "delta_flat")?, self.matrix(def, "counit")?)
        } else {
            Coring::new(carrier, self.matrix(def, "delta")?, self.matrix(def, "counit")?)
        }
    }

    pub fn cofunctor_ref(&self, v: &Value) -> Result<Cofunctor> {
        match v {
            Value::String(name) => self.cofunctors.get(name).cloned(),
            other => self.cofunctor(other),
        }
    }

    fn cofunctor(&self, def: &Value) -> Result<Cofunctor> {
        if let Some(ic) = def.get("identity").and_then(Value::as_str) {
            return Ok(Cofunctor::identity(self.internal_categories.get(ic)?));
        }
        let dom = self.internal_categories.get(field_str(def, "dom")?)?.clone();
        let cod = self.internal_categories.get(field_str(def, "cod")?)?.clone();
        let f0 = self.matrix(def, "f0")?;
        if def.get("f1_flat").is_some() {
            Cofunctor::from_flat(dom, cod, f0, self.matrix(def, "f1_flat")?)
        } else {
            Cofunctor::new(dom, cod, f0, self.matrix(def, "f1")?)
        }
    }

    /// Components given as the name of a natural transformation or as a matrix.
    fn components(&self, def: &Value, key: &str) -> Result<Matrix> {
        match required(def, key)? {
            Value::String(name) => Ok(self.naturals.get(name)?.alpha.clone()),
            other => parse_matrix(self.field, other),
        }
    }

    fn monad(&self, def: &Value) -> Result<Monad> {
        if let Some(ic) = def.get("identity").and_then(Value::as_str) {
            return Ok(Monad::identity(self.internal_categories.get(ic)?));
        }
        let t = self.functor_ref(required(def, "functor")?)?;
        Monad::new(t, self.components(def, "mu")?, self.components(def, "eta")?)
    }

    fn adjunction(&self, def: &Value) -> Result<Adjunction> {
        if let Some(ic) = def.get("identity").and_then(Value::as_str) {
            return Ok(Adjunction::identity(self.internal_categories.get(ic)?));
        }
        if let Some(m) = def.get("kleisli").and_then(Value::as_str) {
            return kleisli_adjunction(self.monads.get(m)?);
        }
        let l = self.functor_ref(required(def, "left")?)?;
        let r = self.functor_ref(required(def, "right")?)?;
        Adjunction::from_components(l, r, self.components(def, "epsilon")?, self.components(def, "eta")?)
    }

    fn comonad(&self, def: &Value) -> Result<Comonad> {
        if let Some(ic) = def.get("identity").and_then(Value::as_str) {
            return Ok(Comonad::identity(self.internal_categories.get(ic)?));
        }
        if let Some(mate) = def.get("mate") {
            let a = self.adjunctions.get(field_str(mate, "adjunction")?)?;
            let m = self.monads.get(field_str(mate, "monad")?)?;
            return mate_comonad(a, m);
        }
        let g = self.functor_ref(required(def, "functor")?)?;
        Comonad::new(g, self.components(def, "delta")?, self.components(def, "epsilon")?)
    }

    fn opmonad(&self, def: &Value) -> Result<Opmonad> {
        if let Some(ic) = def.get("identity").and_then(Value::as_str) {
            return Ok(Opmonad::identity(self.internal_categories.get(ic)?));
        }
        let t = self.cofunctor_ref(required(def, "cofunctor")?)?;
        Opmonad::new(t, self.matrix(def, "mu")?, self.matrix(def, "eta")?)
    }

    /// Context keys plus either `unit` or the triple `t`, `m`, `u`.
    fn sweedler(&self, def: &Value) -> Result<(SweedlerContext, SweedlerMonadData)> {
        let ctx = self.sweedler_context(def)?;
        let data = if def.get("unit").is_some() {
            unit_monad_data(&ctx, &self.vector(def, "unit")?)?
        } else {
            SweedlerMonadData {
                t: self.vector(def, "t")?,
                m: self.vector(def, "m")?,
                u: self.vector(def, "u")?,
            }
        };
        Ok((ctx, data))
    }

    fn twisting(&self, def: &Value) -> Result<TwistingDatum> {
        if let Some(c) = def.get("identity").and_then(Value::as_str) {
            return Ok(TwistingDatum::identity(self.corings.get(c)?));
        }
        if let Some(d) = def.get("sweedler").and_then(Value::as_str) {
            let (ctx, data) = self.sweedler_data.get(d)?;
            return sweedler_twisting_datum(ctx, data);
        }
        Ok(TwistingDatum {
            c: self.corings.get(field_str(def, "c")?)?.clone(),
            d: self.corings.get(field_str(def, "d")?)?.clone(),
            l: self.matrix(def, "l")?,
            r: self.matrix(def, "r")?,
            theta: self.matrix(def, "theta")?,
        })
    }

    fn hopf(&self, def: &Value) -> Result<HopfGaloisInstance> {
        if let Some(n) = def.get("cyclic_group") {
            let n = n.as_u64().ok_or_else(|| malformed("`cyclic_group` takes an order"))?;
            return Ok(HopfGaloisInstance::cyclic_group(self.field, n as usize));
        }
        HopfGaloisInstance::new(
            self.algebra_ref(field_str(def, "h")?)?,
            self.matrix(def, "h_delta")?,
            self.matrix(def, "h_counit")?,
            self.matrix(def, "antipode")?,
            self.algebra_ref(field_str(def, "a")?)?,
            self.matrix(def, "rho")?,
        )
    }

    fn finite_category(&self, def: &Value) -> Result<FiniteCategory> {
        let size = |key: &str| def.get(key).and_then(Value::as_u64).map(|n| n as usize);
        if let Some(n) = size("chain") {
            return Ok(FiniteCategory::chain(n));
        }
        if let Some(n) = size("discrete") {
            return Ok(FiniteCategory::discrete(n));
        }
        if let Some(n) = size("codiscrete") {
            return Ok(FiniteCategory::codiscrete(n));
        }
        if let Some(n) = size("cyclic_group") {
            return Ok(FiniteCategory::cyclic_group(n));
        }
        let objects = string_list(def, "objects")?;
        let mut morphisms = Vec::new();
        for m in required(def, "morphisms")?
            .as_array()
            .ok_or_else(|| malformed("`morphisms` must be an array"))?
        {
            morphisms.push(Morphism {
                name: field_str(m, "name")?.to_string(),
                dom: index_of(&objects, field_str(m, "dom")?)?,
                cod: index_of(&objects, field_str(m, "cod")?)?,
            });
        }
        let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
        let identity = string_list(def, "identities")?
            .iter()
            .map(|n| index_of(&names, n))
            .collect::<Result<Vec<_>>>()?;
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for entry in required(def, "compose")?
            .as_array()
            .ok_or_else(|| malformed("`compose` must be an array"))?
        {
            let triple: Vec<&str> = entry
                .as_array()
                .and_then(|xs| xs.iter().map(Value::as_str).collect())
                .filter(|xs: &Vec<&str>| xs.len() == 3)
                .ok_or_else(|| malformed("composition entries are [g, f, g∘f]"))?;
            let (g, f, h) = (index_of(&names, triple[0])?, index_of(&names, triple[1])?, index_of(&names, triple[2])?);
            compose[g * m + f] = Some(h);
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identity,
            compose,
        })
    }

    fn set_monad(&self, c: &FiniteCategory, def: &Value) -> Result<SetMonad> {
        if def.get("identity").is_some() {
            return Ok(SetMonad::identity(c));
        }
        let obj = string_list(def, "obj")?
            .iter()
            .map(|n| index_of(&c.objects, n))
            .collect::<Result<Vec<_>>>()?;
        if obj.len() != c.object_count() {
            return Err(malformed("`obj` must list an image for every object"));
        }
        if def.get("mor").is_none() {
            return SetMonad::thin(c, &obj)
                .ok_or_else(|| Error::LawViolation("object map does not determine a monad".into()));
        }
        let names: Vec<String> = c.morphisms.iter().map(|m| m.name.clone()).collect();
        let list = |key: &str| -> Result<Vec<usize>> { string_list(def, key)?.iter().map(|n| index_of(&names, n)).collect() };
        Ok(SetMonad {
            obj,
            mor: list("mor")?,
            eta: list("eta")?,
            mu: list("mu")?,
        })
    }

    /// The document as JSON, with sections in canonical order.
    pub fn to_value(&self) -> Value {
        canonical(&self.source)
    }
}

const SECTION_ORDER: &[&str] = &[
    "field",
    "p",
    "comonoids",
    "algebras",
    "bicomodules",
    "internal_categories",
    "corings",
    "functors",
    "naturals",
    "cofunctors",
    "cotransformations",
    "monads",
    "adjunctions",
    "comonads",
    "opmonads",
    "sweedler_data",
    "twisting_data",
    "hopf_galois",
    "finite_categories",
    "set_monads",
    "tasks",
];

/// Reorders top-level keys into the canonical section order.
pub fn canonical(v: &Value) -> Value {
    let Value::Object(m) = v else {
        return v.clone();
    };
    let mut out = Map::new();
    for key in SECTION_ORDER {
        if let Some(x) = m.get(*key) {
            out.insert((*key).to_string(), x.clone());
        }
    }
    for (k, x) in m {
        if !out.contains_key(k) {
            out.insert(k.clone(), x.clone());
        }
    }
    Value::Object(out)
}

pub fn serialize(doc: &Document) -> String {
    pretty(&doc.to_value())
}

/// Indented JSON with each array of scalars (a matrix row) kept on one line.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = xs.iter().map(|x| serde_json::to_string(x).expect("json")).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("json"));
                out.push_str(": ");
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("json")),
    }
}

/// Serializes an internal category as a standalone document.
pub fn internal_category_document(field: Field, name: &str, ic: &InternalCategory) -> Value {
    let mut v = field_header(field);
    let c = &ic.objects;
    let a = &ic.morphisms;
    v["comonoids"] = json!({
        format!("{name}_objects"): {"delta": matrix_json(&c.delta), "counit": matrix_json(&c.counit)}
    });
    v["bicomodules"] = json!({
        format!("{name}_morphisms"): {
            "left": format!("{name}_objects"),
            "right": format!("{name}_objects"),
            "lambda": matrix_json(&a.lambda),
            "rho": matrix_json(&a.rho)
        }
    });
    v["internal_categories"] = json!({
        name: {
            "morphisms": format!("{name}_morphisms"),
            "mult": matrix_json(&ic.mult),
            "unit": matrix_json(&ic.unit)
        }
    });
    v
}

/// Serializes a coring with an explicit base algebra as a standalone document.
pub fn coring_document(field: Field, name: &str, c: &Coring) -> Value {
    let mut v = field_header(field);
    v["algebras"] = json!({
        format!("{name}_base"): {"mult": matrix_json(&c.base.mult), "unit": matrix_json(&c.base.unit)}
    });
    v["corings"] = json!({
        name: {
            "base": format!("{name}_base"),
            "lact": matrix_json(&c.carrier.lact),
            "ract": matrix_json(&c.carrier.ract),
            "delta_flat": matrix_json(&c.delta_flat()),
            "counit": matrix_json(&c.counit)
        }
    });
    v
}

pub fn field_header(field: Field) -> Value {
    match field {
        Field::Rational => json!({"field": "Q"}),
        Field::Prime(p) => json!({"field": "Fp", "p": p}),
    }
}
