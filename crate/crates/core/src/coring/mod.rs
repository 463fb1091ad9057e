//! Algebras, bimodules and corings, and the duality that turns a coring over
//! a finite-dimensional algebra into an internal category over the dual coalgebra.
//!
//! A tensor product over an algebra is stored as a quotient of the flat tensor
//! product: a projection `P` (the deterministic cokernel of the balancing
//! relations) and a fixed section `s` with `P s = 1`. Elements of `M ⊗_A N`
//! are `P`-coordinates, and a map out of the quotient is evaluated on the flat
//! representative `s x`. Because `P` is the transpose of the kernel basis used
//! for cotensors, transposing every structure matrix lands exactly on the
//! cotensor bases of the dual side.

pub mod hopf;
pub mod sweedler;
pub mod twisting;

use std::sync::Arc;

use crate::bicomod::{Bicomodule, Comonoid};
use crate::error::{Error, Result};
use crate::intcat::InternalCategory;
use crate::matrix::Matrix;
use crate::report::Report;
use crate::scalar::Field;

/// A finite-dimensional unital associative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    /// `A ⊗ A -> A`, shape `dim x dim²`.
    pub mult: Matrix,
    /// `k -> A`, shape `dim x 1`.
    pub unit: Matrix,
}

impl Algebra {
    pub fn new(mult: Matrix, unit: Matrix) -> Result<Algebra> {
        let dim = mult.rows();
        if mult.cols() != dim * dim || unit.shape() != (dim, 1) {
            return Err(Error::ShapeMismatch(format!(
                "algebra of dimension {dim} needs a multiplication {dim}x{} and a unit {dim}x1",
                dim * dim
            )));
        }
        Ok(Algebra {
            field: mult.field(),
            dim,
            mult,
            unit,
        })
    }

    /// The ground field.
    pub fn ground(field: Field) -> Algebra {
        Algebra::cyclic_group(field, 1)
    }

    /// The group algebra of the cyclic group of order `n`, basis `1, g, ..., g^{n-1}`.
    pub fn cyclic_group(field: Field, n: usize) -> Algebra {
        let mut mult = Matrix::zeros(field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                mult.set((i + j) % n, i * n + j, field.one());
            }
        }
        Algebra {
            field,
            dim: n,
            mult,
            unit: Matrix::basis_vector(field, n, 0),
        }
    }

    pub fn id(&self) -> Matrix {
        Matrix::identity(self.field, self.dim)
    }

    pub fn product(&self, x: &Matrix, y: &Matrix) -> Matrix {
        self.mult.mul(&x.tensor(y))
    }

    /// `a ↦ xa`.
    pub fn left_mult(&self, x: &Matrix) -> Matrix {
        self.mult.mul(&x.tensor(&self.id()))
    }

    /// `a ↦ ax`.
    pub fn right_mult(&self, x: &Matrix) -> Matrix {
        self.mult.mul(&self.id().tensor(x))
    }

    /// The two-sided inverse of `x`, if it exists.
    pub fn inverse_of(&self, x: &Matrix) -> Option<Matrix> {
        let y = self.left_mult(x).factor_left(&self.unit).ok()?;
        (self.product(&y, x) == self.unit).then_some(y)
    }

    /// `A` as a bimodule over itself.
    pub fn regular(self: &Arc<Self>) -> Bimodule {
        Bimodule {
            left: self.clone(),
            right: self.clone(),
            dim: self.dim,
            lact: self.mult.clone(),
            ract: self.mult.clone(),
        }
    }
}

pub fn verify_algebra(a: &Algebra) -> Result<Report> {
    let mut r = Report::new("algebra");
    let id = a.id();
    r.equal(
        "associativity",
        "m(m⊗A) = m(A⊗m)",
        &a.mult.mul(&a.mult.tensor(&id)),
        &a.mult.mul(&id.tensor(&a.mult)),
    );
    r.equal("left unit", "m(u⊗A) = A", &a.mult.mul(&a.unit.tensor(&id)), &id);
    r.equal("right unit", "m(A⊗u) = A", &a.mult.mul(&id.tensor(&a.unit)), &id);
    Ok(r)
}

/// Records that `f : A -> B` is a unital algebra map.
pub fn algebra_map_checks(r: &mut Report, prefix: &str, f: &Matrix, a: &Algebra, b: &Algebra) -> Result<bool> {
    if f.shape() != (b.dim, a.dim) {
        return Err(Error::ShapeMismatch(format!(
            "algebra map must be {}x{}, got {:?}",
            b.dim,
            a.dim,
            f.shape()
        )));
    }
    let m = r.equal(
        &format!("{prefix} multiplicative"),
        "f m_A = m_B(f⊗f)",
        &f.mul(&a.mult),
        &b.mult.mul(&f.tensor(f)),
    );
    let u = r.equal(&format!("{prefix} unital"), "f u_A = u_B", &f.mul(&a.unit), &b.unit);
    Ok(m && u)
}

/// An `A-A'`-bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bimodule {
    pub left: Arc<Algebra>,
    pub right: Arc<Algebra>,
    pub dim: usize,
    /// `A ⊗ M -> M`.
    pub lact: Matrix,
    /// `M ⊗ A' -> M`.
    pub ract: Matrix,
}

impl Bimodule {
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, lact: Matrix, ract: Matrix) -> Result<Bimodule> {
        let dim = lact.rows();
        let b = Bimodule {
            left,
            right,
            dim,
            lact,
            ract,
        };
        b.check_shapes()?;
        Ok(b)
    }

    pub fn field(&self) -> Field {
        self.left.field
    }

    pub fn id(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim)
    }

    fn check_shapes(&self) -> Result<()> {
        let (a, b, m) = (self.left.dim, self.right.dim, self.dim);
        if self.lact.shape() != (m, a * m) || self.ract.shape() != (m, m * b) {
            return Err(Error::ShapeMismatch(format!(
                "bimodule of dimension {m} over algebras of dimensions {a}, {b} has actions of shapes {:?}, {:?}",
                self.lact.shape(),
                self.ract.shape()
            )));
        }
        Ok(())
    }

    /// `m ↦ xm` for `x` in the left algebra.
    pub fn act_left(&self, x: &Matrix) -> Matrix {
        self.lact.mul(&x.tensor(&self.id()))
    }

    /// `m ↦ mx` for `x` in the right algebra.
    pub fn act_right(&self, x: &Matrix) -> Matrix {
        self.ract.mul(&self.id().tensor(x))
    }

    /// The elements commuting with the image of `f : B -> A` in both algebras,
    /// `M^B = {m | f(b)m = mf(b)}`, as a basis matrix. Requires `left = right = A`.
    pub fn centralizer(&self, f: &Matrix) -> Matrix {
        let field = self.field();
        let blocks: Vec<Matrix> = (0..f.cols())
            .map(|k| {
                let b = f.column_matrix(k);
                self.act_left(&b).sub(&self.act_right(&b))
            })
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(field, self.dim, &refs).kernel_basis()
    }
}

pub fn verify_bimodule(m: &Bimodule) -> Result<Report> {
    m.check_shapes()?;
    let (a, b) = (&m.left, &m.right);
    let idm = m.id();
    let mut r = Report::new("bimodule");
    r.equal(
        "left associativity",
        "λ(m_A⊗M) = λ(A⊗λ)",
        &m.lact.mul(&a.mult.tensor(&idm)),
        &m.lact.mul(&a.id().tensor(&m.lact)),
    );
    r.equal("left unit", "λ(u_A⊗M) = M", &m.lact.mul(&a.unit.tensor(&idm)), &idm);
    r.equal(
        "right associativity",
        "ρ(M⊗m_B) = ρ(ρ⊗B)",
        &m.ract.mul(&idm.tensor(&b.mult)),
        &m.ract.mul(&m.ract.tensor(&b.id())),
    );
    r.equal("right unit", "ρ(M⊗u_B) = M", &m.ract.mul(&idm.tensor(&b.unit)), &idm);
    r.equal(
        "actions commute",
        "λ(A⊗ρ) = ρ(λ⊗B)",
        &m.lact.mul(&a.id().tensor(&m.ract)),
        &m.ract.mul(&m.lact.tensor(&b.id())),
    );
    Ok(r)
}

/// Records that `f : M -> N` commutes with both actions.
pub fn bimodule_map_checks(r: &mut Report, prefix: &str, f: &Matrix, m: &Bimodule, n: &Bimodule) -> Result<bool> {
    if f.shape() != (n.dim, m.dim) {
        return Err(Error::ShapeMismatch(format!(
            "bimodule map must be {}x{}, got {:?}",
            n.dim,
            m.dim,
            f.shape()
        )));
    }
    if m.left != n.left || m.right != n.right {
        return Err(Error::ShapeMismatch("bimodules over different algebras".into()));
    }
    let l = r.equal(
        &format!("{prefix} left linear"),
        "f λ_M = λ_N(A⊗f)",
        &f.mul(&m.lact),
        &n.lact.mul(&m.left.id().tensor(f)),
    );
    let g = r.equal(
        &format!("{prefix} right linear"),
        "f ρ_M = ρ_N(f⊗B)",
        &f.mul(&m.ract),
        &n.ract.mul(&f.tensor(&m.right.id())),
    );
    Ok(l && g)
}

/// `M1 ⊗ M2 ⊗ ... ⊗ Mn` over the intermediate algebras, as a quotient of the flat product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOver {
    pub factor_dims: Vec<usize>,
    /// `P`, from the flat product onto the quotient.
    pub projection: Matrix,
    /// A fixed section `s` of `P`.
    pub section: Matrix,
    /// The bimodule structure over the outer algebras.
    pub result: Bimodule,
}

impl TensorOver {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn flat_dim(&self) -> usize {
        self.projection.cols()
    }

    /// `P f s`: the map induced on the quotient by a flat map compatible with the relations.
    pub fn induced(&self, flat: &Matrix, dst: &TensorOver) -> Matrix {
        dst.projection.mul(flat).mul(&self.section)
    }
}

/// `M ⊗_B N`.
pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorOver> {
    tensor_over_chain(&[m, n])
}

/// `M1 ⊗ ... ⊗ Mn`, balanced at every inner algebra at once.
pub fn tensor_over_chain(factors: &[&Bimodule]) -> Result<TensorOver> {
    let first = *factors
        .first()
        .ok_or_else(|| Error::ShapeMismatch("empty tensor product".into()))?;
    let last = *factors.last().expect("non-empty");
    let f = first.field();
    for w in factors.windows(2) {
        if w[0].right != w[1].left {
            return Err(Error::ShapeMismatch(
                "right algebra of one factor differs from the left algebra of the next".into(),
            ));
        }
    }
    let dims: Vec<usize> = factors.iter().map(|b| b.dim).collect();
    let flat: usize = dims.iter().product();
    let mut relations = Vec::new();
    for (k, w) in factors.windows(2).enumerate() {
        let (prev, next) = (w[0], w[1]);
        let before: usize = dims[..k].iter().product();
        let after: usize = dims[k + 2..].iter().product();
        let pair = prev
            .ract
            .tensor(&next.id())
            .sub(&prev.id().tensor(&next.lact));
        relations.push(Matrix::tensor_all(
            f,
            &[&Matrix::identity(f, before), &pair, &Matrix::identity(f, after)],
        ));
    }
    let projection = if relations.is_empty() {
        Matrix::identity(f, flat)
    } else {
        let refs: Vec<&Matrix> = relations.iter().collect();
        Matrix::hstack(f, flat, &refs).cokernel_projection()
    };
    let section = projection
        .right_inverse()
        .expect("cokernel projection is surjective");
    let rest = flat / first.dim;
    let head = flat / last.dim;
    let (left, right) = (first.left.clone(), last.right.clone());
    let lact = projection
        .mul(&first.lact.tensor(&Matrix::identity(f, rest)))
        .mul(&left.id().tensor(&section));
    let ract = projection
        .mul(&Matrix::identity(f, head).tensor(&last.ract))
        .mul(&section.tensor(&right.id()));
    let dim = projection.rows();
    Ok(TensorOver {
        factor_dims: dims,
        projection,
        section,
        result: Bimodule {
            left,
            right,
            dim,
            lact,
            ract,
        },
    })
}

/// `f ⊗ g : src -> dst` on quotients.
pub fn tensor_over_map(f: &Matrix, g: &Matrix, src: &TensorOver, dst: &TensorOver) -> Result<Matrix> {
    if f.cols() * g.cols() != src.flat_dim() || f.rows() * g.rows() != dst.flat_dim() {
        return Err(Error::ShapeMismatch(
            "factor maps do not match the tensor factors".into(),
        ));
    }
    Ok(src.induced(&f.tensor(g), dst))
}

/// An `A`-coring: a comonoid in `A`-bimodules under `⊗_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coring {
    pub base: Arc<Algebra>,
    pub carrier: Bimodule,
    /// `C -> C ⊗_A C`, on the quotient basis of `cc`.
    pub delta: Matrix,
    /// `C -> A`.
    pub counit: Matrix,
    pub cc: TensorOver,
}

impl Coring {
    pub fn new(carrier: Bimodule, delta: Matrix, counit: Matrix) -> Result<Coring> {
        if carrier.left != carrier.right {
            return Err(Error::ShapeMismatch(
                "a coring is a bimodule over a single algebra".into(),
            ));
        }
        let cc = tensor_over(&carrier, &carrier)?;
        let (c, a) = (carrier.dim, carrier.left.dim);
        if delta.shape() != (cc.dim(), c) || counit.shape() != (a, c) {
            return Err(Error::ShapeMismatch(format!(
                "comultiplication must be {}x{c} and counit {a}x{c}; got {:?} and {:?}",
                cc.dim(),
                delta.shape(),
                counit.shape()
            )));
        }
        Ok(Coring {
            base: carrier.left.clone(),
            carrier,
            delta,
            counit,
            cc,
        })
    }

    /// Builds the coring from a comultiplication into the flat `C ⊗ C`.
    pub fn from_flat(carrier: Bimodule, delta_flat: Matrix, counit: Matrix) -> Result<Coring> {
        let cc = tensor_over(&carrier, &carrier)?;
        if delta_flat.rows() != cc.flat_dim() {
            return Err(Error::ShapeMismatch("flat comultiplication has the wrong height".into()));
        }
        Coring::new(carrier, cc.projection.mul(&delta_flat), counit)
    }

    /// `A` itself, `Δ(a) = a ⊗ 1`, `e = id`.
    pub fn trivial(base: &Arc<Algebra>) -> Coring {
        let reg = base.regular();
        let flat = base.id().tensor(&base.unit);
        Coring::from_flat(reg, flat, base.id()).expect("trivial coring")
    }

    /// A coalgebra as a coring over the ground field.
    pub fn from_coalgebra(c: &Comonoid) -> Result<Coring> {
        let k = Arc::new(Algebra::ground(c.field));
        let carrier = Bimodule::new(k.clone(), k, Matrix::identity(c.field, c.dim), Matrix::identity(c.field, c.dim))?;
        Coring::from_flat(carrier, c.delta.clone(), c.counit.clone())
    }

    pub fn field(&self) -> Field {
        self.base.field
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    pub fn id(&self) -> Matrix {
        self.carrier.id()
    }

    /// A flat representative of the comultiplication, `s Δ`.
    pub fn delta_flat(&self) -> Matrix {
        self.cc.section.mul(&self.delta)
    }

    /// The same coring with another comultiplication and counit.
    pub fn with_structure(&self, delta: Matrix, counit: Matrix) -> Result<Coring> {
        Coring::new(self.carrier.clone(), delta, counit)
    }
}

pub fn verify_coring(c: &Coring) -> Result<Report> {
    let mut r = Report::new("coring");
    r.absorb("base", verify_algebra(&c.base)?);
    r.absorb("carrier", verify_bimodule(&c.carrier)?);
    let a = &c.base;
    let cc = &c.cc.result;
    r.equal(
        "comultiplication left linear",
        "Δ λ_C = λ_{C⊗C}(A⊗Δ)",
        &c.delta.mul(&c.carrier.lact),
        &cc.lact.mul(&a.id().tensor(&c.delta)),
    );
    r.equal(
        "comultiplication right linear",
        "Δ ρ_C = ρ_{C⊗C}(Δ⊗A)",
        &c.delta.mul(&c.carrier.ract),
        &cc.ract.mul(&c.delta.tensor(&a.id())),
    );
    r.equal(
        "counit left linear",
        "e λ_C = m(A⊗e)",
        &c.counit.mul(&c.carrier.lact),
        &a.mult.mul(&a.id().tensor(&c.counit)),
    );
    r.equal(
        "counit right linear",
        "e ρ_C = m(e⊗A)",
        &c.counit.mul(&c.carrier.ract),
        &a.mult.mul(&c.counit.tensor(&a.id())),
    );
    let cube = tensor_over_chain(&[&c.carrier, &c.carrier, &c.carrier])?;
    let sd = c.delta_flat();
    let id = c.id();
    r.equal(
        "coassociativity",
        "(Δ⊗C)Δ = (C⊗Δ)Δ",
        &cube.projection.mul(&sd.tensor(&id)).mul(&sd),
        &cube.projection.mul(&id.tensor(&sd)).mul(&sd),
    );
    r.equal(
        "left counit",
        "(e⊗C)Δ = C",
        &c.carrier.lact.mul(&c.counit.tensor(&id)).mul(&sd),
        &id,
    );
    r.equal(
        "right counit",
        "(C⊗e)Δ = C",
        &c.carrier.ract.mul(&id.tensor(&c.counit)).mul(&sd),
        &id,
    );
    Ok(r)
}

/// Records that `f : C -> D` is a coring map.
pub fn coring_map_checks(r: &mut Report, prefix: &str, f: &Matrix, c: &Coring, d: &Coring) -> Result<bool> {
    if c.base != d.base {
        return Err(Error::ShapeMismatch("corings over different algebras".into()));
    }
    let lin = bimodule_map_checks(r, prefix, f, &c.carrier, &d.carrier)?;
    let comult = r.equal(
        &format!("{prefix} comultiplicative"),
        "Δ_D f = (f⊗f)Δ_C",
        &d.delta.mul(f),
        &tensor_over_map(f, f, &c.cc, &d.cc)?.mul(&c.delta),
    );
    let counit = r.equal(&format!("{prefix} counital"), "e_D f = e_C", &d.counit.mul(f), &c.counit);
    Ok(lin && comult && counit)
}

pub fn verify_coring_map(f: &Matrix, c: &Coring, d: &Coring) -> Result<Report> {
    let mut r = Report::new("coring map");
    coring_map_checks(&mut r, "f", f, c, d)?;
    Ok(r)
}

/// `Δ(x) = x ⊗ x` and `e(x) = 1`.
pub fn is_grouplike(x: &Matrix, c: &Coring) -> bool {
    x.shape() == (c.dim(), 1)
        && c.delta.mul(x) == c.cc.projection.mul(&x.tensor(x))
        && c.counit.mul(x) == c.base.unit
}

/// The convolution product `f ∗ g = m(f⊗g)Δ` of bimodule maps `C -> A`.
pub fn coring_convolve(c: &Coring, f: &Matrix, g: &Matrix) -> Matrix {
    c.base.mult.mul(&f.tensor(g)).mul(&c.delta_flat())
}

/// A basis of the `A`-bimodule maps `M -> N`.
pub fn bimodule_maps(m: &Bimodule, n: &Bimodule) -> Vec<Matrix> {
    let (a, b) = (m.left.id(), m.right.id());
    crate::matrix::solution_space(m.field(), n.dim, m.dim, |f| {
        let l = f.mul(&m.lact).sub(&n.lact.mul(&a.tensor(f)));
        let r = f.mul(&m.ract).sub(&n.ract.mul(&f.tensor(&b)));
        Matrix::vstack(m.field(), 1, &[&l.vectorize(), &r.vectorize()])
    })
}

/// The convolution inverse of `u : C -> A`, found by solving `u ∗ v = e` over
/// the space of bimodule maps and checking `v ∗ u = e`.
pub fn convolution_inverse(c: &Coring, u: &Matrix) -> Result<Matrix> {
    let target = c.base.regular();
    let basis = bimodule_maps(&c.carrier, &target);
    let field = c.field();
    let columns: Vec<Matrix> = basis.iter().map(|b| coring_convolve(c, u, b).vectorize()).collect();
    let refs: Vec<&Matrix> = columns.iter().collect();
    let op = Matrix::hstack(field, c.base.dim * c.dim(), &refs);
    let fail = || Error::NotConvolutionInvertible("u ∗ v = e has no solution among bimodule maps".into());
    let coeffs = solve(&op, &c.counit.vectorize()).ok_or_else(fail)?;
    let mut v = Matrix::zeros(field, c.base.dim, c.dim());
    for (k, b) in basis.iter().enumerate() {
        v = v.add(&b.scale(&coeffs.get(k, 0)));
    }
    if coring_convolve(c, &v, u) != c.counit {
        return Err(Error::NotConvolutionInvertible(
            "a right convolution inverse is not a left inverse".into(),
        ));
    }
    Ok(v)
}

/// Some `x` with `a x = b`, if any.
fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let field = a.field();
    let aug = Matrix::hstack(field, a.rows(), &[a, b]);
    if aug.rank() != a.rank() {
        return None;
    }
    let (reduced, pivots) = aug.rref();
    let mut x = Matrix::zeros(field, a.cols(), b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, reduced[row][a.cols() + j].clone());
        }
    }
    Some(x)
}

/// `A ↦ A*`: the multiplication transposes to a comultiplication.
pub fn dualize_algebra(a: &Algebra) -> Comonoid {
    Comonoid {
        field: a.field,
        dim: a.dim,
        delta: a.mult.transpose(),
        counit: a.unit.transpose(),
    }
}

pub fn undualize_comonoid(c: &Comonoid) -> Algebra {
    Algebra {
        field: c.field,
        dim: c.dim,
        mult: c.delta.transpose(),
        unit: c.counit.transpose(),
    }
}

pub fn dualize_bimodule(m: &Bimodule) -> Bicomodule {
    Bicomodule {
        left: Arc::new(dualize_algebra(&m.left)),
        right: Arc::new(dualize_algebra(&m.right)),
        dim: m.dim,
        lambda: m.lact.transpose(),
        rho: m.ract.transpose(),
    }
}

pub fn undualize_bicomodule(b: &Bicomodule) -> Bimodule {
    Bimodule {
        left: Arc::new(undualize_comonoid(&b.left)),
        right: Arc::new(undualize_comonoid(&b.right)),
        dim: b.dim,
        lact: b.lambda.transpose(),
        ract: b.rho.transpose(),
    }
}

/// Maps dualize to their transposes.
pub fn dualize_map(f: &Matrix) -> Matrix {
    f.transpose()
}

/// The internal category over `A*` whose morphisms are `C*`.
pub fn dualize_coring(c: &Coring) -> Result<InternalCategory> {
    let mut morphisms = dualize_bimodule(&c.carrier);
    morphisms.right = morphisms.left.clone();
    InternalCategory::new(morphisms, c.delta.transpose(), c.counit.transpose())
}

pub fn undualize_category(ic: &InternalCategory) -> Result<Coring> {
    let mut carrier = undualize_bicomodule(&ic.morphisms);
    carrier.right = carrier.left.clone();
    Coring::new(carrier, ic.mult.transpose(), ic.unit.transpose())
}
