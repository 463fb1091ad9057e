//! Comonoids, bicomodules and cotensor products.
//!
//! A cotensor `M1 □ M2 □ ... □ Mn` is stored as a subspace of the flat tensor
//! product `M1 (x) ... (x) Mn`: an inclusion `ι` (the deterministic kernel basis
//! of the equaliser conditions) together with a fixed left inverse `π`. A map
//! defined on a cotensor extends to the flat product as `m . π`, which lets
//! every composite be written as a product of Kronecker factors and then
//! restricted to `ι` and factored through the target inclusion.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{factor_with, Matrix};
use crate::report::Report;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comonoid {
    pub field: Field,
    pub dim: usize,
    /// `Δ : C -> C (x) C`, shape `dim² x dim`.
    pub delta: Matrix,
    /// `e : C -> k`, shape `1 x dim`.
    pub counit: Matrix,
}

impl Comonoid {
    pub fn new(delta: Matrix, counit: Matrix) -> Result<Comonoid> {
        let dim = delta.cols();
        if delta.rows() != dim * dim || counit.shape() != (1, dim) {
            return Err(Error::ShapeMismatch(format!(
                "comonoid of dimension {dim} needs Δ of shape {}x{dim} and e of shape 1x{dim}",
                dim * dim
            )));
        }
        Ok(Comonoid {
            field: delta.field(),
            dim,
            delta,
            counit,
        })
    }

    /// The ground field as a one-dimensional comonoid.
    pub fn trivial(field: Field) -> Comonoid {
        Comonoid::grouplike(field, 1)
    }

    /// The coalgebra spanned by `n` group-like elements, `Δ(x) = x (x) x`, `e(x) = 1`.
    pub fn grouplike(field: Field, n: usize) -> Comonoid {
        let mut delta = Matrix::zeros(field, n * n, n);
        for i in 0..n {
            delta.set(i * n + i, i, field.one());
        }
        let counit = Matrix::from_rows(field, 1, n, vec![vec![field.one(); n]]).expect("counit row");
        Comonoid {
            field,
            dim: n,
            delta,
            counit,
        }
    }

    pub fn id(&self) -> Matrix {
        Matrix::identity(self.field, self.dim)
    }

    /// `C` as a bicomodule over itself, both coactions `Δ`.
    pub fn regular(self: &Arc<Self>) -> Bicomodule {
        Bicomodule {
            left: self.clone(),
            right: self.clone(),
            dim: self.dim,
            lambda: self.delta.clone(),
            rho: self.delta.clone(),
        }
    }

    /// The counit `C -> k` viewed as a comonoid map to the trivial comonoid.
    pub fn to_trivial(&self) -> Matrix {
        self.counit.clone()
    }
}

pub fn verify_comonoid(c: &Comonoid) -> Result<Report> {
    check_comonoid_shapes(c)?;
    let id = c.id();
    let mut r = Report::new("comonoid");
    r.equal(
        "coassociativity",
        "(Δ⊗C)Δ = (C⊗Δ)Δ",
        &c.delta.tensor(&id).mul(&c.delta),
        &id.tensor(&c.delta).mul(&c.delta),
    );
    r.equal("left counit", "(e⊗C)Δ = C", &c.counit.tensor(&id).mul(&c.delta), &id);
    r.equal("right counit", "(C⊗e)Δ = C", &id.tensor(&c.counit).mul(&c.delta), &id);
    Ok(r)
}

fn check_comonoid_shapes(c: &Comonoid) -> Result<()> {
    if c.delta.shape() != (c.dim * c.dim, c.dim) || c.counit.shape() != (1, c.dim) {
        return Err(Error::ShapeMismatch(format!(
            "comonoid structure maps do not match dimension {}",
            c.dim
        )));
    }
    Ok(())
}

/// Records the two comonoid-morphism laws for `f : c -> d` under `prefix`.
pub fn comonoid_map_checks(r: &mut Report, prefix: &str, f: &Matrix, c: &Comonoid, d: &Comonoid) -> Result<bool> {
    if f.shape() != (d.dim, c.dim) {
        return Err(Error::ShapeMismatch(format!(
            "comonoid map must be {}x{}, got {}x{}",
            d.dim,
            c.dim,
            f.rows(),
            f.cols()
        )));
    }
    let a = r.equal(
        &format!("{prefix} comultiplicative"),
        "Δ_D f = (f⊗f)Δ_C",
        &d.delta.mul(f),
        &f.tensor(f).mul(&c.delta),
    );
    let b = r.equal(&format!("{prefix} counital"), "e_D f = e_C", &d.counit.mul(f), &c.counit);
    Ok(a && b)
}

pub fn is_comonoid_map(f: &Matrix, c: &Comonoid, d: &Comonoid) -> bool {
    let mut r = Report::new("comonoid map");
    comonoid_map_checks(&mut r, "f", f, c, d).unwrap_or(false)
}

/// All comonoid maps `c -> d` whose entries lie in `values`.
pub fn enumerate_comonoid_maps(c: &Comonoid, d: &Comonoid, values: &[i64]) -> Vec<Matrix> {
    let f = c.field;
    let n = d.dim * c.dim;
    let basis: Vec<Matrix> = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(f, d.dim, c.dim);
            m.set(i / c.dim, i % c.dim, f.one());
            m
        })
        .collect();
    crate::matrix::grid_span(f, d.dim, c.dim, &basis, values)
        .into_iter()
        .filter(|m| is_comonoid_map(m, c, d))
        .collect()
}

fn require_comonoid_map(f: &Matrix, c: &Comonoid, d: &Comonoid) -> Result<()> {
    if f.shape() != (d.dim, c.dim) {
        return Err(Error::ShapeMismatch("comonoid map has the wrong shape".into()));
    }
    if !is_comonoid_map(f, c, d) {
        return Err(Error::NotComonoidMap(
            "map does not preserve comultiplication and counit".into(),
        ));
    }
    Ok(())
}

/// A `C-D`-bicomodule. The left coaction records codomains, the right one domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicomodule {
    pub left: Arc<Comonoid>,
    pub right: Arc<Comonoid>,
    pub dim: usize,
    /// `λ : M -> C (x) M`.
    pub lambda: Matrix,
    /// `ρ : M -> M (x) D`.
    pub rho: Matrix,
}

impl Bicomodule {
    pub fn new(left: Arc<Comonoid>, right: Arc<Comonoid>, lambda: Matrix, rho: Matrix) -> Result<Bicomodule> {
        let dim = lambda.cols();
        let b = Bicomodule {
            left,
            right,
            dim,
            lambda,
            rho,
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
        let (c, d, m) = (self.left.dim, self.right.dim, self.dim);
        if self.lambda.shape() != (c * m, m) || self.rho.shape() != (m * d, m) {
            return Err(Error::ShapeMismatch(format!(
                "bicomodule of dimension {m} over comonoids of dimensions {c}, {d} has coactions of shapes {:?}, {:?}",
                self.lambda.shape(),
                self.rho.shape()
            )));
        }
        Ok(())
    }

    /// Exchanges the roles of left and right, transporting along the tensor symmetry.
    /// This is the bicomodule over the co-opposite comonoids used for mirrored constructions.
    pub fn mirror(&self, left: Arc<Comonoid>, right: Arc<Comonoid>) -> Bicomodule {
        let f = self.field();
        Bicomodule {
            left,
            right,
            dim: self.dim,
            lambda: Matrix::swap(f, self.dim, self.right.dim).mul(&self.rho),
            rho: Matrix::swap(f, self.left.dim, self.dim).mul(&self.lambda),
        }
    }
}

/// `C` with the comultiplication transported along the symmetry, `Δ' = swap . Δ`.
pub fn co_opposite(c: &Comonoid) -> Comonoid {
    Comonoid {
        field: c.field,
        dim: c.dim,
        delta: Matrix::swap(c.field, c.dim, c.dim).mul(&c.delta),
        counit: c.counit.clone(),
    }
}

pub fn verify_bicomodule(m: &Bicomodule) -> Result<Report> {
    m.check_shapes()?;
    let (c, d) = (&m.left, &m.right);
    let idm = m.id();
    let mut r = Report::new("bicomodule");
    r.equal(
        "left coassociativity",
        "(Δ_C⊗M)λ = (C⊗λ)λ",
        &c.delta.tensor(&idm).mul(&m.lambda),
        &c.id().tensor(&m.lambda).mul(&m.lambda),
    );
    r.equal("left counit", "(e_C⊗M)λ = M", &c.counit.tensor(&idm).mul(&m.lambda), &idm);
    r.equal(
        "right coassociativity",
        "(ρ⊗D)ρ = (M⊗Δ_D)ρ",
        &m.rho.tensor(&d.id()).mul(&m.rho),
        &idm.tensor(&d.delta).mul(&m.rho),
    );
    r.equal("right counit", "(M⊗e_D)ρ = M", &idm.tensor(&d.counit).mul(&m.rho), &idm);
    r.equal(
        "coactions commute",
        "(C⊗ρ)λ = (λ⊗D)ρ",
        &c.id().tensor(&m.rho).mul(&m.lambda),
        &m.lambda.tensor(&d.id()).mul(&m.rho),
    );
    Ok(r)
}

/// A cotensor product embedded in the flat tensor product of its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotensor {
    pub factor_dims: Vec<usize>,
    /// `ι : M1 □ ... □ Mn -> M1 (x) ... (x) Mn`.
    pub inclusion: Matrix,
    /// A fixed left inverse of `ι`.
    pub projection: Matrix,
    /// The bicomodule structure on the cotensor: left over the first factor's
    /// left comonoid, right over the last factor's right comonoid.
    pub result: Bicomodule,
}

impl Cotensor {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn flat_dim(&self) -> usize {
        self.inclusion.rows()
    }

    /// The unique `g` with `ι . g = f` for a map `f` into the flat tensor product.
    pub fn factor(&self, f: &Matrix) -> Result<Matrix> {
        factor_with(&self.inclusion, &self.projection, f)
    }

    /// Extends a map defined on the cotensor to the flat tensor product.
    pub fn extend(&self, m: &Matrix) -> Matrix {
        m.mul(&self.projection)
    }

    /// Restricts a map defined on the flat tensor product to the cotensor.
    pub fn restrict(&self, f: &Matrix) -> Matrix {
        f.mul(&self.inclusion)
    }
}

/// `M □_D N` as the equaliser of `ρ_M (x) N` and `M (x) λ_N`.
pub fn cotensor(m: &Bicomodule, n: &Bicomodule) -> Result<Cotensor> {
    cotensor_chain(&[m, n])
}

/// The left-nested cotensor `((M1 □ M2) □ ...) □ Mn` as a subspace of the flat product.
/// Because the equaliser conditions for each new factor are imposed on the
/// previous subspace, the basis coincides with the iterated binary cotensor basis.
pub fn cotensor_chain(factors: &[&Bicomodule]) -> Result<Cotensor> {
    let first = *factors
        .first()
        .ok_or_else(|| Error::ShapeMismatch("empty cotensor".into()))?;
    let f = first.field();
    for w in factors.windows(2) {
        if w[0].right != w[1].left {
            return Err(Error::ComonoidMismatch(
                "right comonoid of one factor differs from the left comonoid of the next".into(),
            ));
        }
    }
    let mut iota = first.id();
    let mut flat = first.dim;
    for w in factors.windows(2) {
        let (prev, next) = (w[0], w[1]);
        let before = flat / prev.dim;
        let pair = prev
            .rho
            .tensor(&next.id())
            .sub(&prev.id().tensor(&next.lambda));
        let constraint = Matrix::identity(f, before).tensor(&pair);
        let lifted = iota.tensor(&next.id());
        let kernel = constraint.mul(&lifted).kernel_basis();
        iota = lifted.mul(&kernel);
        flat *= next.dim;
    }
    let projection = iota
        .left_inverse()
        .expect("kernel basis has full column rank");
    let last = *factors.last().expect("non-empty");
    let rest = flat / first.dim;
    let head = flat / last.dim;
    let left = first.left.clone();
    let right = last.right.clone();
    let lam_flat = first.lambda.tensor(&Matrix::identity(f, rest)).mul(&iota);
    let lambda = factor_with(
        &left.id().tensor(&iota),
        &left.id().tensor(&projection),
        &lam_flat,
    )?;
    let rho_flat = Matrix::identity(f, head).tensor(&last.rho).mul(&iota);
    let rho = factor_with(
        &iota.tensor(&right.id()),
        &projection.tensor(&right.id()),
        &rho_flat,
    )?;
    let dim = iota.cols();
    Ok(Cotensor {
        factor_dims: factors.iter().map(|b| b.dim).collect(),
        inclusion: iota,
        projection,
        result: Bicomodule {
            left,
            right,
            dim,
            lambda,
            rho,
        },
    })
}

/// The map `f □ g : src -> dst` induced on cotensors, i.e. the unique `h`
/// with `ι_dst h = (f (x) g) ι_src`.
pub fn cotensor_map(f: &Matrix, g: &Matrix, src: &Cotensor, dst: &Cotensor) -> Result<Matrix> {
    if f.cols() * g.cols() != src.flat_dim() || f.rows() * g.rows() != dst.flat_dim() {
        return Err(Error::ShapeMismatch(
            "factor maps do not match the cotensor factors".into(),
        ));
    }
    dst.factor(&f.tensor(g).mul(&src.inclusion))
}

/// `ᶠA`: the left `D`-comodule induced along a comonoid map `f : C -> D`.
pub fn induce_left(f: &Matrix, target: &Arc<Comonoid>, a: &Bicomodule) -> Result<Bicomodule> {
    require_comonoid_map(f, &a.left, target)?;
    Ok(Bicomodule {
        left: target.clone(),
        right: a.right.clone(),
        dim: a.dim,
        lambda: f.tensor(&a.id()).mul(&a.lambda),
        rho: a.rho.clone(),
    })
}

/// `Aᶠ`: the right `D`-comodule induced along a comonoid map `f : C -> D`.
pub fn induce_right(f: &Matrix, target: &Arc<Comonoid>, a: &Bicomodule) -> Result<Bicomodule> {
    require_comonoid_map(f, &a.right, target)?;
    Ok(Bicomodule {
        left: a.left.clone(),
        right: target.clone(),
        dim: a.dim,
        lambda: a.lambda.clone(),
        rho: a.id().tensor(f).mul(&a.rho),
    })
}

/// `λⁿ : M -> C^{(x)n} (x) M`, with `λ^{n+1} = (C (x) λⁿ) λ`.
pub fn iterate_coaction(m: &Bicomodule, n: usize) -> Matrix {
    assert!(n >= 1, "coaction power must be positive");
    let mut acc = m.lambda.clone();
    for _ in 1..n {
        acc = m.left.id().tensor(&acc).mul(&m.lambda);
    }
    acc
}

/// `ρⁿ : M -> M (x) D^{(x)n}`, with `ρ^{n+1} = (ρⁿ (x) D) ρ`.
pub fn iterate_right_coaction(m: &Bicomodule, n: usize) -> Matrix {
    assert!(n >= 1, "coaction power must be positive");
    let mut acc = m.rho.clone();
    for _ in 1..n {
        acc = acc.tensor(&m.right.id()).mul(&m.rho);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn two_points() -> Arc<Comonoid> {
        Arc::new(Comonoid::grouplike(Q, 2))
    }

    #[test]
    fn grouplike_coalgebra_is_a_comonoid() {
        assert!(verify_comonoid(&Comonoid::grouplike(Q, 2)).unwrap().passed());
        assert!(verify_comonoid(&Comonoid::trivial(Q)).unwrap().passed());
    }

    // (e⊗C)Δ(y) = e(y) y = 0 when e = [1 0], so the witness is y (index 1).
    #[test]
    fn broken_counit_is_witnessed_at_y() {
        let mut c = Comonoid::grouplike(Q, 2);
        c.counit = Matrix::ints(Q, &[&[1, 0]]);
        let r = verify_comonoid(&c).unwrap();
        let check = r.check("left counit").unwrap();
        assert!(!check.passed);
        assert_eq!(check.witness.as_ref().unwrap().basis_index, 1);
    }

    #[test]
    fn regular_cotensor_is_a_copy() {
        let c = two_points();
        let reg = c.regular();
        let ct = cotensor(&reg, &reg).unwrap();
        assert_eq!(ct.dim(), 2);
        assert!(verify_bicomodule(&ct.result).unwrap().passed());
        let iso = ct.factor(&c.delta).unwrap();
        assert!(iso.inverse().is_some());
    }

    #[test]
    fn cotensor_of_mismatched_comonoids_fails() {
        let a = two_points().regular();
        let b = Arc::new(Comonoid::trivial(Q)).regular();
        assert!(matches!(cotensor(&a, &b), Err(Error::ComonoidMismatch(_))));
    }

    #[test]
    fn induce_along_counit_gives_unit_coaction() {
        let c = two_points();
        let k = Arc::new(Comonoid::trivial(Q));
        let reg = c.regular();
        let induced = induce_left(&c.counit, &k, &reg).unwrap();
        assert_eq!(induced.lambda, Matrix::identity(Q, 2));
        assert!(verify_bicomodule(&induced).unwrap().passed());
        assert!(matches!(
            induce_left(&Matrix::ints(Q, &[&[1, 1]]).scale(&Q.int(2)), &k, &reg),
            Err(Error::NotComonoidMap(_))
        ));
    }

    #[test]
    fn iterated_coaction_on_grouplikes() {
        let c = two_points();
        let l2 = iterate_coaction(&c.regular(), 2);
        let x = Matrix::basis_vector(Q, 2, 0);
        let xxx = Matrix::tensor_all(Q, &[&x, &x, &x]);
        assert_eq!(l2.mul(&x), xxx);
    }
}
