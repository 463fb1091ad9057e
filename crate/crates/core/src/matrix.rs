//! Exact matrices and the linear-algebra kernel.
//!
//! A linear map `V -> W` with `dim V = n`, `dim W = m` is an `m x n` matrix
//! acting on column vectors. Tensor products are Kronecker products with the
//! row-major convention `e_i (x) e_j <-> i * n2 + j`, so `(U (x) V) (x) W` and
//! `U (x) (V (x) W)` share one flat basis and associators are identities.
//!
//! Storage is sparse by row: nearly every structure map in this crate is a
//! 0/1 pattern on a large tensor power, and products skip zeros.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    /// Per row: `(column, value)` pairs, strictly increasing columns, no zeros.
    data: Vec<Vec<(usize, Scalar)>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i].push((i, field.one()));
        }
        m
    }

    /// Builds a matrix from dense rows; `cols` fixes the width even when there are no rows.
    pub fn from_rows(field: Field, rows: usize, cols: usize, dense: Vec<Vec<Scalar>>) -> Result<Matrix> {
        if dense.len() != rows || dense.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "expected {rows}x{cols} entries"
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (i, row) in dense.into_iter().enumerate() {
            for (j, s) in row.into_iter().enumerate() {
                if s.field() != field {
                    return Err(Error::ShapeMismatch("entry from a different field".into()));
                }
                if !s.is_zero() {
                    m.data[i].push((j, s));
                }
            }
        }
        Ok(m)
    }

    /// Integer literal matrix; every row must have the same length.
    pub fn ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.int(x)).collect()
            })
            .collect();
        Matrix::from_rows(field, rows.len(), cols, dense).expect("well-formed literal")
    }

    /// A column vector.
    pub fn column_vector(field: Field, entries: &[Scalar]) -> Matrix {
        Matrix::from_rows(field, entries.len(), 1, entries.iter().map(|s| vec![s.clone()]).collect())
            .expect("column vector")
    }

    pub fn int_column(field: Field, entries: &[i64]) -> Matrix {
        let v: Vec<Scalar> = entries.iter().map(|&x| field.int(x)).collect();
        Matrix::column_vector(field, &v)
    }

    /// The standard basis vector `e_i` of a space of dimension `n`.
    pub fn basis_vector(field: Field, n: usize, i: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, 1);
        m.data[i].push((0, field.one()));
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => {
                if value.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = value;
                }
            }
            Err(pos) => {
                if !value.is_zero() {
                    row.insert(pos, (j, value));
                }
            }
        }
    }

    pub fn row_entries(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data
            .iter()
            .map(|row| {
                let mut dense = vec![self.field.zero(); self.cols];
                for (j, s) in row {
                    dense[*j] = s.clone();
                }
                dense
            })
            .collect()
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn column_matrix(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    pub fn select_columns(&self, columns: &[usize]) -> Matrix {
        let mut position = BTreeMap::new();
        for (new, &old) in columns.iter().enumerate() {
            position.entry(old).or_insert_with(Vec::new).push(new);
        }
        let mut m = Matrix::zeros(self.field, self.rows, columns.len());
        for (i, row) in self.data.iter().enumerate() {
            let mut out: Vec<(usize, Scalar)> = Vec::new();
            for (j, s) in row {
                if let Some(targets) = position.get(j) {
                    for &t in targets {
                        out.push((t, s.clone()));
                    }
                }
            }
            out.sort_by_key(|(c, _)| *c);
            m.data[i] = out;
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, s) in row {
                m.data[*j].push((i, s.clone()));
            }
        }
        m
    }

    /// Matrix product `self . other`, i.e. apply `other` first.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot compose {}x{} after {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        assert_eq!(self.field, other.field, "field mismatch");
        let mut m = Matrix::zeros(self.field, self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let term = a.mul(b);
                    acc.entry(*j)
                        .and_modify(|v| *v = v.add(&term))
                        .or_insert(term);
                }
            }
            m.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        m
    }

    fn merge(&self, other: &Matrix, negate_other: bool) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            let mut acc: BTreeMap<usize, Scalar> = self.data[i].iter().cloned().collect();
            for (j, s) in &other.data[i] {
                let s = if negate_other { s.neg() } else { s.clone() };
                acc.entry(*j).and_modify(|v| *v = v.add(&s)).or_insert(s);
            }
            m.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.merge(other, true)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        if c.is_zero() {
            return m;
        }
        for (i, row) in self.data.iter().enumerate() {
            m.data[i] = row.iter().map(|(j, s)| (*j, s.mul(c))).collect();
        }
        m
    }

    /// Kronecker product `self (x) other` in the row-major basis convention.
    pub fn tensor(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Matrix::zeros(self.field, rows, cols);
        for (i1, row1) in self.data.iter().enumerate() {
            for (i2, row2) in other.data.iter().enumerate() {
                let out = &mut m.data[i1 * other.rows + i2];
                for (j1, a) in row1 {
                    for (j2, b) in row2 {
                        out.push((j1 * other.cols + j2, a.mul(b)));
                    }
                }
            }
        }
        m
    }

    /// Kronecker product of a list of factors, left to right.
    pub fn tensor_all(field: Field, factors: &[&Matrix]) -> Matrix {
        factors
            .iter()
            .fold(Matrix::identity(field, 1), |acc, f| acc.tensor(f))
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                m.data[i].extend(b.data[i].iter().map(|(j, s)| (j + offset, s.clone())));
            }
            offset += b.cols;
        }
        m
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        Matrix {
            field,
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Reduced row echelon form (dense) and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut a: Vec<Vec<Scalar>> = self
            .to_dense()
            .into_iter()
            .filter(|r| r.iter().any(|s| !s.is_zero()))
            .collect();
        let m = a.len();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow >= m {
                break;
            }
            let Some(found) = (prow..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(found, prow);
            let inv = a[prow][col].inv().expect("nonzero pivot");
            for j in col..self.cols {
                if !a[prow][j].is_zero() {
                    a[prow][j] = a[prow][j].mul(&inv);
                }
            }
            let pivot_row = a[prow].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == prow || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for j in col..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        a.truncate(prow);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one column per free variable of the reduced
    /// row echelon form, in increasing free-column order. Each basis vector has
    /// a 1 in its own free coordinate and 0 in the other free coordinates.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (b, &fc) in free.iter().enumerate() {
            k.data[fc].push((b, self.field.one()));
            for (row, &pc) in pivots.iter().enumerate() {
                let v = &r[row][fc];
                if !v.is_zero() {
                    k.data[pc].push((b, v.neg()));
                }
            }
        }
        for row in &mut k.data {
            row.sort_by_key(|(c, _)| *c);
        }
        k
    }

    /// A surjection `P` with `P . self = 0` whose kernel is the image of `self`;
    /// its rows are the kernel basis of the transpose.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let dense = r.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Matrix::from_rows(self.field, n, n, dense).expect("square"))
    }

    /// A matrix `L` with `L . self = I`, when `self` has full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let k = self.cols;
        if k == 0 {
            return Some(Matrix::zeros(self.field, 0, self.rows));
        }
        let (_, pivots) = self.transpose().rref();
        if pivots.len() < k {
            return None;
        }
        let square = self.select_rows(&pivots);
        let inv = square.inverse()?;
        let mut select = Matrix::zeros(self.field, k, self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            select.data[i].push((p, self.field.one()));
        }
        Some(inv.mul(&select))
    }

    /// A matrix `R` with `self . R = I`, when `self` has full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.transpose().left_inverse().map(|l| l.transpose())
    }

    /// The unique `g` with `self . g = f`, for `self` of full column rank.
    pub fn factor_left(&self, f: &Matrix) -> Result<Matrix> {
        if self.rows != f.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot factor a map into a space of dimension {} through one of dimension {}",
                f.rows, self.rows
            )));
        }
        let left = self
            .left_inverse()
            .ok_or_else(|| Error::ShapeMismatch("inclusion is not injective".into()))?;
        factor_with(self, &left, f)
    }

    /// First column on which two same-shaped matrices differ.
    pub fn first_differing_column(&self, other: &Matrix) -> Option<usize> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in comparison");
        let diff = self.sub(other);
        let mut best: Option<usize> = None;
        for row in &diff.data {
            if let Some((j, _)) = row.first() {
                best = Some(best.map_or(*j, |b| b.min(*j)));
            }
        }
        best
    }

    /// The symmetry `U (x) V -> V (x) U` for `dim U = m`, `dim V = n`.
    pub fn swap(field: Field, m: usize, n: usize) -> Matrix {
        let mut s = Matrix::zeros(field, m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                s.data[j * m + i].push((i * n + j, field.one()));
            }
        }
        s
    }

    /// Reorders tensor factors of dimensions `dims`: output factor `k` is input factor `perm[k]`.
    pub fn permute_factors(field: Field, dims: &[usize], perm: &[usize]) -> Matrix {
        assert_eq!(dims.len(), perm.len());
        let total: usize = dims.iter().product();
        let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let mut s = Matrix::zeros(field, total, total);
        let mut idx = vec![0usize; dims.len()];
        for col in 0..total {
            let mut rest = col;
            for k in (0..dims.len()).rev() {
                idx[k] = rest % dims[k];
                rest /= dims[k];
            }
            let row = perm.iter().zip(&out_dims).fold(0, |acc, (&p, &d)| acc * d + idx[p]);
            s.data[row].push((col, field.one()));
        }
        s
    }

    /// Row-major flattening into a column vector.
    pub fn vectorize(&self) -> Matrix {
        let mut v = Matrix::zeros(self.field, self.rows * self.cols, 1);
        for (i, row) in self.data.iter().enumerate() {
            for (j, s) in row {
                v.data[i * self.cols + j].push((0, s.clone()));
            }
        }
        v
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn unvectorize(v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.shape(), (rows * cols, 1));
        let mut m = Matrix::zeros(v.field, rows, cols);
        for (idx, row) in v.data.iter().enumerate() {
            if let Some((_, s)) = row.first() {
                m.data[idx / cols].push((idx % cols, s.clone()));
            }
        }
        m
    }
}

/// `g = left . f`, certified by `inclusion . g == f`.
pub fn factor_with(inclusion: &Matrix, left: &Matrix, f: &Matrix) -> Result<Matrix> {
    let g = left.mul(f);
    if &inclusion.mul(&g) == f {
        Ok(g)
    } else {
        Err(Error::NoFactorization(
            "column space is not contained in the image of the inclusion".into(),
        ))
    }
}

/// Basis of the space of `rows x cols` matrices `X` with `op(X) = 0`, for a
/// linear `op`. Basis elements are returned in kernel-basis order.
pub fn solution_space<F>(field: Field, rows: usize, cols: usize, op: F) -> Vec<Matrix>
where
    F: Fn(&Matrix) -> Matrix,
{
    let n = rows * cols;
    let mut columns = Vec::with_capacity(n);
    for idx in 0..n {
        let mut e = Matrix::zeros(field, rows, cols);
        e.set(idx / cols, idx % cols, field.one());
        columns.push(op(&e).vectorize());
    }
    let height = columns.first().map_or(0, |c| c.rows());
    let refs: Vec<&Matrix> = columns.iter().collect();
    let system = Matrix::hstack(field, height, &refs);
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|j| Matrix::unvectorize(&kernel.column_matrix(j), rows, cols))
        .collect()
}

/// Every combination `Σ cᵢ Bᵢ` with coefficients drawn from `values`, in
/// lexicographic order of the coefficient tuples. An empty basis yields the zero matrix.
pub fn grid_span(field: Field, rows: usize, cols: usize, basis: &[Matrix], values: &[i64]) -> Vec<Matrix> {
    let mut out = vec![Matrix::zeros(field, rows, cols)];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * values.len());
        for acc in &out {
            for &v in values {
                next.push(acc.add(&b.scale(&field.int(v))));
            }
        }
        out = next;
    }
    out
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            write!(f, "\n  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn kernel_of_single_relation() {
        let f = Matrix::ints(Q, &[&[1, 1]]);
        assert_eq!(f.kernel_basis(), Matrix::ints(Q, &[&[-1], &[1]]));
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let k = Matrix::identity(Q, 2).kernel_basis();
        assert_eq!(k.shape(), (2, 0));
    }

    // Reduced echelon form of [[1,2,3],[2,4,6]] is [1,2,3] with pivot column 0,
    // so the free columns 1 and 2 give (-2,1,0) and (-3,0,1).
    #[test]
    fn kernel_matches_hand_reduced_echelon_form() {
        let f = Matrix::ints(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = f.kernel_basis();
        assert_eq!(k, Matrix::ints(Q, &[&[-2, -3], &[1, 0], &[0, 1]]));
        assert!(f.mul(&k).is_zero());
    }

    #[test]
    fn cokernel_of_antidiagonal() {
        let f = Matrix::ints(Q, &[&[1], &[-1]]);
        assert_eq!(f.cokernel_projection(), Matrix::ints(Q, &[&[1, 1]]));
        assert_eq!(Matrix::identity(Q, 3).cokernel_projection().shape(), (0, 3));
    }

    #[test]
    fn factor_left_cases() {
        let id = Matrix::identity(Q, 2);
        let f = Matrix::ints(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(id.factor_left(&f).unwrap(), f);
        let iota = Matrix::ints(Q, &[&[1], &[-1]]);
        assert_eq!(
            iota.factor_left(&Matrix::ints(Q, &[&[2], &[-2]])).unwrap(),
            Matrix::ints(Q, &[&[2]])
        );
        assert!(matches!(
            iota.factor_left(&Matrix::ints(Q, &[&[1], &[1]])),
            Err(Error::NoFactorization(_))
        ));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            Matrix::ints(Q, &[&[2]]).tensor(&Matrix::ints(Q, &[&[3]])),
            Matrix::ints(Q, &[&[6]])
        );
        assert_eq!(
            Matrix::identity(Q, 2).tensor(&Matrix::identity(Q, 3)),
            Matrix::identity(Q, 6)
        );
        let swap = Matrix::ints(Q, &[&[0, 1], &[1, 0]]);
        let ones = Matrix::ints(Q, &[&[1, 1]]);
        assert_eq!(
            swap.tensor(&ones),
            Matrix::ints(Q, &[&[0, 0, 1, 1], &[1, 1, 0, 0]])
        );
    }

    #[test]
    fn inverses() {
        let a = Matrix::ints(Q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(Q, 2));
        assert!(Matrix::ints(Q, &[&[1, 1], &[1, 1]]).inverse().is_none());
        let tall = Matrix::ints(Q, &[&[1, 0], &[1, 1], &[0, 2]]);
        assert_eq!(tall.left_inverse().unwrap().mul(&tall), Matrix::identity(Q, 2));
    }

    #[test]
    fn solution_space_of_commutant() {
        // Matrices commuting with diag(1, 2) are the diagonal ones.
        let d = Matrix::ints(Q, &[&[1, 0], &[0, 2]]);
        let basis = solution_space(Q, 2, 2, |x| d.mul(x).sub(&x.mul(&d)));
        assert_eq!(basis.len(), 2);
        for b in basis {
            assert!(b.get(0, 1).is_zero() && b.get(1, 0).is_zero());
        }
    }

    #[test]
    fn prime_field_kernel() {
        let f7 = Field::Prime(7);
        let f = Matrix::ints(f7, &[&[1, 3]]);
        let k = f.kernel_basis();
        assert!(f.mul(&k).is_zero());
        assert_eq!(k.get(0, 0), f7.int(4));
    }
}
