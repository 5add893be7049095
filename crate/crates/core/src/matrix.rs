//! Dense exact matrices and subspaces.
//!
//! Vectors are columns and a matrix acts on them by left multiplication.
//! Subspaces are stored through a canonical basis (the reduced column-echelon
//! form), so two subspaces are equal exactly when their bases are.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    field: F,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Panics on ragged input; meant for literals in code and tests.
    pub fn from_i64s(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| field.from_i64(x)))
            .collect();
        Matrix::new(field, rows.len(), cols, data).unwrap()
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vector<F>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(field: &F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diagonal(field: &F, blocks: &[Matrix<F>]) -> Self {
        let n = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vector<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let k = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.field.check_same(&other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Matrix::new(&self.field, self.rows, self.cols, data)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let k = self.field.clone();
        self.zip_with(other, |a, b| k.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let k = self.field.clone();
        self.zip_with(other, |a, b| k.sub(a, b))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = &self.field;
        Matrix {
            data: self.data.iter().map(|a| k.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Adds `c` to every diagonal entry of a square matrix.
    pub fn add_to_diagonal(&mut self, c: &F::Elem) {
        let n = self.rows.min(self.cols);
        for i in 0..n {
            let idx = i * self.cols + i;
            self.data[idx] = self.field.add(&self.data[idx], c);
        }
    }

    pub fn pow(&self, mut e: usize) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(&self.field, n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row-echelon form; pivots are chosen as the first nonzero entry
    /// in each column, top to bottom.
    pub fn rref(&self) -> Rref<F> {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = k.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if k.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let t = k.mul(&factor, &m.data[r * m.cols + j]);
                    let idx = i * m.cols + j;
                    m.data[idx] = k.sub(&m.data[idx], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn kernel(&self) -> Subspace<F> {
        let k = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut vectors = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        let mut free = Vec::new();
        for c in 0..self.cols {
            if pivot_iter.peek() == Some(&&c) {
                pivot_iter.next();
            } else {
                free.push(c);
            }
        }
        for &f in &free {
            let mut v = vec![k.zero(); self.cols];
            v[f] = k.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(matrix.get(i, f));
            }
            vectors.push(v);
        }
        Subspace::span(k, self.cols, &vectors).unwrap()
    }

    pub fn invert(&self) -> Result<Self> {
        let n = self.require_square()?;
        let k = &self.field;
        let mut aug = Matrix::zeros(k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = k.one();
        }
        let red = aug.rref();
        if red.pivots.iter().take_while(|&&c| c < n).count() < n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(k, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = red.matrix.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// `S T S^-1`
    pub fn conjugate(s: &Self, t: &Self) -> Result<Self> {
        s.field.check_same(&t.field)?;
        s.require_square()?;
        t.require_square()?;
        if s.rows != t.rows {
            return Err(Error::DimensionMismatch(format!(
                "conjugator {}x{} for a {}x{} matrix",
                s.rows, s.cols, t.rows, t.cols
            )));
        }
        s.mul(t)?.mul(&s.invert()?)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format_elem(x)).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format_elem(x)).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

/// A subspace of `k^n`, held as the columns of its reduced column-echelon
/// basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
        }
    }

    pub fn full(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Canonical subspace spanned by arbitrary (possibly dependent) vectors.
    pub fn span(field: &F, ambient_dim: usize, vectors: &[Vector<F>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in k^{ambient_dim}",
                v.len()
            )));
        }
        let stacked = Matrix::new(
            field,
            vectors.len(),
            ambient_dim,
            vectors.iter().flatten().cloned().collect(),
        )?;
        let red = stacked.rref();
        let mut basis = Matrix::zeros(field, ambient_dim, red.rank);
        for r in 0..red.rank {
            for i in 0..ambient_dim {
                basis.set(i, r, red.matrix.get(r, i).clone());
            }
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis as the columns of an `ambient_dim x dim` matrix.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector<F>> {
        self.basis.columns()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.field().check_same(other.field())?;
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of k^{} and k^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(self.field(), self.ambient_dim, &vs)
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in k^{}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut vs = self.vectors();
        vs.push(v.to_vec());
        Ok(Subspace::span(self.field(), self.ambient_dim, &vs)?.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        Ok(self.sum(other)?.dim() == other.dim())
    }

    /// `M · A`
    pub fn image(m: &Matrix<F>, a: &Self) -> Result<Self> {
        m.field().check_same(a.field())?;
        if m.cols() != a.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a subspace of k^{}",
                m.rows(),
                m.cols(),
                a.ambient_dim
            )));
        }
        let imgs = m.mul(&a.basis)?.columns();
        Subspace::span(m.field(), m.rows(), &imgs)
    }
}
