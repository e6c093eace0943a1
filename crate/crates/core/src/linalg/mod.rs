//! Exact dense matrices, row reduction, kernels and subspace calculus.

mod closure;
mod echelon;

pub use closure::{operator_closure, spin};
pub use echelon::{EchelonBuilder, SparseRref};

use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldDesc, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("field mismatch: {0} vs {1}")]
    Field(FieldDesc, FieldDesc),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
}

/// A dense row-major matrix of scalars over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldDesc,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldDesc, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldDesc, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldDesc, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Dimension {
                    expected: c,
                    got: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(LinalgError::Field(field, s.field()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldDesc, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular input")
    }

    /// Builds an `n x n` matrix from a flattened row-major vector.
    pub fn from_flat(field: FieldDesc, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major flattening.
    pub fn as_flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::Field(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Dimension {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    fn echelon(&self) -> EchelonBuilder {
        let mut b = EchelonBuilder::new(self.field, self.cols);
        for r in 0..self.rows {
            b.push_dense(self.row(r));
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Reduced row-echelon form (same shape, zero rows at the bottom) and the
    /// pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let rref = self.echelon().rref();
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, row) in rref.rows.iter().enumerate() {
            for (c, s) in row {
                out.set(r, *c, s.clone());
            }
        }
        (out, rref.pivots)
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> SubspaceBasis {
        let vecs = self.echelon().rref().null_space(self.field);
        SubspaceBasis::from_vectors(self.field, self.cols, &vecs).expect("consistent dimensions")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Relation between two subspaces of a common ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inclusion {
    Equal,
    FirstInSecond,
    SecondInFirst,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub relation: Inclusion,
    pub sum_dim: usize,
    pub intersection_dim: usize,
}

/// A subspace of `F^ambient_dim`, stored as its RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: FieldDesc,
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldDesc, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldDesc, ambient_dim: usize) -> Self {
        let id = Matrix::identity(field, ambient_dim);
        let vectors = (0..ambient_dim).map(|r| id.row(r).to_vec()).collect();
        SubspaceBasis {
            field,
            ambient_dim,
            vectors,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(field: FieldDesc, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut b = EchelonBuilder::new(field, ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::Dimension {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            if let Some(s) = v.iter().find(|s| s.field() != field) {
                return Err(LinalgError::Field(field, s.field()));
            }
            b.push_dense(v);
        }
        Ok(SubspaceBasis::from_builder(&b))
    }

    pub fn from_builder(b: &EchelonBuilder) -> Self {
        let rref = b.rref();
        let vectors = rref
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![b.field().zero(); b.cols()];
                for (c, s) in row {
                    v[*c] = s.clone();
                }
                v
            })
            .collect();
        SubspaceBasis {
            field: b.field(),
            ambient_dim: b.cols(),
            vectors,
            pivots: rref.pivots,
        }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn builder(&self) -> EchelonBuilder {
        let mut b = EchelonBuilder::new(self.field, self.ambient_dim);
        for v in &self.vectors {
            b.push_dense(v);
        }
        b
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // RREF basis: v is in the span iff v equals Σ v[pivot_r]·row_r.
        let mut rest = v.to_vec();
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            let coeff = rest[p].clone();
            if coeff.is_zero() {
                continue;
            }
            for (x, r) in rest.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&coeff * r);
                }
            }
        }
        rest.iter().all(Scalar::is_zero)
    }

    /// Coordinates of a member with respect to the RREF basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check_compatible(&self, other: &SubspaceBasis) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::Field(self.field, other.field));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::Dimension {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        self.check_compatible(other)?;
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        SubspaceBasis::from_vectors(self.field, self.ambient_dim, &all)
    }

    /// Basis of the intersection, via the kernel of `[B1 | -B2]`.
    pub fn intersection(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        self.check_compatible(other)?;
        let d1 = self.dim();
        let d2 = other.dim();
        if d1 == 0 || d2 == 0 {
            return Ok(SubspaceBasis::zero(self.field, self.ambient_dim));
        }
        let mut b = EchelonBuilder::new(self.field, d1 + d2);
        for coord in 0..self.ambient_dim {
            let mut row: Vec<(usize, Scalar)> = Vec::new();
            for (k, v) in self.vectors.iter().enumerate() {
                if !v[coord].is_zero() {
                    row.push((k, v[coord].clone()));
                }
            }
            for (k, v) in other.vectors.iter().enumerate() {
                if !v[coord].is_zero() {
                    row.push((d1 + k, -&v[coord]));
                }
            }
            b.push(&row);
        }
        let kernel = b.rref().null_space(self.field);
        let vecs: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|coeffs| {
                let mut v = vec![self.field.zero(); self.ambient_dim];
                for (c, basis_vec) in coeffs[..d1].iter().zip(&self.vectors) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(basis_vec) {
                        if !y.is_zero() {
                            *x = &*x + &(c * y);
                        }
                    }
                }
                v
            })
            .collect();
        SubspaceBasis::from_vectors(self.field, self.ambient_dim, &vecs)
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim && self.vectors.iter().all(|v| other.contains(v))
    }
}

/// Relation between two subspaces, with the dimensions of their sum and
/// intersection.
pub fn subspace_compare(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<Comparison, LinalgError> {
    let sum_dim = a.sum(b)?.dim();
    let intersection_dim = a.dim() + b.dim() - sum_dim;
    let a_in_b = sum_dim == b.dim();
    let b_in_a = sum_dim == a.dim();
    let relation = match (a_in_b, b_in_a) {
        (true, true) => Inclusion::Equal,
        (true, false) => Inclusion::FirstInSecond,
        (false, true) => Inclusion::SecondInFirst,
        (false, false) => Inclusion::Incomparable,
    };
    Ok(Comparison {
        relation,
        sum_dim,
        intersection_dim,
    })
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SubspaceBasis dim {} in {}^{}",
            self.dim(),
            self.field,
            self.ambient_dim
        )?;
        for v in &self.vectors {
            let cells: Vec<String> = v.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
