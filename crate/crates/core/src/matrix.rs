//! Dense row-major complex matrices tagged with their scalar field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_complex::Complex64;

use crate::eigen;
use crate::error::{Error, Result};

/// Scalar field a matrix is considered over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    fn join(self, other: Field) -> Field {
        if self == Field::Real && other == Field::Real {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

/// Dense `rows x cols` matrix of complex entries.
///
/// Every entry is finite, and a [`Field::Real`] matrix has exactly zero
/// imaginary parts.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
    field: Field,
}

impl CMatrix {
    /// Builds a matrix from row-major entries, validating every invariant.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>, field: Field) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        for (idx, z) in data.iter().enumerate() {
            let (row, col) = (idx / cols, idx % cols);
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
            if field == Field::Real && z.im != 0.0 {
                return Err(Error::ImaginaryInReal { row, col });
            }
        }
        Ok(Self {
            rows,
            cols,
            data,
            field,
        })
    }

    /// Complex matrix from nested rows.
    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data, Field::Complex)
    }

    /// Real matrix from nested rows of reals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(rows.len(), cols, data, Field::Real)
    }

    /// Complex matrix with entry `(i, j)` given by `f(i, j)`.
    ///
    /// Panics if the dimensions are zero or an entry is not finite.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data, Field::Complex).expect("from_fn: invalid matrix")
    }

    /// Real matrix with entry `(i, j)` given by `f(i, j)`.
    ///
    /// Panics if the dimensions are zero or an entry is not finite.
    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(Complex64::new(f(i, j), 0.0));
            }
        }
        Self::new(rows, cols, data, Field::Real).expect("from_real_fn: invalid matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_real_fn(rows, cols, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_real_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Diagonal matrix; tagged real when every entry is real.
    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex64::new(0.0, 0.0) });
        if entries.iter().all(|z| z.im == 0.0) {
            m.field = Field::Real;
        }
        m
    }

    pub fn real_diag(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_real_fn(n, n, |i, j| if i == j { entries[i] } else { 0.0 })
    }

    /// Rank-one operator `x ⊗ y : z ↦ ⟨z, y⟩ x`, i.e. the matrix `x y*`.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> Self {
        let mut m = Self::from_fn(x.len(), y.len(), |i, j| x[i] * y[j].conj());
        if x.iter().chain(y).all(|z| z.im == 0.0) {
            m.field = Field::Real;
        }
        m
    }

    /// Column matrix holding `x`.
    pub fn column(x: &[Complex64]) -> Self {
        Self::from_fn(x.len(), 1, |i, _| x[i])
    }

    /// Matrix whose columns are the given vectors (all the same length).
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidArgument("columns have different lengths"));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, z) in c.iter().enumerate() {
                data[i * cols + j] = *z;
            }
        }
        Self::new(rows, cols, data, Field::Complex)
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<Complex64>, field: Field) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            rows,
            cols,
            data,
            field,
        }
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_real(&self) -> bool {
        self.field == Field::Real
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Same entries, retagged as a complex matrix.
    pub fn to_complex(&self) -> Self {
        let mut m = self.clone();
        m.field = Field::Complex;
        m
    }

    /// Retags as real if every imaginary part is exactly zero.
    pub fn try_into_real(&self) -> Result<Self> {
        Self::new(self.rows, self.cols, self.data.clone(), Field::Real)
    }

    /// Real iff the matrix is real-tagged or all imaginary parts vanish.
    pub fn has_real_entries(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn column_vec(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        Self::from_parts(self.cols, self.rows, data, self.field)
    }

    pub fn add(&self, other: &CMatrix) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self::from_parts(self.rows, self.cols, data, self.field.join(other.field)))
    }

    pub fn sub(&self, other: &CMatrix) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self::from_parts(self.rows, self.cols, data, self.field.join(other.field)))
    }

    /// `self + lambda * other`.
    pub fn add_scaled(&self, lambda: Complex64, other: &CMatrix) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + lambda * b)
            .collect();
        let field = if lambda.im == 0.0 {
            self.field.join(other.field)
        } else {
            Field::Complex
        };
        Ok(Self::from_parts(self.rows, self.cols, data, field))
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let data = self.data.iter().map(|z| alpha * z).collect();
        let field = if alpha.im == 0.0 { self.field } else { Field::Complex };
        Self::from_parts(self.rows, self.cols, data, field)
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![Complex64::new(0.0, 0.0); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                for (out, b) in data[i * m..(i + 1) * m].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        Ok(Self::from_parts(n, m, data, self.field.join(other.field)))
    }

    /// `M x`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "apply: vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `⟨M x, x⟩ = x* M x`.
    pub fn quad_form(&self, x: &[Complex64]) -> Complex64 {
        inner(&self.apply(x), x)
    }

    /// `V* M V`: compression of `M` onto the span of `V`'s columns.
    pub fn compress(&self, basis: &CMatrix) -> Result<Self> {
        basis.adjoint().matmul(&self.matmul(basis)?)
    }

    /// `(M + M*) / 2`, with the diagonal forced real.
    pub fn hermitian_part(&self) -> Result<Self> {
        self.require_square()?;
        Ok(self.symmetrize())
    }

    pub(crate) fn symmetrize(&self) -> Self {
        let n = self.rows;
        let mut m = self.clone();
        for i in 0..n {
            let d = self.get(i, i);
            m.set(i, i, Complex64::new(d.re, 0.0));
            for j in (i + 1)..n {
                let z = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    /// Largest `|M(i,j) - conj(M(j,i))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.rows.min(self.cols);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} ({:?}) [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `⟨x, y⟩ = Σ x_i conj(y_i)`, linear in the first argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Returns `x / ‖x‖`, or `None` for a zero vector.
pub fn normalized(x: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = vec_norm(x);
    if n == 0.0 || !n.is_finite() {
        None
    } else {
        Some(x.iter().map(|z| z / n).collect())
    }
}

/// Operator (spectral) norm `σ_max(M) = √λ_max(M* M)`.
pub fn op_norm(m: &CMatrix) -> Result<f64> {
    let gram = m.adjoint().matmul(m)?.symmetrize();
    let values = eigen::eigenvalues(&gram)?;
    Ok(values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Smallest singular value of a possibly rectangular matrix, i.e.
/// `inf{‖Mx‖ : ‖x‖ = 1}`. Zero when `M` has more columns than rows.
pub fn min_singular_value(m: &CMatrix) -> Result<f64> {
    if m.cols() > m.rows() {
        return Ok(0.0);
    }
    let gram = m.adjoint().matmul(m)?.symmetrize();
    let values = eigen::eigenvalues(&gram)?;
    Ok(values.first().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Minimum modulus `m(M) = inf{‖Mx‖ : ‖x‖ = 1}` of a square matrix.
pub fn min_modulus(m: &CMatrix) -> Result<f64> {
    m.require_square()?;
    min_singular_value(m)
}
