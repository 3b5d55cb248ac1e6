//! Dense matrices over cyclotomic fields.
//!
//! All entries of a [`Matrix`] share one root-of-unity order (operands are
//! lifted on construction), so equality, adjoints and products are exact.
//! These matrices carry every concrete model in the crate: regular
//! representations, Pauli witnesses, block-diagonal direct sums and the
//! Kronecker products used for coproduct checks.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::{ArithError, CyclotomicScalar};
use crate::rational::Rational;

#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<CyclotomicScalar>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, lifting all scalars to a
    /// common order.
    pub fn new(rows: usize, cols: usize, entries: Vec<CyclotomicScalar>) -> Result<Self, ArithError> {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let mut m = Matrix { rows, cols, entries };
        m.normalize()?;
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<CyclotomicScalar>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    fn normalize(&mut self) -> Result<(), ArithError> {
        let mut order = 1u64;
        for e in &self.entries {
            order = num_integer::lcm(order, e.order() as u64);
        }
        if order > crate::cyclotomic::MAX_ORDER as u64 {
            return Err(ArithError::UnsupportedOrder(order as u32));
        }
        for e in &mut self.entries {
            *e = e.lift(order as u32)?;
        }
        Ok(())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![CyclotomicScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = CyclotomicScalar::one();
        }
        m
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

    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: CyclotomicScalar) {
        self.entries[i * self.cols + j] = v;
        self.normalize().expect("entry order exceeds supported maximum");
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CyclotomicScalar::is_zero)
    }

    fn check_shape(&self, rhs: &Self, op: &'static str, same: bool) -> Result<(), ArithError> {
        let ok = if same {
            self.rows == rhs.rows && self.cols == rhs.cols
        } else {
            self.cols == rhs.rows
        };
        if ok {
            Ok(())
        } else {
            Err(ArithError::ShapeMismatch {
                op,
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_shape(rhs, "add", true)?;
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_shape(rhs, "sub", true)?;
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check_shape(rhs, "mul", false)?;
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = CyclotomicScalar::zero();
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + (a * b);
                }
                entries.push(acc);
            }
        }
        Matrix::new(self.rows, rhs.cols, entries)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).conjugate());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scale(&self, s: &CyclotomicScalar) -> Result<Self, ArithError> {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e * s).collect(),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(r)).collect(),
        }
    }

    pub fn kronecker(&self, rhs: &Self) -> Result<Self, ArithError> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for i1 in 0..self.rows {
            for i2 in 0..rhs.rows {
                for j1 in 0..self.cols {
                    let a = self.entry(i1, j1);
                    for j2 in 0..rhs.cols {
                        if a.is_zero() {
                            entries.push(CyclotomicScalar::zero());
                        } else {
                            entries.push(a * rhs.entry(i2, j2));
                        }
                    }
                }
            }
        }
        Matrix::new(rows, cols, entries)
    }

    /// Block-diagonal direct sum `self (+) rhs`.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let rows = self.rows + rhs.rows;
        let cols = self.cols + rhs.cols;
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * cols + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                m.entries[(self.rows + i) * cols + (self.cols + j)] = rhs.entry(i, j).clone();
            }
        }
        m.normalize().expect("orders already validated");
        m
    }

    pub fn pow(&self, exp: u32) -> Result<Self, ArithError> {
        assert!(self.is_square(), "pow requires a square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Sum of squared absolute values of all entries, as an exact scalar.
    /// Reported as the residual magnitude when a relation fails.
    pub fn residual_norm_sq(&self) -> CyclotomicScalar {
        let mut acc = CyclotomicScalar::zero();
        for e in &self.entries {
            if !e.is_zero() {
                acc = acc + e.abs_sq();
            }
        }
        acc
    }

    /// Exact structural flags; no tolerances are involved.
    pub fn classify(&self) -> MatrixFlags {
        let square = self.is_square();
        let adj = self.adjoint();
        let self_adjoint = square && *self == adj;
        let unitary = square && {
            let id = Matrix::identity(self.rows);
            self.mul(&adj).map(|p| p == id).unwrap_or(false)
                && adj.mul(self).map(|p| p == id).unwrap_or(false)
        };
        let projection = square
            && self_adjoint
            && self.mul(self).map(|sq| sq == *self).unwrap_or(false);
        let partial_isometry = self
            .mul(&adj)
            .and_then(|p| p.mul(self))
            .map(|p| p == *self)
            .unwrap_or(false);
        MatrixFlags {
            is_unitary: unitary,
            is_projection: projection,
            is_partial_isometry: partial_isometry,
            is_self_adjoint: self_adjoint,
        }
    }

    /// Assembles a grid of equally-sized blocks into one matrix.
    pub fn from_blocks(blocks: &[Vec<Matrix>]) -> Result<Self, ArithError> {
        let block_rows = blocks.len();
        let block_cols = blocks[0].len();
        let d_r = blocks[0][0].rows;
        let d_c = blocks[0][0].cols;
        for row in blocks {
            for b in row {
                if b.rows != d_r || b.cols != d_c {
                    return Err(ArithError::ShapeMismatch {
                        op: "from_blocks",
                        lhs: (d_r, d_c),
                        rhs: (b.rows, b.cols),
                    });
                }
            }
        }
        let mut m = Matrix::zeros(block_rows * d_r, block_cols * d_c);
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                for i in 0..d_r {
                    for j in 0..d_c {
                        m.entries[(bi * d_r + i) * m.cols + (bj * d_c + j)] =
                            b.entry(i, j).clone();
                    }
                }
            }
        }
        m.normalize()?;
        Ok(m)
    }

    /// Renders all entries in scalar literal syntax, row by row.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }
}

/// Structural flags from [`Matrix::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixFlags {
    pub is_unitary: bool,
    pub is_projection: bool,
    pub is_partial_isometry: bool,
    pub is_self_adjoint: bool,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }
}

impl Eq for Matrix {}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix::add(self, rhs).expect("matrix addition shape mismatch")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix::sub(self, rhs).expect("matrix subtraction shape mismatch")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs).expect("matrix product shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of a magic-unitary test on a square grid of matrices.
///
/// A grid passes when every entry is an orthogonal projection and each row
/// and column of the grid sums to the identity.
#[derive(Debug, Clone)]
pub struct MagicReport {
    pub pass: bool,
    /// First failing cell or row/column, when the grid is not magic.
    pub first_failure: Option<String>,
}

pub fn is_magic_unitary(grid: &[Vec<Matrix>]) -> Result<MagicReport, ArithError> {
    let k = grid.len();
    assert!(k > 0 && grid.iter().all(|row| row.len() == k), "grid must be square");
    let dim = grid[0][0].rows();
    for (i, row) in grid.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(ArithError::ShapeMismatch {
                    op: "is_magic_unitary",
                    lhs: (dim, dim),
                    rhs: (m.rows(), m.cols()),
                });
            }
            if !m.classify().is_projection {
                return Ok(MagicReport {
                    pass: false,
                    first_failure: Some(format!("entry ({i},{j}) is not an orthogonal projection")),
                });
            }
        }
    }
    let id = Matrix::identity(dim);
    for (i, row) in grid.iter().enumerate() {
        let mut sum = Matrix::zeros(dim, dim);
        for m in row {
            sum = sum.add(m)?;
        }
        if sum != id {
            return Ok(MagicReport {
                pass: false,
                first_failure: Some(format!("row {i} does not sum to the identity")),
            });
        }
    }
    for j in 0..k {
        let mut sum = Matrix::zeros(dim, dim);
        for row in grid {
            sum = sum.add(&row[j])?;
        }
        if sum != id {
            return Ok(MagicReport {
                pass: false,
                first_failure: Some(format!("column {j} does not sum to the identity")),
            });
        }
    }
    Ok(MagicReport { pass: true, first_failure: None })
}

/// The Pauli matrices over `Q(zeta_4)` (and rationals for sigma_1/sigma_3).
pub fn pauli(k: usize) -> Matrix {
    use crate::cyclotomic::imaginary_unit;
    let z = CyclotomicScalar::zero;
    let one = CyclotomicScalar::one;
    let i = imaginary_unit;
    let rows = match k {
        1 => vec![vec![z(), one()], vec![one(), z()]],
        2 => vec![vec![z(), -i()], vec![i(), z()]],
        3 => vec![vec![one(), z()], vec![z(), -one()]],
        _ => panic!("pauli index must be 1, 2 or 3"),
    };
    Matrix::from_rows(rows).expect("pauli matrices are well formed")
}
