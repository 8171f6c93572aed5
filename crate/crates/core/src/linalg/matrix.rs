use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{Complex, LinalgError, MAX_MATRIX_ENTRIES};

/// Dense row-major complex matrix.
///
/// Column vectors are represented as `rows x 1` matrices. Every stored entry
/// is finite and the total number of entries never exceeds
/// [`MAX_MATRIX_ENTRIES`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

fn check_capacity(op: &'static str, rows: usize, cols: usize) -> Result<(), LinalgError> {
    let requested = rows as u128 * cols as u128;
    if requested > MAX_MATRIX_ENTRIES as u128 {
        return Err(LinalgError::Capacity {
            op,
            requested,
            cap: MAX_MATRIX_ENTRIES,
        });
    }
    Ok(())
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyDims);
        }
        check_capacity("new", rows, cols)?;
        if data.len() != rows * cols {
            return Err(LinalgError::Length {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(LinalgError::NonFinite(pos));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self, LinalgError> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| Complex::new(v, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyDims);
        }
        check_capacity("zeros", rows, cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![Complex::new(0.0, 0.0); rows * cols],
        })
    }

    pub fn identity(dim: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(dim, dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[Complex]) -> Result<Self, LinalgError> {
        let dim = entries.len();
        let mut m = Self::zeros(dim, dim)?;
        for (i, &z) in entries.iter().enumerate() {
            if !z.is_finite() {
                return Err(LinalgError::NonFinite(i * dim + i));
            }
            m.data[i * dim + i] = z;
        }
        Ok(m)
    }

    /// A `len x 1` column vector.
    pub fn column(entries: &[Complex]) -> Result<Self, LinalgError> {
        Self::new(entries.len(), 1, entries.to_vec())
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Complex> {
        (i < self.rows && j < self.cols).then(|| self.data[i * self.cols + j])
    }

    /// Exact comparison against the identity of matching dimension.
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(k, z)| {
                let (i, j) = (k / self.cols, k % self.cols);
                *z == if i == j {
                    Complex::new(1.0, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                }
            })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                op: "matmul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        check_capacity("matmul", self.rows, other.cols)?;
        let mut out = vec![Complex::new(0.0, 0.0); self.rows * other.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// Kronecker product; `self` supplies the high-order block index.
    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or(LinalgError::Capacity {
                op: "kron",
                requested: u128::MAX,
                cap: MAX_MATRIX_ENTRIES,
            })?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or(LinalgError::Capacity {
                op: "kron",
                requested: u128::MAX,
                cap: MAX_MATRIX_ENTRIES,
            })?;
        check_capacity("kron", rows, cols)?;
        let mut data = Vec::with_capacity(rows * cols);
        for ia in 0..self.rows {
            for ib in 0..other.rows {
                for &a in self.row(ia) {
                    data.extend(other.row(ib).iter().map(|&b| a * b));
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<Self, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    /// Dense matrix-vector product. Performs exactly `rows * cols` complex
    /// multiply-adds.
    pub fn matvec(&self, v: &[Complex]) -> Result<Vec<Complex>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape {
                op: "matvec",
                lhs: self.shape(),
                rhs: (v.len(), 1),
            });
        }
        Ok(self
            .data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`, with the (row, col) where
    /// it occurs. Ties resolve to the first position in row-major order.
    pub fn max_abs_diff(&self, other: &Self) -> Result<(f64, (usize, usize)), LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape {
                op: "compare",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut best = (0.0_f64, 0usize);
        for (k, (a, b)) in self.data.iter().zip(&other.data).enumerate() {
            let d = (a - b).norm();
            if d > best.0 {
                best = (d, k);
            }
        }
        Ok((best.0, (best.1 / self.cols, best.1 % self.cols)))
    }

    /// True iff the maximum entrywise absolute difference is at most `tol`.
    pub fn approx_equal(&self, other: &Self, tol: f64) -> Result<bool, LinalgError> {
        Ok(self.max_abs_diff(other)?.0 <= tol)
    }

    /// Serializes to `{rows, cols, entries: [[re, im], ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One line per row, entries rendered as `re+imj`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for (j, z) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format_complex(*z));
            }
            out.push('\n');
        }
        out
    }
}

/// Formats a complex number as `re+imj` (or `re-imj`).
pub fn format_complex(z: Complex) -> String {
    let mut s = String::new();
    if z.im.is_sign_negative() {
        let _ = write!(s, "{}-{}j", z.re, -z.im);
    } else {
        let _ = write!(s, "{}+{}j", z.re, z.im);
    }
    s
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Wire form of [`ComplexMatrix`].
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = LinalgError;

    fn try_from(value: MatrixJson) -> Result<Self, Self::Error> {
        ComplexMatrix::new(
            value.rows,
            value.cols,
            value
                .entries
                .into_iter()
                .map(|[re, im]| Complex::new(re, im))
                .collect(),
        )
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}
