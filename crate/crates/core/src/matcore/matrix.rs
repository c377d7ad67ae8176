//! Dense square complex matrices in double precision.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};

/// Default relative Frobenius tolerance for float comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `exp(2πi·e/n)`, exact at multiples of a quarter turn.
pub fn root_of_unity(e: i64, n: usize) -> Complex64 {
    assert!(n > 0, "root of unity of order 0");
    let n_i = n as i64;
    let e = e.rem_euclid(n_i);
    if (4 * e) % n_i == 0 {
        return match (4 * e) / n_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / n as f64)
}

/// An `n × n` complex matrix stored row-major.
///
/// JSON form: `{"n": n, "entries": [[[re, im], ...], ...]}`, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;
    fn try_from(raw: MatrixJson) -> Result<Self> {
        let rows = raw
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let m = CMatrix::from_rows(rows)?;
        check_dims(raw.n, m.n)?;
        Ok(m)
    }
}

impl From<CMatrix> for MatrixJson {
    fn from(m: CMatrix) -> Self {
        let entries = m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect();
        MatrixJson { n: m.n, entries }
    }
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() })
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| Complex64::new(1.0, 0.0))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CMatrix { n, data }
    }

    pub fn from_real(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(n, |i, j| Complex64::new(f(i, j), 0.0))
    }

    /// Builds a matrix from rows, rejecting ragged, non-square, empty or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "row {i} has {} entries, expected {n} (matrices are square)",
                    row.len()
                )));
            }
            data.extend(row);
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid(format!("non-finite entry at ({}, {})", pos / n, pos % n)));
        }
        Ok(CMatrix { n, data })
    }

    /// The matrix unit `e_i e_jᵗ`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        Self::from_fn(n, |i, j| if i == j { values[i] } else { Complex64::zero() })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.is_zero())
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.off_diagonal_norm() <= tol * self.frobenius_norm().max(1.0)
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.data.iter().filter(|z| !z.is_zero()).count()
    }

    /// Matrix product; panics on mismatched dimensions (see [`CMatrix::try_mul`]).
    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        self.try_mul(other).expect("matmul: dimension mismatch")
    }

    pub fn try_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        check_dims(self.n, other.n)?;
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Integer matrix power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> CMatrix {
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.matmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.to_nalgebra().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Numerical rank: singular values above `n·ε·σ_max`.
    pub fn rank(&self) -> usize {
        let sv = self.singular_values();
        let Some(&smax) = sv.first() else { return 0 };
        if smax == 0.0 {
            return 0;
        }
        let cutoff = self.n as f64 * f64::EPSILON * smax;
        sv.iter().filter(|&&s| s > cutoff).count()
    }

    /// Inverse, or [`Error::Singular`] when the matrix is numerically rank deficient.
    pub fn inverse(&self) -> Result<CMatrix> {
        let sv = self.singular_values();
        let smax = sv.first().copied().unwrap_or(0.0);
        let smin = sv.last().copied().unwrap_or(0.0);
        let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
        if smax == 0.0 || smin <= self.n as f64 * f64::EPSILON * smax {
            return Err(Error::Singular { ratio });
        }
        let inv = self.to_nalgebra().try_inverse().ok_or(Error::Singular { ratio })?;
        Ok(Self::from_nalgebra(&inv))
    }

    /// Entrywise product `A ⋆ B`; panics on mismatched dimensions.
    pub(crate) fn hadamard_mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        CMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect() }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "add: dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "sub: dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|z| -z).collect() }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|z| format!("{:.4}{:+.4}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Frobenius inner product `⟨A, M⟩ = Tr(A·M†)`.
pub fn frob_inner(a: &CMatrix, m: &CMatrix) -> Result<Complex64> {
    check_dims(a.n, m.n)?;
    // Tr(A M†) = Σ_ij a_ij · conj(m_ij)
    Ok(a.data.iter().zip(&m.data).map(|(x, y)| x * y.conj()).sum())
}

/// Entrywise (Hadamard) product.
pub fn entrywise_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_dims(a.n, b.n)?;
    Ok(a.hadamard_mul(b))
}

/// Raises each entry to the power `p ≥ 1`.
pub fn entrywise_power(a: &CMatrix, p: u32) -> Result<CMatrix> {
    if p == 0 {
        return Err(Error::Invalid("entrywise power must be at least 1".into()));
    }
    Ok(CMatrix { n: a.n, data: a.data.iter().map(|z| z.powu(p)).collect() })
}

/// Kronecker product; the result has dimension `a.n() · b.n()`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (na, nb) = (a.n, b.n);
    let n = na * nb;
    let mut out = CMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let s = a[(i, j)];
            if s.is_zero() {
                continue;
            }
            for p in 0..nb {
                for q in 0..nb {
                    out[(i * nb + p, j * nb + q)] = s * b[(p, q)];
                }
            }
        }
    }
    out
}

/// `‖A − B‖_F ≤ tol · max(1, ‖A‖_F)`. Mismatched dimensions compare unequal.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    if a.n != b.n {
        return false;
    }
    relative_residual(a, b) <= tol
}

/// `‖A − B‖_F / max(1, ‖A‖_F)`.
pub fn relative_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    let diff: f64 = a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    diff / a.frobenius_norm().max(1.0)
}
