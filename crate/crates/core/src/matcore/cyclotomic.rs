//! Exact scalars `Σ_d c_d ω_m^d` with rational coefficients.
//!
//! Arithmetic happens in `Q[x]/(x^m − 1)`: exponents are reduced mod `m`
//! but the cyclotomic polynomial is never divided out. Two values that
//! evaluate to the same complex number may therefore have different
//! coefficient vectors (`1 + ω₃ + ω₃²` is not the zero vector). This is the
//! ring the circulant encoding in [`crate::grouprep`] represents faithfully.

use std::fmt;

use num::complex::Complex64;
use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive, Zero};

use crate::error::{check_dims, Error, Result};
use crate::matcore::matrix::{root_of_unity, CMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn new(m: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("root order must be positive".into()));
        }
        if coeffs.len() != m {
            return Err(Error::Invalid(format!("expected {m} coefficients, got {}", coeffs.len())));
        }
        Ok(Cyclotomic { m, coeffs })
    }

    pub fn from_ints(m: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(m, coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero(m: usize) -> Self {
        Cyclotomic { m, coeffs: vec![BigRational::zero(); m] }
    }

    pub fn one(m: usize) -> Self {
        Self::root(m, 0)
    }

    /// `ω_m^d`.
    pub fn root(m: usize, d: usize) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[d % m] = BigRational::one();
        c
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &Cyclotomic) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::ModulusMismatch { left: self.m, right: other.m })
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic { m: self.m, coeffs })
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Exact product with exponents reduced mod `m`.
    pub fn mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.same_order(other)?;
        let m = self.m;
        let mut out = Self::zero(m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % m] += a * b;
            }
        }
        Ok(out)
    }

    /// Floating-point value of `Σ_d c_d exp(2πi·d/m)`.
    pub fn eval(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| root_of_unity(d as i64, self.m) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

/// Exact product of two cyclotomic scalars of the same root order.
pub fn cyc_mul(a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
    a.mul(b)
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => format!("{c}"),
                1 => format!("({c})ω"),
                _ => format!("({c})ω^{d}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Square matrix with [`Cyclotomic`] entries sharing one root order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    n: usize,
    m: usize,
    entries: Vec<Cyclotomic>,
}

impl CycloMatrix {
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let m = rows[0].first().map(Cyclotomic::order).unwrap_or(1);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Invalid("cyclotomic matrix must be square".into()));
            }
            for e in row {
                if e.m != m {
                    return Err(Error::ModulusMismatch { left: m, right: e.m });
                }
                entries.push(e);
            }
        }
        Ok(CycloMatrix { n, m, entries })
    }

    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        let out = Self::from_rows(rows)?;
        if out.m != m {
            return Err(Error::ModulusMismatch { left: m, right: out.m });
        }
        Ok(out)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &CycloMatrix) -> Result<CycloMatrix> {
        check_dims(self.n, other.n)?;
        if self.m != other.m {
            return Err(Error::ModulusMismatch { left: self.m, right: other.m });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyclotomic::zero(self.m);
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(CycloMatrix { n, m: self.m, entries })
    }

    pub fn eval(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self.get(i, j).eval())
    }
}
