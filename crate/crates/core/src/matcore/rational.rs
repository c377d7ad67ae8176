use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{check_dims, Error, Result};

/// Square matrix over the rationals, used by the complex-free encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    size: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(size: usize) -> Self {
        RationalMatrix { size, entries: vec![BigRational::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut out = Self::zeros(size);
        for i in 0..size {
            out.entries[i * size + i] = BigRational::one();
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Invalid("rational matrix must be square".into()));
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { size, entries })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.size + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.size + j] = v;
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        check_dims(self.size, other.size)?;
        let s = self.size;
        let mut out = Self::zeros(s);
        for i in 0..s {
            for k in 0..s {
                let a = &self.entries[i * s + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = &other.entries[k * s + j];
                    if !b.is_zero() {
                        out.entries[i * s + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }
}
