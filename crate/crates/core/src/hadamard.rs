//! Hadamard matrices: Sylvester construction, exact verification, and
//! recovery of a Hadamard matrix from a 2-pseudo-closed full-rank basis.

use std::fmt;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::{verify_full_rank, verify_orthogonal_complete, BasisSet};
use crate::error::{Error, Result};
use crate::matcore::{entrywise_power, relative_residual, CMatrix};
use crate::pseudoclosure::check_pseudo_closure;
use crate::report::VerificationReport;

/// Square integer matrix intended to hold `±1` entries.
///
/// Construction only checks shape; [`verify_hadamard`] decides whether the
/// entries and column orthogonality actually make it Hadamard.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawH", into = "RawH")]
pub struct HMatrix {
    n: usize,
    entries: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawH {
    n: usize,
    rows: Vec<Vec<i32>>,
}

impl TryFrom<RawH> for HMatrix {
    type Error = Error;
    fn try_from(raw: RawH) -> Result<Self> {
        let h = HMatrix::from_rows(raw.rows)?;
        crate::error::check_dims(raw.n, h.n)?;
        Ok(h)
    }
}

impl From<HMatrix> for RawH {
    fn from(h: HMatrix) -> Self {
        RawH { n: h.n, rows: h.rows() }
    }
}

impl HMatrix {
    pub fn from_rows(rows: Vec<Vec<i32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Invalid("Hadamard candidate must be square".into()));
            }
            entries.extend(row);
        }
        Ok(HMatrix { n, entries })
    }

    /// Parses a grid of `+`/`-` characters, one row per line.
    pub fn from_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        other => Err(Error::Invalid(format!("unexpected character {other:?} in ± grid"))),
                    })
                    .collect::<Result<Vec<i32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// `+`/`-` grid; entries other than ±1 are written as `0`.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for row in self.entries.chunks(self.n) {
            s.extend(row.iter().map(|&v| match v {
                1 => '+',
                -1 => '-',
                _ => '0',
            }));
            s.push('\n');
        }
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.n).map(<[i32]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i32> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_real(self.n, |i, j| self.get(i, j) as f64)
    }

    /// `Hᵗ·H` in integer arithmetic.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.n;
        let mut g = vec![0i64; n * n];
        for a in 0..n {
            for b in 0..n {
                g[a * n + b] = (0..n).map(|i| self.get(i, a) as i64 * self.get(i, b) as i64).sum();
            }
        }
        g
    }
}

impl fmt::Debug for HMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HMatrix({})\n{}", self.n, self.to_text())
    }
}

/// Sylvester doubling `H_{2s} = [[H_s, H_s], [H_s, −H_s]]` from `H₁ = [1]`; order `2^m`.
pub fn sylvester(m: u32) -> HMatrix {
    let mut h = vec![1i32];
    let mut s = 1usize;
    for _ in 0..m {
        let t = 2 * s;
        let mut next = vec![0i32; t * t];
        for i in 0..s {
            for j in 0..s {
                let v = h[i * s + j];
                next[i * t + j] = v;
                next[i * t + j + s] = v;
                next[(i + s) * t + j] = v;
                next[(i + s) * t + j + s] = -v;
            }
        }
        h = next;
        s = t;
    }
    HMatrix { n: s, entries: h }
}

/// Exact checks: every entry is ±1 (`H ⋆ H = 1`) and `Hᵗ·H = n·I`.
pub fn verify_hadamard(h: &HMatrix) -> VerificationReport {
    let n = h.n();
    let mut report = VerificationReport::new();
    let bad_entries = h.entries.iter().filter(|&&v| v != 1 && v != -1).count();
    report.push("entries_pm1", bad_entries == 0, bad_entries as f64);
    let g = h.gram();
    let mut worst = 0i64;
    for a in 0..n {
        for b in 0..n {
            let target = if a == b { n as i64 } else { 0 };
            worst = worst.max((g[a * n + b] - target).abs());
        }
    }
    report.push("gram_nI", worst == 0, worst as f64);
    report
}

/// `D^m = D^{⋆m}` and `D^{m+1} = D^{⋆(m+1)}` within `tol`.
///
/// A single exponent is not enough to separate diagonal matrices from
/// permutations (the swap satisfies `X³ = X = X^{⋆3}`), so two consecutive
/// exponents are required.
pub fn diagonal_power_property(d: &CMatrix, m: u32, tol: f64) -> Result<bool> {
    if m < 3 {
        return Err(Error::Invalid("diagonal power property needs m ≥ 3".into()));
    }
    for p in [m, m + 1] {
        let lhs = d.pow(p);
        let rhs = entrywise_power(d, p)?;
        if relative_residual(&rhs, &lhs) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`extract_hadamard`].
#[derive(Clone, Debug)]
pub struct Extraction {
    pub hadamard: Option<HMatrix>,
    /// number of basis elements found to be diagonal
    pub diagonal_count: usize,
    pub report: VerificationReport,
}

/// Recovers a Hadamard matrix from a complete orthogonal, full-rank,
/// 2-pseudo-closed basis with entries in `{0, ±1}`.
///
/// The diagonal elements of the basis are collected; if there are exactly
/// `n` of them, their diagonals (snapped to ±1) are stacked as columns and
/// the result is verified exactly. Preconditions are checked in order and
/// the first failure is returned as [`Error::Precondition`].
pub fn extract_hadamard(basis: &BasisSet, tol: f64) -> Result<Extraction> {
    let n = basis.n();
    let ortho = verify_orthogonal_complete(basis, tol);
    if !ortho.summary {
        return Err(Error::Precondition("basis is not complete and orthogonal".into()));
    }
    if !verify_full_rank(basis).summary {
        return Err(Error::Precondition("basis elements are not all full rank".into()));
    }
    let entries_ok = basis.elements().iter().all(|e| {
        e.as_slice().iter().all(|z| z.im.abs() <= tol && [0.0, 1.0, -1.0].iter().any(|t| (z.re - t).abs() <= tol))
    });
    if !entries_ok {
        return Err(Error::Precondition("basis entries are not all in {0, ±1}".into()));
    }
    let closure = check_pseudo_closure(basis, 2, tol);
    if !closure.verdict {
        return Err(Error::Precondition(format!(
            "basis is not 2-pseudo-closed ({} failing pairs)",
            closure.failures.len()
        )));
    }

    let diagonals: Vec<Vec<Complex64>> =
        basis.elements().iter().filter(|e| e.is_diagonal(tol)).map(CMatrix::diagonal).collect();
    let mut report = VerificationReport::new();
    report
        .push("diagonal_count", diagonals.len() == n, (diagonals.len() as f64 - n as f64).abs())
        .with_detail(format!("{} diagonal elements, expected {n}", diagonals.len()));
    if diagonals.len() != n {
        return Ok(Extraction { hadamard: None, diagonal_count: diagonals.len(), report });
    }

    let mut worst_snap = 0.0f64;
    let mut snapped = vec![vec![0i32; n]; n];
    for (col, diag) in diagonals.iter().enumerate() {
        for (row, z) in diag.iter().enumerate() {
            let s = if z.re >= 0.0 { 1 } else { -1 };
            worst_snap = worst_snap.max((z - Complex64::new(s as f64, 0.0)).norm());
            snapped[row][col] = s;
        }
    }
    report.push("snap_to_pm1", worst_snap <= tol, worst_snap);
    let candidate = HMatrix::from_rows(snapped)?;
    report.extend(verify_hadamard(&candidate));
    let hadamard = report.summary.then_some(candidate);
    Ok(Extraction { hadamard, diagonal_count: n, report })
}
