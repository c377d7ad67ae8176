//! Pseudo-closure of order `k`.
//!
//! A basis `G` is `k`-pseudo-closed when for every pair `A, B ∈ G` whose
//! entries satisfy `A^{⋆(k+1)} = A` and `B^{⋆(k+1)} = B`, some diagonal `D`
//! with `D^k = I` sends the product `A·B` back into `G`. The diagonal is
//! chosen per pair; the entrywise condition only decides which pairs must
//! close.
//!
//! Candidate search runs over the basis in label order. Scalar diagonals
//! (`D = d·I`) are preferred over general ones, so the witness for a
//! clock-and-shift pair is the structure-constant phase on the label sum.

use num::complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bases::{BasisSet, Label};
use crate::error::{Error, Result};
use crate::matcore::{approx_eq, entrywise_power, relative_residual, CMatrix};

/// A closing factor for one product: `diag · P = basis[closing_label]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosingDiagonal {
    pub closing_label: Label,
    pub diag: CMatrix,
    pub residual: f64,
}

/// A [`ClosingDiagonal`] tied to the ordered pair whose product it closes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub pair: (Label, Label),
    pub closing_label: Label,
    pub diag: CMatrix,
    /// max of `‖D·P − C‖`, `‖D^k − I‖` and the off-diagonal mass of `D`, all relative
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureReport {
    pub k: u32,
    /// ordered pairs in the basis, `n⁴`
    pub total_pairs: usize,
    /// ordered pairs where both elements satisfy the entrywise condition
    pub eligible_pairs: usize,
    pub witnesses: Vec<ClosureWitness>,
    pub failures: Vec<(Label, Label)>,
    pub verdict: bool,
}

impl ClosureReport {
    pub fn worst_residual(&self) -> f64 {
        self.witnesses.iter().map(|w| w.residual).fold(0.0, f64::max)
    }

    /// Every element passed the entrywise condition, so the verdict is not vacuous for any element.
    pub fn fully_eligible(&self) -> bool {
        self.eligible_pairs == self.total_pairs
    }
}

/// `A^{⋆(k+1)} = A` within `tol`.
pub fn entrywise_root_condition(a: &CMatrix, k: u32, tol: f64) -> bool {
    match entrywise_power(a, k + 1) {
        Ok(p) => approx_eq(a, &p, tol),
        Err(_) => false,
    }
}

fn diag_power_residual(d: &[Complex64], k: u32) -> f64 {
    let n = d.len();
    let dev: f64 = d.iter().map(|z| (z.powu(k) - 1.0).norm_sqr()).sum::<f64>().sqrt();
    dev / (n as f64).sqrt().max(1.0)
}

fn is_scalar(d: &[Complex64], tol: f64) -> bool {
    d.iter().all(|z| (z - d[0]).norm() <= tol)
}

struct Candidate {
    label: Label,
    diag: Vec<Complex64>,
    residual: f64,
}

/// Shared selection rule: first scalar diagonal in label order, otherwise the first valid one.
fn select(mut candidates: impl Iterator<Item = Candidate>, tol: f64) -> Option<Candidate> {
    let mut first_valid = None;
    for c in candidates.by_ref() {
        if is_scalar(&c.diag, tol) {
            return Some(c);
        }
        if first_valid.is_none() {
            first_valid = Some(c);
        }
    }
    first_valid
}

impl From<Candidate> for ClosingDiagonal {
    fn from(c: Candidate) -> Self {
        ClosingDiagonal { closing_label: c.label, diag: CMatrix::diag(&c.diag), residual: c.residual }
    }
}

impl ClosureWitness {
    pub fn new(pair: (Label, Label), found: ClosingDiagonal) -> Self {
        ClosureWitness { pair, closing_label: found.closing_label, diag: found.diag, residual: found.residual }
    }
}

fn validate(p: &CMatrix, target: &CMatrix, d: &[Complex64], k: u32) -> f64 {
    let dm = CMatrix::diag(d);
    let lhs = dm.matmul(p);
    relative_residual(target, &lhs).max(diag_power_residual(d, k))
}

/// Searches for `C ∈ basis` and diagonal `D` with `D^k = I` and `D·P = C`,
/// computing `D = C·P⁻¹` for each candidate.
///
/// `P` must be invertible; a singular product is reported as
/// [`Error::Singular`] (use [`scan_closing_diagonal`] for those).
pub fn find_closing_diagonal(p: &CMatrix, basis: &BasisSet, k: u32, tol: f64) -> Result<Option<ClosingDiagonal>> {
    if p.n() != basis.n() {
        return Err(Error::DimensionMismatch { left: p.n(), right: basis.n() });
    }
    let p_inv = p.inverse()?;
    let candidates = basis.iter().filter_map(|(label, c, _)| {
        let d = c.matmul(&p_inv);
        if !d.is_diagonal(tol) {
            return None;
        }
        let diag = d.diagonal();
        if diag_power_residual(&diag, k) > tol {
            return None;
        }
        let residual = validate(p, c, &diag, k).max(d.off_diagonal_norm() / d.frobenius_norm().max(1.0));
        (residual <= tol).then_some(Candidate { label, diag, residual })
    });
    Ok(select(candidates, tol).map(ClosingDiagonal::from))
}

/// Inversion-free search: solves `D·P = C` row by row. Rows of `P` that
/// vanish leave `d_i` free (set to 1) and require the same row of `C` to vanish.
pub fn scan_closing_diagonal(p: &CMatrix, basis: &BasisSet, k: u32, tol: f64) -> Option<ClosingDiagonal> {
    let n = p.n();
    if n != basis.n() {
        return None;
    }
    let scale = p.frobenius_norm().max(1.0);
    let candidates = basis.iter().filter_map(|(label, c, _)| {
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            let prow: Vec<Complex64> = (0..n).map(|j| p[(i, j)]).collect();
            let pivot = (0..n).max_by(|&a, &b| prow[a].norm().total_cmp(&prow[b].norm()))?;
            let d = if prow[pivot].norm() <= tol * scale {
                if (0..n).any(|j| c[(i, j)].norm() > tol) {
                    return None;
                }
                Complex64::new(1.0, 0.0)
            } else {
                c[(i, pivot)] / prow[pivot]
            };
            let row_err: f64 = (0..n).map(|j| (c[(i, j)] - d * prow[j]).norm_sqr()).sum::<f64>().sqrt();
            if row_err > tol * scale {
                return None;
            }
            diag.push(d);
        }
        let residual = validate(p, c, &diag, k);
        (residual <= tol).then_some(Candidate { label, diag, residual })
    });
    select(candidates, tol).map(ClosingDiagonal::from)
}

/// Checks every ordered pair of eligible elements; pairs are processed in
/// parallel and reassembled in label order.
pub fn check_pseudo_closure(basis: &BasisSet, k: u32, tol: f64) -> ClosureReport {
    let eligible: Vec<(Label, &CMatrix)> =
        basis.iter().filter(|(_, e, _)| entrywise_root_condition(e, k, tol)).map(|(label, e, _)| (label, e)).collect();
    type Entry<'a> = (Label, &'a CMatrix);
    let pairs: Vec<(Entry, Entry)> = eligible.iter().flat_map(|&a| eligible.iter().map(move |&b| (a, b))).collect();

    let outcomes: Vec<std::result::Result<ClosureWitness, (Label, Label)>> = pairs
        .par_iter()
        .map(|&((la, a), (lb, b))| {
            let prod = a.matmul(b);
            let found = match find_closing_diagonal(&prod, basis, k, tol) {
                Ok(w) => w,
                Err(_) => scan_closing_diagonal(&prod, basis, k, tol),
            };
            found.map(|f| ClosureWitness::new((la, lb), f)).ok_or((la, lb))
        })
        .collect();

    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(w) => witnesses.push(w),
            Err(p) => failures.push(p),
        }
    }
    let total = basis.len() * basis.len();
    ClosureReport {
        k,
        total_pairs: total,
        eligible_pairs: pairs.len(),
        verdict: failures.is_empty(),
        witnesses,
        failures,
    }
}

/// Smallest `k ≤ k_max` at which every element is eligible and every pair closes.
///
/// Orders where the entrywise condition excludes some elements are skipped:
/// their verdict only speaks for a sub-family of the basis.
pub fn pseudo_closure_order(basis: &BasisSet, k_max: u32, tol: f64) -> Option<u32> {
    (1..=k_max).find(|&k| {
        if !basis.elements().iter().all(|e| entrywise_root_condition(e, k, tol)) {
            return false;
        }
        check_pseudo_closure(basis, k, tol).verdict
    })
}

/// Verdict, eligibility and failure count for each `k` in `1..=k_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureProfileEntry {
    pub k: u32,
    pub verdict: bool,
    pub eligible_pairs: usize,
    pub total_pairs: usize,
    pub failures: usize,
}

pub fn closure_profile(basis: &BasisSet, k_max: u32, tol: f64) -> Vec<ClosureProfileEntry> {
    (1..=k_max)
        .map(|k| {
            let r = check_pseudo_closure(basis, k, tol);
            ClosureProfileEntry {
                k,
                verdict: r.verdict,
                eligible_pairs: r.eligible_pairs,
                total_pairs: r.total_pairs,
                failures: r.failures.len(),
            }
        })
        .collect()
}
