//! Complete orthogonal bases of `n × n` matrices and the matrix Fourier transform.
//!
//! Every non-canonical family here has the same shape: element `(k, l)` is
//! the cyclic shift by `k` with row `j` weighted by `w(j, l)`,
//!
//! ```text
//! N(k, l) = Σ_j w(j, l) · e_j e_{(j+k) mod n}ᵗ
//! ```
//!
//! with `w(j, l) = ω_n^{j·l}` (clock-and-shift), `u_{j,l}` (unitary-induced)
//! or `h_{j,l}` (Hadamard-induced). Expansion coefficients always use
//! `⟨A, N⟩ / ‖N‖²`, so all kinds share one analysis/synthesis path.

use std::collections::HashSet;

use num::complex::Complex64;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::hadamard::HMatrix;
use crate::matcore::{frob_inner, relative_residual, root_of_unity, CMatrix, Monomial};
use crate::report::VerificationReport;

/// Basis label `(k, l)` with `0 ≤ k, l < n`.
pub type Label = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Canonical,
    Fourier,
    Unitary,
    Hadamard,
    Custom,
}

impl std::str::FromStr for BasisKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(BasisKind::Canonical),
            "fourier" => Ok(BasisKind::Fourier),
            "unitary" => Ok(BasisKind::Unitary),
            "hadamard" => Ok(BasisKind::Hadamard),
            "custom" => Ok(BasisKind::Custom),
            other => Err(Error::Invalid(format!("unknown basis kind {other:?}"))),
        }
    }
}

/// An ordered family of `n²` labeled matrices with cached squared norms.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawBasis", into = "RawBasis")]
pub struct BasisSet {
    n: usize,
    kind: BasisKind,
    elements: Vec<CMatrix>,
    labels: Vec<Label>,
    norms_sq: Vec<f64>,
    /// position of label `(k, l)` in `elements`, indexed by `k·n + l`
    index: Vec<usize>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawBasis {
    n: usize,
    kind: BasisKind,
    elements: Vec<CMatrix>,
    labels: Vec<Label>,
}

impl TryFrom<RawBasis> for BasisSet {
    type Error = Error;
    fn try_from(raw: RawBasis) -> Result<Self> {
        let b = BasisSet::new(raw.kind, raw.elements, raw.labels)?;
        check_dims(raw.n, b.n)?;
        Ok(b)
    }
}

impl From<BasisSet> for RawBasis {
    fn from(b: BasisSet) -> Self {
        RawBasis { n: b.n, kind: b.kind, elements: b.elements, labels: b.labels }
    }
}

impl BasisSet {
    /// Validates shape, labels and nonzero elements; does not check orthogonality.
    pub fn new(kind: BasisKind, elements: Vec<CMatrix>, labels: Vec<Label>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::Invalid("basis has no elements".into()));
        };
        let n = first.n();
        if elements.len() != n * n {
            return Err(Error::Invalid(format!(
                "basis of {n}×{n} matrices needs {} elements, got {}",
                n * n,
                elements.len()
            )));
        }
        check_dims(elements.len(), labels.len())?;
        let mut index = vec![usize::MAX; n * n];
        for (pos, (&(k, l), e)) in labels.iter().zip(&elements).enumerate() {
            check_dims(n, e.n())?;
            if k >= n || l >= n {
                return Err(Error::Invalid(format!("label ({k}, {l}) out of range for n = {n}")));
            }
            if index[k * n + l] != usize::MAX {
                return Err(Error::Invalid(format!("duplicate label ({k}, {l})")));
            }
            if e.is_zero() {
                return Err(Error::Invalid(format!("element ({k}, {l}) is zero")));
            }
            index[k * n + l] = pos;
        }
        let norms_sq = elements.iter().map(|e| e.as_slice().iter().map(|z| z.norm_sqr()).sum()).collect();
        Ok(BasisSet { n, kind, elements, labels, norms_sq, index })
    }

    fn from_grid(n: usize, kind: BasisKind, mut f: impl FnMut(usize, usize) -> CMatrix) -> Self {
        let mut elements = Vec::with_capacity(n * n);
        let mut labels = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                elements.push(f(k, l));
                labels.push((k, l));
            }
        }
        BasisSet::new(kind, elements, labels).expect("grid bases are well formed")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn norms_sq(&self) -> &[f64] {
        &self.norms_sq
    }

    /// Element with label `(k, l)`.
    pub fn element(&self, k: usize, l: usize) -> &CMatrix {
        &self.elements[self.index[k * self.n + l]]
    }

    pub fn norm_sq(&self, k: usize, l: usize) -> f64 {
        self.norms_sq[self.index[k * self.n + l]]
    }

    /// `(label, element, ‖element‖²)` in stored order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, &CMatrix, f64)> {
        self.labels.iter().copied().zip(&self.elements).zip(self.norms_sq.iter().copied()).map(|((l, e), s)| (l, e, s))
    }

    /// Same basis with the kind retagged, e.g. after editing elements by hand.
    pub fn with_kind(mut self, kind: BasisKind) -> Self {
        self.kind = kind;
        self
    }
}

/// `n × n` coefficient grid indexed by basis label `(k, l)`.
///
/// JSON form is the matrix layout (`entries[k][l]`) plus a `labels` header
/// listing the `(k, l)` of each cell in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoeffs", into = "RawCoeffs")]
pub struct CoeffTable {
    n: usize,
    coeffs: Vec<Complex64>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawCoeffs {
    n: usize,
    labels: Vec<Label>,
    entries: Vec<Vec<[f64; 2]>>,
}

impl From<CoeffTable> for RawCoeffs {
    fn from(t: CoeffTable) -> Self {
        let n = t.n;
        RawCoeffs {
            n,
            labels: (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).collect(),
            entries: t.coeffs.chunks(n.max(1)).map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }
}

impl TryFrom<RawCoeffs> for CoeffTable {
    type Error = Error;
    fn try_from(raw: RawCoeffs) -> Result<Self> {
        let n = raw.n;
        let expected: Vec<Label> = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).collect();
        if raw.labels != expected {
            return Err(Error::Invalid("coefficient labels must list (k, l) in row-major order".into()));
        }
        let rows = raw
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let m = CMatrix::from_rows(rows)?;
        check_dims(n, m.n())?;
        Ok(CoeffTable::from_matrix(&m))
    }
}

impl CoeffTable {
    pub fn zeros(n: usize) -> Self {
        CoeffTable { n, coeffs: vec![Complex64::zero(); n * n] }
    }

    /// Single `1` at `(k, l)`.
    pub fn delta(n: usize, k: usize, l: usize) -> Self {
        let mut t = Self::zeros(n);
        t[(k, l)] = Complex64::new(1.0, 0.0);
        t
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut t = Self::zeros(n);
        for k in 0..n {
            for l in 0..n {
                t[(k, l)] = f(k, l);
            }
        }
        t
    }

    /// Reads a coefficient grid laid out like a matrix (`[k][l]`).
    pub fn from_matrix(m: &CMatrix) -> Self {
        CoeffTable { n: m.n(), coeffs: m.as_slice().to_vec() }
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |k, l| self[(k, l)])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CoeffTable { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn max_abs_diff(&self, other: &CoeffTable) -> f64 {
        assert_eq!(self.n, other.n);
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for CoeffTable {
    type Output = Complex64;
    fn index(&self, (k, l): (usize, usize)) -> &Complex64 {
        &self.coeffs[k * self.n + l]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CoeffTable {
    fn index_mut(&mut self, (k, l): (usize, usize)) -> &mut Complex64 {
        &mut self.coeffs[k * self.n + l]
    }
}

impl std::ops::Add for &CoeffTable {
    type Output = CoeffTable;
    fn add(self, rhs: &CoeffTable) -> CoeffTable {
        assert_eq!(self.n, rhs.n);
        CoeffTable { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

/// `Σ_j w(j) · e_j e_{(j+k) mod n}ᵗ`.
fn weighted_shift(n: usize, k: usize, mut w: impl FnMut(usize) -> Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for j in 0..n {
        m[(j, (j + k) % n)] = w(j);
    }
    m
}

/// The matrix units `e_i e_jᵗ`, labeled `(i, j)`. All rank one.
pub fn canonical_basis(n: usize) -> BasisSet {
    BasisSet::from_grid(n, BasisKind::Canonical, |i, j| CMatrix::unit(n, i, j))
}

/// Clock-and-shift basis `B(k, l) = Σ_j ω_n^{j·l} e_j e_{j+k}ᵗ`.
pub fn fourier_basis(n: usize) -> BasisSet {
    BasisSet::from_grid(n, BasisKind::Fourier, |k, l| Monomial::fourier(n, k, l).to_dense())
}

/// Basis induced by a unitary `U`: element `(k, l)` weights row `j` of the shift by `u_{j,l}`.
///
/// Rejects `U` with `‖U·U† − I‖_F / √n` above `tol`.
pub fn unitary_basis(u: &CMatrix, tol: f64) -> Result<BasisSet> {
    let n = u.n();
    let residual = relative_residual(&CMatrix::identity(n), &u.matmul(&u.adjoint()));
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    let elements: Vec<CMatrix> =
        (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| weighted_shift(n, k, |j| u[(j, l)])).collect();
    let labels = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).collect();
    BasisSet::new(BasisKind::Unitary, elements, labels)
}

/// Basis induced by a Hadamard matrix: `Q(k, l) = Σ_j h_{j,l} e_j e_{j+k}ᵗ`.
pub fn hadamard_basis(h: &HMatrix) -> Result<BasisSet> {
    let report = crate::hadamard::verify_hadamard(h);
    if !report.summary {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(Error::NotHadamard(failed.join(", ")));
    }
    let n = h.n();
    Ok(BasisSet::from_grid(n, BasisKind::Hadamard, |k, l| {
        weighted_shift(n, k, |j| Complex64::new(h.get(j, l) as f64, 0.0))
    }))
}

/// Expansion coefficients `⟨A, N(k,l)⟩ / ‖N(k,l)‖²`.
pub fn analyze(a: &CMatrix, basis: &BasisSet) -> Result<CoeffTable> {
    check_dims(a.n(), basis.n())?;
    let mut out = CoeffTable::zeros(basis.n());
    for ((k, l), e, nsq) in basis.iter() {
        out[(k, l)] = frob_inner(a, e)? / nsq;
    }
    Ok(out)
}

/// `Σ_{k,l} c(k,l) · N(k,l)`.
pub fn synthesize(c: &CoeffTable, basis: &BasisSet) -> Result<CMatrix> {
    check_dims(c.n(), basis.n())?;
    let n = basis.n();
    let mut out = CMatrix::zeros(n);
    for ((k, l), e, _) in basis.iter() {
        let s = c[(k, l)];
        if s.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let v = e[(i, j)];
                if !v.is_zero() {
                    out[(i, j)] += s * v;
                }
            }
        }
    }
    Ok(out)
}

/// Pairwise orthogonality (as a normalized cosine), element count, nonzero
/// elements and cached norms.
pub fn verify_orthogonal_complete(basis: &BasisSet, tol: f64) -> VerificationReport {
    let n = basis.n();
    let els = basis.elements();
    let mut worst = 0.0f64;
    let mut worst_pair = None;
    for i in 0..els.len() {
        for j in (i + 1)..els.len() {
            let ip = frob_inner(&els[i], &els[j]).expect("same dimension").norm();
            let cos = ip / (basis.norms_sq[i] * basis.norms_sq[j]).sqrt();
            if cos > worst {
                worst = cos;
                worst_pair = Some((basis.labels[i], basis.labels[j]));
            }
        }
    }
    let mut report = VerificationReport::new();
    let check = report.push("orthogonality", worst <= tol, worst);
    if worst > tol {
        if let Some((a, b)) = worst_pair {
            check.with_detail(format!("worst pair {a:?} / {b:?}"));
        }
    }
    let count = els.len();
    report.push("count", count == n * n, (count as f64 - (n * n) as f64).abs());

    let labels: HashSet<Label> = basis.labels.iter().copied().collect();
    report.push("distinct_labels", labels.len() == count, (count - labels.len()) as f64);

    let min_norm = basis.norms_sq.iter().copied().fold(f64::INFINITY, f64::min);
    report.push("nonzero", min_norm > 0.0, if min_norm > 0.0 { 0.0 } else { 1.0 });

    let norm_drift = els
        .iter()
        .zip(&basis.norms_sq)
        .map(|(e, &s)| (frob_inner(e, e).expect("same dimension").re - s).abs() / s.max(1.0))
        .fold(0.0, f64::max);
    report.push("norms", norm_drift <= tol, norm_drift);
    report
}

/// Every element must have rank `n` (singular values above `n·ε·σ_max`).
/// The residual is the worst `σ_min / σ_max` deficit, `1 − min ratio`.
pub fn verify_full_rank(basis: &BasisSet) -> VerificationReport {
    let n = basis.n();
    let mut min_ratio = f64::INFINITY;
    let mut deficient = Vec::new();
    for ((k, l), e, _) in basis.iter() {
        let sv = e.singular_values();
        let smax = sv.first().copied().unwrap_or(0.0);
        let smin = sv.last().copied().unwrap_or(0.0);
        let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
        min_ratio = min_ratio.min(ratio);
        if e.rank() < n {
            deficient.push((k, l));
        }
    }
    let mut report = VerificationReport::new();
    let check = report.push("full_rank", deficient.is_empty(), 1.0 - min_ratio);
    if !deficient.is_empty() {
        let shown: Vec<String> = deficient.iter().take(4).map(|l| format!("{l:?}")).collect();
        check.with_detail(format!("{} rank-deficient elements, e.g. {}", deficient.len(), shown.join(" ")));
    }
    report
}

/// `Σ_k B(k, k)` and its relation to the standard DFT matrix `F[a][b] = ω^{a·b}`.
#[derive(Clone, Debug)]
pub struct DftIdentification {
    /// The unnormalized sum `Σ_k B(k,k)`; divide by `√n` for the unitary.
    pub matrix: CMatrix,
    /// Diagonal `D` with `matrix = D · F`.
    pub chirp: Vec<Complex64>,
    pub report: VerificationReport,
}

/// Standard DFT matrix `F[a][b] = exp(2πi·a·b/n)` (unnormalized).
pub fn dft_matrix(n: usize) -> CMatrix {
    CMatrix::from_fn(n, |a, b| root_of_unity((a * b) as i64, n))
}

pub fn dft_from_fourier_basis(n: usize, tol: f64) -> DftIdentification {
    let basis = fourier_basis(n);
    let mut m = CMatrix::zeros(n);
    for k in 0..n {
        m = &m + basis.element(k, k);
    }
    let mut report = VerificationReport::new();

    let scaled = m.scale_real(1.0 / (n as f64).sqrt());
    let unitary = relative_residual(&CMatrix::identity(n), &scaled.matmul(&scaled.adjoint()));
    report.push("unitary", unitary <= tol, unitary);

    // F has an all-ones first column, so D is read off column 0 of M
    let f = dft_matrix(n);
    let chirp: Vec<Complex64> = (0..n).map(|a| m[(a, 0)]).collect();
    let unit_modulus = chirp.iter().map(|d| (d.norm() - 1.0).abs()).fold(0.0, f64::max);
    report.push("chirp_unit_modulus", unit_modulus <= tol, unit_modulus);
    let relation = relative_residual(&m, &CMatrix::diag(&chirp).matmul(&f));
    report.push("chirp_relation", relation <= tol, relation);

    let expected = (0..n).map(|a| (chirp[a] - root_of_unity(-((a * a) as i64), n)).norm()).fold(0.0, f64::max);
    report.push("chirp_is_quadratic_phase", expected <= tol, expected).with_detail("D[a] = ω^(−a²)");

    DftIdentification { matrix: m, chirp, report }
}
