//! Finite groups generated by the clock-and-shift and Hadamard bases, their
//! permutation representations, and complex-free cyclotomic arithmetic.
//!
//! * `T` sends a phased shift `ω^m·B(k, l)` to the `n² × n²` permutation
//!   matrix `Σ_u e_u e_{u+k}ᵗ ⊗ P^{(u·l + m) mod n}`, where `P` is the
//!   cyclic shift by one. Equivalently, every phase `ω^e` in row `u` is
//!   replaced by `P^e`.
//! * `R` is the linear map
//!   `A ↦ Σ_{k,l} n⁻¹⟨A, Q(k,l)⟩ Σ_j e_j e_{j+k}ᵗ ⊗ σ(h_{j,l})` with
//!   `σ(+1) = I₂`, `σ(−1) = swap`.
//!
//! [`check_homomorphism`] measures which algebraic identities these maps
//! satisfy instead of assuming them.

use std::collections::{HashSet, VecDeque};

use num::complex::Complex64;
use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::bases::{analyze, fourier_basis, hadamard_basis, Label};
use crate::error::{check_dims, Error, Result};
use crate::hadamard::{sylvester, verify_hadamard, HMatrix};
use crate::matcore::{kron, relative_residual, CMatrix, CycloMatrix, Cyclotomic, Monomial, RationalMatrix};
use crate::report::VerificationReport;
use crate::sampling::{random_matrix, rng};

/// Exhaustive closure spot-checks run only up to this order.
pub const CLOSURE_CHECK_LIMIT: usize = 512;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTable {
    pub n: usize,
    /// sorted, pairwise distinct
    pub elements: Vec<Monomial>,
    pub order: usize,
    pub generator_labels: Vec<Label>,
    /// breadth-first search reached a fixed point within the cap
    pub closed: bool,
}

impl GroupTable {
    pub fn contains(&self, g: &Monomial) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Every product and inverse lies in the table.
    pub fn verify_closure(&self) -> bool {
        let set: HashSet<&Monomial> = self.elements.iter().collect();
        self.elements.iter().all(|a| set.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| a.compose(b).map(|p| set.contains(&p)).unwrap_or(false)))
    }
}

/// Breadth-first closure of `generators` under right multiplication, starting
/// from the identity. Stops once the element count exceeds `cap`, returning
/// the partial table with `closed = false`.
pub fn enumerate_group(generators: &[Monomial], cap: usize) -> Result<GroupTable> {
    let Some(first) = generators.first() else {
        return Err(Error::Invalid("at least one generator is required".into()));
    };
    let n = first.n();
    for g in generators {
        check_dims(n, g.n())?;
    }
    let id = Monomial::identity(n);
    let mut seen: HashSet<Monomial> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut closed = true;
    'bfs: while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    closed = false;
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Monomial> = seen.into_iter().collect();
    elements.sort();
    Ok(GroupTable { n, order: elements.len(), elements, generator_labels: Vec::new(), closed })
}

/// Group generated by the clock-and-shift basis of size `n`.
pub fn fourier_group(n: usize, cap: usize) -> Result<GroupTable> {
    let labels: Vec<Label> = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).collect();
    let gens: Vec<Monomial> = labels.iter().map(|&(k, l)| Monomial::fourier(n, k, l)).collect();
    let mut t = enumerate_group(&gens, cap)?;
    t.generator_labels = labels;
    Ok(t)
}

/// `Q_H(k, l)` as an exact signed shift.
pub fn hadamard_monomial(h: &HMatrix, k: usize, l: usize) -> Result<Monomial> {
    let signs: Vec<i8> = h.column(l).into_iter().map(|v| v as i8).collect();
    Monomial::signed_shift(k, &signs)
}

/// Group generated by the basis induced by `h` (phase modulus 2).
pub fn hadamard_group(h: &HMatrix, cap: usize) -> Result<GroupTable> {
    if !verify_hadamard(h).summary {
        return Err(Error::NotHadamard("generators require a verified Hadamard matrix".into()));
    }
    let n = h.n();
    let labels: Vec<Label> = (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).collect();
    let gens = labels.iter().map(|&(k, l)| hadamard_monomial(h, k, l)).collect::<Result<Vec<_>>>()?;
    let mut t = enumerate_group(&gens, cap)?;
    t.generator_labels = labels;
    Ok(t)
}

/// `n^{n+1}`, saturating.
pub fn fourier_group_bound(n: usize) -> u128 {
    (n as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX)
}

/// `n · 2ⁿ`, saturating.
pub fn hadamard_group_bound(n: usize) -> u128 {
    1u128.checked_shl(n as u32).and_then(|p| p.checked_mul(n as u128)).unwrap_or(u128::MAX)
}

/// Decomposes `g = ω^m·B(k, l)`; returns `(k, l, m)` over modulus `n`.
pub fn phased_shift_params(g: &Monomial) -> Result<(usize, usize, usize)> {
    let n = g.n();
    let k = g.perm()[0];
    if g.perm().iter().enumerate().any(|(j, &p)| p != (j + k) % n) {
        return Err(Error::NotPhasedShift(format!("permutation {:?} is not a cyclic shift", g.perm())));
    }
    let phase = g
        .phases_over(n as u64)
        .ok_or_else(|| Error::NotPhasedShift(format!("phase modulus {} does not divide n = {n}", g.modulus())))?;
    let m = phase[0] as usize;
    let l = if n > 1 { (phase[1] as usize + n - m) % n } else { 0 };
    if phase.iter().enumerate().any(|(j, &e)| e as usize != (j * l + m) % n) {
        return Err(Error::NotPhasedShift(format!("phases {phase:?} are not affine in the row index")));
    }
    Ok((k, l, m))
}

/// `T(g)` as an exact permutation of `n²` points: row `u·n + v` maps to
/// column `((u+k) mod n)·n + (v + e_u) mod n` where `e_u = u·l + m`.
pub fn rep_t_monomial(g: &Monomial) -> Result<Monomial> {
    let n = g.n();
    let (k, l, m) = phased_shift_params(g)?;
    let mut perm = Vec::with_capacity(n * n);
    for u in 0..n {
        let e = (u * l + m) % n;
        for v in 0..n {
            perm.push(((u + k) % n) * n + (v + e) % n);
        }
    }
    Monomial::new(perm, vec![0; n * n], 1)
}

/// `T(g)` for `g` in the group generated by the clock-and-shift basis.
pub fn rep_t(g: &Monomial) -> Result<CMatrix> {
    Ok(rep_t_monomial(g)?.to_dense())
}

/// Linear extension `T(A) = Σ n⁻¹⟨A, B(k,l)⟩ T(B(k,l))`.
pub fn rep_t_linear(a: &CMatrix) -> CMatrix {
    let n = a.n();
    let coeffs = analyze(a, &fourier_basis(n)).expect("matching dimension");
    let mut out = CMatrix::zeros(n * n);
    for k in 0..n {
        for l in 0..n {
            let c = coeffs[(k, l)];
            if c.is_zero() {
                continue;
            }
            let t = rep_t_monomial(&Monomial::fourier(n, k, l)).expect("basis elements are phased shifts");
            for (row, &col) in t.perm().iter().enumerate() {
                out[(row, col)] += c;
            }
        }
    }
    out
}

fn sigma(h: i32) -> CMatrix {
    if h == 1 {
        CMatrix::identity(2)
    } else {
        CMatrix::from_real(2, |i, j| if i != j { 1.0 } else { 0.0 })
    }
}

/// `R_H(Q_H(k, l)) = Σ_j e_j e_{j+k}ᵗ ⊗ σ(h_{j,l})`.
fn rep_r_element(h: &HMatrix, k: usize, l: usize) -> CMatrix {
    let n = h.n();
    let mut out = CMatrix::zeros(2 * n);
    for j in 0..n {
        let block = kron(&CMatrix::unit(n, j, (j + k) % n), &sigma(h.get(j, l)));
        out = &out + &block;
    }
    out
}

/// `R_H(A)`, a `2n × 2n` matrix, exactly as the linear formula reads.
pub fn rep_r(a: &CMatrix, h: &HMatrix) -> Result<CMatrix> {
    check_dims(a.n(), h.n())?;
    let n = h.n();
    let basis = hadamard_basis(h)?;
    let coeffs = analyze(a, &basis)?;
    let mut out = CMatrix::zeros(2 * n);
    for k in 0..n {
        for l in 0..n {
            let c = coeffs[(k, l)];
            if c.is_zero() {
                continue;
            }
            out = &out + &rep_r_element(h, k, l).scale(c);
        }
    }
    Ok(out)
}

/// Group-level counterpart of `R` on signed permutations: each `±1` in row
/// `j` becomes `σ(±1)`. Agrees with [`rep_r`] on the basis elements.
pub fn rep_r_monomial(g: &Monomial) -> Result<Monomial> {
    let n = g.n();
    let signs = g
        .phases_over(2)
        .ok_or_else(|| Error::Invalid(format!("phase modulus {} is not a divisor of 2", g.modulus())))?;
    let mut perm = Vec::with_capacity(2 * n);
    for (j, &s) in signs.iter().enumerate() {
        let target = g.perm()[j];
        for v in 0..2 {
            perm.push(2 * target + (v + s as usize) % 2);
        }
    }
    Monomial::new(perm, vec![0; 2 * n], 1)
}

/// `Some(monomial)` if `a` is a 0/1 permutation matrix.
fn as_permutation(a: &CMatrix, tol: f64) -> Option<Monomial> {
    Monomial::from_dense(a, 1, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    TGroup,
    TLinear,
    R,
}

impl std::str::FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t-group" | "T_group" => Ok(MapKind::TGroup),
            "t-linear" | "T_linear" => Ok(MapKind::TLinear),
            "r" | "R" => Ok(MapKind::R),
            other => Err(Error::Invalid(format!("unknown map kind {other:?}"))),
        }
    }
}

/// Name of the check that records the additive identity `T(A₁+A₂) = T(A₁)·T(A₂)`.
pub const PRINTED_ADDITIVE_IDENTITY: &str = "printed_identity T(A1+A2) = T(A1)·T(A2)";

/// Empirically tests the homomorphism identities of `T` or `R`.
///
/// Each identity gets its own check and residual. Identities that are
/// expected to fail are still reported as failing checks; the `detail`
/// field says whether the identity is stated or derived.
pub fn check_homomorphism(
    kind: MapKind,
    n: usize,
    h: Option<&HMatrix>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = rng(seed);
    let mut report = VerificationReport::new();
    match kind {
        MapKind::TGroup => {
            let group = fourier_group(n, usize::MAX)?;
            let images = group.elements.iter().map(rep_t_monomial).collect::<Result<Vec<_>>>()?;
            let mut failures = 0usize;
            for (a, ta) in group.elements.iter().zip(&images) {
                for (b, tb) in group.elements.iter().zip(&images) {
                    if rep_t_monomial(&a.compose(b)?)? != ta.compose(tb)? {
                        failures += 1;
                    }
                }
            }
            report
                .push("T multiplicative on group", failures == 0, failures as f64)
                .with_detail(format!("{} exact pairs, {failures} mismatches", images.len().pow(2)));
            let distinct: HashSet<&Monomial> = images.iter().collect();
            report
                .push("T injective on group", distinct.len() == images.len(), (images.len() - distinct.len()) as f64)
                .with_detail(format!("group order {}", images.len()));
            let perm_ok = images.iter().all(|t| t.modulus() == 1 && t.n() == n * n);
            report.push("T images are permutation matrices", perm_ok, if perm_ok { 0.0 } else { 1.0 });
        }
        MapKind::TLinear => {
            // stated identity, on the documented example and on random samples
            let x = fourier_basis(n).element(1 % n, 0).clone();
            let mut worst = relative_residual(&rep_t_linear(&x).matmul(&rep_t_linear(&x)), &rep_t_linear(&(&x + &x)));
            let mut worst_add = 0.0f64;
            let mut worst_mul = 0.0f64;
            for _ in 0..samples {
                let (a1, a2) = (random_matrix(n, &mut r), random_matrix(n, &mut r));
                let (t1, t2) = (rep_t_linear(&a1), rep_t_linear(&a2));
                let t_sum = rep_t_linear(&(&a1 + &a2));
                let t_prod = rep_t_linear(&a1.matmul(&a2));
                let t1t2 = t1.matmul(&t2);
                worst = worst.max(relative_residual(&t1t2, &t_sum));
                worst_add = worst_add.max(relative_residual(&(&t1 + &t2), &t_sum));
                worst_mul = worst_mul.max(relative_residual(&t1t2, &t_prod));
            }
            report
                .push(PRINTED_ADDITIVE_IDENTITY, worst <= tol, worst)
                .with_detail("stated identity, tested as printed");
            report
                .push("T_linear additive T(A1+A2) = T(A1)+T(A2)", worst_add <= tol, worst_add)
                .with_detail("derived: linear by construction");
            report
                .push("T_linear multiplicative T(A1·A2) = T(A1)·T(A2)", worst_mul <= tol, worst_mul)
                .with_detail("stated identity, measured on random matrices");
            let mut agree = 0.0f64;
            for k in 0..n {
                for l in 0..n {
                    let b = Monomial::fourier(n, k, l);
                    agree = agree.max(relative_residual(&rep_t(&b)?, &rep_t_linear(&b.to_dense())));
                }
            }
            report.push("T_linear agrees with T on basis", agree <= tol, agree);
        }
        MapKind::R => {
            let owned;
            let h = match h {
                Some(h) => h,
                None => {
                    if !n.is_power_of_two() {
                        return Err(Error::Invalid(format!("no default Hadamard matrix of order {n}")));
                    }
                    owned = sylvester(n.trailing_zeros());
                    &owned
                }
            };
            check_dims(n, h.n())?;
            let basis = hadamard_basis(h)?;

            let mut worst_add = 0.0f64;
            let mut worst_mul = 0.0f64;
            let mut inj_fail = 0usize;
            for _ in 0..samples {
                let (a, b) = (random_matrix(n, &mut r), random_matrix(n, &mut r));
                let (ra, rb) = (rep_r(&a, h)?, rep_r(&b, h)?);
                worst_add = worst_add.max(relative_residual(&(&ra + &rb), &rep_r(&(&a + &b), h)?));
                worst_mul = worst_mul.max(relative_residual(&ra.matmul(&rb), &rep_r(&a.matmul(&b), h)?));
                if (&ra - &rb).frobenius_norm() <= tol * ra.frobenius_norm().max(1.0) {
                    inj_fail += 1;
                }
            }
            report.push("R additive (random)", worst_add <= tol, worst_add).with_detail("stated identity");
            report
                .push("R multiplicative (random)", worst_mul <= tol, worst_mul)
                .with_detail("stated identity, measured on random matrices");
            report
                .push("R injective (random pairs)", inj_fail == 0, inj_fail as f64)
                .with_detail(format!("{samples} random pairs"));

            let images: Vec<CMatrix> = basis.iter().map(|(_, e, _)| rep_r(e, h)).collect::<Result<Vec<_>>>()?;
            let perm_images = images.iter().filter(|m| as_permutation(m, tol).is_some()).count();
            report.push(
                "R basis images are permutation matrices",
                perm_images == images.len(),
                (images.len() - perm_images) as f64,
            );

            let els = basis.elements();
            let mut worst = 0.0f64;
            let mut failing = 0usize;
            for (a, ra) in els.iter().zip(&images) {
                for (b, rb) in els.iter().zip(&images) {
                    let res = relative_residual(&ra.matmul(rb), &rep_r(&a.matmul(b), h)?);
                    if res > tol {
                        failing += 1;
                    }
                    worst = worst.max(res);
                }
            }
            report
                .push("R multiplicative (basis pairs)", failing == 0, worst)
                .with_detail(format!("{failing} of {} ordered pairs fail", els.len().pow(2)));

            // group-level map on the Hadamard group generated by the basis
            let group = hadamard_group(h, 1 << 16)?;
            let gimages = group.elements.iter().map(rep_r_monomial).collect::<Result<Vec<_>>>()?;
            let mut gfail = 0usize;
            for (a, ra) in group.elements.iter().zip(&gimages) {
                for (b, rb) in group.elements.iter().zip(&gimages) {
                    if rep_r_monomial(&a.compose(b)?)? != ra.compose(rb)? {
                        gfail += 1;
                    }
                }
            }
            report
                .push("R group map multiplicative (Hadamard group)", gfail == 0, gfail as f64)
                .with_detail(format!("signed-permutation lift, group order {}", group.order));
        }
    }
    Ok(report)
}

/// Replaces each entry `Σ_d c_d ω^d` by the `m × m` rational circulant
/// `Σ_d c_d P^d`, giving an `nm × nm` rational matrix.
pub fn cyclotomic_encode(a: &CycloMatrix) -> RationalMatrix {
    let (n, m) = (a.n(), a.order());
    let mut out = RationalMatrix::zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            let coeffs = a.get(i, j).coeffs();
            for (d, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // P^d has a one at (v, v + d mod m)
                for v in 0..m {
                    out.set(i * m + v, j * m + (v + d) % m, c.clone());
                }
            }
        }
    }
    out
}

/// Inverse of [`cyclotomic_encode`]; every block must be circulant.
pub fn cyclotomic_decode(e: &RationalMatrix, n: usize, m: usize) -> Result<CycloMatrix> {
    if m == 0 || e.size() != n * m {
        return Err(Error::Invalid(format!("expected a {}×{} matrix, got size {}", n * m, n * m, e.size())));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let first: Vec<BigRational> = (0..m).map(|d| e.get(i * m, j * m + d).clone()).collect();
            for v in 1..m {
                for (d, expected) in first.iter().enumerate() {
                    if e.get(i * m + v, j * m + (v + d) % m) != expected {
                        return Err(Error::NotCirculant { row: i, col: j });
                    }
                }
            }
            row.push(Cyclotomic::new(m, first)?);
        }
        rows.push(row);
    }
    CycloMatrix::from_rows(rows)
}

/// Exact product `A·B` computed through the rational encoding.
pub fn multiply_complex_free(a: &CycloMatrix, b: &CycloMatrix) -> Result<CycloMatrix> {
    check_dims(a.n(), b.n())?;
    if a.order() != b.order() {
        return Err(Error::ModulusMismatch { left: a.order(), right: b.order() });
    }
    let prod = cyclotomic_encode(a).mul(&cyclotomic_encode(b))?;
    cyclotomic_decode(&prod, a.n(), a.order())
}

/// Sparse `(row, col, value)` triplets of the nonzero entries.
pub fn to_triplets(m: &CMatrix) -> Vec<(usize, usize, Complex64)> {
    let n = m.n();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let v = m[(i, j)];
            (!v.is_zero()).then_some((i, j, v))
        })
        .collect()
}
