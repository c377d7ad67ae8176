//! Matrix multiplication in the clock-and-shift coefficient domain.
//!
//! The basis multiplies as `B(k₁,l₁)·B(k₂,l₂) = ω^{k₁·l₂}·B(k₁+k₂, l₁+l₂)`,
//! so coefficient tables of `A` and `B` combine into those of `A·B` by the
//! twisted convolution
//!
//! ```text
//! out(k, l) = Σ_{k₁,l₁} ω^{k₁·(l−l₁)} · a(k₁, l₁) · b(k−k₁, l−l₁)
//! ```

use std::io::Write;
use std::time::Instant;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::{analyze, fourier_basis, synthesize, CoeffTable};
use crate::error::{check_dims, Error, Result};
use crate::matcore::{relative_residual, root_of_unity, CMatrix, Monomial};
use crate::report::VerificationReport;
use crate::sampling::{random_matrix, rng};

/// Phase exponents of the clock-and-shift product rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub n: usize,
    /// `phase[(k₁·n + l₁)·n² + k₂·n + l₂] = e` with `B₁·B₂ = ω^e·B(k₁+k₂, l₁+l₂)`
    pub phase: Vec<u32>,
}

impl StructureTable {
    pub fn get(&self, (k1, l1): (usize, usize), (k2, l2): (usize, usize)) -> u32 {
        let n = self.n;
        self.phase[(k1 * n + l1) * n * n + k2 * n + l2]
    }
}

/// `e = k₁·l₂ mod n` for every pair of labels.
pub fn structure_constants(n: usize) -> StructureTable {
    let mut phase = Vec::with_capacity(n.pow(4));
    for k1 in 0..n {
        for _l1 in 0..n {
            for _k2 in 0..n {
                for l2 in 0..n {
                    phase.push(((k1 * l2) % n) as u32);
                }
            }
        }
    }
    StructureTable { n, phase }
}

/// Checks every entry of the table against exact monomial products and
/// against dense float products.
pub fn validate_structure_constants(table: &StructureTable, tol: f64) -> VerificationReport {
    let n = table.n;
    let mut exact_fail = 0usize;
    let mut worst_dense = 0.0f64;
    for k1 in 0..n {
        for l1 in 0..n {
            let b1 = Monomial::fourier(n, k1, l1);
            let d1 = b1.to_dense();
            for k2 in 0..n {
                for l2 in 0..n {
                    let b2 = Monomial::fourier(n, k2, l2);
                    let e = table.get((k1, l1), (k2, l2)) as u64;
                    let b3 = Monomial::fourier(n, (k1 + k2) % n, (l1 + l2) % n);
                    let product = b1.compose(&b2).expect("same n");
                    if product != b3.times_root(e, n as u64) {
                        exact_fail += 1;
                    }
                    let dense = d1.matmul(&b2.to_dense());
                    let predicted = b3.to_dense().scale(root_of_unity(e as i64, n));
                    worst_dense = worst_dense.max(relative_residual(&predicted, &dense));
                }
            }
        }
    }
    let mut report = VerificationReport::new();
    report
        .push("structure constants (exact)", exact_fail == 0, exact_fail as f64)
        .with_detail(format!("{} pairs", n.pow(4)));
    report.push("structure constants (dense)", worst_dense <= tol, worst_dense);
    report
}

/// Powers `ω_n^e` for `e ∈ 0..n`.
fn roots(n: usize) -> Vec<Complex64> {
    (0..n).map(|e| root_of_unity(e as i64, n)).collect()
}

/// Naive `O(n⁴)` twisted convolution.
pub fn twisted_convolution(a: &CoeffTable, b: &CoeffTable) -> Result<CoeffTable> {
    check_dims(a.n(), b.n())?;
    let n = a.n();
    let w = roots(n);
    let mut out = CoeffTable::zeros(n);
    for k1 in 0..n {
        for l1 in 0..n {
            let ca = a[(k1, l1)];
            if ca == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k2 in 0..n {
                for l2 in 0..n {
                    let k = (k1 + k2) % n;
                    let l = (l1 + l2) % n;
                    out[(k, l)] += w[(k1 * l2) % n] * ca * b[(k2, l2)];
                }
            }
        }
    }
    Ok(out)
}

/// `synthesize(twisted_convolution(analyze(A), analyze(B)))` in the clock-and-shift basis.
pub fn multiply_via_transform(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_dims(a.n(), b.n())?;
    let basis = fourier_basis(a.n());
    let ca = analyze(a, &basis)?;
    let cb = analyze(b, &basis)?;
    synthesize(&twisted_convolution(&ca, &cb)?, &basis)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMethod {
    Direct,
    TwistedConv,
}

impl BenchMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchMethod::Direct => "direct",
            BenchMethod::TwistedConv => "twisted_conv",
        }
    }
}

/// Median timings for one `(n, method)` cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub method: BenchMethod,
    /// median end-to-end seconds (transforms included for `twisted_conv`)
    pub wall_time: f64,
    /// median seconds of the multiplication kernel alone
    pub kernel_time: f64,
    pub max_residual: f64,
}

/// One timed repetition, a row of the benchmark CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub method: String,
    pub rep: usize,
    pub wall_time_s: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Default)]
pub struct BenchRun {
    pub records: Vec<BenchRecord>,
    pub rows: Vec<BenchRow>,
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Times direct multiplication against the transform path, sequentially.
///
/// Each repetition draws a fresh random pair; residuals are measured against
/// the direct product. Kernel-only timings (the convolution on precomputed
/// tables) are reported as `twisted_conv_kernel` rows.
pub fn bench_multiply(n_list: &[usize], reps: usize, seed: u64) -> Result<BenchRun> {
    if reps < 3 {
        return Err(Error::Invalid(format!("need at least 3 repetitions, got {reps}")));
    }
    let mut r = rng(seed);
    let mut run = BenchRun::default();
    for &n in n_list {
        if n == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        let basis = fourier_basis(n);
        let mut direct_t = Vec::with_capacity(reps);
        let mut conv_t = Vec::with_capacity(reps);
        let mut kernel_t = Vec::with_capacity(reps);
        let mut conv_res = 0.0f64;
        for rep in 0..reps {
            let a = random_matrix(n, &mut r);
            let b = random_matrix(n, &mut r);

            let t0 = Instant::now();
            let direct = a.matmul(&b);
            let dt = t0.elapsed().as_secs_f64();

            let t0 = Instant::now();
            let ca = analyze(&a, &basis)?;
            let cb = analyze(&b, &basis)?;
            let t1 = Instant::now();
            let cc = twisted_convolution(&ca, &cb)?;
            let kt = t1.elapsed().as_secs_f64();
            let via = synthesize(&cc, &basis)?;
            let ct = t0.elapsed().as_secs_f64();

            let residual = (&via - &direct).frobenius_norm() / direct.frobenius_norm().max(f64::MIN_POSITIVE);
            conv_res = conv_res.max(residual);
            direct_t.push(dt);
            conv_t.push(ct);
            kernel_t.push(kt);
            run.rows.push(BenchRow { n, method: "direct".into(), rep, wall_time_s: dt, residual: 0.0 });
            run.rows.push(BenchRow { n, method: "twisted_conv".into(), rep, wall_time_s: ct, residual });
            run.rows.push(BenchRow { n, method: "twisted_conv_kernel".into(), rep, wall_time_s: kt, residual });
        }
        let direct_med = median(&mut direct_t);
        run.records.push(BenchRecord {
            n,
            method: BenchMethod::Direct,
            wall_time: direct_med,
            kernel_time: direct_med,
            // the reference itself
            max_residual: 0.0,
        });
        run.records.push(BenchRecord {
            n,
            method: BenchMethod::TwistedConv,
            wall_time: median(&mut conv_t),
            kernel_time: median(&mut kernel_t),
            max_residual: conv_res,
        });
    }
    Ok(run)
}

/// Writes `n,method,rep,wall_time_s,residual` rows with a header.
pub fn write_bench_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
