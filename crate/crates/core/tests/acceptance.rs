//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines show up in plain
//! `cargo test` output. Criteria listed in `KNOWN_RED` are expected to fail
//! for reasons explained in their detail line; the process fails if any
//! other criterion fails, or if a known-red criterion starts passing.

use std::collections::{HashSet, VecDeque};
use std::process::ExitCode;

use num::complex::Complex64;
use specbasis::bases::{
    analyze, canonical_basis, dft_from_fourier_basis, dft_matrix, fourier_basis, hadamard_basis, synthesize,
    verify_full_rank, verify_orthogonal_complete,
};
use specbasis::grouprep::{
    check_homomorphism, fourier_group, hadamard_group, hadamard_group_bound, multiply_complex_free, rep_t, MapKind,
    PRINTED_ADDITIVE_IDENTITY,
};
use specbasis::hadamard::{extract_hadamard, sylvester, verify_hadamard};
use specbasis::matcore::{relative_residual, CMatrix};
use specbasis::pseudoclosure::check_pseudo_closure;
use specbasis::sampling::{random_cyclo_matrix, random_matrix, rng};
use specbasis::transform::{
    bench_multiply, multiply_via_transform, structure_constants, validate_structure_constants, write_bench_csv,
};

const KNOWN_RED: &[u32] = &[6];
const SEED: u64 = 20_241;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real2(rows: [[f64; 2]; 2]) -> CMatrix {
    CMatrix::from_real(2, |i, j| rows[i][j])
}

fn fourier_basis_correctness() -> Outcome {
    let mut r = rng(SEED);
    let mut worst_struct = 0.0f64;
    let mut worst_recon = 0.0f64;
    let mut ok = true;
    for n in 2..=8 {
        let basis = fourier_basis(n);
        let ortho = verify_orthogonal_complete(&basis, 1e-12);
        let rank = verify_full_rank(&basis);
        ok &= ortho.summary && rank.summary;
        worst_struct = worst_struct.max(ortho.worst_residual()).max(rank.worst_residual());
        for _ in 0..50 {
            let a = random_matrix(n, &mut r);
            let back = synthesize(&analyze(&a, &basis).unwrap(), &basis).unwrap();
            worst_recon = worst_recon.max((&back - &a).frobenius_norm() / a.frobenius_norm());
        }
    }
    ok &= worst_struct <= 1e-12 && worst_recon <= 1e-12;
    outcome(
        ok,
        format!("n=2..8; worst structural residual {worst_struct:.2e}, worst relative reconstruction {worst_recon:.2e} (tol 1e-12)"),
    )
}

fn pauli_identification() -> Outcome {
    let b = fourier_basis(2);
    let i2 = CMatrix::identity(2);
    let x = real2([[0., 1.], [1., 0.]]);
    let z = real2([[1., 0.], [0., -1.]]);
    let y = CMatrix::from_rows(vec![vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]]).unwrap();
    let stated_b11 = real2([[0., 1.], [-1., 0.]]);
    let exact =
        b.element(0, 0) == &i2 && b.element(1, 0) == &x && b.element(0, 1) == &z && b.element(1, 1) == &stated_b11;
    let phase = if b.element(1, 1) == &y.scale(c(0., 1.)) {
        "+i"
    } else if b.element(1, 1) == &y.scale(c(0., -1.)) {
        "-i"
    } else {
        "none"
    };
    outcome(
        exact && phase != "none",
        format!(
            "B(0,0)=I, B(1,0)=X, B(0,1)=Z, B(1,1)=[[0,1],[-1,0]] exactly; with Y=[[0,-i],[i,0]] the phase on Y is {phase}"
        ),
    )
}

fn pseudo_closure() -> Outcome {
    let tol = 1e-9;
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 2..=6 {
        let rep = check_pseudo_closure(&fourier_basis(n), n as u32, tol);
        ok &= rep.verdict && rep.fully_eligible();
    }
    lines.push(format!("fourier n=2..6 at k=n: {}", if ok { "closed" } else { "NOT closed" }));
    let mut had_ok = true;
    for m in 1..=3 {
        let rep = check_pseudo_closure(&hadamard_basis(&sylvester(m)).unwrap(), 2, tol);
        had_ok &= rep.verdict && rep.fully_eligible();
    }
    lines.push(format!("sylvester m=1..3 at k=2: {}", if had_ok { "closed" } else { "NOT closed" }));
    let mut neg_ok = true;
    for n in 2..=4 {
        let basis = canonical_basis(n);
        for k in 1..=6 {
            neg_ok &= !check_pseudo_closure(&basis, k, tol).verdict;
        }
    }
    lines.push(format!("canonical n=2..4, k=1..6: {}", if neg_ok { "all fail" } else { "SOME PASS" }));
    outcome(ok && had_ok && neg_ok, lines.join("; "))
}

/// Independent oracle: breadth-first closure of dense float matrices, keyed
/// by entries rounded to 1e-6.
fn dense_group_order(gens: &[CMatrix], cap: usize) -> usize {
    let key = |m: &CMatrix| -> Vec<(i64, i64)> {
        m.as_slice().iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect()
    };
    let id = CMatrix::identity(gens[0].n());
    let mut seen = HashSet::from([key(&id)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.matmul(g);
            if seen.insert(key(&y)) {
                assert!(seen.len() <= cap, "oracle group exceeded cap");
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn group_orders() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=5 {
        let gens: Vec<CMatrix> = fourier_basis(n).elements().to_vec();
        let oracle = dense_group_order(&gens, 10_000);
        let g = fourier_group(n, 1 << 20).unwrap();
        let bound = (n as u128).pow(n as u32 + 1);
        ok &= g.closed && g.order == oracle && oracle == n.pow(3) && (g.order as u128) <= bound;
        parts.push(format!("|F_{n}|={} (oracle {oracle}, bound {bound})", g.order));
    }
    for m in 1..=3 {
        let h = sylvester(m);
        let n = h.n();
        let g = hadamard_group(&h, 1 << 20).unwrap();
        let bound = hadamard_group_bound(n);
        ok &= g.closed && (g.order as u128) <= bound && (n as u128) * (1u128 << n) == bound;
        parts.push(format!("|Had_{n}|={} (bound {bound})", g.order));
    }
    outcome(ok, parts.join(", "))
}

fn is_permutation(m: &CMatrix) -> bool {
    let n = m.n();
    let ones = m.as_slice().iter().filter(|z| **z == c(1., 0.)).count();
    let zeros = m.as_slice().iter().filter(|z| **z == c(0., 0.)).count();
    ones == n
        && zeros == n * n - n
        && (0..n).all(|i| (0..n).filter(|&j| m[(i, j)] == c(1., 0.)).count() == 1)
        && (0..n).all(|j| (0..n).filter(|&i| m[(i, j)] == c(1., 0.)).count() == 1)
}

fn representation_t() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let rep = check_homomorphism(MapKind::TGroup, n, None, 0, SEED, 1e-12).unwrap();
        let dense_perm = fourier_group(n, 1 << 16)
            .unwrap()
            .elements
            .iter()
            .all(|g| rep_t(g).map(|t| t.n() == n * n && is_permutation(&t)).unwrap_or(false));
        let lin = check_homomorphism(MapKind::TLinear, n, None, 20, SEED, 1e-9).unwrap();
        let printed = lin.check(PRINTED_ADDITIVE_IDENTITY).expect("printed identity is reported");
        let flagged = !printed.pass && !lin.summary;
        ok &= rep.summary && dense_perm && flagged;
        parts.push(format!(
            "n={n}: multiplicative+injective+permutation {}, printed additive identity flagged failing {} (residual {:.2e})",
            rep.summary && dense_perm,
            flagged,
            printed.residual
        ));
    }
    outcome(ok, parts.join("; "))
}

fn representation_r() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in 1..=2 {
        let h = sylvester(m);
        let n = h.n();
        let rep = check_homomorphism(MapKind::R, n, Some(&h), 50, SEED, 1e-9).unwrap();
        let get = |name: &str| rep.check(name).unwrap_or_else(|| panic!("missing check {name}"));
        let perm = get("R basis images are permutation matrices").pass;
        let mult = get("R multiplicative (basis pairs)");
        let inj = get("R injective (random pairs)").pass;
        let lift = get("R group map multiplicative (Hadamard group)").pass;
        ok &= perm && mult.pass && inj;
        parts.push(format!(
            "n={n}: permutation images {perm}, injective on 50 pairs {inj}, multiplicative on basis pairs {} ({}), signed-permutation lift multiplicative {lift}",
            mult.pass,
            mult.detail.as_deref().unwrap_or("")
        ));
    }
    parts.push(
        "analysis: basis products leave the basis up to a sign (e.g. X·Z = −Q(1,1)), and the linear formula sends −Q to −σ-blocks rather than the swapped σ-blocks the product needs"
            .into(),
    );
    outcome(ok, parts.join("; "))
}

fn extraction_round_trip() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in 1..=3 {
        let h = sylvester(m);
        let ex = extract_hadamard(&hadamard_basis(&h).unwrap(), 1e-9).unwrap();
        let good = ex.hadamard.as_ref().is_some_and(|g| verify_hadamard(g).summary) && ex.report.summary;
        ok &= good;
        parts.push(format!("n={}: {} diagonal elements, verified {good}", h.n(), ex.diagonal_count));
    }
    outcome(ok, parts.join("; "))
}

fn dft_identification() -> Outcome {
    let mut ok = true;
    let mut worst_unitary = 0.0f64;
    let mut worst_chirp = 0.0f64;
    for n in 2..=8 {
        let id = dft_from_fourier_basis(n, 1e-12);
        let u = &id.matrix.scale_real(1.0 / (n as f64).sqrt());
        let uu = u.matmul(&u.adjoint());
        worst_unitary = worst_unitary.max(relative_residual(&CMatrix::identity(n), &uu));
        // chirp is checked here independently: diag(chirp)·F/√n reproduces the matrix
        let f = dft_matrix(n).scale_real(1.0 / (n as f64).sqrt());
        let rebuilt = CMatrix::diag(&id.chirp).matmul(&f);
        worst_chirp = worst_chirp.max(relative_residual(u, &rebuilt));
        ok &= id.report.summary;
    }
    ok &= worst_unitary <= 1e-12 && worst_chirp <= 1e-12;
    outcome(ok, format!("n=2..8; ‖UU†−I‖ ≤ {worst_unitary:.2e}, chirp relation residual ≤ {worst_chirp:.2e}"))
}

fn complex_free() -> Outcome {
    let mut r = rng(SEED);
    let mut ok = true;
    let mut float_worst = 0.0f64;
    for n in 1..=3 {
        for _ in 0..50 {
            let a = random_cyclo_matrix(n, 3, &mut r);
            let b = random_cyclo_matrix(n, 3, &mut r);
            let exact = a.mul(&b).unwrap();
            let via = multiply_complex_free(&a, &b).unwrap();
            ok &= via == exact;
            float_worst = float_worst.max(relative_residual(&a.eval().matmul(&b.eval()), &via.eval()));
        }
    }
    ok &= float_worst <= 1e-12;
    outcome(ok, format!("150 pairs over Q[ω₃], n=1..3, exact rational equality; float cross-check {float_worst:.2e}"))
}

fn twisted_convolution() -> Outcome {
    let mut ok = true;
    for n in 1..=6 {
        ok &= validate_structure_constants(&structure_constants(n), 1e-12).summary;
    }
    let struct_ok = ok;
    let mut r = rng(SEED);
    let mut worst = 0.0f64;
    for n in [2, 4, 8] {
        for _ in 0..50 {
            let a = random_matrix(n, &mut r);
            let b = random_matrix(n, &mut r);
            let direct = a.matmul(&b);
            let via = multiply_via_transform(&a, &b).unwrap();
            worst = worst.max((&via - &direct).frobenius_norm() / direct.frobenius_norm());
        }
    }
    ok &= worst <= 1e-9;
    let run = bench_multiply(&[4, 8, 16], 3, SEED).unwrap();
    let csv_path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance_bench.csv");
    write_bench_csv(&run.rows, std::fs::File::create(&csv_path).unwrap()).unwrap();
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header_ok =
        reader.headers().unwrap().iter().collect::<Vec<_>>() == ["n", "method", "rep", "wall_time_s", "residual"];
    let mut bench_worst = 0.0f64;
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        bench_worst = bench_worst.max(rec[4].parse::<f64>().unwrap());
        rows += 1;
    }
    ok &= header_ok && rows > 0 && bench_worst <= 1e-9;
    outcome(
        ok,
        format!(
            "structure constants n≤6 {struct_ok}; 150 random products worst {worst:.2e}; bench CSV {rows} rows, worst residual {bench_worst:.2e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "clock-and-shift basis correctness", fourier_basis_correctness),
        (2, "Pauli identification", pauli_identification),
        (3, "pseudo-closure", pseudo_closure),
        (4, "group orders", group_orders),
        (5, "representation T", representation_t),
        (6, "representation R", representation_r),
        (7, "Hadamard extraction round trip", extraction_round_trip),
        (8, "DFT identification", dft_identification),
        (9, "complex-free multiplication", complex_free),
        (10, "twisted convolution", twisted_convolution),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let out = run();
        let known_red = KNOWN_RED.contains(&id);
        let tag = match (out.pass, known_red) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected FAIL)",
        };
        println!("[{tag}] criterion {id:>2} {name}: {}", out.detail);
        if out.pass == known_red {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria match their expected outcome");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
