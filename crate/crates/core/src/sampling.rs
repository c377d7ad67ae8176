//! Seeded random inputs for sampled property checks and benchmarks.

use num::complex::Complex64;
use num::rational::BigRational;
use num::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matcore::{CMatrix, CycloMatrix, Cyclotomic};

pub const DEFAULT_SEED: u64 = 0x5eed_ba515;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Small random rationals `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
pub fn random_cyclotomic<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Cyclotomic {
    let coeffs = (0..m)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4))))
        .collect();
    Cyclotomic::new(m, coeffs).expect("m coefficients")
}

pub fn random_cyclo_matrix<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> CycloMatrix {
    CycloMatrix::from_fn(n, m, |_, _| random_cyclotomic(m, rng)).expect("uniform root order")
}
