//! Exact generalized permutation matrices with root-of-unity phases.
//!
//! A [`Monomial`] of size `n` and phase modulus `m` has exactly one nonzero
//! entry per row: row `j` holds `ω_m^{phase_exp[j]}` in column `perm[j]`.
//! Values are kept in lowest terms (the modulus is divided by the gcd of all
//! exponents), so structural equality is semantic equality and the type can
//! be hashed for group enumeration.

use num::complex::Complex64;
use num::integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::matcore::matrix::{root_of_unity, CMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial")]
pub struct Monomial {
    n: usize,
    m: u64,
    perm: Vec<usize>,
    phase_exp: Vec<u64>,
}

#[derive(Deserialize)]
struct RawMonomial {
    n: usize,
    m: u64,
    perm: Vec<usize>,
    phase_exp: Vec<u64>,
}

impl TryFrom<RawMonomial> for Monomial {
    type Error = Error;
    fn try_from(raw: RawMonomial) -> Result<Self> {
        let mon = Monomial::new(raw.perm, raw.phase_exp, raw.m)?;
        check_dims(raw.n, mon.n)?;
        Ok(mon)
    }
}

impl Monomial {
    /// Validates and reduces to lowest terms. Exponents are taken mod `m`.
    pub fn new(perm: Vec<usize>, phase_exp: Vec<u64>, m: u64) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::Invalid("monomial of size 0".into()));
        }
        if m == 0 {
            return Err(Error::Invalid("phase modulus must be positive".into()));
        }
        check_dims(n, phase_exp.len())?;
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid(format!("perm {perm:?} is not a bijection on 0..{n}")));
            }
            seen[p] = true;
        }
        let phase_exp = phase_exp.into_iter().map(|e| e % m).collect();
        Ok(Self::reduced(perm, phase_exp, m))
    }

    fn reduced(perm: Vec<usize>, mut phase_exp: Vec<u64>, m: u64) -> Self {
        let g = phase_exp.iter().fold(m, |g, &e| gcd(g, e));
        for e in &mut phase_exp {
            *e /= g;
        }
        Monomial { n: perm.len(), m: m / g, perm, phase_exp }
    }

    pub fn identity(n: usize) -> Self {
        Monomial { n, m: 1, perm: (0..n).collect(), phase_exp: vec![0; n] }
    }

    /// Clock-and-shift element `Σ_j ω_n^{j·l} e_j e_{j+k}ᵗ`.
    pub fn fourier(n: usize, k: usize, l: usize) -> Self {
        let perm = (0..n).map(|j| (j + k) % n).collect();
        let phase = (0..n).map(|j| ((j * l) % n) as u64).collect();
        Self::reduced(perm, phase, n as u64)
    }

    /// Shift by `k` with row signs `signs[j] ∈ {±1}` (modulus 2).
    pub fn signed_shift(k: usize, signs: &[i8]) -> Result<Self> {
        let n = signs.len();
        let perm = (0..n).map(|j| (j + k) % n).collect();
        let phase = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(0),
                -1 => Ok(1),
                other => Err(Error::Invalid(format!("sign {other} is not ±1"))),
            })
            .collect::<Result<Vec<u64>>>()?;
        Monomial::new(perm, phase, 2)
    }

    /// Recognizes a dense matrix as a monomial with phases that are `m`-th roots of unity.
    pub fn from_dense(a: &CMatrix, m: u64, tol: f64) -> Option<Self> {
        let n = a.n();
        let mut perm = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);
        for (j, row) in a.rows().enumerate() {
            let mut hit = None;
            for (c, z) in row.iter().enumerate() {
                if z.norm() > tol {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(c);
                }
            }
            let c = hit?;
            let z = a[(j, c)];
            let e = (0..m).find(|&e| (root_of_unity(e as i64, m as usize) - z).norm() <= tol)?;
            perm.push(c);
            phase.push(e);
        }
        Monomial::new(perm, phase, m).ok()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Phase modulus in lowest terms.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phase_exp(&self) -> &[u64] {
        &self.phase_exp
    }

    pub fn is_identity(&self) -> bool {
        self.m == 1 && self.perm.iter().enumerate().all(|(j, &p)| j == p)
    }

    /// Phase exponents expressed over modulus `target`, if `m` divides it.
    pub fn phases_over(&self, target: u64) -> Option<Vec<u64>> {
        if target == 0 || !target.is_multiple_of(self.m) {
            return None;
        }
        let f = target / self.m;
        Some(self.phase_exp.iter().map(|e| e * f).collect())
    }

    /// Exact product `self · other`.
    pub fn compose(&self, other: &Monomial) -> Result<Monomial> {
        check_dims(self.n, other.n)?;
        let m = lcm(self.m, other.m);
        let (fa, fb) = (m / self.m, m / other.m);
        let mut perm = Vec::with_capacity(self.n);
        let mut phase = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mid = self.perm[j];
            perm.push(other.perm[mid]);
            phase.push((self.phase_exp[j] * fa + other.phase_exp[mid] * fb) % m);
        }
        Ok(Self::reduced(perm, phase, m))
    }

    pub fn inverse(&self) -> Monomial {
        let mut perm = vec![0; self.n];
        let mut phase = vec![0; self.n];
        for j in 0..self.n {
            let p = self.perm[j];
            perm[p] = j;
            phase[p] = (self.m - self.phase_exp[j]) % self.m;
        }
        Self::reduced(perm, phase, self.m)
    }

    /// Multiplies by the global scalar `ω_modulus^e`.
    pub fn times_root(&self, e: u64, modulus: u64) -> Monomial {
        let m = lcm(self.m, modulus);
        let (fa, fb) = (m / self.m, m / modulus);
        let phase = self.phase_exp.iter().map(|p| (p * fa + (e % modulus) * fb) % m).collect();
        Self::reduced(self.perm.clone(), phase, m)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for j in 0..self.n {
            out[(j, self.perm[j])] = self.phase(j);
        }
        out
    }

    fn phase(&self, j: usize) -> Complex64 {
        root_of_unity(self.phase_exp[j] as i64, self.m as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::matrix::approx_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_neutral() {
        let q = Monomial::fourier(4, 1, 3);
        assert_eq!(Monomial::identity(4).compose(&q).unwrap(), q);
        assert_eq!(Monomial::identity(3).to_dense(), CMatrix::identity(3));
    }

    #[test]
    fn n2_products_match_dense_oracle() {
        let b10 = Monomial::fourier(2, 1, 0);
        let b01 = Monomial::fourier(2, 0, 1);
        let prod = b10.compose(&b01).unwrap();
        let expected = CMatrix::from_rows(vec![vec![c(0., 0.), c(-1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap();
        assert_eq!(prod.to_dense(), expected);
        assert_eq!(prod.to_dense(), b10.to_dense().matmul(&b01.to_dense()));

        let b11 = Monomial::fourier(2, 1, 1);
        let sq = b11.compose(&b11).unwrap();
        assert_eq!(sq, Monomial::identity(2).times_root(1, 2));
        assert_eq!(sq.to_dense(), CMatrix::identity(2).scale_real(-1.0));
    }

    #[test]
    fn to_dense_examples() {
        let m = Monomial::new(vec![1, 0], vec![0, 1], 2).unwrap();
        let expected = CMatrix::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(-1., 0.), c(0., 0.)]]).unwrap();
        assert_eq!(m.to_dense(), expected);

        let d = Monomial::new(vec![0, 1, 2], vec![0, 1, 2], 3).unwrap();
        assert_eq!(d.to_dense(), CMatrix::diag(&[c(1., 0.), root_of_unity(1, 3), root_of_unity(2, 3)]));
    }

    #[test]
    fn fourier_b11_agrees_with_defining_sum() {
        let n = 5;
        let dense = CMatrix::from_fn(n, |i, j| if j == (i + 1) % n { root_of_unity(i as i64, n) } else { c(0., 0.) });
        assert!(approx_eq(&dense, &Monomial::fourier(n, 1, 1).to_dense(), 1e-12));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Monomial::new(vec![0, 0], vec![0, 0], 2).is_err());
        assert!(Monomial::new(vec![0, 1], vec![0], 2).is_err());
        assert!(Monomial::new(vec![0], vec![0], 0).is_err());
        assert!(Monomial::identity(2).compose(&Monomial::identity(3)).is_err());
    }

    #[test]
    fn lowest_terms_make_equality_semantic() {
        let a = Monomial::new(vec![0, 1], vec![0, 2], 4).unwrap();
        let b = Monomial::new(vec![0, 1], vec![0, 1], 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), 2);
        assert_eq!(a.phases_over(6), Some(vec![0, 3]));
        assert_eq!(a.phases_over(3), None);
    }

    #[test]
    fn serde_round_trip_validates() {
        let m = Monomial::fourier(3, 2, 1);
        let js = serde_json::to_string(&m).unwrap();
        assert!(js.contains("\"phase_exp\""));
        let back: Monomial = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"n":2,"m":2,"perm":[1,1],"phase_exp":[0,0]}"#;
        assert!(serde_json::from_str::<Monomial>(bad).is_err());
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(0u64..12, n), 1u64..7)
            .prop_map(|(perm, phase, m)| Monomial::new(perm, phase, m).unwrap())
    }

    proptest! {
        #[test]
        fn compose_matches_dense_product((p, q) in (1usize..6).prop_flat_map(|n| (arb_monomial(n), arb_monomial(n)))) {
            let exact = p.compose(&q).unwrap().to_dense();
            let dense = p.to_dense().matmul(&q.to_dense());
            prop_assert!(approx_eq(&dense, &exact, 1e-12));
        }

        #[test]
        fn inverse_is_two_sided(p in (1usize..6).prop_flat_map(arb_monomial)) {
            let id = Monomial::identity(p.n());
            prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
            prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
        }

        #[test]
        fn dense_round_trip(p in (1usize..6).prop_flat_map(arb_monomial)) {
            let back = Monomial::from_dense(&p.to_dense(), p.modulus(), 1e-9).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
