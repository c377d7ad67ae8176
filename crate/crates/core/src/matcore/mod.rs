//! Matrix arithmetic shared by every other module.
//!
//! Two lanes: [`CMatrix`] for float complex matrices compared up to a
//! relative Frobenius tolerance, and the exact [`Monomial`] / [`Cyclotomic`]
//! types for group enumeration and closure checks.

pub mod cyclotomic;
pub mod matrix;
pub mod monomial;
pub mod rational;

pub use cyclotomic::{cyc_mul, CycloMatrix, Cyclotomic};
pub use matrix::{
    approx_eq, entrywise_power, entrywise_product, frob_inner, kron, relative_residual, root_of_unity, CMatrix,
    DEFAULT_TOL,
};
pub use monomial::Monomial;
pub use rational::RationalMatrix;

/// `monomial_compose`: exact product of two monomial matrices.
pub fn monomial_compose(p: &Monomial, q: &Monomial) -> crate::Result<Monomial> {
    p.compose(q)
}

/// `monomial_to_dense`.
pub fn monomial_to_dense(p: &Monomial) -> CMatrix {
    p.to_dense()
}
