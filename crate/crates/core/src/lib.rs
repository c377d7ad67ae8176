//! Complete orthogonal matrix bases and what can be computed with them.
//!
//! * [`bases`] — canonical, clock-and-shift, unitary- and Hadamard-induced
//!   bases of `n×n` complex matrices, with analysis/synthesis.
//! * [`pseudoclosure`] — whether products of basis elements stay in the basis
//!   up to a diagonal factor.
//! * [`hadamard`] — Hadamard matrices and their recovery from a basis.
//! * [`grouprep`] — finite groups generated by the bases and their
//!   permutation representations.
//! * [`transform`] — multiplication through the twisted convolution of
//!   coefficient tables.

pub mod bases;
pub mod error;
pub mod grouprep;
pub mod hadamard;
pub mod io;
pub mod matcore;
pub mod pseudoclosure;
pub mod report;
pub mod sampling;
pub mod transform;

pub use error::{Error, Result};
pub use matcore::{CMatrix, Monomial, DEFAULT_TOL};
pub use report::{Check, VerificationReport};
