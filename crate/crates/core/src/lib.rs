//! Exact spectral computations on the round odd-dimensional sphere.
//!
//! Everything here lives in the ring ℚ[π²]: harmonic-space dimensions,
//! eigenvalues, linearization integrals of the zonal orthogonal polynomials,
//! zeta-regularized mode sums, the Fourier data of the singular product
//! kernels, and the second variation of `log det′Δ − (2/n) log V` along
//! conformal directions built from spherical harmonics.
//!
//! The crate is `no_std` and only needs `alloc`. IO, serialization and the
//! command-line front end live in the `sphdet` companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod hessians;
pub mod kernels;
mod numeric;
pub mod poly;
pub mod regsum;
pub mod scalar;
pub mod special;
pub mod sphere;

pub use error::{Error, Result};
pub use poly::{Parity, PoleRational, PoleTerm, Polynomial, RationalFunction};
pub use scalar::{ExactScalar, Rational, Sign};
pub use sphere::{ModeData, SphereSpec};
