//! Exact Green functions and spectral densities for the Robin boundary
//! condition in one dimension.
//!
//! The library is organized around the operator `T = d/dx - kappa`, which
//! maps Robin boundary data to Dirichlet data and whose inverse turns the
//! classical image-charge kernels into their Robin counterparts:
//!
//! * [`specfun`] — the special functions every closed form needs (scaled
//!   complementary error function, principal-value exponential integral,
//!   associated Laguerre polynomials).
//! * [`quad`] — adaptive Gauss–Kronrod quadrature used by the integral
//!   representations and by the test oracles.
//! * [`field`] — scalar fields on the half-line with declared decay.
//! * [`transform`] — the transform itself plus every half-line kernel:
//!   wave, heat, Schrödinger, cylinder (Poisson), and their traces.
//! * [`interval`] — the exact pulse algebra for the wave kernel on an
//!   interval with a Robin and a Dirichlet endpoint, and the trace
//!   decomposition N + P + A + B.
//! * [`spectral`] — eigenvalues of the Robin–Dirichlet problem and the
//!   family of periodic-orbit spectral-density series, selectable by name.

pub mod error;
pub mod field;
pub mod interval;
pub mod quad;
pub mod specfun;
pub mod spectral;
pub mod transform;

pub use error::{Error, Result};
