//! Numerical laboratory for the Hessian-metric geometry of the unit ball
//! of `C^n` and the exponential Bergman space attached to the weight
//! `exp(-psi)` with `psi(z) = 1/(1 - |z|^2)`.
//!
//! The crate is organised around five areas:
//!
//! * [`geometry`] — closed forms for the complex Hessian of `psi`, curve
//!   length and certified two-sided estimates of the induced distance,
//!   membership tests for metric balls and their product-region sandwich,
//!   Monte Carlo ball volumes, and separated covering lattices.
//! * [`quadrature`] — seeded stratified Monte Carlo over the ball, an
//!   importance-mixture sampler for boundary-concentrated integrands,
//!   adaptive 1-D quadrature, and the radial/angular building blocks of
//!   weighted monomial norms.
//! * [`funcspace`] — polynomial (monomial-expansion) functions, the ball
//!   automorphisms, exponential test functions with their norm estimates,
//!   and the weighted sub-mean-value statistic.
//! * [`carleson`] — measures on the ball, the averaged transform `mu_hat`,
//!   ball-ratio statistics and trend-based Carleson / vanishing-Carleson
//!   verdicts.
//! * [`operators`] — Cesaro operators with boundedness/compactness
//!   statistics, a truncated-basis reproducing kernel, Toeplitz matrices
//!   and the Berezin-style symbol transform.
//!
//! All randomised routines take explicit 64-bit seeds and are
//! deterministic for a fixed configuration. The crate is `no_std`
//! compatible (with `alloc`); the companion CLI crate carries IO and file
//! formats.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

mod error;
mod hermitian;
mod point;

pub mod carleson;
pub mod funcspace;
pub mod geometry;
pub mod operators;
pub mod quadrature;

pub use error::Error;
pub use hermitian::HermitianForm;
pub use point::{Point, BOUNDARY_EPSILON};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
