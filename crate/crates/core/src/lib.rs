//! Cauchy random projections for ℓ₁ distances.
//!
//! Points in `R^D` are mapped by a dense `k × D` matrix of iid standard
//! Cauchy entries. Distances in the image are measured with
//!
//! ```text
//! ρ(x, y) = (1/k) Σ ξ(|x_i − y_i|),   ξ(a) = ln(1 + √a) + ½ ln(1 + a)
//! ```
//!
//! and `ρ` concentrates around `μ(‖x − y‖₁)`, where `μ(λ) = E ξ(λ|X|)` has a
//! closed form. Inverting `μ` turns a sketch distance back into an ℓ₁
//! estimate.
//!
//! The crate is `no_std` (it needs `alloc`). All transcendental functions go
//! through [`libm`] so results do not depend on the platform's libm.
//!
//! Modules:
//! - [`specfun`]: polylogarithms, the inverse tangent integral, Legendre χ.
//! - [`cauchy`]: sampling and the law of `|X|`.
//! - [`metric`]: `ξ`, `ρ` and sketched points.
//! - [`moments`]: `μ`, its inverse, `E ln(1 + λ|X|)` and second-moment bounds.
//! - [`concentration`]: tail bounds, Chernoff rates and the dimension planner.
//! - [`sketch`]: projection matrices, projection and ℓ₁ estimation.
//! - [`verify`]: quadrature and Monte Carlo oracles plus runnable suites.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too; frozen
// reference values keep every digit they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod sum;

pub mod cauchy;
pub mod concentration;
pub mod metric;
pub mod moments;
pub mod sketch;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
