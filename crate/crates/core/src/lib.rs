//! Exact machinery for horizontal `G_a`-actions on complexity-one affine
//! torus varieties given by polyhedral divisors over the affine or
//! projective line.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: base fields `Q`, `F_p`, `F_p(λ)`, polynomials in `t`,
//!   rational functions, binomials and truncated power series.
//! * [`polyhedral`]: rational cones and polyhedra of rank at most 4.
//! * [`curve`]: closed points of `A¹`/`P¹`, Q-divisors and global sections.
//! * [`tvariety`]: polyhedral divisors, graded pieces and generators.
//! * [`classifier`]: colorings, Demazure roots and coherent families.
//! * [`lfihd`]: the operators `∂_θ` and `∂_e` together with their
//!   verification suites.

pub mod arith;
pub mod classifier;
pub mod curve;
mod error;
pub mod lfihd;
pub mod polyhedral;
pub mod tvariety;

pub use error::{Error, Result};
