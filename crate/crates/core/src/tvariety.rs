//! Affine varieties with a torus action of complexity one, given by a
//! polyhedral divisor on the affine or projective line.

pub mod degree;
pub mod divisor;
pub mod generators;

pub use degree::{base_change_profile, deg_restricted, linearity_fan, BaseChangeEntry, LinearityCone};
pub use divisor::{
    graded_piece, membership, pdiv_eval, pdiv_validate, GradedPiece, PolyhedralDivisor, ValidationReport,
};
pub use generators::{algebra_generators, GeneratorBounds, GeneratorSet};
