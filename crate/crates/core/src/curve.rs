//! Closed points, Q-divisors and global sections on the affine and projective line.

pub mod divisor;
pub mod point;

pub use divisor::{divisor_floor_deg, h0_generators, principal_divisor, H0Module, QDivisor};
pub use point::{insep_profile, parse_point, point_validate, Certificate, ClosedPoint, Curve, InsepProfile, Policy};
