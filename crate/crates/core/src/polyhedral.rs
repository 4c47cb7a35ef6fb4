//! Lattice vectors, cones and polyhedra over `Q` in small rank.

pub mod cone;
pub mod linalg;
pub mod polyhedron;

pub use cone::{dual_cone, primitive_ray_generator, Cone, MAX_RANK};
pub use linalg::{LatticeVec, RatVec, Q};
pub use polyhedron::{
    cone_from_polyhedron_at_height, minkowski_weighted_sum, normal_fan, polyhedron_min, Polyhedron,
};
