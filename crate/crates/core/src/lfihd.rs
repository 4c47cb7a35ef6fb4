//! Locally finite iterative higher derivations: the operator `∂_θ` of a
//! coherent family, the toric operator of a Demazure root, and checks of the
//! axioms, stability, horizontality and kernel on finite windows.

pub mod element;
pub mod kernel;
pub mod operator;
pub mod verify;

pub use element::GradedElement;
pub use kernel::{kernel_in_box, lattice_basis, lattice_contains, KernelPiece, KernelReport};
pub use operator::{
    apply_order, build_operator, toric_root_operator, ApplicationResult, DthetaOperator, Lfihd, ToricRootOperator,
};
pub use verify::{verify_axioms, verify_horizontal, verify_stability, AxiomCheck, AxiomReport, StabilityReport, StabilityWitness};
