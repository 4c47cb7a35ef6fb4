//! Colorings, Demazure roots and coherent families classifying horizontal
//! additive group actions on normal affine varieties of complexity one.

pub mod coherent;
pub mod coloring;
pub mod enumerate;
pub mod probe;
pub mod roots;
pub mod toricity;

pub use coherent::{
    coherent_validate, eps, floor_condition_check, weight_box, CoherenceReport, CoherentFamily, ConditionReport,
    FloorOutcome, FloorWitness, Violation,
};
pub use coloring::{associated_cones, coloring_validate, AssociatedCones, Coloring, ColoringReport};
pub use enumerate::{candidate_colorings, candidate_grid, enumerate_coherent, EnumerationBounds};
pub use probe::{equivalence_probe, ProbeConfig, ProbeReport};
pub use roots::{demazure_root_check, demazure_roots_enumerate};
pub use toricity::{toricity_check, ToricityReport, ToricityVerdict};
