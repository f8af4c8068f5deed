//! The map `Ψ` from well bicoloured trees to rooted simple outerplanar maps,
//! together with face tracing, canonical codes, counting and enumeration.

mod code;
mod count;
mod enumerate;
mod faces;
mod map;
mod psi;

pub use code::{canonical_code, MapCode};
pub use count::{binomial, branch_counts, catalan, count_by_branch, count_well_bicoloured};
pub use enumerate::{
    enumerate_well_bicoloured, enumerate_well_bicoloured_bounded, plane_tree_shapes,
    DEFAULT_EXHAUSTIVE_BOUND,
};
pub use faces::{certify, trace_faces, Face, OuterplanarCertificate};
pub use map::{Dart, RotationMap};
pub use psi::psi;
