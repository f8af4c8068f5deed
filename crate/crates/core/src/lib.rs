//! Coloured plane trees, the bijection to rooted simple outerplanar maps, a
//! geodesic state machine for root distances, and the random sampling and
//! Monte Carlo machinery built on top of them.

pub mod bijection;
pub mod error;
pub mod experiments;
pub mod geodesic;
pub mod oracle;
pub mod sampling;
pub mod tree;

pub use bijection::{canonical_code, certify, psi, Dart, MapCode, RotationMap};
pub use error::{Error, Result};
pub use geodesic::{distance_to_root, trace, AlgState, Case, GeodesicTrace};
pub use tree::{Colour, ColouredPlaneTree, NodeId};
