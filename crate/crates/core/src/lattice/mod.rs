//! Convex hulls, face lattices and combinatorial equivalence.

mod bitset;
mod face_lattice;
mod graph;
mod hull;
mod iso;

pub use face_lattice::{lattice_isomorphic_under, Face, FaceLattice};
pub use graph::Graph;
pub use hull::{
    candidate_basis, convex_hull, coordinate_bits, face_lattice, is_realization, HullFacet,
    HullResult,
};
pub use iso::find_isomorphism;
