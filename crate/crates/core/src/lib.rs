//! Exact machinery for polytope realization spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: exact rationals, matrices, affine primitives;
//! * [`lattice`]: convex hulls, face lattices, realization checks;
//! * [`steinitz`]: 3-polytopal graph recognition and integer realization;
//! * [`constructions`]: Lawrence extensions, connected sums, flat facets;
//! * [`semialgebra`]: polynomial systems describing realization spaces;
//! * [`realizer`]: numerical search with exact certification;
//! * [`format`]: the JSON document formats used by the command line tool.

pub mod constructions;
pub mod corpus;
pub mod error;
pub mod format;
pub mod lattice;
pub mod numeric;
pub mod realizer;
pub mod selftest;
pub mod semialgebra;
pub mod steinitz;

pub use error::{Error, Result};
