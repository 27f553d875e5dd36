//! Lawrence extensions, connected sums and the facet types that force
//! flatness.

mod consum;
mod flatness;
mod lawrence;
mod pascal;
mod projective;

pub use consum::{connected_sum, ConnectedSum, PLACEMENT_STEPS};
pub use flatness::{flatness_class, tent_polytope, tent_table, FlatnessClass, TentEntry, TENT_MAX_GON};
pub use lawrence::{default_heights, lawrence_extension, lawrence_polytope, reconstruct_point};
pub use pascal::{default_hexagon, pascal_5polytope, pascal_configuration, pascal_polytope, pascal_line_side, DEFAULT_PARABOLA_X};
pub use projective::{projective_equivalence, ProjectiveTransform};
