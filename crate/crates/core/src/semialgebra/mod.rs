//! Primary semialgebraic sets: realization-space systems, stable projection
//! fibers, rational map checks, projective scales and the Shor compiler.

mod family;
mod fiber;
mod polynomial;
mod ratmap;
mod scale;
mod shor;
mod system;

pub use family::{fit_polynomial, shor_family_system, shor_growth, GrowthReport, PolynomialFit, FAMILY_SOLUTION};
pub use fiber::{fiber_of_stable_projection, Fiber, FiberPoint, StableProjectionSpec};
pub use polynomial::{Monomial, PolynomialZ};
pub use ratmap::{rational_map_check, RationalFunction, RationalMapReport, SampleOutcome};
pub use scale::{projective_scale, LinePoint, ProjectiveScale, ScaleValue};
pub use shor::{
    shor_compile, shor_solution_transport, Completeness, ShorCompilation, ShorConstraint, ShorNormalForm, ShorOp,
};
pub(crate) use system::first_independent;
pub use system::{
    configuration_from_variables, default_basis, emit_realization_system, evaluate_membership, free_vertices,
    realization_variables, SemialgebraicSystem,
};
