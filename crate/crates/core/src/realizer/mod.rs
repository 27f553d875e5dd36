//! Numerical search in realization spaces with exact certification.

mod certify;
mod problem;
mod search;

pub use certify::{certify, tangent_dimension, violated_condition, Certification, Rejection, REPAIR_TOLERANCE};
pub use problem::{gradient_check, ConstraintKind, DetConstraint, RealizationProblem};
pub use search::{find_realization, RealizerParams, SearchReport, StepRule};
