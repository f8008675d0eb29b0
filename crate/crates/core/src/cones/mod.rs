//! Cones of classes `ξ` for which a Laurent polynomial is `ξ`-monic.

mod fm;
mod system;

pub use fm::{feasible_point, strictly_feasible, Constraint, Relation};
pub use system::{acyclicity_cones, angle_sweep, intersect, Cone, ConeSystem, ConeTag, SweepRow};
