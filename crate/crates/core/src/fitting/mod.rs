//! Determinants, minor ideals and Fitting invariants over `Λ`.

mod complex;
mod det;
mod minors;
mod sequence;
mod twisted;

pub use complex::ChainComplex;
pub use det::{determinant, determinant_in, product, rank};
pub use minors::{IdealClass, IdealGcd, MinorEngine, DEFAULT_MINOR_BUDGET};
pub use sequence::{fitting_sequence, homology_over_pid, torsion_quotients, FittingSequence, PidHomology};
pub use twisted::{resolution_from_presentation, twisted_fitting, ResolutionFront};
