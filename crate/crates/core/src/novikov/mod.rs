//! Monicity, twisted Novikov numbers and the vanishing and fibredness
//! criteria built on them.

mod class;
mod numbers;

pub use class::{has_mu_monic_ends, is_xi_monic, CohomologyClass};
pub use numbers::{
    delta_is_monic, fibred_obstruction, group_novikov_numbers, morse_lower_bounds, novikov_numbers,
    presentation_complex, vanishing_3mfd, FibredReport, NovikovDegree, NovikovNumbers, VanishingReport,
};
