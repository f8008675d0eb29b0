//! Finitely presented groups: free words, group-ring elements, Fox
//! derivatives, abelianization and the Alexander matrix.

mod abelianize;
mod fox;
mod group_ring;
mod presentation;
mod word;

pub use abelianize::{abelianize, Abelianization};
pub use fox::fox_derivative;
pub use group_ring::GroupRingElement;
pub use presentation::Presentation;
pub use word::{FreeWord, Letter};
