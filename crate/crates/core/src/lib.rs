//! Twisted Fitting invariants, twisted Alexander polynomials and
//! Novikov-homology numbers of finitely presented groups, computed with exact
//! arithmetic over multivariate Laurent polynomial rings.

pub mod cones;
pub mod error;
pub mod fitting;
pub mod ingest;
pub mod laurent;
pub mod matrix;
pub mod novikov;
pub mod presentations;
pub mod representations;
pub mod wada;

pub use error::{Error, Result};
