//! Exact arithmetic in `Λ = R[t1^±, ..., tk^±]` for `R` one of `Z`, `Q`,
//! `Z/p`.

mod gcd;
mod monomial;
mod poly;
mod ring;
mod text;

pub use monomial::Monomial;
pub use poly::LaurentPoly;
pub use ring::{CoefficientRing, Scalar};
pub use text::{format_scalar, parse_poly, parse_scalar};
