use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{format_scalar, parse_scalar, LaurentPoly, Monomial, Scalar};

/// A class `ξ ∈ Hom(H, Q)`, given by its values on the basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    xi: Vec<Scalar>,
}

impl CohomologyClass {
    pub fn new(xi: Vec<Scalar>) -> Self {
        CohomologyClass { xi }
    }

    pub fn from_ints(xi: &[i64]) -> Self {
        CohomologyClass {
            xi: xi.iter().map(|&x| Scalar::from_integer(x.into())).collect(),
        }
    }

    /// `(1, ..., 1)`.
    pub fn ones(k: usize) -> Self {
        Self::from_ints(&vec![1; k])
    }

    /// Parses `2,1,-3` or `1/2, -1`.
    pub fn parse(text: &str) -> Result<Self> {
        let xi = text
            .split(',')
            .map(|s| parse_scalar(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyClass { xi })
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.xi
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(Zero::is_zero)
    }

    pub fn negate(&self) -> Self {
        CohomologyClass {
            xi: self.xi.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CohomologyClass {
            xi: self.xi.iter().map(|x| x * c).collect(),
        }
    }

    /// `⟨ξ, h⟩`.
    pub fn eval(&self, h: &Monomial) -> Scalar {
        self.xi
            .iter()
            .zip(h.exponents())
            .fold(Scalar::zero(), |acc, (x, &e)| acc + x * Scalar::from_integer(e.into()))
    }

    /// Whether `ξ: H -> R` is a monomorphism. With rational values this only
    /// happens in rank one.
    pub fn is_injective(&self) -> bool {
        self.xi.len() == 1 && !self.xi[0].is_zero()
    }

    fn check(&self, x: &LaurentPoly) -> Result<()> {
        if self.is_zero() {
            return Err(Error::Invalid("the cohomology class must be nonzero".into()));
        }
        if self.dim() != x.nvars() {
            return Err(Error::VariableMismatch(self.dim(), x.nvars()));
        }
        Ok(())
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.xi.iter().map(format_scalar).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// True iff the maximum of `⟨ξ, ·⟩` on the support of `x` is attained at a
/// single monomial whose coefficient is a unit. Zero is never monic.
pub fn is_xi_monic(x: &LaurentPoly, xi: &CohomologyClass) -> Result<bool> {
    xi.check(x)?;
    let mut best: Option<(Scalar, &Scalar)> = None;
    let mut tie = false;
    for (m, c) in x.terms() {
        let v = xi.eval(m);
        match &best {
            Some((b, _)) if v < *b => {}
            Some((b, _)) if v == *b => tie = true,
            _ => {
                best = Some((v, c));
                tie = false;
            }
        }
    }
    Ok(match best {
        None => false,
        Some((_, c)) => !tie && x.ring().is_unit(c),
    })
}

/// Monic for both `μ` and `-μ`: both extreme terms are units.
pub fn has_mu_monic_ends(x: &LaurentPoly, mu: &CohomologyClass) -> Result<bool> {
    Ok(is_xi_monic(x, mu)? && is_xi_monic(x, &mu.negate())?)
}
