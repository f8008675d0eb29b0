use serde_json::{json, Value};

use super::class::{has_mu_monic_ends, is_xi_monic, CohomologyClass};
use crate::error::{Error, Result};
use crate::fitting::{
    fitting_sequence, resolution_from_presentation, torsion_quotients, twisted_fitting, ChainComplex, IdealGcd,
    MinorEngine,
};
use crate::laurent::LaurentPoly;
use crate::presentations::Presentation;
use crate::representations::SubstitutionMap;
use crate::wada::{twisted_alexander, TwistedAlexander};

/// Novikov numbers of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovDegree {
    pub degree: usize,
    pub bhat: usize,
    pub qhat: usize,
    /// `τ_i = λ_i / λ_{i+1}` over the non-monic part of the reduced sequence.
    pub tau: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovNumbers {
    pub xi: CohomologyClass,
    pub degrees: Vec<NovikovDegree>,
    /// `false` when `ξ` is not a monomorphism, in which case the counts are
    /// computed but not covered by the Betti/torsion theorem.
    pub injective: bool,
}

impl NovikovNumbers {
    pub fn get(&self, degree: usize) -> Option<&NovikovDegree> {
        self.degrees.iter().find(|d| d.degree == degree)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "xi": self.xi.to_string(),
            "injective": self.injective,
            "bhat": self.degrees.iter().map(|d| d.bhat).collect::<Vec<_>>(),
            "qhat": self.degrees.iter().map(|d| d.qhat).collect::<Vec<_>>(),
            "tau": self.degrees.iter()
                .map(|d| d.tau.iter().map(|t| t.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// The chain complex `ψ(C_*)` of the presentation 2-complex.
pub fn presentation_complex(p: &Presentation, psi: &SubstitutionMap) -> Result<ChainComplex> {
    resolution_from_presentation(p).twisted(psi)
}

/// `b̂_k = A_k + A_{k-1} - γ_{k-1}`, `q̂_k` the number of nonzero non-`ξ`-monic
/// GCDs in the reduced Fitting sequence, and their successive quotients.
pub fn novikov_numbers(c: &ChainComplex, xi: &CohomologyClass, engine: &MinorEngine) -> Result<NovikovNumbers> {
    if xi.dim() != c.nvars() {
        return Err(Error::VariableMismatch(c.nvars(), xi.dim()));
    }
    if xi.is_zero() {
        return Err(Error::Invalid("the cohomology class must be nonzero".into()));
    }
    let mut degrees = Vec::new();
    let mut prev_a = 0usize;
    for k in 0..=c.top() {
        let seq = fitting_sequence(c, k, engine)?;
        let mut lambdas = Vec::new();
        for e in &seq.entries {
            if !e.is_zero() && !is_xi_monic(&e.gcd, xi)? {
                lambdas.push(e.gcd.clone());
            }
        }
        let bhat = (seq.zero_count + prev_a)
            .checked_sub(c.rank(k as i64 - 1))
            .ok_or_else(|| Error::Inconsistent("negative Novikov Betti number".into()))?;
        degrees.push(NovikovDegree {
            degree: k,
            bhat,
            qhat: lambdas.len(),
            tau: torsion_quotients(&lambdas)?,
        });
        prev_a = seq.zero_count;
    }
    Ok(NovikovNumbers {
        xi: xi.clone(),
        degrees,
        injective: xi.is_injective(),
    })
}

/// Novikov numbers of a group in degrees `0..=max_degree <= 2`, from the
/// presentation 2-complex.
pub fn group_novikov_numbers(
    p: &Presentation,
    psi: &SubstitutionMap,
    xi: &CohomologyClass,
    max_degree: usize,
    engine: &MinorEngine,
) -> Result<NovikovNumbers> {
    if max_degree > 2 {
        return Err(Error::DegreeOutOfRange {
            degree: max_degree,
            max: 2,
        });
    }
    let mut n = novikov_numbers(&presentation_complex(p, psi)?, xi, engine)?;
    n.degrees.truncate(max_degree + 1);
    Ok(n)
}

/// `m_i ≥ b̂_i + q̂_i + q̂_{i-1}` for each computed degree.
pub fn morse_lower_bounds(nums: &NovikovNumbers) -> Vec<usize> {
    let mut prev_q = 0;
    let mut out = Vec::with_capacity(nums.degrees.len());
    for d in &nums.degrees {
        out.push(d.bhat + d.qhat + prev_q);
        prev_q = d.qhat;
    }
    out
}

/// Vanishing of `Ĥ_1` for a 3-manifold group, decided by `ξ`-monicity of
/// `A(G, ρ_π)`, with the Wada route evaluated alongside.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub vanishes: bool,
    pub monic: bool,
    pub witness: IdealGcd,
    /// `ξ`-monicity of `Δ_{G,ρ̄}`, when that invariant is defined.
    pub wada_monic: Option<bool>,
    pub delta: Option<TwistedAlexander>,
    pub numbers: NovikovNumbers,
}

impl VanishingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "vanishes": self.vanishes,
            "monic": self.monic,
            "witness": self.witness.gcd.to_string(),
            "wada_monic": self.wada_monic,
            "hypothesis": "valid under the 3-manifold hypothesis",
            "numbers": self.numbers.to_json(),
        })
    }
}

/// `ξ`-monicity of a twisted Alexander polynomial: numerator and
/// denominator both monic.
pub fn delta_is_monic(delta: &TwistedAlexander, xi: &CohomologyClass) -> Result<bool> {
    match delta {
        TwistedAlexander::OneVariable(f) => Ok(is_xi_monic(f.numerator(), xi)? && is_xi_monic(f.denominator(), xi)?),
        TwistedAlexander::MultiVariable(p) => is_xi_monic(p, xi),
    }
}

pub fn vanishing_3mfd(
    p: &Presentation,
    psi: &SubstitutionMap,
    xi: &CohomologyClass,
    engine: &MinorEngine,
) -> Result<VanishingReport> {
    let witness = twisted_fitting(p, psi, 1, engine)?;
    let monic = is_xi_monic(&witness.gcd, xi)?;
    let numbers = group_novikov_numbers(p, psi, xi, 2, engine)?;
    let delta = match twisted_alexander(p, psi, engine) {
        Ok(d) => Some(d),
        Err(Error::NoAdmissibleColumn) => None,
        Err(e) => return Err(e),
    };
    let wada_monic = delta.as_ref().map(|d| delta_is_monic(d, xi)).transpose()?;
    Ok(VanishingReport {
        vanishes: monic,
        monic,
        witness,
        wada_monic,
        delta,
        numbers,
    })
}

#[derive(Clone, Debug)]
pub struct FibredReport {
    pub obstructed: bool,
    pub witness: IdealGcd,
    pub mu: CohomologyClass,
    pub delta: Option<TwistedAlexander>,
}

impl FibredReport {
    pub fn to_json(&self) -> Value {
        json!({
            "obstructed": self.obstructed,
            "witness": self.witness.gcd.to_string(),
            "mu": self.mu.to_string(),
            "delta": self.delta.as_ref().map(|d| d.to_json()),
        })
    }
}

/// Obstruction to fibring over the circle with fibre class dual to the
/// meridian: `A(G, ρ_π)` must be monic at both ends.
pub fn fibred_obstruction(p: &Presentation, psi: &SubstitutionMap, engine: &MinorEngine) -> Result<FibredReport> {
    if psi.nvars() != 1 {
        return Err(Error::Invalid(format!(
            "the fibredness test needs a map onto Z, got rank {}",
            psi.nvars()
        )));
    }
    let mu = CohomologyClass::ones(1);
    let witness = twisted_fitting(p, psi, 1, engine)?;
    let monic = !witness.is_zero() && has_mu_monic_ends(&witness.gcd, &mu)?;
    let delta = match twisted_alexander(p, psi, engine) {
        Ok(d) => Some(d),
        Err(Error::NoAdmissibleColumn) => None,
        Err(e) => return Err(e),
    };
    Ok(FibredReport {
        obstructed: !monic,
        witness,
        mu,
        delta,
    })
}
