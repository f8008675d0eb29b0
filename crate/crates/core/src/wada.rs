//! The W-invariant of a matrix over a group ring and Wada's twisted
//! Alexander polynomial.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fitting::{twisted_fitting, IdealClass, IdealGcd, MinorEngine};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::novikov::{has_mu_monic_ends, CohomologyClass};
use crate::presentations::{GroupRingElement, Presentation};
use crate::representations::SubstitutionMap;

/// A fraction `p / q` in `Σ_μ^{-1} Λ`, where `Σ_μ` is the multiplicative set
/// of polynomials with `μ`-monic ends. In one variable with `μ = 1` this is
/// the set of polynomials whose extreme coefficients are both units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedFraction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
    mu: CohomologyClass,
}

impl LocalizedFraction {
    /// Reduces `num / den` and puts both parts in canonical form. Fails if
    /// the denominator is not in `Σ_μ`.
    pub fn new(num: LaurentPoly, den: LaurentPoly, mu: CohomologyClass) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !has_mu_monic_ends(&den, &mu)? {
            return Err(Error::Invalid(format!(
                "denominator {den} does not have monic ends for μ = ({mu})"
            )));
        }
        if num.is_zero() {
            return Ok(Self::zero(&den, mu));
        }
        let g = num.gcd(&den)?;
        let n = num.exact_div(&g)?.expect("gcd divides");
        let d = den.exact_div(&g)?.expect("gcd divides");
        Ok(LocalizedFraction {
            numerator: n.canonical_or_zero(),
            denominator: d.canonical_or_zero(),
            mu,
        })
    }

    fn zero(like: &LaurentPoly, mu: CohomologyClass) -> Self {
        LocalizedFraction {
            numerator: LaurentPoly::zero(like.ring(), like.nvars()),
            denominator: LaurentPoly::one(like.ring(), like.nvars()),
            mu,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn mu(&self) -> &CohomologyClass {
        &self.mu
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn in_sigma(&self, x: &LaurentPoly) -> Result<bool> {
        has_mu_monic_ends(x, &self.mu)
    }

    /// `a ≐ self`: equality up to a unit of `Σ_μ^{-1} Λ`. The units there are
    /// exactly the fractions with numerator and denominator in `Σ_μ`.
    pub fn associated_to(&self, a: &LaurentPoly) -> Result<bool> {
        match (a.is_zero(), self.is_zero()) {
            (true, true) => return Ok(true),
            (true, false) | (false, true) => return Ok(false),
            _ => {}
        }
        // a / self = (a * den) / num
        let top = a.try_mul(&self.denominator)?;
        let g = top.gcd(&self.numerator)?;
        let x = top.exact_div(&g)?.expect("gcd divides");
        let y = self.numerator.exact_div(&g)?.expect("gcd divides");
        Ok(self.in_sigma(&x)? && self.in_sigma(&y)?)
    }

    /// Whether `a` divides `self` in `Σ_μ^{-1} Λ`.
    pub fn divisible_by(&self, a: &LaurentPoly) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        if a.is_zero() {
            return Ok(false);
        }
        // self / a = num / (den * a); reduce and test the denominator
        let bottom = self.denominator.try_mul(a)?;
        let g = bottom.gcd(&self.numerator)?;
        let rest = bottom.exact_div(&g)?.expect("gcd divides");
        self.in_sigma(&rest)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "numerator": self.numerator.to_string(),
            "denominator": self.denominator.to_string(),
            "mu": self.mu.to_string(),
        })
    }
}

impl fmt::Display for LocalizedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator, self.denominator)
    }
}

/// `det ψ(B_j)^S · det ψ(a_i) = ε · det ψ(B_i)^S · det ψ(a_j)` holds with
/// `ε = (-1)^{n(i+j)}`, the sign of moving one `n`-column block past
/// `|i - j| - 1` others.
pub fn column_sign(n: usize, i: usize, j: usize) -> i64 {
    if (n * (i + j)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The W-invariant of `B` with respect to `α` and `ψ`, computed by
/// suppressing column `j`.
#[derive(Clone, Debug)]
pub struct WInvariant {
    pub column: usize,
    /// `Q_j`, the GCD of the maximal minors of `ψ(B_j)`.
    pub q: IdealGcd,
    /// `det ψ(a_j)`.
    pub p: LaurentPoly,
}

/// Checks `ψ(B) ψ(α) = 0`.
pub fn check_product_zero(
    b: &Matrix<GroupRingElement>,
    alpha: &Matrix<GroupRingElement>,
    psi: &SubstitutionMap,
) -> Result<()> {
    if b.cols() != alpha.rows() || alpha.cols() != 1 {
        return Err(Error::Dimension("B and α have incompatible shapes".into()));
    }
    let prod = crate::fitting::product(&psi.psi_matrix(b), &psi.psi_matrix(alpha), psi.ring(), psi.nvars())?;
    if prod.iter().any(|e| !e.is_zero()) {
        return Err(Error::Invalid("ψ(B)·ψ(α) is not zero".into()));
    }
    Ok(())
}

fn column_ok(p: &LaurentPoly, mu: &CohomologyClass) -> Result<bool> {
    Ok(!p.is_zero() && (p.nvars() == 0 || has_mu_monic_ends(p, mu)?))
}

pub(crate) fn block_det(el: &GroupRingElement, psi: &SubstitutionMap, engine: &MinorEngine) -> Result<LaurentPoly> {
    engine.determinant(&psi.psi(el))
}

/// The default suppressed column: the first generator whose `π`-image is a
/// basis element `t_i^{±1}` and whose `det ψ(1 - g)` is in `Σ_μ`; failing
/// that, the first admissible column of any kind.
pub fn default_column(
    alpha: &Matrix<GroupRingElement>,
    psi: &SubstitutionMap,
    mu: &CohomologyClass,
    engine: &MinorEngine,
) -> Result<usize> {
    let images = psi.abelianization().images();
    let mut fallback = None;
    for j in 0..alpha.rows() {
        let p = block_det(&alpha[(j, 0)], psi, engine)?;
        if !column_ok(&p, mu)? {
            continue;
        }
        let basis = images
            .get(j)
            .is_some_and(|m| m.exponents().iter().map(|e| e.abs()).sum::<i64>() == 1);
        if basis {
            return Ok(j);
        }
        fallback.get_or_insert(j);
    }
    fallback.ok_or(Error::NoAdmissibleColumn)
}

/// `Q_j(B)` and `det ψ(a_j)`.
pub fn w_invariant(
    b: &Matrix<GroupRingElement>,
    alpha: &Matrix<GroupRingElement>,
    psi: &SubstitutionMap,
    j: usize,
    engine: &MinorEngine,
) -> Result<WInvariant> {
    check_product_zero(b, alpha, psi)?;
    if j >= b.cols() {
        return Err(Error::Dimension(format!("column {j} out of range")));
    }
    let p = block_det(&alpha[(j, 0)], psi, engine)?;
    if p.is_zero() {
        return Err(Error::NoAdmissibleColumn);
    }
    let bj = psi.psi_matrix(&b.without_column(j));
    let q = engine.ideal_gcd(&bj, bj.cols() as i64)?;
    Ok(WInvariant { column: j, q, p })
}

impl WInvariant {
    pub fn fraction(&self, mu: CohomologyClass) -> Result<LocalizedFraction> {
        LocalizedFraction::new(self.q.gcd.clone(), self.p.clone(), mu)
    }
}

/// Wada's invariant `Δ_{G,ρ̄}` in the ring appropriate to the rank of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedAlexander {
    /// `k = 1`: an element of `Σ^{-1} Λ`.
    OneVariable(LocalizedFraction),
    /// `k ≥ 2`: an element of `Λ`.
    MultiVariable(LaurentPoly),
}

impl TwistedAlexander {
    pub fn is_zero(&self) -> bool {
        match self {
            TwistedAlexander::OneVariable(f) => f.is_zero(),
            TwistedAlexander::MultiVariable(p) => p.is_zero(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        match self {
            TwistedAlexander::OneVariable(f) => f.numerator(),
            TwistedAlexander::MultiVariable(p) => p,
        }
    }

    pub fn regime(&self) -> &'static str {
        match self {
            TwistedAlexander::OneVariable(_) => "one-variable",
            TwistedAlexander::MultiVariable(_) => "multi-variable",
        }
    }

    /// The value as a fraction over `Σ_μ`, for comparisons.
    pub fn as_fraction(&self, mu: &CohomologyClass) -> Result<LocalizedFraction> {
        match self {
            TwistedAlexander::OneVariable(f) => Ok(f.clone()),
            TwistedAlexander::MultiVariable(p) => {
                LocalizedFraction::new(p.clone(), LaurentPoly::one(p.ring(), p.nvars()), mu.clone())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TwistedAlexander::OneVariable(f) => {
                let mut v = f.to_json();
                v["regime"] = json!(self.regime());
                v["value"] = json!(f.to_string());
                v
            }
            TwistedAlexander::MultiVariable(p) => json!({
                "regime": self.regime(),
                "numerator": p.to_string(),
                "denominator": "1",
                "value": p.to_string(),
            }),
        }
    }
}

impl fmt::Display for TwistedAlexander {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistedAlexander::OneVariable(x) => write!(f, "{x}"),
            TwistedAlexander::MultiVariable(p) => write!(f, "{p}"),
        }
    }
}

/// `Δ_{G,ρ̄}` with the default column and `μ = (1, ..., 1)`.
pub fn twisted_alexander(p: &Presentation, psi: &SubstitutionMap, engine: &MinorEngine) -> Result<TwistedAlexander> {
    let k = psi.nvars();
    if k == 0 {
        return Err(Error::TrivialAbelianization);
    }
    let mu = CohomologyClass::ones(k);
    let alpha = p.fundamental_column();
    let j = default_column(&alpha, psi, &mu, engine)?;
    twisted_alexander_at(p, psi, j, engine)
}

/// `Δ_{G,ρ̄}` computed by suppressing generator `j`.
pub fn twisted_alexander_at(
    p: &Presentation,
    psi: &SubstitutionMap,
    j: usize,
    engine: &MinorEngine,
) -> Result<TwistedAlexander> {
    let k = psi.nvars();
    if k == 0 {
        return Err(Error::TrivialAbelianization);
    }
    let w = w_invariant(&p.alexander_matrix(), &p.fundamental_column(), psi, j, engine)?;
    if k == 1 {
        return Ok(TwistedAlexander::OneVariable(w.fraction(CohomologyClass::ones(1))?));
    }
    if w.q.is_zero() {
        return Ok(TwistedAlexander::MultiVariable(w.q.gcd));
    }
    let delta = w.q.gcd.exact_div(&w.p)?.ok_or_else(|| {
        Error::Inconsistent(format!(
            "det ψ(1 - g_{}) = {} does not divide Q = {}",
            j + 1,
            w.p,
            w.q.gcd
        ))
    })?;
    Ok(TwistedAlexander::MultiVariable(delta.canonical_or_zero()))
}

/// Outcome of comparing `A(G, ρ_π)` with `Δ_{G,ρ̄}` in the localized ring.
#[derive(Clone, Debug)]
pub struct Crosscheck {
    pub fitting: IdealGcd,
    pub delta: TwistedAlexander,
    pub mu: CohomologyClass,
    /// `A` divides `Δ` in `Σ_μ^{-1} Λ`.
    pub divides: bool,
    /// For deficiency-one presentations: `A ≐ Δ` in `Σ_μ^{-1} Λ`.
    pub equal: Option<bool>,
    /// Both sides vanish.
    pub vacuous: bool,
}

impl Crosscheck {
    pub fn holds(&self) -> bool {
        self.vacuous || (self.divides && self.equal != Some(false))
    }
}

/// Compares the Fitting route with the Wada route.
pub fn crosscheck_divisibility(
    p: &Presentation,
    psi: &SubstitutionMap,
    mu: Option<CohomologyClass>,
    engine: &MinorEngine,
) -> Result<Crosscheck> {
    let k = psi.nvars();
    let mu = mu.unwrap_or_else(|| CohomologyClass::ones(k));
    let fitting = twisted_fitting(p, psi, 1, engine)?;
    let delta = twisted_alexander(p, psi, engine)?;
    let frac = delta.as_fraction(&mu)?;
    let vacuous = fitting.class == IdealClass::Zero && delta.is_zero();
    let divides = frac.divisible_by(&fitting.gcd)?;
    let equal = if p.deficiency() == 1 {
        Some(frac.associated_to(&fitting.gcd)?)
    } else {
        None
    };
    Ok(Crosscheck {
        fitting,
        delta,
        mu,
        divides,
        equal,
        vacuous,
    })
}
