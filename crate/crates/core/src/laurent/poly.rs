use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::ring::{CoefficientRing, Scalar};
use crate::error::{Error, Result};

/// A Laurent polynomial in `Λ = R[t1^±, ..., tk^±]`.
///
/// Terms are kept in a sorted map under the graded-lex order of
/// [`Monomial`]; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: CoefficientRing,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero(ring: CoefficientRing, nvars: usize) -> Self {
        LaurentPoly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: CoefficientRing, nvars: usize) -> Self {
        Self::monomial(ring, Scalar::one(), Monomial::one(nvars))
    }

    pub fn constant(ring: CoefficientRing, nvars: usize, c: Scalar) -> Self {
        Self::monomial(ring, c, Monomial::one(nvars))
    }

    pub fn from_int(ring: CoefficientRing, nvars: usize, c: i64) -> Self {
        Self::constant(ring, nvars, ring.from_int(c))
    }

    /// The variable `t_{index+1}`.
    pub fn var(ring: CoefficientRing, nvars: usize, index: usize) -> Self {
        Self::monomial(ring, Scalar::one(), Monomial::var(nvars, index))
    }

    pub fn monomial(ring: CoefficientRing, c: Scalar, m: Monomial) -> Self {
        let nvars = m.nvars();
        let c = ring.reduce(c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { ring, nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(ring: CoefficientRing, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(ring, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        let ring = self.ring;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = ring.add(existing, c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                let c = ring.reduce(c.clone());
                if !c.is_zero() {
                    self.terms.insert(m, c);
                }
            }
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exactly the monomials carrying a nonzero coefficient.
    pub fn newton_support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// A unit of `Λ` is `c * m` with `c` a unit of `R`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.ring.is_unit(self.terms.values().next().unwrap())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant polynomials (all exponents zero) as a scalar.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let ring = self.ring;
        let mut out = Self::zero(ring, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma + mb, &ring.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let ring = self.ring;
        let mut out = Self::zero(ring, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &ring.mul(a, c));
        }
        out
    }

    pub fn shift(&self, by: &Monomial) -> Self {
        LaurentPoly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m + by, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring, self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Per-variable `(min, max)` exponents; `None` for zero.
    pub fn exponent_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.exponents().to_vec();
        let mut hi = lo.clone();
        for m in it {
            for (i, &e) in m.exponents().iter().enumerate() {
                lo[i] = lo[i].min(e);
                hi[i] = hi[i].max(e);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in `Λ`.
    ///
    /// Long division along the graded-lex order; every quotient monomial
    /// must lie in the exponent box `box(self) - box(divisor)`, which bounds
    /// the loop when the division is not exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_compatible(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.ring, self.nvars)));
        }
        let ring = self.ring;
        let (lo_a, hi_a) = self.exponent_box().unwrap();
        let (lo_b, hi_b) = divisor.exponent_box().unwrap();
        let (lead_m, lead_c) = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(ring, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m - lead_m;
            let in_box = qm
                .exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e >= lo_a[i] - lo_b[i] && e <= hi_a[i] - hi_b[i]);
            if !in_box {
                return Ok(None);
            }
            let Some(qc) = ring.exact_div(c, lead_c)? else {
                return Ok(None);
            };
            for (bm, bc) in &divisor.terms {
                rem.add_term(&qm + bm, &ring.neg(&ring.mul(&qc, bc)));
            }
            quot.add_term(qm, &qc);
        }
        Ok(Some(quot))
    }

    /// Whether `divisor` divides `self` in `Λ`.
    pub fn divisible_by(&self, divisor: &Self) -> Result<bool> {
        Ok(self.exact_div(divisor)?.is_some())
    }

    /// The representative of the associate class of `self`: minimal
    /// exponent 0 in each variable, graded-lex leading coefficient positive
    /// over `Z` and equal to 1 over a field.
    pub fn canonical_form(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("canonical form"));
        }
        Ok(self.canonical_or_zero())
    }

    /// As [`Self::canonical_form`], but maps zero to zero.
    pub fn canonical_or_zero(&self) -> Self {
        let Some((lo, _)) = self.exponent_box() else {
            return self.clone();
        };
        let shifted = self.shift(&-Monomial::new(lo));
        let u = self.ring.normalizing_unit(shifted.leading_term().unwrap().1);
        if u.is_one() {
            shifted
        } else {
            shifted.scale(&u)
        }
    }

    /// Equality up to multiplication by a unit of `Λ`.
    pub fn associated(&self, other: &Self) -> bool {
        self.canonical_or_zero() == other.canonical_or_zero()
    }

    /// Substitutes `t_i -> t_i^{-1}`.
    pub fn conjugate(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.inverse(), c.clone())).collect(),
        }
    }

    /// Reinterprets the coefficients in another ring.
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<Self> {
        let mut out = Self::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &ring.element(c.clone())?);
        }
        Ok(out)
    }

    /// Coefficients as a dense vector in powers of `t_{var+1}` (after
    /// shifting so the minimal exponent is 0). Each coefficient is an
    /// element of `Λ` not involving `t_{var+1}`.
    pub(crate) fn coefficients_in(&self, var: usize) -> Vec<LaurentPoly> {
        let Some((lo, hi)) = self.exponent_box() else {
            return Vec::new();
        };
        let mut out = vec![Self::zero(self.ring, self.nvars); (hi[var] - lo[var] + 1) as usize];
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let d = e[var] - lo[var];
            e[var] = 0;
            out[d as usize].add_term(Monomial::new(e), c);
        }
        out
    }

    pub(crate) fn from_coefficients_in(
        ring: CoefficientRing,
        nvars: usize,
        var: usize,
        coeffs: &[LaurentPoly],
    ) -> Self {
        let mut out = Self::zero(ring, nvars);
        for (d, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut e = m.exponents().to_vec();
                e[var] += d as i64;
                out.add_term(Monomial::new(e), c);
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    /// Panics on ring or arity mismatch; use [`LaurentPoly::try_add`] to
    /// recover.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("compatible Laurent polynomials")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("compatible Laurent polynomials")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("compatible Laurent polynomials")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&-Scalar::one())
    }
}
