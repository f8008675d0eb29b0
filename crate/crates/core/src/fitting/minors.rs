use itertools::Itertools;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::det::{determinant_in, rank};
use crate::error::{Error, Result};
use crate::laurent::{CoefficientRing, LaurentPoly};
use crate::matrix::Matrix;

/// Default cap on the number of minors evaluated by one ideal computation.
pub const DEFAULT_MINOR_BUDGET: u64 = 1_000_000;

const CHUNK: usize = 64;

/// How an ideal of `Λ` is classified from its GCD.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealClass {
    Zero,
    /// The GCD is a unit. Over a PID this is the whole ring; over `Λ` it is
    /// the whole ring after localization.
    Whole,
    Proper,
}

impl IdealClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IdealClass::Zero => "zero",
            IdealClass::Whole => "whole",
            IdealClass::Proper => "proper",
        }
    }
}

/// The canonical GCD of a minor ideal together with its classification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealGcd {
    pub class: IdealClass,
    pub gcd: LaurentPoly,
}

impl IdealGcd {
    pub fn zero(ring: CoefficientRing, nvars: usize) -> Self {
        IdealGcd {
            class: IdealClass::Zero,
            gcd: LaurentPoly::zero(ring, nvars),
        }
    }

    pub fn whole(ring: CoefficientRing, nvars: usize) -> Self {
        IdealGcd {
            class: IdealClass::Whole,
            gcd: LaurentPoly::one(ring, nvars),
        }
    }

    pub fn from_gcd(gcd: LaurentPoly) -> Self {
        let class = if gcd.is_zero() {
            IdealClass::Zero
        } else if gcd.is_unit() {
            IdealClass::Whole
        } else {
            IdealClass::Proper
        };
        IdealGcd {
            class,
            gcd: if class == IdealClass::Whole {
                LaurentPoly::one(gcd.ring(), gcd.nvars())
            } else {
                gcd.canonical_or_zero()
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.class == IdealClass::Zero
    }
}

/// Enumerates minors of matrices over a fixed ring under a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinorEngine {
    pub ring: CoefficientRing,
    pub nvars: usize,
    pub budget: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

impl MinorEngine {
    pub fn new(ring: CoefficientRing, nvars: usize) -> Self {
        MinorEngine {
            ring,
            nvars,
            budget: DEFAULT_MINOR_BUDGET,
        }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        MinorEngine { budget, ..self }
    }

    pub fn determinant(&self, m: &Matrix<LaurentPoly>) -> Result<LaurentPoly> {
        determinant_in(m, self.ring, self.nvars)
    }

    /// Number of `size x size` minors of an `rows x cols` matrix.
    pub fn minor_count(rows: usize, cols: usize, size: usize) -> u128 {
        binomial(rows, size).saturating_mul(binomial(cols, size))
    }

    /// The GCD of the ideal `I_size(m)` generated by all `size x size`
    /// minors, with `I_s = Λ` for `s <= 0` and `I_s = 0` beyond the matrix.
    ///
    /// Minors are visited in lexicographic order of (rows, columns) and the
    /// fold stops as soon as the running GCD is a unit.
    pub fn ideal_gcd(&self, m: &Matrix<LaurentPoly>, size: i64) -> Result<IdealGcd> {
        if size <= 0 {
            return Ok(IdealGcd::whole(self.ring, self.nvars));
        }
        let s = size as usize;
        if s > m.rows().min(m.cols()) {
            return Ok(IdealGcd::zero(self.ring, self.nvars));
        }
        let total = Self::minor_count(m.rows(), m.cols(), s);
        if total > 1 && s > rank(m)? {
            return Ok(IdealGcd::zero(self.ring, self.nvars));
        }
        let col_sets: Vec<Vec<usize>> = (0..m.cols()).combinations(s).collect();
        let pairs = (0..m.rows())
            .combinations(s)
            .flat_map(|r| col_sets.iter().map(move |c| (r.clone(), c)));
        let mut acc: Option<LaurentPoly> = None;
        let mut evaluated: u64 = 0;
        for chunk in &pairs.chunks(CHUNK) {
            let mut chunk: Vec<_> = chunk.collect();
            let remaining = self.budget.saturating_sub(evaluated) as usize;
            if remaining == 0 {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            chunk.truncate(remaining);
            evaluated += chunk.len() as u64;
            let dets = self.evaluate(m, &chunk)?;
            for d in dets {
                if d.is_zero() {
                    continue;
                }
                acc = Some(match acc {
                    None => d.canonical_or_zero(),
                    Some(g) => g.gcd(&d)?,
                });
            }
            if acc.as_ref().is_some_and(LaurentPoly::is_unit) {
                return Ok(IdealGcd::whole(self.ring, self.nvars));
            }
        }
        if (evaluated as u128) < total {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(IdealGcd::from_gcd(
            acc.unwrap_or_else(|| LaurentPoly::zero(self.ring, self.nvars)),
        ))
    }

    fn evaluate(&self, m: &Matrix<LaurentPoly>, chunk: &[(Vec<usize>, &Vec<usize>)]) -> Result<Vec<LaurentPoly>> {
        let one = |(r, c): &(Vec<usize>, &Vec<usize>)| self.determinant(&m.select(r, c));
        #[cfg(feature = "parallel")]
        {
            chunk.par_iter().map(one).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            chunk.iter().map(one).collect()
        }
    }
}
