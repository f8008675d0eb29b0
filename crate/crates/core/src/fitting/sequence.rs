use super::complex::ChainComplex;
use super::det::rank;
use super::minors::{IdealClass, IdealGcd, MinorEngine};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// The ideals `J^(k)_m = I_{χ_k - m + 1}(∂_{k+1})` of one degree, where
/// `χ_k = γ_k - γ_{k-1} + γ_{k-2} - ...`, over the index range where they
/// can differ from `0` and `Λ`. For `k <= 1` the index is `γ_k - γ_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSequence {
    pub degree: usize,
    /// First index of the stored segment, `1 - χ_{k-1}`.
    pub first_index: i64,
    /// `entries[i]` is `J_{first_index + i}`; the minor sizes run from
    /// `γ_k` down to `1`.
    pub entries: Vec<IdealGcd>,
    /// `A_k = γ_k - rank ∂_{k+1}`, the number of zero ideals in the segment.
    pub zero_count: usize,
}

impl FittingSequence {
    /// `J_m`, extended by `0` below the segment and `Λ` above it.
    pub fn ideal(&self, m: i64) -> IdealClass {
        let i = m - self.first_index;
        if i < 0 {
            IdealClass::Zero
        } else {
            self.entries.get(i as usize).map_or(IdealClass::Whole, |e| e.class)
        }
    }

    pub fn gcd(&self, m: i64) -> Option<&LaurentPoly> {
        let i = m - self.first_index;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.entries.get(i))
            .map(|e| &e.gcd)
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.entries.len() as i64 - 1
    }

    /// The GCDs `λ_1, λ_2, ...` of the proper ideals, in increasing order
    /// of the ideals; each divides its predecessor.
    pub fn reduced(&self) -> Vec<LaurentPoly> {
        self.entries
            .iter()
            .filter(|e| e.class == IdealClass::Proper)
            .map(|e| e.gcd.clone())
            .collect()
    }

    /// `κ_k`, the length of the reduced sequence.
    pub fn reduced_len(&self) -> usize {
        self.entries.iter().filter(|e| e.class == IdealClass::Proper).count()
    }
}

/// Successive quotients `λ_s / λ_{s+1}` with `λ_{B+1} = 1`.
pub fn torsion_quotients(lambdas: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    let mut out = Vec::with_capacity(lambdas.len());
    for (i, l) in lambdas.iter().enumerate() {
        let q = match lambdas.get(i + 1) {
            Some(next) => l
                .exact_div(next)?
                .ok_or_else(|| Error::Inconsistent("Fitting GCDs do not form a divisor chain".into()))?,
            None => l.clone(),
        };
        out.push(q.canonical_or_zero());
    }
    Ok(out)
}

/// The Fitting sequence of `c` in degree `k`.
pub fn fitting_sequence(c: &ChainComplex, k: usize, engine: &MinorEngine) -> Result<FittingSequence> {
    if k > c.top() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: c.top(),
        });
    }
    let gk = c.rank(k as i64);
    // χ_{k-1}: an alternating sum, so that trivial summands in any degree
    // leave the labels alone
    let chi_prev: i64 = (0..k)
        .map(|j| if (k - 1 - j).is_multiple_of(2) { 1 } else { -1 } * c.rank(j as i64) as i64)
        .sum();
    let d = c.boundary(k as i64 + 1);
    let r = rank(&d)?;
    let mut entries = Vec::with_capacity(gk);
    for size in (1..=gk).rev() {
        entries.push(if size > r {
            IdealGcd::zero(c.ring(), c.nvars())
        } else {
            engine.ideal_gcd(&d, size as i64)?
        });
    }
    Ok(FittingSequence {
        degree: k,
        first_index: 1 - chi_prev,
        entries,
        zero_count: gk - r,
    })
}

/// Homology of a complex over a principal ideal domain, read off from the
/// Fitting sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PidHomology {
    pub degree: usize,
    pub betti: usize,
    pub torsion_count: usize,
    /// Cyclic orders of the torsion summands, largest first.
    pub torsion: Vec<LaurentPoly>,
}

/// `b_k = A_k + A_{k-1} - γ_{k-1}`, `q_k = κ_k` and the torsion orders, for
/// every degree of `c`. The ring must be a PID: `Z`, `Q`, `Z/p`, or a
/// one-variable Laurent ring over a field.
pub fn homology_over_pid(c: &ChainComplex, engine: &MinorEngine) -> Result<Vec<PidHomology>> {
    let pid = c.nvars() == 0 || (c.nvars() == 1 && c.ring().is_field());
    if !pid {
        return Err(Error::Invalid(format!(
            "homology over {} with {} variables is not over a PID",
            c.ring(),
            c.nvars()
        )));
    }
    let mut out = Vec::new();
    let mut prev_a = 0usize;
    for k in 0..=c.top() {
        let seq = fitting_sequence(c, k, engine)?;
        let a = seq.zero_count;
        let betti = (a + prev_a)
            .checked_sub(c.rank(k as i64 - 1))
            .ok_or_else(|| Error::Inconsistent("negative Betti number".into()))?;
        let lambdas = seq.reduced();
        out.push(PidHomology {
            degree: k,
            betti,
            torsion_count: lambdas.len(),
            torsion: torsion_quotients(&lambdas)?,
        });
        prev_a = a;
    }
    Ok(out)
}
