//! Exact feasibility of homogeneous linear systems by Fourier-Motzkin
//! elimination, with a witness recovered by back-substitution.

use num_traits::{One, Signed, Zero};

use crate::laurent::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `> 0`
    Greater,
    /// `>= 0`
    AtLeast,
    /// `= 0`
    Equal,
}

/// `⟨a, x⟩ + c  (relation)  0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
    pub relation: Relation,
}

impl Constraint {
    pub fn homogeneous(d: &[i64], relation: Relation) -> Self {
        Constraint {
            coeffs: d.iter().map(|&x| Scalar::from_integer(x.into())).collect(),
            constant: Scalar::zero(),
            relation,
        }
    }

    fn value(&self, x: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (a, b)| acc + a * b)
    }

    pub fn holds(&self, x: &[Scalar]) -> bool {
        let v = self.value(x);
        match self.relation {
            Relation::Greater => v.is_positive(),
            Relation::AtLeast => !v.is_negative(),
            Relation::Equal => v.is_zero(),
        }
    }

    /// Scales so that the last nonzero coefficient (or the constant) is ±1.
    fn normalized(mut self) -> Self {
        let pivot = self
            .coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .or(Some(&self.constant).filter(|c| !c.is_zero()))
            .cloned();
        if let Some(p) = pivot {
            let s = p.abs();
            for c in &mut self.coeffs {
                *c = &*c / &s;
            }
            self.constant = &self.constant / &s;
        }
        self
    }

    fn trivially_true(&self) -> Option<bool> {
        if self.coeffs.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.holds(&[]))
    }
}

/// How the eliminated variable is recovered.
enum Step {
    /// `x_n = -(⟨a', x'⟩ + c) / a_n`.
    Substitute(Constraint),
    /// `x_n` is chosen between the bounds given by these constraints.
    Bounds(Vec<Constraint>),
}

fn dedup(cs: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut out: Vec<Constraint> = Vec::with_capacity(cs.len());
    for c in cs {
        match c.trivially_true() {
            Some(true) => continue,
            Some(false) => return None,
            None => {}
        }
        let c = c.normalized();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Some(out)
}

/// A point satisfying every constraint, or `None` when the system is
/// infeasible. All constraints must have the same number of variables.
pub fn feasible_point(constraints: &[Constraint], nvars: usize) -> Option<Vec<Scalar>> {
    let mut system = dedup(constraints.to_vec())?;
    let mut steps = Vec::with_capacity(nvars);
    for n in (0..nvars).rev() {
        let eq = system
            .iter()
            .position(|c| c.relation == Relation::Equal && !c.coeffs[n].is_zero());
        if let Some(i) = eq {
            let e = system.swap_remove(i);
            let an = e.coeffs[n].clone();
            let next: Vec<Constraint> = system
                .iter()
                .map(|c| {
                    // c - (c_n / a_n) e, which has no x_n
                    let f = &c.coeffs[n] / &an;
                    Constraint {
                        coeffs: c.coeffs.iter().zip(&e.coeffs).map(|(x, y)| x - &f * y).collect(),
                        constant: &c.constant - &f * &e.constant,
                        relation: c.relation,
                    }
                })
                .collect();
            steps.push(Step::Substitute(e));
            system = dedup(next)?;
            continue;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in system {
            if c.coeffs[n].is_positive() {
                pos.push(c);
            } else if c.coeffs[n].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                // p/p_n - q/q_n eliminates x_n; both factors are positive
                let (fp, fq) = (Scalar::one() / &p.coeffs[n], -Scalar::one() / &q.coeffs[n]);
                let relation = if p.relation == Relation::Greater || q.relation == Relation::Greater {
                    Relation::Greater
                } else {
                    Relation::AtLeast
                };
                rest.push(Constraint {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a * &fp + b * &fq).collect(),
                    constant: &p.constant * &fp + &q.constant * &fq,
                    relation,
                });
            }
        }
        let mut bounds = pos;
        bounds.extend(neg);
        steps.push(Step::Bounds(bounds));
        system = dedup(rest)?;
    }
    // every remaining constraint is constant and was checked by `dedup`
    let mut x = vec![Scalar::zero(); nvars];
    // variables were eliminated from the last, so replaying in reverse
    // recovers them from the first
    for (n, step) in steps.into_iter().rev().enumerate() {
        x[n] = match step {
            Step::Substitute(e) => {
                let mut rest = e.value(&x);
                rest -= &e.coeffs[n] * &x[n];
                -rest / &e.coeffs[n]
            }
            Step::Bounds(bs) => choose(&bs, &x, n),
        };
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}

fn choose(bounds: &[Constraint], x: &[Scalar], n: usize) -> Scalar {
    let mut lower: Option<(Scalar, bool)> = None;
    let mut upper: Option<(Scalar, bool)> = None;
    for c in bounds {
        let a = &c.coeffs[n];
        let mut others = c.value(x);
        others -= a * &x[n];
        let bound = -others / a;
        let strict = c.relation == Relation::Greater;
        if a.is_positive() {
            if lower
                .as_ref()
                .is_none_or(|(l, s)| bound > *l || (bound == *l && strict && !s))
            {
                lower = Some((bound, strict));
            }
        } else if upper
            .as_ref()
            .is_none_or(|(u, s)| bound < *u || (bound == *u && strict && !s))
        {
            upper = Some((bound, strict));
        }
    }
    match (lower, upper) {
        (None, None) => Scalar::zero(),
        (Some((l, _)), None) => l.floor() + Scalar::one(),
        (None, Some((u, _))) => u.ceil() - Scalar::one(),
        (Some((l, _)), Some((u, _))) => (l + u) / Scalar::from_integer(2.into()),
    }
}

/// Whether the open cone `{ξ : ⟨ξ, d⟩ > 0 for all d}` is nonempty.
pub fn strictly_feasible(gt: &[Vec<i64>], nvars: usize) -> Option<Vec<Scalar>> {
    let cs: Vec<Constraint> = gt
        .iter()
        .map(|d| Constraint::homogeneous(d, Relation::Greater))
        .collect();
    feasible_point(&cs, nvars)
}
