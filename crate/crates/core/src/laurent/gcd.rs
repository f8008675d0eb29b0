//! Multivariate GCD in `R[t1^±, ..., tk^±]` by recursive primitive
//! polynomial remainder sequences.
//!
//! A polynomial is viewed as univariate in its last active variable with
//! coefficients in the ring of the remaining ones. Contents are computed
//! recursively, and each pseudo-remainder is replaced by its primitive part
//! to keep coefficient growth in check.

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use crate::error::Result;

impl LaurentPoly {
    /// A GCD in `Λ`, in canonical form. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.try_add(other)?;
        if self.is_zero() {
            return Ok(other.canonical_or_zero());
        }
        if other.is_zero() {
            return Ok(self.canonical_or_zero());
        }
        let a = strip_monomial(self);
        let b = strip_monomial(other);
        Ok(poly_gcd(&a, &b, self.nvars()).canonical_or_zero())
    }

    /// Canonical GCD of a family; zero for an empty or all-zero family.
    pub fn gcd_all<'a, I>(items: I) -> Result<Option<LaurentPoly>>
    where
        I: IntoIterator<Item = &'a LaurentPoly>,
    {
        let mut acc: Option<LaurentPoly> = None;
        for p in items {
            acc = Some(match acc {
                None => p.canonical_or_zero(),
                Some(g) => g.gcd(p)?,
            });
        }
        Ok(acc)
    }
}

fn strip_monomial(p: &LaurentPoly) -> LaurentPoly {
    let (lo, _) = p.exponent_box().expect("nonzero");
    p.shift(&-Monomial::new(lo))
}

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.exact_div(b)
        .expect("compatible operands")
        .expect("divisor known to divide")
}

/// GCD of nonzero polynomials with non-negative exponents that involve only
/// the first `active` variables.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly, active: usize) -> LaurentPoly {
    if active == 0 {
        let ring = a.ring();
        let ca = a.as_constant().expect("constant");
        let cb = b.as_constant().expect("constant");
        return LaurentPoly::constant(ring, a.nvars(), ring.gcd(&ca, &cb));
    }
    let var = active - 1;
    let ua = a.coefficients_in(var);
    let ub = b.coefficients_in(var);
    let cont_a = content(&ua, var);
    let cont_b = content(&ub, var);
    let cont = poly_gcd(&cont_a, &cont_b, var);

    let mut f = primitive(&ua, &cont_a);
    let mut g = primitive(&ub, &cont_b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = pseudo_remainder(&f, &g);
        f = g;
        g = if r.is_empty() {
            r
        } else {
            let c = content(&r, var);
            primitive(&r, &c)
        };
    }
    let ring = a.ring();
    let nvars = a.nvars();
    let h = if f.len() == 1 {
        LaurentPoly::one(ring, nvars)
    } else {
        let c = content(&f, var);
        LaurentPoly::from_coefficients_in(ring, nvars, var, &primitive(&f, &c))
    };
    &cont * &h
}

/// GCD of the coefficients of a univariate polynomial over the sub-ring in
/// the first `var` variables.
fn content(coeffs: &[LaurentPoly], var: usize) -> LaurentPoly {
    let mut acc: Option<LaurentPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.clone(),
            Some(g) => {
                if g.is_unit() {
                    return g;
                }
                poly_gcd(&g, c, var)
            }
        });
    }
    acc.expect("nonzero univariate polynomial")
}

fn primitive(coeffs: &[LaurentPoly], content: &LaurentPoly) -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = coeffs.iter().map(|c| exact(c, content)).collect();
    trim(&mut out);
    out
}

fn trim(coeffs: &mut Vec<LaurentPoly>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// `lc(g)^e * f mod g` for dense univariate polynomials, `deg f >= deg g`.
fn pseudo_remainder(f: &[LaurentPoly], g: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut r = f.to_vec();
    let lc_g = g.last().expect("nonzero divisor").clone();
    while r.len() >= g.len() {
        let lc_r = r.last().unwrap().clone();
        let shift = r.len() - g.len();
        for c in r.iter_mut() {
            *c = &*c * &lc_g;
        }
        for (i, gc) in g.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lc_r * gc);
        }
        debug_assert!(r.last().unwrap().is_zero());
        trim(&mut r);
    }
    r
}
