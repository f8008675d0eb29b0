//! Finite-dimensional representations `G → GL(n, R)` and the substitution
//! `ψ` from group-ring matrices to matrices over `Λ = R[H]`.
//!
//! Input matrices form a homomorphism under the standard matrix product:
//! the matrix of a word `g_1 g_2` is `M(g_1) M(g_2)`. Transposing every
//! matrix converts a right (row-wise) representation into this convention.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::laurent::{format_scalar, parse_scalar, CoefficientRing, LaurentPoly, Scalar};
use crate::matrix::Matrix;
use crate::presentations::{Abelianization, FreeWord, GroupRingElement, Presentation};

/// Per-generator invertible matrices over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    ring: CoefficientRing,
    dim: usize,
    matrices: Vec<Matrix<Scalar>>,
    inverses: Vec<Matrix<Scalar>>,
}

pub(crate) fn identity(ring: CoefficientRing, n: usize) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.from_int(1) } else { Scalar::zero() })
}

pub(crate) fn scalar_mul(ring: CoefficientRing, a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Matrix<Scalar> {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = Scalar::zero();
        for k in 0..a.cols() {
            acc = ring.add(&acc, &ring.mul(&a[(i, k)], &b[(k, j)]));
        }
        acc
    })
}

/// Gauss-Jordan inverse; `None` when the matrix is not invertible over the
/// ring.
fn invert(ring: CoefficientRing, m: &Matrix<Scalar>) -> Option<Matrix<Scalar>> {
    let n = m.rows();
    // Work over the fraction field; over Z the result must be integral.
    let field = match ring {
        CoefficientRing::Integers => CoefficientRing::Rationals,
        other => other,
    };
    let mut a = m.clone();
    let mut inv = identity(field, n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        let piv = a[(c, c)].clone();
        for j in 0..n {
            a[(c, j)] = field.exact_div(&a[(c, j)], &piv).ok()??;
            inv[(c, j)] = field.exact_div(&inv[(c, j)], &piv).ok()??;
        }
        for r in 0..n {
            if r == c || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for j in 0..n {
                a[(r, j)] = field.sub(&a[(r, j)], &field.mul(&f, &a[(c, j)]));
                inv[(r, j)] = field.sub(&inv[(r, j)], &field.mul(&f, &inv[(c, j)]));
            }
        }
    }
    let mut out = Matrix::filled(n, n, Scalar::zero());
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = ring.element(inv[(i, j)].clone()).ok()?;
        }
    }
    Some(out)
}

#[derive(Deserialize)]
struct RepresentationFile {
    ring: CoefficientRing,
    n: usize,
    matrices: BTreeMap<String, Vec<Vec<Value>>>,
}

fn json_scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Scalar::from_integer(i.into()))
            .ok_or_else(|| Error::Invalid(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => parse_scalar(s),
        other => Err(Error::Invalid(format!("bad matrix entry {other}"))),
    }
}

impl Representation {
    /// Builds a representation with matrices listed in generator order.
    pub fn new(ring: CoefficientRing, dim: usize, matrices: Vec<Matrix<Scalar>>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(matrices.len());
        let mut inverses = Vec::with_capacity(matrices.len());
        for (g, m) in matrices.into_iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!(
                    "matrix {} is {}x{}, expected {dim}x{dim}",
                    g + 1,
                    m.rows(),
                    m.cols()
                )));
            }
            let mut r = Matrix::filled(dim, dim, Scalar::zero());
            for i in 0..dim {
                for j in 0..dim {
                    r[(i, j)] = ring.element(m[(i, j)].clone())?;
                }
            }
            let inv = invert(ring, &r).ok_or_else(|| Error::NotInvertible(format!("#{}", g + 1)))?;
            reduced.push(r);
            inverses.push(inv);
        }
        Ok(Representation {
            ring,
            dim,
            matrices: reduced,
            inverses,
        })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(ring: CoefficientRing, ngens: usize) -> Self {
        Self::new(ring, 1, vec![identity(ring, 1); ngens]).expect("identity is invertible")
    }

    /// Loads the JSON format
    /// `{"ring": "Z" | {"Zp": p} | "Q", "n": 2, "matrices": {"x": [[1,1],[0,1]], ...}}`
    /// and binds the matrices to the presentation's generators.
    pub fn from_json(text: &str, p: &Presentation) -> Result<Self> {
        let file: RepresentationFile =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        if let CoefficientRing::PrimeField(q) = file.ring {
            CoefficientRing::prime_field(q)?;
        }
        for name in file.matrices.keys() {
            if p.generator_index(name).is_none() {
                return Err(Error::Invalid(format!("matrix given for unknown generator `{name}`")));
            }
        }
        let mut matrices = Vec::with_capacity(p.num_generators());
        for g in p.generators() {
            let rows = file
                .matrices
                .get(g)
                .ok_or_else(|| Error::Invalid(format!("no matrix for generator `{g}`")))?;
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(json_scalar).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if parsed.len() != file.n || parsed.iter().any(|r| r.len() != file.n) {
                return Err(Error::Dimension(format!("matrix for `{g}` is not {0}x{0}", file.n)));
            }
            matrices.push(Matrix::from_rows(parsed));
        }
        Self::new(file.ring, file.n, matrices).map_err(|e| match e {
            Error::NotInvertible(idx) => {
                let g: usize = idx.trim_start_matches('#').parse().unwrap_or(1);
                Error::NotInvertible(p.generators()[g - 1].clone())
            }
            other => other,
        })
    }

    pub fn to_json(&self, p: &Presentation) -> Value {
        let mut mats = serde_json::Map::new();
        for (g, m) in p.generators().iter().zip(&self.matrices) {
            let rows: Vec<Value> = m
                .to_rows()
                .iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|c| {
                                if c.is_integer() {
                                    c.numer()
                                        .to_string()
                                        .parse::<i64>()
                                        .map(Value::from)
                                        .unwrap_or_else(|_| Value::String(format_scalar(c)))
                                } else {
                                    Value::String(format_scalar(c))
                                }
                            })
                            .collect(),
                    )
                })
                .collect();
            mats.insert(g.clone(), Value::Array(rows));
        }
        serde_json::json!({
            "ring": self.ring,
            "n": self.dim,
            "matrices": mats,
        })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, generator: usize) -> &Matrix<Scalar> {
        &self.matrices[generator]
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.matrices.iter().all(|m| m[(0, 0)].is_one())
    }

    /// The same matrices read in another coefficient ring.
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<Self> {
        Self::new(ring, self.dim, self.matrices.clone())
    }

    /// The matrix of a word.
    pub fn word_matrix(&self, w: &FreeWord) -> Matrix<Scalar> {
        let mut acc = identity(self.ring, self.dim);
        for l in w.letters() {
            let m = if l.inverse {
                &self.inverses[l.generator]
            } else {
                &self.matrices[l.generator]
            };
            acc = scalar_mul(self.ring, &acc, m);
        }
        acc
    }

    /// Checks that every relator maps to the identity.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        if self.matrices.len() != p.num_generators() {
            return Err(Error::Dimension(format!(
                "{} matrices for {} generators",
                self.matrices.len(),
                p.num_generators()
            )));
        }
        let id = identity(self.ring, self.dim);
        for (i, r) in p.relators().iter().enumerate() {
            let m = self.word_matrix(r);
            if m != id {
                return Err(Error::RelatorViolation {
                    relator: i + 1,
                    detail: format!(
                        "`{}` maps to {:?} instead of the identity",
                        r.render(p.generators()),
                        render_matrix(&m)
                    ),
                });
            }
        }
        Ok(())
    }
}

fn render_matrix(m: &Matrix<Scalar>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_scalar).collect())
        .collect()
}

/// `ψ = ρ ⊗ π`: a group element `g` goes to `π(g) M(g)`.
#[derive(Clone, Debug)]
pub struct SubstitutionMap {
    rep: Representation,
    pi: Abelianization,
}

impl SubstitutionMap {
    pub fn new(rep: Representation, pi: Abelianization) -> Result<Self> {
        if rep.num_generators() != pi.images().len() {
            return Err(Error::Dimension(
                "representation and abelianization disagree on generators".into(),
            ));
        }
        Ok(SubstitutionMap { rep, pi })
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.pi
    }

    pub fn ring(&self) -> CoefficientRing {
        self.rep.ring
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    pub fn nvars(&self) -> usize {
        self.pi.rank()
    }

    /// `ψ(Σ n_w w) = Σ n_w π(w) M(w)`, an `n x n` matrix over `Λ`.
    pub fn psi(&self, el: &GroupRingElement) -> Matrix<LaurentPoly> {
        let (ring, n, k) = (self.ring(), self.dim(), self.nvars());
        let mut out = Matrix::filled(n, n, LaurentPoly::zero(ring, k));
        for (w, c) in el.terms() {
            let m = self.rep.word_matrix(w);
            let mono = self.pi.apply(w);
            let c = ring.from_int(c);
            for i in 0..n {
                for j in 0..n {
                    if !m[(i, j)].is_zero() {
                        out[(i, j)].add_term(mono.clone(), &ring.mul(&c, &m[(i, j)]));
                    }
                }
            }
        }
        out
    }

    /// Blockwise `ψ`; the result is `n` times the size of the input.
    pub fn psi_matrix(&self, m: &Matrix<GroupRingElement>) -> Matrix<LaurentPoly> {
        let n = self.dim();
        let mut out = Matrix::filled(m.rows() * n, m.cols() * n, LaurentPoly::zero(self.ring(), self.nvars()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let block = self.psi(&m[(i, j)]);
                for a in 0..n {
                    for b in 0..n {
                        out[(i * n + a, j * n + b)] = block[(a, b)].clone();
                    }
                }
            }
        }
        out
    }
}
