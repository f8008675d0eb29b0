use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::det::product;
use crate::error::{Error, Result};
use crate::laurent::{parse_poly, CoefficientRing, LaurentPoly};
use crate::matrix::Matrix;

/// A finite free chain complex `0 <- C_0 <- C_1 <- ... <- C_N <- 0` over `Λ`.
///
/// Boundaries act on row vectors: `∂_k` is a `γ_k x γ_{k-1}` matrix whose
/// rows are the images of the basis of `C_k`, so `∂_{k+1} ∂_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: CoefficientRing,
    nvars: usize,
    ranks: Vec<usize>,
    /// `boundaries[i]` is `∂_{i+1}`.
    boundaries: Vec<Matrix<LaurentPoly>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    #[serde(default = "default_ring")]
    ring: CoefficientRing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<usize>,
    ranks: Vec<usize>,
    boundaries: Vec<Value>,
}

fn default_ring() -> CoefficientRing {
    CoefficientRing::Integers
}

impl ChainComplex {
    pub fn new(
        ring: CoefficientRing,
        nvars: usize,
        ranks: Vec<usize>,
        boundaries: Vec<Matrix<LaurentPoly>>,
    ) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::Dimension(format!(
                "{} ranks need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::Dimension(format!(
                    "boundary {} is {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
            for e in d.iter() {
                if e.ring() != ring {
                    return Err(Error::RingMismatch(ring, e.ring()));
                }
                if e.nvars() != nvars {
                    return Err(Error::VariableMismatch(nvars, e.nvars()));
                }
            }
        }
        for i in 1..boundaries.len() {
            let dd = product(&boundaries[i], &boundaries[i - 1], ring, nvars)?;
            if dd.iter().any(|e| !e.is_zero()) {
                return Err(Error::Invalid(format!("∂{} ∂{} is not zero", i + 1, i)));
            }
        }
        Ok(ChainComplex {
            ring,
            nvars,
            ranks,
            boundaries,
        })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Highest degree with a (possibly zero) chain module.
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// `γ_k`, zero outside the stored range.
    pub fn rank(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.ranks.get(k as usize).copied().unwrap_or(0)
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_k: C_k -> C_{k-1}` as a `γ_k x γ_{k-1}` matrix; zero matrices
    /// outside the stored range.
    pub fn boundary(&self, k: i64) -> Matrix<LaurentPoly> {
        if k >= 1 {
            if let Some(d) = self.boundaries.get(k as usize - 1) {
                return d.clone();
            }
        }
        Matrix::filled(self.rank(k), self.rank(k - 1), LaurentPoly::zero(self.ring, self.nvars))
    }

    /// Blockwise direct sum.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        let len = self.ranks.len().max(other.ranks.len());
        let ranks: Vec<usize> = (0..len as i64).map(|k| self.rank(k) + other.rank(k)).collect();
        let zero = LaurentPoly::zero(self.ring, self.nvars);
        let boundaries = (1..len as i64)
            .map(|k| {
                let (a, b) = (self.boundary(k), other.boundary(k));
                Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
                    match (i < a.rows(), j < a.cols()) {
                        (true, true) => a[(i, j)].clone(),
                        (false, false) => b[(i - a.rows(), j - a.cols())].clone(),
                        _ => zero.clone(),
                    }
                })
            })
            .collect();
        ChainComplex::new(self.ring, self.nvars, ranks, boundaries)
    }

    /// The contractible complex `T(i, F)`: `F` in degrees `i` and `i + 1`
    /// joined by the isomorphism `iso`.
    pub fn elementary(degree: usize, iso: Matrix<LaurentPoly>, ring: CoefficientRing, nvars: usize) -> Result<Self> {
        let r = iso.rows();
        if !iso.is_square() {
            return Err(Error::Dimension("elementary complex needs a square matrix".into()));
        }
        let mut ranks = vec![0; degree + 2];
        ranks[degree] = r;
        ranks[degree + 1] = r;
        let zero = LaurentPoly::zero(ring, nvars);
        let boundaries = (1..=degree + 1)
            .map(|k| {
                if k == degree + 1 {
                    iso.clone()
                } else {
                    Matrix::filled(ranks[k], ranks[k - 1], zero.clone())
                }
            })
            .collect();
        ChainComplex::new(ring, nvars, ranks, boundaries)
    }

    /// Parses `{"ranks": [..], "boundaries": [..], "ring": "Z", "vars": 1}`.
    ///
    /// Each boundary is either a list of rows or a flat row-major list of
    /// Laurent polynomial strings (integers are accepted as well).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let mut strings: Vec<Vec<String>> = Vec::new();
        for (i, b) in file.boundaries.iter().enumerate() {
            let Value::Array(items) = b else {
                return Err(Error::Invalid(format!("boundary {} is not an array", i + 1)));
            };
            let mut flat = Vec::new();
            for it in items {
                match it {
                    Value::Array(row) => {
                        for e in row {
                            flat.push(entry_text(e)?);
                        }
                    }
                    other => flat.push(entry_text(other)?),
                }
            }
            strings.push(flat);
        }
        let nvars = file.vars.unwrap_or_else(|| {
            strings
                .iter()
                .flatten()
                .filter_map(|s| parse_poly(s, file.ring, None).ok())
                .filter(|p| !p.terms().all(|(m, _)| m.is_one()))
                .map(|p| p.nvars())
                .max()
                .unwrap_or(0)
        });
        let mut boundaries = Vec::new();
        for (i, flat) in strings.iter().enumerate() {
            let (rows, cols) = (
                file.ranks.get(i + 1).copied().unwrap_or(0),
                file.ranks.get(i).copied().unwrap_or(0),
            );
            if flat.len() != rows * cols {
                return Err(Error::Dimension(format!(
                    "boundary {} has {} entries, expected {}x{}",
                    i + 1,
                    flat.len(),
                    rows,
                    cols
                )));
            }
            let entries = flat
                .iter()
                .map(|s| parse_poly(s, file.ring, Some(nvars)))
                .collect::<Result<Vec<_>>>()?;
            boundaries.push(Matrix::with_shape(rows, cols, entries));
        }
        ChainComplex::new(file.ring, nvars, file.ranks, boundaries)
    }

    pub fn to_json(&self) -> Value {
        let boundaries = self
            .boundaries
            .iter()
            .map(|d| {
                Value::Array(
                    d.to_rows()
                        .iter()
                        .map(|r| Value::Array(r.iter().map(|e| Value::String(e.to_string())).collect()))
                        .collect(),
                )
            })
            .collect();
        serde_json::to_value(ComplexFile {
            ring: self.ring,
            vars: Some(self.nvars),
            ranks: self.ranks.clone(),
            boundaries,
        })
        .expect("serializable")
    }
}

fn entry_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Invalid(format!("bad boundary entry {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"ranks": [1, 1, 1], "boundaries": [[[0]], ["2"]]}"#;
        let c = ChainComplex::from_json(text).unwrap();
        assert_eq!((c.nvars(), c.top()), (0, 2));
        assert_eq!(ChainComplex::from_json(&c.to_json().to_string()).unwrap(), c);

        let l = r#"{"ranks": [1, 2], "boundaries": [["t - 1", "t^2 - 1"]], "ring": {"Zp": 5}}"#;
        let c = ChainComplex::from_json(l).unwrap();
        assert_eq!(c.nvars(), 1);
        assert_eq!(c.ring(), CoefficientRing::PrimeField(5));
        assert_eq!(ChainComplex::from_json(&c.to_json().to_string()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_complexes() {
        assert!(ChainComplex::from_json(r#"{"ranks": [1, 1, 1], "boundaries": [[1], [1]]}"#).is_err());
        assert!(ChainComplex::from_json(r#"{"ranks": [1, 2], "boundaries": [[1]]}"#).is_err());
        assert!(ChainComplex::from_json(r#"{"ranks": [1, 1], "boundaries": [["x"]]}"#).is_err());
    }

    #[test]
    fn sums_and_elementary() {
        let c = ChainComplex::from_json(r#"{"ranks": [1, 1, 1], "boundaries": [[0], [2]]}"#).unwrap();
        let one = Matrix::filled(1, 1, LaurentPoly::one(CoefficientRing::Integers, 0));
        let t = ChainComplex::elementary(2, one, CoefficientRing::Integers, 0).unwrap();
        assert_eq!(t.ranks(), &[0, 0, 1, 1]);
        let s = c.direct_sum(&t).unwrap();
        assert_eq!(s.ranks(), &[1, 1, 2, 1]);
        assert_eq!(s.boundary(3).cols(), 2);
        assert_eq!(s.boundary(7).rows(), 0);
    }
}
