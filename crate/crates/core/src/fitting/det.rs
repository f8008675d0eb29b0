//! Fraction-free elimination over `Λ`.

use crate::error::{Error, Result};
use crate::laurent::{CoefficientRing, LaurentPoly};
use crate::matrix::Matrix;

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.exact_div(b)?
        .ok_or_else(|| Error::Inconsistent("non-exact division in fraction-free elimination".into()))
}

/// Index of the nonzero entry with fewest terms in column `c`, rows `from..`.
fn pivot(a: &[Vec<LaurentPoly>], c: usize, from: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&r| !a[r][c].is_zero())
        .min_by_key(|&r| a[r][c].len())
}

/// Determinant of a square matrix by Bareiss elimination. A `0 x 0` matrix
/// has determinant one in the given ring.
pub fn determinant_in(m: &Matrix<LaurentPoly>, ring: CoefficientRing, nvars: usize) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(LaurentPoly::one(ring, nvars));
    }
    if n == 1 {
        return Ok(m[(0, 0)].clone());
    }
    if n == 2 {
        return (&m[(0, 0)] * &m[(1, 1)]).try_sub(&(&m[(0, 1)] * &m[(1, 0)]));
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = LaurentPoly::one(ring, nvars);
    for k in 0..n - 1 {
        let Some(p) = pivot(&a, k, k) else {
            return Ok(LaurentPoly::zero(ring, nvars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = (&a[i][j] * &a[k][k]).try_sub(&(&a[i][k] * &a[k][j]))?;
                a[i][j] = exact(&num, &prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Determinant of a nonempty square matrix.
pub fn determinant(m: &Matrix<LaurentPoly>) -> Result<LaurentPoly> {
    let first = m
        .iter()
        .next()
        .ok_or_else(|| Error::Dimension("determinant of an empty matrix needs a ring".into()))?;
    determinant_in(m, first.ring(), first.nvars())
}

/// Rank over the fraction field of `Λ`.
pub fn rank(m: &Matrix<LaurentPoly>) -> Result<usize> {
    let Some(first) = m.iter().next() else {
        return Ok(0);
    };
    let (ring, nvars) = (first.ring(), first.nvars());
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    let mut prev = LaurentPoly::one(ring, nvars);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot(&a, c, r) else { continue };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = (&a[i][j] * &a[r][c]).try_sub(&(&a[i][c] * &a[r][j]))?;
                a[i][j] = exact(&num, &prev)?;
            }
            a[i][c] = LaurentPoly::zero(ring, nvars);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Matrix product over `Λ`.
pub fn product(
    a: &Matrix<LaurentPoly>,
    b: &Matrix<LaurentPoly>,
    ring: CoefficientRing,
    nvars: usize,
) -> Result<Matrix<LaurentPoly>> {
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut out = Matrix::filled(a.rows(), b.cols(), LaurentPoly::zero(ring, nvars));
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            if a[(i, k)].is_zero() {
                continue;
            }
            for j in 0..b.cols() {
                if !b[(k, j)].is_zero() {
                    out[(i, j)] = out[(i, j)].try_add(&a[(i, k)].try_mul(&b[(k, j)])?)?;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use proptest::prelude::*;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn m(rows: &[&[&str]], k: usize) -> Matrix<LaurentPoly> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, Z, Some(k)).unwrap()).collect())
                .collect(),
        )
    }

    /// Laplace expansion along the first row.
    fn laplace(a: &Matrix<LaurentPoly>) -> LaurentPoly {
        let n = a.rows();
        if n == 1 {
            return a[(0, 0)].clone();
        }
        let mut acc = LaurentPoly::zero(a[(0, 0)].ring(), a[(0, 0)].nvars());
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = &a[(0, j)] * &laplace(&a.select(&rows, &cols));
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        let a = m(&[&["1 - t", "t"], &["-t", "1"]], 1);
        assert_eq!(determinant(&a).unwrap(), parse_poly("t^2 - t + 1", Z, Some(1)).unwrap());
        let id = m(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], 1);
        assert!(determinant(&id).unwrap().is_one());
        let e = Matrix::with_shape(0, 0, vec![]);
        assert!(determinant_in(&e, Z, 2).unwrap().is_one());
        // zero pivot in the corner forces a row swap
        let s = m(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "t"]], 1);
        assert_eq!(determinant(&s).unwrap(), parse_poly("-t", Z, Some(1)).unwrap());
    }

    #[test]
    fn ranks() {
        let a = m(&[&["1 - t", "t - 1"], &["t^2 - t", "t - t^2"]], 1);
        assert_eq!(rank(&a).unwrap(), 1);
        let b = m(&[&["0", "0", "1"], &["0", "t1", "t2"]], 2);
        assert_eq!(rank(&b).unwrap(), 2);
        let z = m(&[&["0", "0"]], 1);
        assert_eq!(rank(&z).unwrap(), 0);
    }

    fn entry() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-2i64..3, -1i64..2, -1i64..2), 0..3).prop_map(|ts| {
            LaurentPoly::from_terms(
                Z,
                2,
                ts.into_iter()
                    .map(|(c, a, b)| (crate::laurent::Monomial::new(vec![a, b]), Z.from_int(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn bareiss_matches_laplace(n in 1usize..5, entries in prop::collection::vec(entry(), 16)) {
            let a = Matrix::from_fn(n, n, |i, j| entries[i * 4 + j].clone());
            prop_assert_eq!(determinant(&a).unwrap(), laplace(&a));
        }

        #[test]
        fn rank_detects_singularity(n in 1usize..5, entries in prop::collection::vec(entry(), 16)) {
            let a = Matrix::from_fn(n, n, |i, j| entries[i * 4 + j].clone());
            let full = rank(&a).unwrap() == n;
            prop_assert_eq!(full, !laplace(&a).is_zero());
        }
    }
}
