//! The projection `π: G → H = H_1(G)/Tors`, via Smith-style
//! diagonalization of the relator exponent matrix.

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::FreeWord;
use crate::error::{Error, Result};
use crate::laurent::Monomial;
use crate::matrix::Matrix;

/// A homomorphism from the group to `Z^k`, given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    rank: usize,
    images: Vec<Monomial>,
}

impl Abelianization {
    /// Validates that the images kill every relator and generate `Z^k`.
    pub fn new(p: &Presentation, images: Vec<Monomial>) -> Result<Self> {
        if images.len() != p.num_generators() {
            return Err(Error::Dimension(format!(
                "{} generator images for {} generators",
                images.len(),
                p.num_generators()
            )));
        }
        let rank = images.first().map_or(0, Monomial::nvars);
        if images.iter().any(|m| m.nvars() != rank) {
            return Err(Error::Dimension("generator images of different arity".into()));
        }
        let map = Abelianization { rank, images };
        for (i, r) in p.relators().iter().enumerate() {
            if !map.apply(r).is_one() {
                return Err(Error::Invalid(format!(
                    "relator {} does not map to 0 in Z^{}",
                    i + 1,
                    rank
                )));
            }
        }
        let m = Matrix::from_fn(map.images.len(), rank, |i, j| map.images[i].exponents()[j]);
        let d = diagonalize(&m)?;
        let full = d.diagonal.len() == rank && d.diagonal.iter().all(|x| x.abs() == 1);
        if !full {
            return Err(Error::Invalid("generator images do not generate Z^k".into()));
        }
        Ok(map)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Monomial {
        &self.images[generator]
    }

    pub fn apply(&self, w: &FreeWord) -> Monomial {
        let mut e = vec![0i64; self.rank];
        for l in w.letters() {
            for (x, y) in e.iter_mut().zip(self.images[l.generator].exponents()) {
                *x += l.exponent() * y;
            }
        }
        Monomial::new(e)
    }
}

/// The free part of the abelianization with a canonical basis: the images of
/// the generators, as columns, are in Hermite normal form.
pub fn abelianize(p: &Presentation) -> Result<Abelianization> {
    let e = p.exponent_matrix();
    let s = p.num_generators();
    let d = diagonalize(&e)?;
    let r = d.diagonal.len();
    let k = s - r;
    // Row vectors x map to x V; relations become the diagonal, so the free
    // coordinates are the trailing s - r columns of V.
    let images_t = Matrix::from_fn(k, s, |c, j| d.col_transform[(j, r + c)]);
    let h = hermite_rows(images_t)?;
    let images = (0..s)
        .map(|j| Monomial::new((0..k).map(|c| h[(c, j)]).collect()))
        .collect();
    Abelianization::new(p, images)
}

pub(crate) struct Diagonalized {
    /// Nonzero diagonal entries, in order.
    pub diagonal: Vec<i64>,
    /// Unimodular `V` with `U M V = diag`.
    pub col_transform: Matrix<i64>,
}

fn checked(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Invalid("integer overflow during diagonalization".into()))
}

/// Row and column reduction to diagonal form, tracking column operations.
pub(crate) fn diagonalize(m: &Matrix<i64>) -> Result<Diagonalized> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.map(|&x| x as i128);
    let mut v = Matrix::from_fn(cols, cols, |i, j| i128::from(i == j));
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[(i, j)] != 0 && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)] / p;
                if q != 0 {
                    for j in t..cols {
                        a[(i, j)] -= q * a[(t, j)];
                    }
                }
                if a[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)] / p;
                if q != 0 {
                    for i in t..rows {
                        a[(i, j)] -= q * a[(i, t)];
                    }
                    for i in 0..cols {
                        v[(i, j)] -= q * v[(i, t)];
                    }
                }
                if a[(t, j)] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t + 1..rows {
                if a[(i, t)] != 0 && a[(i, t)].abs() < a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if a[(t, j)] != 0 && a[(t, j)].abs() < a[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap_rows(t, best.0);
            } else if best.1 != t {
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        diagonal.push(checked(a[(t, t)])?);
        t += 1;
    }
    let mut out = Matrix::filled(cols, cols, 0i64);
    for i in 0..cols {
        for j in 0..cols {
            out[(i, j)] = checked(v[(i, j)])?;
        }
    }
    Ok(Diagonalized {
        diagonal,
        col_transform: out,
    })
}

/// Row-style Hermite normal form of a full-row-rank integer matrix.
fn hermite_rows(mut a: Matrix<i64>) -> Result<Matrix<i64>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if a[(i, c)] != 0 && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(pivot_row, b);
            let p = a[(pivot_row, c)];
            let mut done = true;
            for i in pivot_row + 1..rows {
                let q = a[(i, c)] / p;
                if q != 0 {
                    for j in 0..cols {
                        a[(i, j)] -= q * a[(pivot_row, j)];
                    }
                }
                if a[(i, c)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(pivot_row, c)] == 0 {
            continue;
        }
        if a[(pivot_row, c)] < 0 {
            for j in 0..cols {
                a[(pivot_row, j)] = -a[(pivot_row, j)];
            }
        }
        let p = a[(pivot_row, c)];
        for i in 0..pivot_row {
            let q = a[(i, c)].div_euclid(p);
            if q != 0 {
                for j in 0..cols {
                    a[(i, j)] -= q * a[(pivot_row, j)];
                }
            }
        }
        pivot_row += 1;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(a: &Abelianization) -> Vec<Vec<i64>> {
        a.images().iter().map(|m| m.exponents().to_vec()).collect()
    }

    #[test]
    fn trefoil_is_rank_one() {
        let p = Presentation::parse("gens: x y\nrel: x y x Y X Y").unwrap();
        let a = abelianize(&p).unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(exps(&a), vec![vec![1], vec![1]]);
    }

    #[test]
    fn free_group_rank_two() {
        let p = Presentation::parse("gens: x y").unwrap();
        let a = abelianize(&p).unwrap();
        assert_eq!(exps(&a), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn torsion_is_dropped() {
        let p = Presentation::parse("gens: x\nrel: x^2").unwrap();
        assert_eq!(abelianize(&p).unwrap().rank(), 0);
        let q = Presentation::parse("gens: x y\nrel: x^2 y^4").unwrap();
        let a = abelianize(&q).unwrap();
        assert_eq!(a.rank(), 1);
        for r in q.relators() {
            assert!(a.apply(r).is_one());
        }
        // x^2 y^4 = 1 with free part Z: x -> t^2, y -> t^-1
        assert_eq!(exps(&a), vec![vec![2], vec![-1]]);
    }

    #[test]
    fn rejects_non_surjective_or_non_homomorphic_maps() {
        let p = Presentation::parse("gens: x y\nrel: x y X Y").unwrap();
        let m = |v: Vec<i64>| Monomial::new(v);
        assert!(Abelianization::new(&p, vec![m(vec![2]), m(vec![2])]).is_err());
        let q = Presentation::parse("gens: x y\nrel: x Y").unwrap();
        assert!(Abelianization::new(&q, vec![m(vec![1]), m(vec![2])]).is_err());
        assert!(Abelianization::new(&q, vec![m(vec![1]), m(vec![1])]).is_ok());
    }
}
