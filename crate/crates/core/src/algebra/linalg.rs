//! Exact rational linear algebra for the small systems the solvers build.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Incrementally built row-echelon form of an augmented system `A x = b`.
///
/// Rows that are linear combinations of rows already accepted are rejected,
/// so the caller can stream candidate equations until the rank is full.
#[derive(Debug, Clone)]
pub struct EchelonSystem {
    unknowns: usize,
    // (pivot column, row normalized so the pivot is 1, rhs)
    rows: Vec<(usize, Vec<BigRational>, BigRational)>,
}

impl EchelonSystem {
    pub fn new(unknowns: usize) -> Self {
        EchelonSystem { unknowns, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.unknowns
    }

    /// Reduces the row against the current basis; keeps it if independent.
    pub fn push(&mut self, mut row: Vec<BigRational>, mut rhs: BigRational) -> bool {
        assert_eq!(row.len(), self.unknowns, "row length");
        for (pivot, basis, b) in &self.rows {
            let factor = row[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(basis) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
            rhs -= &factor * b;
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pivot].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        rhs *= &inv;
        self.rows.push((pivot, row, rhs));
        true
    }

    /// Back-substitutes; requires full rank.
    pub fn solve(&self) -> Result<Vec<BigRational>> {
        if !self.is_full_rank() {
            return Err(Error::RankDeficient(format!("rank {} of {}", self.rank(), self.unknowns)));
        }
        // rows are reduced against earlier rows only; finish with a
        // Gauss-Jordan pass in reverse insertion order.
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let (pivot, basis, b) = rows[i].clone();
            for (j, row) in rows.iter_mut().enumerate() {
                if j == i {
                    continue;
                }
                let factor = row.1[pivot].clone();
                if factor.is_zero() {
                    continue;
                }
                for (x, y) in row.1.iter_mut().zip(&basis) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
                row.2 -= &factor * &b;
            }
        }
        let mut x = vec![BigRational::zero(); self.unknowns];
        for (pivot, row, b) in rows {
            debug_assert!(row[pivot].is_one());
            x[pivot] = b;
        }
        Ok(x)
    }
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            let factor = &m[r][col] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::int;

    #[test]
    fn solves_and_rejects_dependent_rows() {
        let mut sys = EchelonSystem::new(2);
        assert!(sys.push(vec![int(1), int(1)], int(3)));
        assert!(!sys.push(vec![int(2), int(2)], int(6)));
        assert!(sys.solve().is_err());
        assert!(sys.push(vec![int(1), int(-1)], int(1)));
        assert_eq!(sys.solve().unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn determinants() {
        let m = vec![vec![int(0), int(2)], vec![int(3), int(4)]];
        assert_eq!(determinant(m), int(-6));
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(s), int(0));
    }
}
