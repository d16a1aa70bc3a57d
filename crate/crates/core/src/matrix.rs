//! Dense matrices over the rationals with exact rank and kernel
//! computations.  Dimensions stay small enough here that fraction-free
//! tricks are unnecessary; plain Gauss-Jordan with exact arithmetic is
//! both simple and fast at these sizes.

use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, cur + a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a.clone() * v[j].clone();
                    }
                }
                s
            })
            .collect()
    }

    /// New matrix containing the selected columns, in the given sequence.
    pub fn select_columns(&self, idx: &[usize]) -> QMatrix {
        let mut out = QMatrix::zero(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// New matrix containing the selected rows, in the given sequence.
    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        let mut out = QMatrix::zero(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot column of each
    /// pivot row, in order.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = {
                let piv = self.get(row, col).clone();
                Rat::one() / piv
            };
            for j in col..self.cols {
                let v = self.get(row, j).clone() * inv.clone();
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j).clone()
                            - factor.clone() * self.get(row, j).clone();
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel; the list is empty exactly when the matrix
    /// has full column rank.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set.contains(&j) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[j] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let coeff = m.get(r, j).clone();
                if !coeff.is_zero() {
                    v[pc] = -coeff;
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(QMatrix::zero(3, 5).rank(), 0);
        assert_eq!(QMatrix::identity(4).rank(), 4);
        // rank is invariant under transpose
        let m = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn exact_fractions_survive_elimination() {
        let m = QMatrix::from_rows(vec![
            vec![ratio(1, 3), ratio(1, 6)],
            vec![ratio(2, 3), ratio(1, 3)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_annihilates() {
        let m = mat(&[&[1, 2, 3, 0], &[0, 1, 1, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), m.cols() - m.rank());
        for v in &ker {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        // kernel vectors are linearly independent
        let km = QMatrix::from_rows(ker);
        assert_eq!(km.rank(), km.rows());
    }

    #[test]
    fn mul_and_selection() {
        let m = mat(&[&[1, 2], &[3, 4]]);
        let id = QMatrix::identity(2);
        assert_eq!(m.mul(&id), m);
        assert_eq!(m.select_columns(&[1]), mat(&[&[2], &[4]]));
        assert_eq!(m.select_rows(&[0]), mat(&[&[1, 2]]));
    }
}
