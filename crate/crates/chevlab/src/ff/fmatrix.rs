//! Constant matrices over a small finite field, with the row-reduction
//! routines the module-analysis code is built on.

use super::{FF, Fq};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Arc<Fq>,
    pub data: Vec<FF>, // row major
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.render(self.at(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl FMatrix {
    pub fn zero(field: Arc<Fq>, rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Arc<Fq>, n: usize) -> FMatrix {
        let mut m = FMatrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = 1;
        }
        m
    }

    pub fn from_rows(field: Arc<Fq>, rows: Vec<Vec<FF>>) -> FMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        FMatrix { rows: r, cols: c, field, data }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> FF {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FF {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FF] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.at(r, c) != if r == c { 1 } else { 0 } {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &FMatrix) -> FMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let mut m = self.clone();
        for (a, &b) in m.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, b);
        }
        m
    }

    pub fn sub(&self, other: &FMatrix) -> FMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let mut m = self.clone();
        for (a, &b) in m.data.iter_mut().zip(&other.data) {
            *a = f.sub(*a, b);
        }
        m
    }

    pub fn scale(&self, c: FF) -> FMatrix {
        let f = &self.field;
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = f.mul(*a, c);
        }
        m
    }

    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let f = &self.field;
        let mut m = FMatrix::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b == 0 {
                        continue;
                    }
                    let t = f.mul(a, b);
                    let e = m.at_mut(i, j);
                    *e = f.add(*e, t);
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> FMatrix {
        let mut m = FMatrix::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(c, r) = self.at(r, c);
            }
        }
        m
    }

    pub fn apply(&self, v: &[FF]) -> Vec<FF> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![0; self.rows];
        for r in 0..self.rows {
            let mut acc = 0;
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a != 0 && v[c] != 0 {
                    acc = f.add(acc, f.mul(a, v[c]));
                }
            }
            out[r] = acc;
        }
        out
    }

    pub fn pow(&self, e: u32) -> FMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FMatrix::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Row echelon form in place; returns the pivot column of each pivot row.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = vec![];
        let mut row = 0;
        for col in 0..self.cols {
            let mut sel = None;
            for r in row..self.rows {
                if self.at(r, col) != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.data.swap_rows(self.cols, row, sel);
            let inv = f.inv(self.at(row, col));
            for c in col..self.cols {
                *self.at_mut(row, c) = f.mul(self.at(row, c), inv);
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let factor = self.at(r, col);
                    for c in col..self.cols {
                        let t = f.mul(factor, self.at(row, c));
                        *self.at_mut(r, c) = f.sub(self.at(r, c), t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel(&self) -> Vec<Vec<FF>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.echelonize();
        let mut basis = vec![];
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = f.neg(m.at(prow, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<FMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field.clone();
        let mut aug = FMatrix::zero(f.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c);
            }
            *aug.at_mut(r, n + r) = 1;
        }
        let pivots = aug.echelonize();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = FMatrix::zero(f, n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c);
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Map entries into another field through an embedding table.
    pub fn map_field(&self, target: Arc<Fq>, images: &[FF]) -> FMatrix {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            field: target,
            data: self.data.iter().map(|&c| images[c as usize]).collect(),
        }
    }
}

trait SwapRows {
    fn swap_rows(&mut self, cols: usize, a: usize, b: usize);
}

impl SwapRows for Vec<FF> {
    fn swap_rows(&mut self, cols: usize, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..cols {
            self.swap(a * cols + c, b * cols + c);
        }
    }
}

/// Echelonize a set of row vectors, dropping zero rows. Returns (basis rows, pivot cols).
pub fn echelon_basis(field: &Arc<Fq>, rows: Vec<Vec<FF>>) -> (Vec<Vec<FF>>, Vec<usize>) {
    if rows.is_empty() {
        return (vec![], vec![]);
    }
    let cols = rows[0].len();
    let mut m = FMatrix::from_rows(field.clone(), rows);
    let pivots = m.echelonize();
    let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
    (basis, pivots)
}

/// Reduce `v` against an echelonized basis with the given pivot columns;
/// returns the residue.
pub fn reduce_against(field: &Arc<Fq>, basis: &[Vec<FF>], pivots: &[usize], v: &[FF]) -> Vec<FF> {
    let mut v = v.to_vec();
    for (row, &pc) in basis.iter().zip(pivots) {
        if v[pc] != 0 {
            let c = v[pc];
            for (x, &b) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, b));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::gf;

    #[test]
    fn inverse_roundtrip() {
        let f = gf(7, 1);
        let m = FMatrix::from_rows(
            f.clone(),
            vec![vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]],
        );
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn kernel_dimension() {
        let f = gf(2, 1);
        // rank-1 matrix on 3 columns -> kernel dim 2
        let m = FMatrix::from_rows(f.clone(), vec![vec![1, 1, 0], vec![1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.apply(&v).iter().all(|&x| x == 0));
        }
    }
}
