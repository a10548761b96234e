//! Matrices with polynomial entries over a small finite field.

use super::fmatrix::FMatrix;
use super::poly::{Poly, VarSet};
use super::{FF, FfError, Fq};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct PMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Arc<Fq>,
    pub vars: Arc<VarSet>,
    entries: Vec<Poly>, // row major
}

impl fmt::Debug for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl PMatrix {
    pub fn zero(field: Arc<Fq>, vars: Arc<VarSet>, rows: usize, cols: usize) -> PMatrix {
        let entries = vec![Poly::zero(field.clone(), vars.clone()); rows * cols];
        PMatrix { rows, cols, field, vars, entries }
    }

    pub fn identity(field: Arc<Fq>, vars: Arc<VarSet>, n: usize) -> PMatrix {
        let mut m = PMatrix::zero(field.clone(), vars.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one(field.clone(), vars.clone());
        }
        m
    }

    /// Lift a constant matrix to polynomial entries.
    pub fn from_constant(m: &FMatrix, vars: Arc<VarSet>) -> PMatrix {
        let mut r = PMatrix::zero(m.field.clone(), vars, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                *r.at_mut(i, j) = Poly::constant(m.field.clone(), r.vars.clone(), m.at(i, j));
            }
        }
        r
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Poly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.at(r, c);
                if r == c {
                    if !(e.is_constant() && e.constant_term() == 1) {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &PMatrix) -> Result<PMatrix, FfError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FfError::DimMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &PMatrix) -> Result<PMatrix, FfError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FfError::DimMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b);
        }
        Ok(m)
    }

    /// Exact product.
    pub fn mul(&self, other: &PMatrix) -> Result<PMatrix, FfError> {
        if self.cols != other.rows {
            return Err(FfError::DimMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut m = PMatrix::zero(self.field.clone(), self.vars.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let e = m.at_mut(i, j);
                    *e = e.add(&t);
                }
            }
        }
        Ok(m)
    }

    /// Substitute `expr` for `var` in every entry.
    pub fn subst(&self, var: &str, expr: &Poly) -> Result<PMatrix, FfError> {
        if self.vars.index_of(var).is_none() {
            return Err(FfError::UnknownVariable(var.to_string()));
        }
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = e.subst(var, expr)?;
        }
        Ok(m)
    }

    /// Evaluate all variables at a point, producing a constant matrix.
    pub fn eval(&self, point: &[FF]) -> Result<FMatrix, FfError> {
        let mut m = FMatrix::zero(self.field.clone(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(r, c) = self.at(r, c).eval(point)?;
            }
        }
        Ok(m)
    }

    /// Maximum degree of any entry in the given variable.
    pub fn max_degree_in(&self, vi: usize) -> u16 {
        self.entries.iter().map(|e| e.degree_in(vi)).max().unwrap_or(0)
    }

    /// Default equality is symbolic normal-form comparison (`==`). This is the
    /// evaluation-grid cross-check: two matrices whose entries have degree at
    /// most d in each variable are equal iff they agree on a grid of d+1
    /// distinct field points per variable (Vandermonde), so agreement on such
    /// a grid certifies the polynomial identity.
    pub fn certified_eq(&self, other: &PMatrix) -> Result<bool, FfError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FfError::DimMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let nv = self.vars.len();
        let mut need = 1usize;
        for vi in 0..nv {
            let d = self.max_degree_in(vi).max(other.max_degree_in(vi)) as usize;
            need = need.max(d + 1);
        }
        if (self.field.order() as usize) < need {
            return Err(FfError::GridTooSmall { need, have: self.field.order() });
        }
        let points: Vec<FF> = (0..need as u32).collect();
        let mut idx = vec![0usize; nv];
        loop {
            let point: Vec<FF> = idx.iter().map(|&i| points[i]).collect();
            if self.eval(&point)? != other.eval(&point)? {
                return Ok(false);
            }
            // advance odometer
            let mut i = 0;
            loop {
                if i == nv {
                    return Ok(true);
                }
                idx[i] += 1;
                if idx[i] < need {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if nv == 0 {
                return Ok(true);
            }
        }
    }

    pub fn map_field(&self, target: Arc<Fq>, images: &[FF]) -> PMatrix {
        let mut m = PMatrix::zero(target.clone(), self.vars.clone(), self.rows, self.cols);
        for (e, src) in m.entries.iter_mut().zip(&self.entries) {
            *e = src.map_field(target.clone(), images);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::gf;

    #[test]
    fn identity_is_neutral() {
        let f = gf(2, 2);
        let vs = VarSet::new(vec!["t"]);
        let t = Poly::var(f.clone(), vs.clone(), "t").unwrap();
        let mut m = PMatrix::identity(f.clone(), vs.clone(), 3);
        *m.at_mut(0, 2) = t.clone();
        let id = PMatrix::identity(f.clone(), vs.clone(), 3);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn certified_eq_matches_symbolic() {
        let f = gf(2, 3);
        let vs = VarSet::new(vec!["t"]);
        let t = Poly::var(f.clone(), vs.clone(), "t").unwrap();
        let mut a = PMatrix::identity(f.clone(), vs.clone(), 2);
        *a.at_mut(0, 1) = t.pow(2).add(&t);
        let mut b = PMatrix::identity(f.clone(), vs.clone(), 2);
        *b.at_mut(0, 1) = t.add(&t.pow(2));
        assert!(a.certified_eq(&b).unwrap());
        *b.at_mut(0, 1) = t.pow(2);
        assert!(!a.certified_eq(&b).unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let f = gf(2, 1);
        let vs = VarSet::new(vec!["t"]);
        let a = PMatrix::identity(f.clone(), vs.clone(), 2);
        let b = PMatrix::identity(f.clone(), vs.clone(), 3);
        assert!(matches!(a.mul(&b), Err(FfError::DimMismatch(..))));
    }
}
