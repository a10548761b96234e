//! Exact integer polynomials in two variables (t, u) and sparse integer
//! matrices over them. Used for structure-constant extraction on the adjoint
//! module, where everything stays in small integers.

use std::collections::BTreeMap;

/// Polynomial in t, u with i64 coefficients; key = (deg_t, deg_u).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IPoly {
    pub terms: BTreeMap<(u8, u8), i64>,
}

impl IPoly {
    pub fn zero() -> IPoly {
        IPoly::default()
    }

    pub fn constant(c: i64) -> IPoly {
        let mut p = IPoly::zero();
        if c != 0 {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn monomial(c: i64, dt: u8, du: u8) -> IPoly {
        let mut p = IPoly::zero();
        if c != 0 {
            p.terms.insert((dt, du), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    pub fn add_assign(&mut self, other: &IPoly) {
        for (&k, &v) in &other.terms {
            let e = self.terms.entry(k).or_insert(0);
            *e += v;
            if *e == 0 {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &IPoly) -> IPoly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn mul(&self, other: &IPoly) -> IPoly {
        let mut r = IPoly::zero();
        for (&(a, b), &x) in &self.terms {
            for (&(c, d), &y) in &other.terms {
                let k = (a + c, b + d);
                let e = r.terms.entry(k).or_insert(0);
                *e += x * y;
                if *e == 0 {
                    r.terms.remove(&k);
                }
            }
        }
        r
    }

    pub fn scale(&self, c: i64) -> IPoly {
        if c == 0 {
            return IPoly::zero();
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            *v *= c;
        }
        r
    }

    pub fn coeff(&self, dt: u8, du: u8) -> i64 {
        self.terms.get(&(dt, du)).copied().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> IPoly {
        let mut acc = IPoly::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Sparse square matrix with IPoly entries, stored as rows of (col, entry).
#[derive(Clone, Debug)]
pub struct IPMat {
    pub n: usize,
    pub rows: Vec<BTreeMap<usize, IPoly>>,
}

impl IPMat {
    pub fn identity(n: usize) -> IPMat {
        let mut rows = vec![BTreeMap::new(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(i, IPoly::constant(1));
        }
        IPMat { n, rows }
    }

    pub fn zero(n: usize) -> IPMat {
        IPMat {
            n,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, p: IPoly) {
        if p.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, p);
        }
    }

    pub fn at(&self, r: usize, c: usize) -> IPoly {
        self.rows[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, r: usize, c: usize, p: &IPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.rows[r].entry(c).or_default();
        e.add_assign(p);
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn mul(&self, other: &IPMat) -> IPMat {
        assert_eq!(self.n, other.n);
        let mut r = IPMat::zero(self.n);
        for i in 0..self.n {
            for (&k, a) in &self.rows[i] {
                for (&j, b) in &other.rows[k] {
                    let t = a.mul(b);
                    r.add_at(i, j, &t);
                }
            }
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for (&j, p) in &self.rows[i] {
                if i == j {
                    if !p.is_one() {
                        return false;
                    }
                } else if !p.is_zero() {
                    return false;
                }
            }
            if self.rows[i].get(&i).map(|p| p.is_one()) != Some(true) {
                return false;
            }
        }
        true
    }
}

/// Sparse square integer matrix (constant case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub n: usize,
    pub rows: Vec<BTreeMap<usize, i64>>,
}

impl IMat {
    pub fn zero(n: usize) -> IMat {
        IMat {
            n,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zero(n);
        for i in 0..n {
            m.rows[i].insert(i, 1);
        }
        m
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: i64) {
        if v == 0 {
            return;
        }
        let e = self.rows[r].entry(c).or_insert(0);
        *e += v;
        if *e == 0 {
            self.rows[r].remove(&c);
        }
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.rows[r].get(&c).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.n, other.n);
        let mut r = IMat::zero(self.n);
        for i in 0..self.n {
            for (&k, &a) in &self.rows[i] {
                for (&j, &b) in &other.rows[k] {
                    r.add_at(i, j, a * b);
                }
            }
        }
        r
    }

    /// Divide every entry exactly by d; panics if not divisible.
    pub fn div_exact(&self, d: i64) -> IMat {
        let mut r = IMat::zero(self.n);
        for i in 0..self.n {
            for (&j, &v) in &self.rows[i] {
                assert!(v % d == 0, "inexact division in integral matrix");
                r.add_at(i, j, v / d);
            }
        }
        r
    }

    pub fn scale(&self, c: i64) -> IMat {
        let mut r = IMat::zero(self.n);
        if c == 0 {
            return r;
        }
        for i in 0..self.n {
            for (&j, &v) in &self.rows[i] {
                r.add_at(i, j, v * c);
            }
        }
        r
    }

    pub fn add(&self, other: &IMat) -> IMat {
        let mut r = self.clone();
        for i in 0..self.n {
            for (&j, &v) in &other.rows[i] {
                r.add_at(i, j, v);
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Apply to a sparse column vector.
    pub fn apply(&self, v: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for i in 0..self.n {
            let mut acc = 0i64;
            for (&k, &a) in &self.rows[i] {
                if let Some(&x) = v.get(&k) {
                    acc += a * x;
                }
            }
            if acc != 0 {
                out.insert(i, acc);
            }
        }
        out
    }
}
