//! Sparse multivariate polynomials over a small finite field.
//!
//! Terms are kept in a `BTreeMap` from exponent tuple to nonzero coefficient,
//! so every polynomial is its own normal form and structural equality is
//! polynomial equality.

use super::{FF, FfError, Fq};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An ordered list of variable names shared by all polynomials of a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub(crate) field: Arc<Fq>,
    pub(crate) vars: Arc<VarSet>,
    /// exponent tuple (one entry per variable) -> nonzero coefficient
    pub(crate) terms: BTreeMap<Vec<u16>, FF>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut printed = false;
            let coef = self.field.render(c);
            let trivial_coef = coef == "1";
            if !trivial_coef || exp.iter().all(|&e| e == 0) {
                if coef.contains('+') {
                    write!(f, "({})", coef)?;
                } else {
                    write!(f, "{}", coef)?;
                }
                printed = true;
            }
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                printed = true;
                if e == 1 {
                    write!(f, "{}", self.vars.names()[i])?;
                } else {
                    write!(f, "{}^{}", self.vars.names()[i], e)?;
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(field: Arc<Fq>, vars: Arc<VarSet>) -> Poly {
        Poly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Arc<Fq>, vars: Arc<VarSet>, c: FF) -> Poly {
        let mut p = Poly::zero(field, vars);
        if c != 0 {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(field: Arc<Fq>, vars: Arc<VarSet>) -> Poly {
        let c = field.one();
        Poly::constant(field, vars, c)
    }

    /// The monomial c * v^e for variable index `vi`.
    pub fn monomial(field: Arc<Fq>, vars: Arc<VarSet>, vi: usize, e: u16, c: FF) -> Poly {
        let mut p = Poly::zero(field, vars);
        if c != 0 {
            let mut exp = vec![0u16; p.vars.len()];
            exp[vi] = e;
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn var(field: Arc<Fq>, vars: Arc<VarSet>, name: &str) -> Result<Poly, FfError> {
        let vi = vars
            .index_of(name)
            .ok_or_else(|| FfError::UnknownVariable(name.to_string()))?;
        let one = field.one();
        Ok(Poly::monomial(field, vars, vi, 1, one))
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> FF {
        self.terms.get(&vec![0u16; self.vars.len()]).copied().unwrap_or(0)
    }

    pub fn degree_in(&self, vi: usize) -> u16 {
        self.terms.keys().map(|e| e[vi]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn assert_compatible(&self, other: &Poly) {
        assert_eq!(
            self.field, other.field,
            "polynomial arithmetic over different fields"
        );
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic over different variable lists"
        );
    }

    fn insert_term(&mut self, exp: Vec<u16>, c: FF) {
        if c == 0 {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let mut r = self.clone();
        for (exp, &c) in &other.terms {
            r.insert_term(exp.clone(), c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FF) -> Poly {
        if c == 0 {
            return Poly::zero(self.field.clone(), self.vars.clone());
        }
        let mut r = Poly::zero(self.field.clone(), self.vars.clone());
        for (exp, &a) in &self.terms {
            r.insert_term(exp.clone(), self.field.mul(a, c));
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let mut r = Poly::zero(self.field.clone(), self.vars.clone());
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let c = self.field.mul(ca, cb);
                if c == 0 {
                    continue;
                }
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.insert_term(exp, c);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field.clone(), self.vars.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `expr` for the variable named `var`. The substitution
    /// commutes with evaluation at field points.
    pub fn subst(&self, var: &str, expr: &Poly) -> Result<Poly, FfError> {
        self.assert_compatible(expr);
        let vi = self
            .vars
            .index_of(var)
            .ok_or_else(|| FfError::UnknownVariable(var.to_string()))?;
        let mut r = Poly::zero(self.field.clone(), self.vars.clone());
        // group by exponent of vi to reuse powers
        let mut powers: Vec<Poly> = vec![Poly::one(self.field.clone(), self.vars.clone())];
        for (exp, &c) in &self.terms {
            let e = exp[vi] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(expr);
                powers.push(next);
            }
            let mut rest = exp.clone();
            rest[vi] = 0;
            let mut base = Poly::zero(self.field.clone(), self.vars.clone());
            base.insert_term(rest, c);
            r = r.add(&base.mul(&powers[e]));
        }
        Ok(r)
    }

    /// Evaluate at a full assignment of the variables (by variable order).
    pub fn eval(&self, point: &[FF]) -> Result<FF, FfError> {
        if point.len() != self.vars.len() {
            let missing = self
                .vars
                .names()
                .get(point.len())
                .cloned()
                .unwrap_or_else(|| "?".to_string());
            return Err(FfError::MissingAssignment(missing));
        }
        let f = &self.field;
        let mut acc = 0;
        for (exp, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as i64));
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    /// Map coefficients into another field through `images` (an embedding
    /// table indexed by source encoding).
    pub fn map_field(&self, target: Arc<Fq>, images: &[FF]) -> Poly {
        let mut r = Poly::zero(target, self.vars.clone());
        for (exp, &c) in &self.terms {
            r.insert_term(exp.clone(), images[c as usize]);
        }
        r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &FF)> {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::gf;

    fn ctx() -> (Arc<Fq>, Arc<VarSet>) {
        (gf(2, 2), VarSet::new(vec!["t", "u"]))
    }

    #[test]
    fn subst_commutes_with_eval() {
        let (f, vs) = ctx();
        let t = Poly::var(f.clone(), vs.clone(), "t").unwrap();
        let u = Poly::var(f.clone(), vs.clone(), "u").unwrap();
        // p = t^2*u + t + 1
        let p = t.pow(2).mul(&u).add(&t).add(&Poly::one(f.clone(), vs.clone()));
        let expr = t.mul(&u).add(&u); // t*u + u
        let q = p.subst("t", &expr).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let sub = expr.eval(&[a, b]).unwrap();
                assert_eq!(q.eval(&[a, b]).unwrap(), p.eval(&[sub, b]).unwrap());
            }
        }
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let (f, vs) = ctx();
        let p = Poly::one(f.clone(), vs.clone());
        assert!(matches!(p.subst("w", &p.clone()), Err(FfError::UnknownVariable(_))));
    }

    #[test]
    fn normal_form_equality() {
        let (f, vs) = ctx();
        let t = Poly::var(f.clone(), vs.clone(), "t").unwrap();
        let a = t.add(&t); // 2t = 0 in char 2
        assert!(a.is_zero());
        let b = t.pow(2).add(&t).sub(&t);
        assert_eq!(b, t.pow(2));
    }
}
