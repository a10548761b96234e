//! Parametrized products of root elements and the canonical-form peel.
//!
//! A word is a product of factors x_root(coefficient), the coefficient a
//! polynomial. Peeling recovers the unique canonical word of an element of the
//! unipotent radical of a parabolic: factors run over the radical roots in the
//! canonical order (level-major, then the root-system order inside a level),
//! and are stripped from the left by reading a designated matrix entry whose
//! weight difference pins the factor.

use super::Rep;
use crate::ff::{PMatrix, Poly};
use crate::parab::ParabolicDatum;
use crate::rootsys::RootIx;
use std::fmt;

#[derive(Clone, Debug)]
pub struct GroupWord {
    pub factors: Vec<(RootIx, Poly)>,
}

impl GroupWord {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Drop factors with zero coefficient.
    pub fn simplified(mut self) -> GroupWord {
        self.factors.retain(|(_, c)| !c.is_zero());
        self
    }

    /// Display in the bracket notation of root-element products, needing the
    /// root system to show coefficient tuples.
    pub fn display(&self, sys: &crate::rootsys::RootSystem) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(r, c)| {
                let coeffs: Vec<String> = sys.root(*r).coeffs.iter().map(|x| x.to_string()).collect();
                format!("[{}; {}]", coeffs.join(""), c)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (r, c) in &self.factors {
            write!(f, "[r{}; {}] ", r, c)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeelError {
    #[error("matrix does not lie in the unipotent radical: nonzero residue")]
    Residue,
    #[error("no designated unit entry for root {0} at this characteristic")]
    NoUnitEntry(RootIx),
}

/// The product matrix of a word.
pub fn word_matrix(rep: &Rep, w: &GroupWord, field: &std::sync::Arc<crate::ff::Fq>, vars: &std::sync::Arc<crate::ff::VarSet>) -> PMatrix {
    let mut m = PMatrix::identity(field.clone(), vars.clone(), rep.dim);
    for (r, c) in &w.factors {
        debug_assert_eq!(c.field(), field);
        m = m.mul(&rep.x_poly(*r, c)).expect("square matrices");
    }
    m
}

/// Peel a unipotent-radical element into its canonical word. The input must
/// be exactly a product of radical root elements; the residue after stripping
/// every canonical factor must be the identity.
pub fn peel(rep: &Rep, pd: &ParabolicDatum, m: &PMatrix) -> Result<GroupWord, PeelError> {
    let field = m.field.clone();
    let vars = m.vars.clone();
    let p = field.p() as i64;
    let mut cur = m.clone();
    let mut factors = vec![];
    for level in &pd.levels {
        for &g in &level.members {
            // designated entry: a unit entry of the linear divided power mod p
            let d1 = &rep.divided_powers(g)[0];
            let mut designated = None;
            'search: for (r, row) in d1.rows.iter().enumerate() {
                for (&c, &v) in row {
                    if v.rem_euclid(p) != 0 {
                        designated = Some((r, c, v));
                        break 'search;
                    }
                }
            }
            let Some((r0, c0, d)) = designated else {
                return Err(PeelError::NoUnitEntry(g));
            };
            let dinv = field.inv(field.from_int(d));
            let coef = cur.at(r0, c0).scale(dinv);
            if coef.is_zero() {
                continue;
            }
            let inv_factor = rep.x_poly(g, &coef.neg());
            cur = inv_factor.mul(&cur).expect("square");
            factors.push((g, coef));
        }
    }
    if !cur.is_identity() {
        return Err(PeelError::Residue);
    }
    Ok(GroupWord { factors })
}

/// Convenience: peel a constant matrix.
pub fn peel_const(
    rep: &Rep,
    pd: &ParabolicDatum,
    m: &crate::ff::FMatrix,
    vars: &std::sync::Arc<crate::ff::VarSet>,
) -> Result<GroupWord, PeelError> {
    let pm = PMatrix::from_constant(m, vars.clone());
    peel(rep, pd, &pm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevrep::{RepSpec, build_rep};
    use crate::ff::{VarSet, gf};
    use crate::parab::levels;

    #[test]
    fn peel_roundtrip_canonical_word() {
        let rep = build_rep(&RepSpec::FoldedQuotient("F4".into())).unwrap();
        let sys = rep.sys.clone();
        let pd = levels(&sys, &[1, 2, 3]).unwrap(); // long A1 parabolic at node 1
        let f = gf(2, 2);
        let vars = VarSet::new(vec!["t"]);
        let t = Poly::var(f.clone(), vars.clone(), "t").unwrap();
        // canonical word with a few coefficients
        let mut factors = vec![];
        for (k, level) in pd.levels.iter().enumerate() {
            for (n, &g) in level.members.iter().enumerate() {
                if (k + n) % 2 == 0 {
                    let coef = t.scale(f.gen()).add(&Poly::constant(f.clone(), vars.clone(), (n % 2) as u32));
                    factors.push((g, coef));
                }
            }
        }
        let w = GroupWord { factors };
        let m = word_matrix(&rep, &w, &f, &vars);
        let back = peel(&rep, &pd, &m).unwrap();
        assert_eq!(back.factors.len(), w.factors.len());
        for ((r1, c1), (r2, c2)) in w.factors.iter().zip(&back.factors) {
            assert_eq!(r1, r2);
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn peel_reorders_with_commutator_corrections() {
        // x_{1100}(a) x_{1000}(b) is out of canonical order (1000 before 1100);
        // peeling must produce the canonical order with correction terms
        let rep = build_rep(&RepSpec::FoldedQuotient("F4".into())).unwrap();
        let sys = rep.sys.clone();
        let pd = levels(&sys, &[1, 2, 3]).unwrap();
        let f = gf(3, 1);
        let vars = VarSet::new(vec!["a", "b"]);
        let a = Poly::var(f.clone(), vars.clone(), "a").unwrap();
        let b = Poly::var(f.clone(), vars.clone(), "b").unwrap();
        let r1100 = sys.index_of(&[1, 1, 0, 0]).unwrap();
        let r1000 = sys.index_of(&[1, 0, 0, 0]).unwrap();
        let w = GroupWord {
            factors: vec![(r1100, a.clone()), (r1000, b.clone())],
        };
        let m = word_matrix(&rep, &w, &f, &vars);
        let back = peel(&rep, &pd, &m).unwrap();
        // canonical order starts with 1000 (lower height)
        assert_eq!(back.factors[0].0, r1000);
        assert_eq!(back.factors[0].1, b);
        assert!(back.factors.iter().any(|(r, c)| *r == r1100 && *c == a));
        // and the product of the peeled word reproduces the matrix
        let m2 = word_matrix(&rep, &back, &f, &vars);
        assert_eq!(m, m2);
        // brute-force oracle: the correction terms are exactly the commutator
        // terms [x_{1100}(a), x_{1000}(b)] predicts
        let extra: Vec<_> = back
            .factors
            .iter()
            .filter(|(r, _)| *r != r1000 && *r != r1100)
            .collect();
        let terms = sys.commutator_terms(r1100, r1000).unwrap();
        assert_eq!(extra.len(), terms.iter().filter(|(_, _, c)| c % 3 != 0).count());
    }

    #[test]
    fn peel_rejects_outsiders() {
        let rep = build_rep(&RepSpec::FoldedQuotient("F4".into())).unwrap();
        let sys = rep.sys.clone();
        let pd = levels(&sys, &[1, 2, 3]).unwrap();
        let f = gf(2, 1);
        let vars = VarSet::new(vec!["t"]);
        // a Levi root element is not in the radical
        let m = rep.x_poly(sys.simple(1), &Poly::var(f.clone(), vars.clone(), "t").unwrap());
        assert!(peel(&rep, &pd, &m).is_err());
    }
}
