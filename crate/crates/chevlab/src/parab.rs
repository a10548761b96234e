//! Parabolic data: the level/shape filtration of unipotent radicals and
//! explicit Levi-action matrices on each level.
//!
//! For a subset J of the simple roots, every positive root beta outside the
//! span of J splits as beta_J + beta'_J with beta'_J supported on the
//! complement of J. The level of beta is the coefficient sum of beta'_J, its
//! shape is beta'_J itself. Root groups of a common level i span the section
//! Q(i)/Q(i+1), a module for the Levi; each shape contributes one summand with
//! highest weight the unique member root of maximal height.

use crate::ff::{FF, Fq, PMatrix, Poly, VarSet};
use crate::rootsys::{RootIx, RootSystem};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParabError {
    #[error("simple-root index {0} out of range")]
    BadSimpleIndex(usize),
    #[error("level index {0} out of range (levels run 1..={1})")]
    BadLevel(usize, usize),
    #[error("generator root {0} is not a Levi root")]
    NotLeviRoot(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Shape {
    /// Coefficient tuple over the complement of J (indexed by simple root).
    pub shape: Vec<i32>,
    /// Member roots, in the canonical intra-level order.
    pub members: Vec<RootIx>,
    /// The unique root of maximal height with this shape.
    pub high_root: RootIx,
}

#[derive(Clone, Debug, Serialize)]
pub struct Level {
    pub index: usize,
    pub shapes: Vec<Shape>,
    /// All member roots of the level, in canonical order.
    pub members: Vec<RootIx>,
}

/// The level/shape data of the standard parabolic P_J.
pub struct ParabolicDatum {
    pub sys: Arc<RootSystem>,
    /// Subset of simple roots (indices 0..rank) generating the Levi.
    pub j: Vec<usize>,
    pub levels: Vec<Level>,
    /// level of each radical root
    level_of: BTreeMap<RootIx, usize>,
}

impl std::fmt::Debug for ParabolicDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ParabolicDatum({}, J={:?}, {} levels)",
            self.sys.label(),
            self.j,
            self.levels.len()
        )
    }
}

/// Compute the level/shape filtration for the parabolic with Levi subset `j`
/// (0-based simple root indices).
pub fn levels(sys: &Arc<RootSystem>, j: &[usize]) -> Result<ParabolicDatum, ParabError> {
    let rank = sys.rank();
    for &i in j {
        if i >= rank {
            return Err(ParabError::BadSimpleIndex(i));
        }
    }
    let in_j = |i: usize| j.contains(&i);
    let mut by_level: BTreeMap<usize, Vec<RootIx>> = BTreeMap::new();
    for ix in 0..sys.n_positive() {
        let c = &sys.root(ix).coeffs;
        let level: i32 = (0..rank).filter(|&i| !in_j(i)).map(|i| c[i]).sum();
        if level > 0 {
            by_level.entry(level as usize).or_default().push(ix);
        }
    }
    let mut levels_out = vec![];
    let mut level_of = BTreeMap::new();
    for (&li, members) in &by_level {
        // canonical intra-level order: the root-system total order (height,
        // then descending lex), which the root indices already realize
        let mut members = members.clone();
        members.sort_unstable();
        for &m in &members {
            level_of.insert(m, li);
        }
        let mut shapes: BTreeMap<Vec<i32>, Vec<RootIx>> = BTreeMap::new();
        for &m in &members {
            let c = &sys.root(m).coeffs;
            let shape: Vec<i32> = (0..rank).map(|i| if in_j(i) { 0 } else { c[i] }).collect();
            shapes.entry(shape).or_default().push(m);
        }
        let shapes = shapes
            .into_iter()
            .map(|(shape, mem)| {
                let max_h = mem.iter().map(|&m| sys.root(m).height).max().unwrap();
                let highs: Vec<RootIx> = mem
                    .iter()
                    .copied()
                    .filter(|&m| sys.root(m).height == max_h)
                    .collect();
                assert_eq!(highs.len(), 1, "high root of a shape must be unique");
                Shape {
                    shape,
                    members: mem,
                    high_root: highs[0],
                }
            })
            .collect();
        levels_out.push(Level {
            index: li,
            shapes,
            members,
        });
    }
    Ok(ParabolicDatum {
        sys: sys.clone(),
        j: j.to_vec(),
        levels: levels_out,
        level_of,
    })
}

impl ParabolicDatum {
    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> Option<&Level> {
        self.levels.iter().find(|l| l.index == i)
    }

    pub fn level_of(&self, root: RootIx) -> Option<usize> {
        self.level_of.get(&root).copied()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.members.len()).collect()
    }

    /// Roots of the Levi (all roots supported on J), positives and negatives.
    pub fn levi_roots(&self) -> Vec<RootIx> {
        let rank = self.sys.rank();
        (0..self.sys.n_roots())
            .filter(|&ix| {
                let c = &self.sys.root(ix).coeffs;
                (0..rank).all(|i| self.j.contains(&i) || c[i] == 0)
            })
            .collect()
    }

    /// Highest weight of the Levi action on a shape, as the pairing vector
    /// <high_root, alpha_i^vee> over the Levi simple roots i in J.
    pub fn shape_high_weight(&self, s: &Shape) -> Vec<i64> {
        self.j
            .iter()
            .map(|&i| self.sys.pairing(s.high_root, self.sys.simple(i)))
            .collect()
    }

    /// Matrix of conjugation by the Levi root element x_alpha(t) on the basis
    /// of level-i root groups, with terms of deeper level discarded. Entries
    /// are polynomial in the parameter variable `var`.
    ///
    /// With x^g = g x g^-1 and [g,h] = g^-1 h^-1 g h,
    ///   x_b(u)^{x_a(t)} = x_b(u) * prod x_{ib+ja}(C_ij u^i (-t)^j),
    /// so the linear action on the level space adds C_1j (-t)^j to the
    /// (b + j*a, b) entry.
    pub fn level_action_root(
        &self,
        i: usize,
        alpha: RootIx,
        field: &Arc<Fq>,
        vars: &Arc<VarSet>,
        var: &str,
    ) -> Result<PMatrix, ParabError> {
        let lev = self
            .level(i)
            .ok_or(ParabError::BadLevel(i, self.n_levels()))?;
        if !self.levi_roots().contains(&alpha) {
            return Err(ParabError::NotLeviRoot(alpha));
        }
        let n = lev.members.len();
        let pos: BTreeMap<RootIx, usize> = lev
            .members
            .iter()
            .enumerate()
            .map(|(k, &m)| (m, k))
            .collect();
        let vi = vars
            .index_of(var)
            .unwrap_or_else(|| panic!("variable {var} not in context"));
        let mut m = PMatrix::identity(field.clone(), vars.clone(), n);
        for (&b, &col) in &pos {
            for (ii, jj, c) in self
                .sys
                .commutator_terms(b, alpha)
                .expect("b is a radical root, alpha a Levi root")
            {
                if ii != 1 {
                    continue; // nonlinear in the level coordinate
                }
                // target root b + jj*alpha stays in the same level
                let target: Vec<i32> = self
                    .sys
                    .root(b)
                    .coeffs
                    .iter()
                    .zip(&self.sys.root(alpha).coeffs)
                    .map(|(&x, &y)| x + jj * y)
                    .collect();
                let t = self.sys.index_of(&target).expect("string member is a root");
                let row = pos[&t];
                // coefficient C * (-t)^jj
                let sign = if jj % 2 == 0 { 1i64 } else { -1i64 };
                let coef = field.from_int(c * sign);
                let mono = Poly::monomial(field.clone(), vars.clone(), vi, jj as u16, coef);
                let e = m.at_mut(row, col);
                *e = e.add(&mono);
            }
        }
        Ok(m)
    }

    /// Diagonal matrix of the torus element h_alpha(c) on level i:
    /// x_b(u)^{h_alpha(c)} = x_b(c^{<b,alpha^vee>} u).
    pub fn level_action_torus(
        &self,
        i: usize,
        alpha: RootIx,
        field: &Arc<Fq>,
        c: FF,
    ) -> Result<crate::ff::FMatrix, ParabError> {
        let lev = self
            .level(i)
            .ok_or(ParabError::BadLevel(i, self.n_levels()))?;
        let n = lev.members.len();
        let mut m = crate::ff::FMatrix::zero(field.clone(), n, n);
        for (k, &b) in lev.members.iter().enumerate() {
            let e = self.sys.pairing(b, alpha);
            *m.at_mut(k, k) = field.pow(c, e);
        }
        Ok(m)
    }

    /// Check [level i, level j] <= level >= i+j for all level pairs, via the
    /// commutator terms: every root i*b + j*b' appearing in a commutator of
    /// radical roots must have level at least level(b) + level(b').
    pub fn centrality_check(&self) -> bool {
        for la in &self.levels {
            for lb in &self.levels {
                for &a in &la.members {
                    for &b in &lb.members {
                        if a == b || self.sys.neg(a) == b {
                            continue;
                        }
                        let Ok(terms) = self.sys.commutator_terms(a, b) else {
                            continue;
                        };
                        for (i, j, _c) in terms {
                            let target: Vec<i32> = self
                                .sys
                                .root(a)
                                .coeffs
                                .iter()
                                .zip(&self.sys.root(b).coeffs)
                                .map(|(&x, &y)| i * x + j * y)
                                .collect();
                            let t = self.sys.index_of(&target).unwrap();
                            let lt = self.level_of(t).unwrap_or(0);
                            let need = (i as usize) * la.index + (j as usize) * lb.index;
                            if lt < need {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}
