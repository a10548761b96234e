//! Module analysis over GF(q): spinning, composition factors, socle series,
//! homomorphism spaces, indecomposability and Jordan partitions.
//!
//! The internals follow the classical MeatAxe: random algebra elements,
//! kernel-of-factor splitting, and Norton's irreducibility criterion (spin a
//! null vector, then a null vector of the transposed element under the
//! transposed generators). Randomness comes from an explicit seeded stream so
//! every answer is reproducible.

pub mod poly1;

use crate::ff::{FF, FMatrix, Fq};
use poly1::UPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Clone)]
pub struct FqModule {
    pub field: Arc<Fq>,
    pub dim: usize,
    pub gens: Vec<FMatrix>,
}

impl std::fmt::Debug for FqModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FqModule(dim {}, {} gens over GF({}))",
            self.dim,
            self.gens.len(),
            self.field.order()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModaxError {
    #[error("zero seed vector")]
    ZeroSeed,
    #[error("generator is not invertible")]
    SingularGenerator,
    #[error("generators have mismatched dimensions")]
    DimMismatch,
    #[error("matrix is not unipotent")]
    NotUnipotent,
}

impl FqModule {
    pub fn new(field: Arc<Fq>, gens: Vec<FMatrix>) -> Result<FqModule, ModaxError> {
        let dim = gens.first().map(|g| g.rows).unwrap_or(0);
        for g in &gens {
            if g.rows != dim || g.cols != dim {
                return Err(ModaxError::DimMismatch);
            }
            if !g.is_invertible() {
                return Err(ModaxError::SingularGenerator);
            }
        }
        Ok(FqModule { field, dim, gens })
    }

    fn transposed(&self) -> FqModule {
        FqModule {
            field: self.field.clone(),
            dim: self.dim,
            gens: self.gens.iter().map(|g| g.transpose()).collect(),
        }
    }
}

/// An echelonized basis of a subspace, with pivot columns.
#[derive(Clone, Debug)]
pub struct Basis {
    pub rows: Vec<Vec<FF>>,
    pub pivots: Vec<usize>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn empty() -> Basis {
        Basis {
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn contains(&self, f: &Fq, v: &[FF]) -> bool {
        basis_reduce(f, self, v).iter().all(|&x| x == 0)
    }

    /// Coordinates of v over the basis; panics if v is outside.
    fn express(&self, f: &Fq, v: &[FF]) -> Vec<FF> {
        let mut v = v.to_vec();
        let mut coords = vec![0; self.rows.len()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[pc];
            if c != 0 {
                coords[i] = c;
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        assert!(v.iter().all(|&x| x == 0), "vector not in subspace");
        coords
    }
}

/// The smallest generator-stable subspace containing the seed vectors.
pub fn spin(m: &FqModule, seeds: &[Vec<FF>]) -> Result<Basis, ModaxError> {
    let f = &m.field;
    let mut basis = Basis::empty();
    let mut queue: Vec<Vec<FF>> = vec![];
    for s in seeds {
        if s.iter().all(|&x| x == 0) {
            return Err(ModaxError::ZeroSeed);
        }
        if basis_absorb(f, &mut basis, s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in &m.gens {
            let w = g.apply(&v);
            if basis_absorb(f, &mut basis, &w) {
                queue.push(w);
            }
        }
        if basis.dim() == m.dim {
            break;
        }
    }
    Ok(basis)
}

fn basis_reduce(f: &Fq, basis: &Basis, v: &[FF]) -> Vec<FF> {
    let mut v = v.to_vec();
    for (row, &pc) in basis.rows.iter().zip(&basis.pivots) {
        if v[pc] != 0 {
            let c = v[pc];
            for (a, &b) in v.iter_mut().zip(row) {
                *a = f.sub(*a, f.mul(c, b));
            }
        }
    }
    v
}

fn basis_absorb(f: &Fq, basis: &mut Basis, v: &[FF]) -> bool {
    let mut v = basis_reduce(f, basis, v);
    if let Some(p) = v.iter().position(|&x| x != 0) {
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in basis.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        basis.rows.push(v);
        basis.pivots.push(p);
        let mut order: Vec<usize> = (0..basis.rows.len()).collect();
        order.sort_by_key(|&i| basis.pivots[i]);
        basis.rows = order.iter().map(|&i| basis.rows[i].clone()).collect();
        basis.pivots = order.iter().map(|&i| basis.pivots[i]).collect();
        true
    } else {
        false
    }
}

/// The restriction of the action to an invariant subspace.
pub fn restrict(m: &FqModule, basis: &Basis) -> FqModule {
    let f = &m.field;
    let k = basis.dim();
    let gens = m
        .gens
        .iter()
        .map(|g| {
            let mut mat = FMatrix::zero(m.field.clone(), k, k);
            for (j, row) in basis.rows.iter().enumerate() {
                let img = g.apply(row);
                let coords = basis.express(f, &img);
                for (i, &c) in coords.iter().enumerate() {
                    *mat.at_mut(i, j) = c;
                }
            }
            mat
        })
        .collect();
    FqModule {
        field: m.field.clone(),
        dim: k,
        gens,
    }
}

/// The quotient action modulo an invariant subspace: coordinates at the
/// non-pivot positions after reduction.
pub fn quotient(m: &FqModule, basis: &Basis) -> FqModule {
    let f = &m.field;
    let pivot_set: std::collections::HashSet<usize> = basis.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.dim).filter(|c| !pivot_set.contains(c)).collect();
    let k = free.len();
    let gens = m
        .gens
        .iter()
        .map(|g| {
            let mut mat = FMatrix::zero(m.field.clone(), k, k);
            for (j, &fc) in free.iter().enumerate() {
                let mut e = vec![0; m.dim];
                e[fc] = 1;
                let img = basis_reduce(f, basis, &g.apply(&e));
                for (i, &fr) in free.iter().enumerate() {
                    *mat.at_mut(i, j) = img[fr];
                }
            }
            mat
        })
        .collect();
    FqModule {
        field: m.field.clone(),
        dim: k,
        gens,
    }
}

/// A random element of the enveloping algebra: identity plus a few random
/// words in the generators with random coefficients.
fn random_algebra_element(m: &FqModule, rng: &mut ChaCha8Rng) -> FMatrix {
    let f = &m.field;
    let q = f.order();
    let mut acc = FMatrix::identity(f.clone(), m.dim).scale(rng.gen_range(0..q));
    let words = 3 + rng.gen_range(0..3);
    for _ in 0..words {
        let len = 1 + rng.gen_range(0..3);
        let mut w = FMatrix::identity(f.clone(), m.dim);
        for _ in 0..len {
            let g = &m.gens[rng.gen_range(0..m.gens.len())];
            w = w.mul(g);
        }
        let c = rng.gen_range(1..q);
        acc = acc.add(&w.scale(c));
    }
    acc
}

/// Evaluate a polynomial at a matrix.
fn poly_at(pol: &UPoly, a: &FMatrix) -> FMatrix {
    let f = &a.field;
    let mut acc = FMatrix::zero(f.clone(), a.rows, a.cols);
    for &c in pol.c.iter().rev() {
        acc = acc.mul(a);
        for i in 0..a.rows {
            let e = acc.at_mut(i, i);
            *e = f.add(*e, c);
        }
    }
    acc
}

/// Minimal polynomial of a matrix (lcm of cyclic-vector minimal polynomials).
pub fn minpoly(a: &FMatrix) -> UPoly {
    let f = &a.field;
    let n = a.rows;
    let mut mp = UPoly::one();
    for start in 0..n {
        let mut e = vec![0; n];
        e[start] = 1;
        let mv = vector_minpoly(a, &e);
        mp = lcm(&mp, &mv, f);
        if mp.degree() >= n {
            break;
        }
    }
    mp
}

fn lcm(a: &UPoly, b: &UPoly, f: &Fq) -> UPoly {
    if a.is_zero() || b.is_zero() {
        return UPoly::zero();
    }
    let g = a.gcd(b, f);
    a.mul(b, f).divrem(&g, f).0.monic(f)
}

fn vector_minpoly(a: &FMatrix, v: &[FF]) -> UPoly {
    let f = &a.field;
    let n = a.rows;
    // krylov vectors in fully reduced echelon form, each row carrying its
    // expression over the powers theta^k v
    let mut rows: Vec<Vec<FF>> = vec![];
    let mut pivots: Vec<usize> = vec![];
    let mut reps: Vec<Vec<FF>> = vec![];
    let mut cur = v.to_vec();
    let mut power = 0usize;
    loop {
        let mut expr = vec![0; power + 1];
        expr[power] = 1;
        let mut w = cur.clone();
        for ((row, &pc), rexpr) in rows.iter().zip(&pivots).zip(&reps) {
            let c = w[pc];
            if c != 0 {
                for (a1, &b) in w.iter_mut().zip(row) {
                    *a1 = f.sub(*a1, f.mul(c, b));
                }
                for (k, &rc) in rexpr.iter().enumerate() {
                    if rc != 0 {
                        expr[k] = f.sub(expr[k], f.mul(c, rc));
                    }
                }
            }
        }
        if let Some(p) = w.iter().position(|&x| x != 0) {
            let inv = f.inv(w[p]);
            for x in w.iter_mut() {
                *x = f.mul(*x, inv);
            }
            let wexpr: Vec<FF> = {
                let mut e = expr.clone();
                for x in e.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                e.resize(n + 1, 0);
                e
            };
            // eliminate the new pivot from existing rows
            for (row, rexpr) in rows.iter_mut().zip(reps.iter_mut()) {
                let c = row[p];
                if c != 0 {
                    for (a1, &b) in row.iter_mut().zip(&w) {
                        *a1 = f.sub(*a1, f.mul(c, b));
                    }
                    for (k, &bc) in wexpr.iter().enumerate() {
                        if bc != 0 {
                            rexpr[k] = f.sub(rexpr[k], f.mul(c, bc));
                        }
                    }
                }
            }
            rows.push(w);
            pivots.push(p);
            reps.push(wexpr);
            cur = a.apply(&cur);
            power += 1;
            assert!(power <= n, "krylov chain exceeded dimension");
        } else {
            // theta^power v reduced to zero: expr gives the monic relation
            let mut c = vec![0; power + 1];
            c[power] = 1;
            for (k, &e) in expr.iter().enumerate().take(power) {
                c[k] = e;
            }
            return UPoly::from_coeffs(c);
        }
    }
}

/// Fixed space of all generators: common kernel of g - I.
pub fn fixed_space(m: &FqModule) -> Vec<Vec<FF>> {
    let f = &m.field;
    let mut rows = vec![];
    for g in &m.gens {
        let gi = g.sub(&FMatrix::identity(f.clone(), m.dim));
        for r in 0..m.dim {
            rows.push(gi.row(r).to_vec());
        }
    }
    if rows.is_empty() {
        return FMatrix::identity(f.clone(), m.dim)
            .kernel()
            .into_iter()
            .collect();
    }
    FMatrix::from_rows(f.clone(), rows).kernel()
}

enum ChopStep {
    Submodule(Basis),
    Irreducible,
}

/// Norton-style irreducibility decision. Returns a proper submodule basis or
/// the verdict that none exists.
fn chop_step(m: &FqModule, rng: &mut ChaCha8Rng, tries: usize) -> ChopStep {
    let f = &m.field;
    if m.dim <= 1 {
        return ChopStep::Irreducible;
    }
    for _attempt in 0..tries {
        let theta = random_algebra_element(m, rng);
        let mp = minpoly(&theta);
        if mp.degree() == 0 {
            continue;
        }
        let factors = poly1::factor(&mp, f, rng);
        for (irr, _mult) in &factors {
            let ft = poly_at(irr, &theta);
            let null = ft.kernel();
            if null.is_empty() {
                continue;
            }
            // try spinning null vectors
            for v in null.iter().take(4) {
                let s = spin(m, std::slice::from_ref(v)).unwrap();
                if s.dim() < m.dim {
                    return ChopStep::Submodule(s);
                }
            }
            if null.len() == irr.degree() {
                // Norton: one full spin on the null space plus one full spin of
                // the transposed nullspace under transposed generators proves
                // irreducibility; a proper transposed spin yields a submodule
                // as its orthogonal complement.
                let mt = m.transposed();
                let ftt = ft.transpose();
                let nullt = ftt.kernel();
                let st = spin(&mt, std::slice::from_ref(&nullt[0])).unwrap();
                if st.dim() == m.dim {
                    return ChopStep::Irreducible;
                }
                // orthogonal complement of the transposed-stable space
                let rows: Vec<Vec<FF>> = st.rows.clone();
                let ker = FMatrix::from_rows(f.clone(), rows).kernel();
                let mut b = Basis::empty();
                for v in &ker {
                    basis_absorb(f, &mut b, v);
                }
                assert!(b.dim() > 0 && b.dim() < m.dim);
                return ChopStep::Submodule(b);
            }
        }
    }
    // bounded-retry escalation: exhaustive seed spinning for small spaces,
    // otherwise spin every standard basis vector before declaring irreducible
    let q = f.order() as u64;
    let small = q
        .checked_pow(m.dim as u32)
        .map(|s| s <= 1 << 16)
        .unwrap_or(false);
    if small {
        let mut counters = vec![0u32; m.dim];
        loop {
            // increment odometer
            let mut i = 0;
            loop {
                if i == m.dim {
                    return ChopStep::Irreducible;
                }
                counters[i] += 1;
                if counters[i] < q as u32 {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
            let v: Vec<FF> = counters.clone();
            let s = spin(m, std::slice::from_ref(&v)).unwrap();
            if s.dim() < m.dim {
                return ChopStep::Submodule(s);
            }
        }
    }
    for i in 0..m.dim {
        let mut v = vec![0; m.dim];
        v[i] = 1;
        let s = spin(m, std::slice::from_ref(&v)).unwrap();
        if s.dim() < m.dim {
            return ChopStep::Submodule(s);
        }
    }
    ChopStep::Irreducible
}

/// Composition factors as modules, by recursive chopping.
pub fn composition_factors(m: &FqModule, rng: &mut ChaCha8Rng) -> Vec<FqModule> {
    if m.dim == 0 {
        return vec![];
    }
    match chop_step(m, rng, 24) {
        ChopStep::Irreducible => vec![m.clone()],
        ChopStep::Submodule(b) => {
            let sub = restrict(m, &b);
            let quo = quotient(m, &b);
            let mut out = composition_factors(&sub, rng);
            out.extend(composition_factors(&quo, rng));
            out
        }
    }
}

/// Basis matrices of Hom(a, b): matrices P with P A_i = B_i P.
pub fn hom_space(a: &FqModule, b: &FqModule) -> Vec<FMatrix> {
    assert_eq!(a.field, b.field);
    let f = &a.field;
    let (n, mm) = (b.dim, a.dim);
    let unknowns = n * mm;
    // first generator: build full system, take kernel
    let mut sol: Vec<Vec<FF>> = vec![];
    for (gi, (ga, gb)) in a.gens.iter().zip(&b.gens).enumerate() {
        if gi == 0 {
            let mut mat = FMatrix::zero(f.clone(), unknowns, unknowns);
            // row index (r, c): entry of (P ga - gb P)[r][c]
            for r in 0..n {
                for c in 0..mm {
                    let row = r * mm + c;
                    for k in 0..mm {
                        // P[r][k] * ga[k][c]
                        let v = ga.at(k, c);
                        if v != 0 {
                            let col = r * mm + k;
                            let e = mat.at_mut(row, col);
                            *e = f.add(*e, v);
                        }
                    }
                    for k in 0..n {
                        // gb[r][k] * P[k][c]
                        let v = gb.at(r, k);
                        if v != 0 {
                            let col = k * mm + c;
                            let e = mat.at_mut(row, col);
                            *e = f.sub(*e, v);
                        }
                    }
                }
            }
            sol = mat.kernel();
        } else {
            if sol.is_empty() {
                break;
            }
            // restrict the current solution space
            let mut rows = vec![];
            for s in &sol {
                // compute (P ga - gb P) for P = unvec(s)
                let p = unvec(f, s, n, mm);
                let lhs = p.mul(ga).sub(&b.gens[gi].mul(&p));
                rows.push(lhs.data.clone());
            }
            // kernel of the coefficient matrix over the solution basis
            let coeff = FMatrix::from_rows(f.clone(), rows);
            let combo = coeff.transpose().kernel();
            let new_sol: Vec<Vec<FF>> = combo
                .iter()
                .map(|c| {
                    let mut v = vec![0; unknowns];
                    for (k, &ck) in c.iter().enumerate() {
                        if ck != 0 {
                            for (x, &s) in v.iter_mut().zip(&sol[k]) {
                                *x = f.add(*x, f.mul(ck, s));
                            }
                        }
                    }
                    v
                })
                .collect();
            sol = new_sol;
        }
    }
    sol.iter().map(|s| unvec(f, s, n, mm)).collect()
}

fn unvec(f: &Arc<Fq>, s: &[FF], n: usize, m: usize) -> FMatrix {
    let mut p = FMatrix::zero(f.clone(), n, m);
    for r in 0..n {
        for c in 0..m {
            *p.at_mut(r, c) = s[r * m + c];
        }
    }
    p
}

pub fn hom_dim(a: &FqModule, b: &FqModule) -> usize {
    hom_space(a, b).len()
}

/// Two irreducible modules are isomorphic iff a nonzero hom exists.
pub fn isomorphic(a: &FqModule, b: &FqModule) -> bool {
    a.dim == b.dim && (a.dim == 0 || hom_dim(a, b) > 0)
}

/// The socle: sum of images of all homomorphisms from each composition factor.
pub fn socle(m: &FqModule, rng: &mut ChaCha8Rng) -> Basis {
    let f = &m.field;
    let factors = composition_factors(m, rng);
    // distinct iso classes
    let mut classes: Vec<FqModule> = vec![];
    for fac in factors {
        if !classes.iter().any(|c| isomorphic(c, &fac)) {
            classes.push(fac);
        }
    }
    let mut basis = Basis::empty();
    for class in &classes {
        for hom in hom_space(class, m) {
            for c in 0..class.dim {
                let col: Vec<FF> = (0..m.dim).map(|r| hom.at(r, c)).collect();
                if col.iter().any(|&x| x != 0) {
                    basis_absorb(f, &mut basis, &col);
                }
            }
        }
    }
    basis
}

/// Socle layers bottom-to-top: each layer lists the dimensions of the
/// irreducible summands of the successive socles.
pub fn socle_series(m: &FqModule, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut layers = vec![];
    let mut cur = m.clone();
    while cur.dim > 0 {
        let s = socle(&cur, rng);
        if s.dim() == 0 {
            // should not happen for a nonzero module
            layers.push(vec![cur.dim]);
            break;
        }
        let sub = restrict(&cur, &s);
        let mut dims: Vec<usize> = composition_factors(&sub, rng)
            .iter()
            .map(|f| f.dim)
            .collect();
        dims.sort_unstable();
        layers.push(dims);
        cur = quotient(&cur, &s);
    }
    layers
}

/// Try to split the module as a direct sum using idempotents found by
/// minimal-polynomial splitting of endomorphisms. Returns summand bases
/// (in the original coordinates) and whether the result is proven.
pub fn direct_summands(m: &FqModule, rng: &mut ChaCha8Rng) -> Vec<Basis> {
    let f = &m.field;
    if m.dim == 0 {
        return vec![];
    }
    let endos = hom_space(m, m);
    if endos.len() <= 1 {
        // only scalars: indecomposable
        return vec![full_basis(m)];
    }
    let mut candidates: Vec<FMatrix> = vec![];
    for e in &endos {
        candidates.push(e.clone());
    }
    for _ in 0..40 {
        // random combinations of endomorphism basis elements
        let mut acc = FMatrix::zero(f.clone(), m.dim, m.dim);
        for e in &endos {
            let c = rng.gen_range(0..f.order());
            if c != 0 {
                acc = acc.add(&e.scale(c));
            }
        }
        candidates.push(acc);
    }
    for theta in &candidates {
        let mp = minpoly(theta);
        let facs = poly1::factor(&mp, f, rng);
        if facs.len() >= 2 {
            // Fitting decomposition along the coprime factors
            let mut parts: Vec<Basis> = vec![];
            for (irr, mult) in &facs {
                let mut pw = UPoly::one();
                for _ in 0..*mult {
                    pw = pw.mul(irr, f);
                }
                let ker = poly_at(&pw, theta).kernel();
                let mut b = Basis::empty();
                for v in &ker {
                    basis_absorb(f, &mut b, v);
                }
                if b.dim() > 0 {
                    parts.push(b);
                }
            }
            if parts.len() >= 2 {
                // recurse into each part
                let mut out = vec![];
                for part in parts {
                    let sub = restrict(m, &part);
                    for inner in direct_summands(&sub, rng) {
                        // map inner basis back to the original coordinates
                        let mut b = Basis::empty();
                        for row in &inner.rows {
                            let mut v = vec![0; m.dim];
                            for (k, &c) in row.iter().enumerate() {
                                if c != 0 {
                                    for (x, &bp) in v.iter_mut().zip(&part.rows[k]) {
                                        *x = f.add(*x, f.mul(c, bp));
                                    }
                                }
                            }
                            basis_absorb(f, &mut b, &v);
                        }
                        out.push(b);
                    }
                }
                return out;
            }
        }
    }
    vec![full_basis(m)]
}

fn full_basis(m: &FqModule) -> Basis {
    let mut b = Basis::empty();
    for i in 0..m.dim {
        let mut v = vec![0; m.dim];
        v[i] = 1;
        basis_absorb(&m.field, &mut b, &v);
    }
    b
}

pub fn is_indecomposable(m: &FqModule, rng: &mut ChaCha8Rng) -> bool {
    direct_summands(m, rng).len() == 1
}

/// Verify a claimed direct-sum decomposition by an explicit change of basis
/// producing block-diagonal generators.
pub fn verify_summands(m: &FqModule, parts: &[Basis]) -> bool {
    let f = &m.field;
    let total: usize = parts.iter().map(|b| b.dim()).sum();
    if total != m.dim {
        return false;
    }
    let mut rows = vec![];
    for b in parts {
        rows.extend(b.rows.iter().cloned());
    }
    let u = FMatrix::from_rows(f.clone(), rows).transpose();
    let Some(uinv) = u.inverse() else {
        return false;
    };
    for g in &m.gens {
        let gg = uinv.mul(g).mul(&u);
        // block-diagonal check
        let mut off = 0usize;
        for b in parts {
            let d = b.dim();
            for r in off..off + d {
                for c in 0..m.dim {
                    if (c < off || c >= off + d) && gg.at(r, c) != 0 {
                        return false;
                    }
                }
            }
            off += d;
        }
    }
    true
}

/// Jordan partition of a unipotent matrix from ranks of (u-1)^k, as block
/// sizes with multiplicities, largest first.
pub fn jordan_partition(u: &FMatrix) -> Result<Vec<(usize, usize)>, ModaxError> {
    let f = &u.field;
    let n = u.rows;
    let one = FMatrix::identity(f.clone(), n);
    let nilp = u.sub(&one);
    let mut ranks = vec![n];
    let mut acc = FMatrix::identity(f.clone(), n);
    for _ in 1..=n {
        acc = acc.mul(&nilp);
        ranks.push(acc.rank());
        if *ranks.last().unwrap() == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(ModaxError::NotUnipotent);
    }
    while ranks.len() <= n + 1 {
        ranks.push(0);
    }
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    let mut out = vec![];
    for k in 1..=n {
        let ge_k = ranks[k - 1] - ranks[k];
        let ge_k1 = if k < n { ranks[k] - ranks[k + 1] } else { 0 };
        let exactly = ge_k - ge_k1;
        if exactly > 0 {
            out.push((k, exactly));
        }
    }
    out.reverse();
    Ok(out)
}

/// Render a Jordan partition like "2^10 1^6".
pub fn render_partition(p: &[(usize, usize)]) -> String {
    p.iter()
        .map(|(size, count)| {
            if *count == 1 {
                size.to_string()
            } else {
                format!("{}^{}", size, count)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEntry {
    pub dim: usize,
    pub mult: usize,
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    pub dim: usize,
    pub factors: Vec<FactorEntry>,
    pub socle_layers: Vec<Vec<usize>>,
    pub summands: Vec<usize>,
    pub indecomposable: bool,
}

/// A labeled reference irreducible for factor naming.
pub struct Reference {
    pub name: String,
    pub module: FqModule,
}

/// Full analysis with optional reference labels.
pub fn analyze(m: &FqModule, refs: &[Reference], seed: u64) -> ModuleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = composition_factors(m, &mut rng);
    // group by isomorphism class
    let mut classes: Vec<(FqModule, usize)> = vec![];
    for f in &factors {
        if let Some(c) = classes.iter_mut().find(|(c, _)| isomorphic(c, f)) {
            c.1 += 1;
        } else {
            classes.push((f.clone(), 1));
        }
    }
    let mut entries: Vec<FactorEntry> = classes
        .iter()
        .map(|(c, mult)| {
            let name = refs
                .iter()
                .find(|r| isomorphic(&r.module, c))
                .map(|r| r.name.clone());
            FactorEntry {
                dim: c.dim,
                mult: *mult,
                name,
            }
        })
        .collect();
    entries.sort_by_key(|e| (std::cmp::Reverse(e.dim), e.name.clone()));
    let socle_layers = socle_series(m, &mut rng);
    let parts = direct_summands(m, &mut rng);
    debug_assert!(verify_summands(m, &parts));
    let mut summands: Vec<usize> = parts.iter().map(|b| b.dim()).collect();
    summands.sort_unstable();
    ModuleReport {
        dim: m.dim,
        factors: entries,
        socle_layers,
        summands: summands.clone(),
        indecomposable: summands.len() == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::gf;

    fn module_from(field: &Arc<Fq>, mats: Vec<Vec<Vec<u32>>>) -> FqModule {
        let gens = mats
            .into_iter()
            .map(|m| FMatrix::from_rows(field.clone(), m))
            .collect();
        FqModule::new(field.clone(), gens).unwrap()
    }

    #[test]
    fn spin_trivial_fixed_vector() {
        let f = gf(2, 1);
        // identity-only action: any seed spans a 1-dim submodule
        let m = module_from(&f, vec![vec![vec![1, 0], vec![0, 1]]]);
        let s = spin(&m, &[vec![1, 1]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(matches!(spin(&m, &[vec![0, 0]]), Err(ModaxError::ZeroSeed)));
    }

    #[test]
    fn identity_generators_chop_to_trivials() {
        let f = gf(3, 1);
        let m = module_from(
            &f,
            vec![vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let factors = composition_factors(&m, &mut rng);
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|f| f.dim == 1));
    }

    #[test]
    fn block_diagonal_splits() {
        let f = gf(2, 2);
        // block diag of a 2x2 nontrivial action and a 1-dim trivial one
        let g = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let m = module_from(&f, vec![g]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let parts = direct_summands(&m, &mut rng);
        assert!(verify_summands(&m, &parts));
        let mut dims: Vec<usize> = parts.iter().map(|b| b.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }

    #[test]
    fn jordan_identity_and_block() {
        let f = gf(2, 1);
        let id = FMatrix::identity(f.clone(), 4);
        assert_eq!(jordan_partition(&id).unwrap(), vec![(1, 4)]);
        let j2 = FMatrix::from_rows(
            f.clone(),
            vec![
                vec![1, 1, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
            ],
        );
        assert_eq!(jordan_partition(&j2).unwrap(), vec![(2, 2)]);
        assert_eq!(render_partition(&[(2, 10), (1, 6)]), "2^10 1^6");
        // non-unipotent input is an error (over GF(3); over GF(2) a
        // transposition is unipotent)
        let f3 = gf(3, 1);
        let s = FMatrix::from_rows(f3.clone(), vec![vec![0, 1], vec![1, 0]]);
        assert!(jordan_partition(&s).is_err());
    }

    #[test]
    fn schur_on_an_irreducible() {
        // natural 2-dim module of SL2(F4): absolutely irreducible
        let f = gf(2, 2);
        let z = f.gen();
        let gens = vec![
            FMatrix::from_rows(f.clone(), vec![vec![1, 1], vec![0, 1]]),
            FMatrix::from_rows(f.clone(), vec![vec![1, z], vec![0, 1]]),
            FMatrix::from_rows(f.clone(), vec![vec![1, 0], vec![1, 1]]),
            FMatrix::from_rows(f.clone(), vec![vec![1, 0], vec![z, 1]]),
        ];
        let m = FqModule::new(f.clone(), gens).unwrap();
        assert_eq!(hom_dim(&m, &m), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let factors = composition_factors(&m, &mut rng);
        assert_eq!(factors.len(), 1);
    }

    #[test]
    fn chop_multiset_is_seed_independent() {
        let f = gf(2, 1);
        // a uniserial 3-dim module for the cyclic group generated by a
        // regular unipotent element: factors 1,1,1
        let g = vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]];
        let m = module_from(&f, vec![g]);
        let mut dims_by_seed = vec![];
        for seed in [1u64, 99, 4242] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut dims: Vec<usize> = composition_factors(&m, &mut rng)
                .iter()
                .map(|f| f.dim)
                .collect();
            dims.sort();
            dims_by_seed.push(dims);
        }
        assert_eq!(dims_by_seed[0], dims_by_seed[1]);
        assert_eq!(dims_by_seed[1], dims_by_seed[2]);
        // and the socle series of the uniserial module is 1/1/1
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(socle_series(&m, &mut rng), vec![vec![1], vec![1], vec![1]]);
    }
}
