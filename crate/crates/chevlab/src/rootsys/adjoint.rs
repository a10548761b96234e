//! The adjoint module over the integers: divided powers of ad(e_g), Weyl
//! representative conjugation signs, and extraction of the group commutator
//! coefficients by peeling on the adjoint module.
//!
//! Basis of the adjoint module: the root vectors in root-index order, then the
//! Cartan elements h_1..h_r.

use super::ipoly::{IMat, IPMat, IPoly};
use super::{RootIx, RootSystem};

fn dim(sys: &RootSystem) -> usize {
    sys.n_roots() + sys.rank()
}

/// The matrix of ad(e_g) on the integral adjoint basis.
fn ad_matrix(sys: &RootSystem, g: RootIx) -> IMat {
    let n = sys.n_roots();
    let rank = sys.rank();
    let mut m = IMat::zero(dim(sys));
    for b in 0..n {
        if b == sys.neg(g) {
            // [e_g, e_{-g}] = g^vee
            for (i, c) in sys.coroot_coeffs(g).into_iter().enumerate() {
                m.add_at(n + i, b, c);
            }
        } else if let Some(s) = sys.root_sum(g, b) {
            m.add_at(s, b, sys.n_of(g, b));
        }
    }
    for i in 0..rank {
        // [e_g, h_i] = -<g, alpha_i^vee> e_g
        let k: i64 = (0..rank)
            .map(|j| sys.root(g).coeffs[j] as i64 * sys.cartan()[i][j])
            .sum();
        m.add_at(g, n + i, -k);
    }
    m
}

/// Divided powers ad^k/k! for k = 1.. until zero (at most 3 steps can be
/// nonzero; the division is exact on the Chevalley lattice).
pub(crate) fn adjoint_divided_powers(sys: &RootSystem) -> Vec<Vec<IMat>> {
    (0..sys.n_roots())
        .map(|g| {
            let ad = ad_matrix(sys, g);
            let mut pows = vec![ad.clone()];
            let mut acc = ad.clone(); // ad^k, undivided
            let mut k = 1i64;
            loop {
                acc = acc.mul(&ad);
                k += 1;
                if acc.is_zero() {
                    break;
                }
                assert!(k <= 4, "unipotent degree exceeded the expected bound");
                let fact: i64 = (1..=k).product();
                pows.push(acc.div_exact(fact));
            }
            pows
        })
        .collect()
}

/// Conjugation by the Weyl representative n_a := n_a(1), with the convention
/// x^g = g x g^{-1}: x_b(t)^{n_a} = x_{s_a(b)}(eta * t). Computed from the
/// adjoint action Ad(n_a) on e_b.
pub(crate) fn eta(sys: &RootSystem, a: RootIx, b: RootIx) -> (RootIx, i64) {
    let na = weyl_rep_adjoint(sys, a, 1);
    let mut col = std::collections::BTreeMap::new();
    col.insert(b, 1i64);
    let img = na.apply(&col);
    assert_eq!(img.len(), 1, "Ad(n_a) must send a root vector to a root vector");
    let (&row, &val) = img.iter().next().unwrap();
    assert!(row < sys.n_roots() && val.abs() == 1);
    assert_eq!(row, sys.reflect(a, b));
    (row, val)
}

/// Ad(n_a(c)) for c = +/-1.
pub(crate) fn weyl_rep_adjoint(sys: &RootSystem, a: RootIx, c: i64) -> IMat {
    // n_a(c) = x_a(c) x_{-a}(-c^{-1}) x_a(c); for c = +/-1, c^{-1} = c.
    assert!(c == 1 || c == -1);
    let x = sys.adjoint_unipotent(a, c);
    let y = sys.adjoint_unipotent(sys.neg(a), -c);
    x.mul(&y).mul(&x)
}

/// Symbolic adjoint matrix of x_g(q) for a monomial or polynomial parameter.
fn unipotent_sym(sys: &RootSystem, g: RootIx, q: &IPoly) -> IPMat {
    let n = dim(sys);
    let mut m = IPMat::identity(n);
    let mut qk = IPoly::constant(1);
    for pw in sys.adjoint_pows(g) {
        qk = qk.mul(q);
        for (r, row) in pw.rows.iter().enumerate() {
            for (&cidx, &v) in row {
                m.add_at(r, cidx, &qk.scale(v));
            }
        }
    }
    m
}

/// The commutator coefficients: [x_a(t), x_b(u)] = prod x_{ia+jb}(C_ij t^i u^j)
/// with [g,h] = g^{-1} h^{-1} g h, factors ordered by i+j then i. Each C_ij is
/// read off the adjoint module and the factor peeled away; the residue must be
/// the identity.
pub(crate) fn commutator_terms(sys: &RootSystem, a: RootIx, b: RootIx) -> Vec<(i32, i32, i64)> {
    // collect the roots ia + jb, i, j >= 1
    let mut targets: Vec<(i32, i32, RootIx)> = vec![];
    for i in 1..=4i32 {
        for j in 1..=4i32 {
            let c: Vec<i32> = sys
                .root(a)
                .coeffs
                .iter()
                .zip(&sys.root(b).coeffs)
                .map(|(&x, &y)| i * x + j * y)
                .collect();
            if let Some(ix) = sys.index_of(&c) {
                targets.push((i, j, ix));
            }
        }
    }
    if targets.is_empty() {
        return vec![];
    }
    targets.sort_by_key(|&(i, j, _)| (i + j, i));

    let t = IPoly::monomial(1, 1, 0);
    let tneg = IPoly::monomial(-1, 1, 0);
    let u = IPoly::monomial(1, 0, 1);
    let uneg = IPoly::monomial(-1, 0, 1);
    let xa = unipotent_sym(sys, a, &t);
    let xa_inv = unipotent_sym(sys, a, &tneg);
    let xb = unipotent_sym(sys, b, &u);
    let xb_inv = unipotent_sym(sys, b, &uneg);
    let mut residue = xa_inv.mul(&xb_inv).mul(&xa).mul(&xb);

    let mut out = vec![];
    for &(i, j, g) in &targets {
        // designated entry: first nonzero entry of ad(e_g)
        let ad = &sys.adjoint_pows(g)[0];
        let (r0, c0, d) = first_entry(ad);
        let coeff = residue.at(r0, c0).coeff(i as u8, j as u8);
        assert!(coeff % d == 0, "structure constant extraction not integral");
        let cij = coeff / d;
        if cij != 0 {
            let q = IPoly::monomial(-cij, i as u8, j as u8);
            let strip = unipotent_sym(sys, g, &q);
            residue = strip.mul(&residue);
            out.push((i, j, cij));
        }
    }
    assert!(
        residue.is_identity(),
        "commutator did not reduce to the identity: missing factors"
    );
    out
}

fn first_entry(m: &IMat) -> (usize, usize, i64) {
    for (r, row) in m.rows.iter().enumerate() {
        if let Some((&c, &v)) = row.iter().next() {
            return (r, c, v);
        }
    }
    panic!("ad(e_g) is never zero");
}
