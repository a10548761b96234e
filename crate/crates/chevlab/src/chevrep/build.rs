//! Construction of the representations: weight-basis models for minuscule-type
//! natural modules, the adjoint wrap, diagram folding, and invariant-line
//! quotients. Everything is integral.

use super::{Rep, RepError, RepSpec, matrices_equal};
use crate::rootsys::ipoly::IMat;
use crate::rootsys::{self, RootIx, RootSystem};
use std::collections::HashMap;
use std::sync::Arc;

pub(super) fn build(spec: &RepSpec) -> Result<Rep, RepError> {
    match spec {
        RepSpec::E6Minuscule27 => {
            let sys = RootSystem::build("E6").unwrap();
            let mut hw = vec![0i64; 6];
            hw[0] = 1;
            weight_rep(&sys, &hw, "E6 minuscule 27")
        }
        RepSpec::D4Natural8 => {
            let sys = RootSystem::build("D4").unwrap();
            let mut hw = vec![0i64; 4];
            hw[0] = 1;
            weight_rep(&sys, &hw, "D4 natural 8")
        }
        RepSpec::Natural(label) => {
            let sys = RootSystem::build(label)
                .map_err(|_| RepError::UnsupportedSpec(label.clone()))?;
            let letter = sys.label().chars().next().unwrap();
            match letter {
                'A' | 'C' | 'D' => {
                    let mut hw = vec![0i64; sys.rank()];
                    hw[0] = 1;
                    weight_rep(&sys, &hw, &format!("{} natural", sys.label()))
                }
                'B' => {
                    // the (2n+1)-dimensional Weyl module: fold the natural
                    // module of D_{n+1}, take the invariant-line quotient and
                    // dualize into the Weyl-module orientation
                    let folded = fold_rep(&sys)?;
                    Ok(dualize(&invariant_quotient(&folded)?))
                }
                _ => Err(RepError::UnsupportedSpec(label.clone())),
            }
        }
        RepSpec::Adjoint(label) => {
            let sys = RootSystem::build(label)
                .map_err(|_| RepError::UnsupportedSpec(label.clone()))?;
            Ok(adjoint_rep(&sys))
        }
        RepSpec::Folded(label) => {
            let sys = RootSystem::build(label)
                .map_err(|_| RepError::UnsupportedSpec(label.clone()))?;
            fold_rep(&sys)
        }
        RepSpec::FoldedQuotient(label) => {
            let sys = RootSystem::build(label)
                .map_err(|_| RepError::UnsupportedSpec(label.clone()))?;
            let folded = fold_rep(&sys)?;
            // The plain quotient V/<e> carries the dual-Weyl (induced-module)
            // structure in the characteristics where the two differ; the
            // contragredient of the quotient is the highest-weight-generated
            // Weyl-module lattice the thesis works with (head L(lambda),
            // radical at the bottom), so dualize.
            Ok(dualize(&invariant_quotient(&folded)?))
        }
    }
}

/// Divided powers of every root vector from the simple ones, by the
/// extraspecial-pair recursion; checks the sl2 pairing on each root.
fn complete_root_vectors(
    sys: &Arc<RootSystem>,
    dim: usize,
    weights: &[Vec<i64>],
    simple_e: Vec<IMat>,
    simple_f: Vec<IMat>,
) -> Result<Vec<Vec<IMat>>, RepError> {
    let npos = sys.n_positive();
    let mut e_of: Vec<Option<IMat>> = vec![None; sys.n_roots()];
    for i in 0..sys.rank() {
        e_of[sys.simple(i)] = Some(simple_e[i].clone());
        e_of[sys.neg(sys.simple(i))] = Some(simple_f[i].clone());
    }
    for g in 0..npos {
        if sys.root(g).height == 1 {
            continue;
        }
        let (a, b) = sys.extraspecial_pair(g).expect("special pair");
        let n = sys.n_of(a, b);
        let (ea, eb) = (e_of[a].clone().unwrap(), e_of[b].clone().unwrap());
        let bracket = ea.mul(&eb).add(&eb.mul(&ea).scale(-1));
        e_of[g] = Some(bracket.div_exact(n));
        let (fa, fb) = (
            e_of[sys.neg(a)].clone().unwrap(),
            e_of[sys.neg(b)].clone().unwrap(),
        );
        let nbracket = fa.mul(&fb).add(&fb.mul(&fa).scale(-1));
        e_of[sys.neg(g)] = Some(nbracket.div_exact(-n));
    }
    // verify [e_g, f_g] = h_g on the weight grading
    for g in 0..npos {
        let e = e_of[g].as_ref().unwrap();
        let f = e_of[sys.neg(g)].as_ref().unwrap();
        let h = e.mul(f).add(&f.mul(e).scale(-1));
        let cr = sys.coroot_coeffs(g);
        for r in 0..dim {
            for c in 0..dim {
                let want = if r == c {
                    weights[r].iter().zip(&cr).map(|(&a, &b)| a * b).sum()
                } else {
                    0
                };
                if h.at(r, c) != want {
                    return Err(RepError::RelationFailure(format!(
                        "[e,f] != h at root {g} entry ({r},{c})"
                    )));
                }
            }
        }
    }
    // divided powers
    let mut pows = vec![];
    for g in 0..sys.n_roots() {
        let e = e_of[g].clone().unwrap();
        let mut list = vec![e.clone()];
        let mut acc = e.clone();
        let mut k = 1i64;
        loop {
            acc = acc.mul(&e);
            k += 1;
            if acc.is_zero() {
                break;
            }
            assert!(k <= 4, "nilpotency degree out of range");
            let fact: i64 = (1..=k).product();
            list.push(acc.div_exact(fact));
        }
        pows.push(list);
    }
    Ok(pows)
}

/// Weight-basis model for a minuscule highest weight: basis indexed by the
/// Weyl orbit of the weight, simple root vectors moving along weight edges
/// with every coefficient +1. Valid whenever all pairings of orbit weights
/// with simple coroots lie in {-1, 0, 1}, which holds for the specs used here.
fn weight_rep(sys: &Arc<RootSystem>, hw: &[i64], label: &str) -> Result<Rep, RepError> {
    let rank = sys.rank();
    let cartan = sys.cartan();
    // generate the orbit with depth vectors (lambda - mu over simple roots)
    let mut weights: Vec<Vec<i64>> = vec![hw.to_vec()];
    let mut depths: Vec<Vec<i32>> = vec![vec![0; rank]];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(hw.to_vec(), 0);
    let mut stack = vec![0usize];
    while let Some(cur) = stack.pop() {
        for i in 0..rank {
            let k = weights[cur][i];
            if k <= 0 {
                continue;
            }
            if k > 1 {
                return Err(RepError::UnsupportedSpec(format!(
                    "{label}: weight orbit is not minuscule-like"
                )));
            }
            // mu - alpha_i in pairing coordinates
            let w: Vec<i64> = (0..rank).map(|j| weights[cur][j] - cartan[j][i]).collect();
            if !index.contains_key(&w) {
                let mut d = depths[cur].clone();
                d[i] += 1;
                index.insert(w.clone(), weights.len());
                weights.push(w);
                depths.push(d);
                stack.push(index.len() - 1);
            }
        }
    }
    // canonical basis order: by depth total then lex of the depth vector
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| {
        (
            depths[i].iter().sum::<i32>(),
            depths[i].clone(),
        )
    });
    let weights: Vec<Vec<i64>> = order.iter().map(|&i| weights[i].clone()).collect();
    let index: HashMap<Vec<i64>, usize> = weights
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let dim = weights.len();

    let mut simple_e = vec![];
    let mut simple_f = vec![];
    for i in 0..rank {
        let mut e = IMat::zero(dim);
        let mut f = IMat::zero(dim);
        for (ix, w) in weights.iter().enumerate() {
            let up: Vec<i64> = (0..rank).map(|j| w[j] + cartan[j][i]).collect();
            if let Some(&to) = index.get(&up) {
                e.add_at(to, ix, 1);
            }
            let down: Vec<i64> = (0..rank).map(|j| w[j] - cartan[j][i]).collect();
            if let Some(&to) = index.get(&down) {
                f.add_at(to, ix, 1);
            }
        }
        simple_e.push(e);
        simple_f.push(f);
    }
    let pows = complete_root_vectors(sys, dim, &weights, simple_e, simple_f)?;
    Ok(Rep {
        sys: sys.clone(),
        dim,
        label: label.to_string(),
        pows,
        weights,
        lattice_flag: true,
    })
}

/// The adjoint module straight from the root system's integral adjoint data.
fn adjoint_rep(sys: &Arc<RootSystem>) -> Rep {
    let n = sys.n_roots();
    let rank = sys.rank();
    let dim = n + rank;
    let mut weights = vec![];
    for g in 0..n {
        weights.push(
            (0..rank)
                .map(|i| sys.pairing(g, sys.simple(i)))
                .collect::<Vec<i64>>(),
        );
    }
    for _ in 0..rank {
        weights.push(vec![0; rank]);
    }
    let pows: Vec<Vec<IMat>> = (0..n).map(|g| sys.adjoint_pows(g).to_vec()).collect();
    Rep {
        sys: sys.clone(),
        dim,
        label: format!("adjoint {}", sys.label()),
        pows,
        weights,
        lattice_flag: true,
    }
}

/// Fold a simply laced parent representation: the folded simple root vectors
/// are the plain orbit sums of the parent simple vectors, all other folded
/// root vectors follow by the extraspecial recursion against the folded
/// constants. The result is checked to decompose over parent root vectors
/// with signs +/-1 supported exactly on the fiber.
fn fold_rep(sys: &Arc<RootSystem>) -> Result<Rep, RepError> {
    let info = rootsys::fold_info(sys).ok_or_else(|| RepError::NoFold(sys.label().into()))?;
    let parent_rep = match sys.label().chars().next().unwrap() {
        'F' => weight_rep(&info.parent, &[1, 0, 0, 0, 0, 0], "E6 minuscule 27")?,
        'G' | 'B' => {
            let mut hw = vec![0i64; info.parent.rank()];
            hw[0] = 1;
            weight_rep(&info.parent, &hw, "parent natural")?
        }
        'C' => {
            let mut hw = vec![0i64; info.parent.rank()];
            hw[0] = 1;
            weight_rep(&info.parent, &hw, "parent natural")?
        }
        _ => return Err(RepError::NoFold(sys.label().into())),
    };
    let dim = parent_rep.dim;
    // folded weights: sum the parent pairing coordinates over each node orbit
    let weights: Vec<Vec<i64>> = parent_rep
        .weights
        .iter()
        .map(|w| {
            info.node_orbits
                .iter()
                .map(|orb| orb.iter().map(|&j| w[j]).sum())
                .collect()
        })
        .collect();
    let mut simple_e = vec![];
    let mut simple_f = vec![];
    for orb in &info.node_orbits {
        let mut e = IMat::zero(dim);
        let mut f = IMat::zero(dim);
        for &j in orb {
            e = e.add(parent_rep.e_matrix(info.parent.simple(j)));
            f = f.add(parent_rep.e_matrix(info.parent.neg(info.parent.simple(j))));
        }
        simple_e.push(e);
        simple_f.push(f);
    }
    let pows = complete_root_vectors(sys, dim, &weights, simple_e, simple_f)?;
    // self-check: each folded root vector is a +/-1 combination of the parent
    // root vectors over its fiber
    for g in 0..sys.n_roots() {
        let fiber = &info.fibers[g];
        let target = &pows[g][0];
        let mut recon = IMat::zero(dim);
        for &a in fiber {
            let pa = parent_rep.e_matrix(a);
            // read the sign on a designated entry of the parent vector
            let (r0, c0, d) = first_entry(pa);
            let v = target.at(r0, c0);
            if v.abs() != d.abs() {
                return Err(RepError::FoldInconsistent(format!(
                    "folded vector at root {g} has a non-unit component on the fiber"
                )));
            }
            let eps = v / d;
            recon = recon.add(&pa.scale(eps));
        }
        if !imat_eq(target, &recon) {
            return Err(RepError::FoldInconsistent(format!(
                "folded vector at root {g} is not supported on its fiber"
            )));
        }
    }
    Ok(Rep {
        sys: sys.clone(),
        dim,
        label: format!("{} folded on {}-space", sys.label(), dim),
        pows,
        weights,
        lattice_flag: true,
    })
}

fn first_entry(m: &IMat) -> (usize, usize, i64) {
    for (r, row) in m.rows.iter().enumerate() {
        if let Some((&c, &v)) = row.iter().next() {
            return (r, c, v);
        }
    }
    panic!("zero root vector");
}

fn imat_eq(a: &IMat, b: &IMat) -> bool {
    if a.n != b.n {
        return false;
    }
    for r in 0..a.n {
        let cols: std::collections::BTreeSet<usize> =
            a.rows[r].keys().chain(b.rows[r].keys()).copied().collect();
        for c in cols {
            if a.at(r, c) != b.at(r, c) {
                return false;
            }
        }
    }
    true
}

// --- exact rational linear algebra for the invariant line ---

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rat(i128, i128); // numerator, positive denominator

impl Rat {
    fn new(n: i128, d: i128) -> Rat {
        assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd128(n.abs(), d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        Rat(n, d)
    }
    fn int(n: i128) -> Rat {
        Rat(n, 1)
    }
    fn is_zero(self) -> bool {
        self.0 == 0
    }
    fn add(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    fn sub(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Rat) -> Rat {
        assert!(o.0 != 0);
        Rat::new(self.0 * o.1, self.1 * o.0)
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Kernel of an integer matrix over the rationals, returned as primitive
/// integer vectors.
fn integer_kernel(rows: Vec<Vec<i64>>, cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Rat>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|v| Rat::int(v as i128)).collect())
        .collect();
    let nrows = m.len();
    let mut pivots: Vec<usize> = vec![];
    let mut row = 0usize;
    for col in 0..cols {
        let mut sel = None;
        for r in row..nrows {
            if !m[r][col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(row, sel);
        let inv = m[row][col];
        for c in col..cols {
            m[row][c] = m[row][c].div(inv);
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..cols {
                    let t = m[row][c].mul(f);
                    m[r][c] = m[r][c].sub(t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut out = vec![];
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::int(0); cols];
        v[free] = Rat::int(1);
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[pcol] = Rat::int(0).sub(m[prow][free]);
        }
        // clear denominators and divide by gcd
        let mut lcm: i128 = 1;
        for x in &v {
            lcm = lcm / gcd128(lcm, x.1) * x.1;
        }
        let mut iv: Vec<i128> = v.iter().map(|x| x.0 * (lcm / x.1)).collect();
        let mut g = 0i128;
        for &x in &iv {
            g = gcd128(g, x);
        }
        if g > 1 {
            for x in iv.iter_mut() {
                *x /= g;
            }
        }
        // sign normalize: first nonzero coordinate positive
        if let Some(first) = iv.iter().find(|&&x| x != 0) {
            if *first < 0 {
                for x in iv.iter_mut() {
                    *x = -*x;
                }
            }
        }
        out.push(iv.into_iter().map(|x| x as i64).collect());
    }
    out
}

/// Quotient by the unique primitive invariant line, producing the Weyl-module
/// lattice of one dimension less (V26 from the 27, V7 from the 8, the B_n
/// natural from the folded D_{n+1} natural).
pub(super) fn invariant_quotient(rep: &Rep) -> Result<Rep, RepError> {
    let sys = &rep.sys;
    let dim = rep.dim;
    // fixed vectors of the group = common kernel of all simple +/- root vectors
    let mut rows = vec![];
    for i in 0..sys.rank() {
        for g in [sys.simple(i), sys.neg(sys.simple(i))] {
            let e = rep.e_matrix(g);
            for r in 0..dim {
                let mut row = vec![0i64; dim];
                for (&c, &v) in &e.rows[r] {
                    row[c] = v;
                }
                rows.push(row);
            }
        }
    }
    let kernel = integer_kernel(rows, dim);
    if kernel.len() != 1 {
        return Err(RepError::FixedSpaceDim(kernel.len()));
    }
    let e_vec = &kernel[0];
    // pick a unimodular coordinate of weight zero
    let j = (0..dim)
        .find(|&k| e_vec[k].abs() == 1 && rep.weights[k].iter().all(|&w| w == 0))
        .ok_or(RepError::NotUnimodular)?;
    // new basis: e first, then the standard vectors except j
    let keep: Vec<usize> = (0..dim).filter(|&k| k != j).collect();
    let mut u = vec![vec![Rat::int(0); dim]; dim];
    for r in 0..dim {
        u[r][0] = Rat::int(e_vec[r] as i128);
    }
    for (newc, &k) in keep.iter().enumerate() {
        u[k][newc + 1] = Rat::int(1);
    }
    let uinv = rational_inverse(&u).expect("basis change is invertible");
    let conj = |m: &IMat| -> Result<IMat, RepError> {
        // uinv * m * u
        let mut out = IMat::zero(dim - 1);
        let mut mu = vec![vec![Rat::int(0); dim]; dim];
        for r in 0..dim {
            for (&c, &v) in &m.rows[r] {
                // m[r][c] contributes to (m*u)[r][*] via u[c][*]
                for t in 0..dim {
                    if !u[c][t].is_zero() {
                        mu[r][t] = mu[r][t].add(Rat::int(v as i128).mul(u[c][t]));
                    }
                }
            }
        }
        let mut full = vec![vec![Rat::int(0); dim]; dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = Rat::int(0);
                for t in 0..dim {
                    if !uinv[r][t].is_zero() && !mu[t][c].is_zero() {
                        acc = acc.add(uinv[r][t].mul(mu[t][c]));
                    }
                }
                full[r][c] = acc;
            }
        }
        // column 0 must vanish (the line is fixed by the Lie algebra)
        for r in 0..dim {
            if !full[r][0].is_zero() {
                return Err(RepError::RelationFailure(
                    "invariant line is not annihilated".into(),
                ));
            }
        }
        for r in 1..dim {
            for c in 1..dim {
                let v = full[r][c];
                assert_eq!(v.1, 1, "quotient entries must be integral");
                out.add_at(r - 1, c - 1, v.0 as i64);
            }
        }
        Ok(out)
    };
    let mut pows = vec![];
    for g in 0..sys.n_roots() {
        let mut list = vec![];
        for d in rep.divided_powers(g) {
            list.push(conj(d)?);
        }
        // drop trailing zero divided powers created by the quotient
        while list.last().map(|m| m.is_zero()) == Some(true) {
            list.pop();
        }
        pows.push(list);
    }
    let weights: Vec<Vec<i64>> = keep.iter().map(|&k| rep.weights[k].clone()).collect();
    Ok(Rep {
        sys: sys.clone(),
        dim: dim - 1,
        label: format!("{} invariant quotient", rep.label),
        pows,
        weights,
        lattice_flag: true,
    })
}

/// The contragredient lattice: rho*(x_g(t)) = rho(x_g(-t))^T, so the divided
/// powers map to (-1)^k D_k^T and weights negate. The structure constants are
/// unchanged: [-e_a^T, -e_b^T] = -[e_a, e_b]^T = N(a,b) (-e_{a+b}^T).
fn dualize(rep: &Rep) -> Rep {
    let pows = rep
        .pows
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(k, d)| {
                    let mut t = IMat::zero(d.n);
                    for (r, row) in d.rows.iter().enumerate() {
                        for (&c, &v) in row {
                            t.add_at(c, r, if k % 2 == 0 { -v } else { v });
                        }
                    }
                    t
                })
                .collect()
        })
        .collect();
    let weights = rep
        .weights
        .iter()
        .map(|w| w.iter().map(|&x| -x).collect())
        .collect();
    Rep {
        sys: rep.sys.clone(),
        dim: rep.dim,
        label: format!("{} dual", rep.label),
        pows,
        weights,
        lattice_flag: true,
    }
}

fn rational_inverse(u: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = u.len();
    let mut a: Vec<Vec<Rat>> = u.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::int((i == j) as i128)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for c in 0..n {
            a[col][c] = a[col][c].div(d);
            inv[col][c] = inv[col][c].div(d);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..n {
                    let t1 = a[col][c].mul(f);
                    a[r][c] = a[r][c].sub(t1);
                    let t2 = inv[col][c].mul(f);
                    inv[r][c] = inv[r][c].sub(t2);
                }
            }
        }
    }
    Some(inv)
}
