//! Chevalley structure constants.
//!
//! Simply laced systems get a basis from the standard bimultiplicative sign
//! cocycle on the root lattice attached to an orientation of the Dynkin
//! diagram. Non simply laced systems (B, C, F4, G2) are realized as the fixed
//! points of a diagram automorphism of a simply laced parent (D_{n+1},
//! A_{2n-1}, E6, D4 respectively); the parent cocycle is chosen stable under
//! the automorphism, orbit sums of parent root vectors form a Chevalley basis
//! of the folded algebra, and the constants are read off from parent brackets.
//!
//! Finally every table is renormalized to the extraspecial-pair convention:
//! positive roots carry the (height, descending-lex) total order, and for each
//! non-simple positive root g the minimal special pair (a, b) with a + b = g
//! gets N(a, b) = +(p+1). This makes the constants reproducible independently
//! of the construction route.

use super::{RootIx, RootSystem, close_positive_roots};
use std::collections::HashMap;

/// Lightweight root-system context for a folding parent (always simply laced).
struct Parent {
    rank: usize,
    /// all roots, positives then mirrored negatives
    roots: Vec<Vec<i32>>,
    n_pos: usize,
    index: HashMap<Vec<i32>, usize>,
    /// exponent set for the sign cocycle: (i,i) for all i plus directed edges
    eps_pairs: Vec<(usize, usize)>,
}

impl Parent {
    fn new(cartan: Vec<Vec<i64>>, sigma: &[usize]) -> Parent {
        let rank = cartan.len();
        let pos = close_positive_roots(&cartan);
        let n_pos = pos.len();
        let mut roots = pos.clone();
        for c in &pos {
            roots.push(c.iter().map(|&x| -x).collect());
        }
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        // orientation of the diagram stable under sigma: orient toward the
        // nodes fixed by sigma (smaller distance first); between two fixed
        // nodes orient by index.
        let mut dist = vec![usize::MAX; rank];
        let mut queue: Vec<usize> = (0..rank).filter(|&i| sigma[i] == i).collect();
        for &i in &queue {
            dist[i] = 0;
        }
        while let Some(i) = queue.pop() {
            for j in 0..rank {
                if j != i && cartan[i][j] != 0 && dist[j] > dist[i] + 1 {
                    dist[j] = dist[i] + 1;
                    queue.push(j);
                }
            }
        }
        let mut eps_pairs: Vec<(usize, usize)> = (0..rank).map(|i| (i, i)).collect();
        for i in 0..rank {
            for j in 0..rank {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let oriented = if dist[i] != dist[j] {
                    dist[i] > dist[j] // from farther to nearer
                } else {
                    i < j
                };
                if oriented {
                    eps_pairs.push((i, j));
                }
            }
        }
        // sanity: the orientation must be sigma-stable
        for &(i, j) in &eps_pairs {
            if i != j {
                assert!(
                    eps_pairs.contains(&(sigma[i], sigma[j])),
                    "orientation not stable under the diagram automorphism"
                );
            }
        }
        Parent {
            rank,
            roots,
            n_pos,
            index,
            eps_pairs,
        }
    }

    fn neg(&self, ix: usize) -> usize {
        if ix < self.n_pos {
            ix + self.n_pos
        } else {
            ix - self.n_pos
        }
    }

    /// The sign cocycle eps(a, b) = (-1)^{sum over exponent pairs a_i b_j}.
    fn eps(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut e = 0i64;
        for &(i, j) in &self.eps_pairs {
            e += a[i] as i64 * b[j] as i64;
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Structure constant on the basis X_a (negative-root vectors flipped so
    /// that [X_a, X_{-a}] is the coroot).
    fn n_raw(&self, a: usize, b: usize) -> i64 {
        let sum: Vec<i32> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(&x, &y)| x + y)
            .collect();
        if sum.iter().all(|&x| x == 0) || !self.index.contains_key(&sum) {
            return 0;
        }
        let c = self.index[&sum];
        let sgn = |ix: usize| if ix < self.n_pos { 1i64 } else { -1i64 };
        sgn(a) * sgn(b) * sgn(c) * self.eps(&self.roots[a], &self.roots[b])
    }
}

/// Folding data: parent Cartan matrix, diagram automorphism, and the orbit of
/// parent nodes over each folded node.
pub(crate) fn fold_data(
    label: &str,
    rank: usize,
) -> Option<(Vec<Vec<i64>>, Vec<usize>, Vec<Vec<usize>>)> {
    let letter = label.chars().next().unwrap();
    match letter {
        'B' => {
            // parent D_{n+1}, sigma swaps the two fork tips n-1 and n (0-based)
            let m = rank + 1;
            let cartan = super::cartan_matrix_pub('D', m)?;
            let mut sigma: Vec<usize> = (0..m).collect();
            sigma.swap(m - 2, m - 1);
            let mut orbits: Vec<Vec<usize>> = (0..rank - 1).map(|i| vec![i]).collect();
            orbits.push(vec![m - 2, m - 1]);
            Some((cartan, sigma, orbits))
        }
        'C' => {
            // parent A_{2n-1}, sigma is the flip
            let m = 2 * rank - 1;
            let cartan = super::cartan_matrix_pub('A', m)?;
            let sigma: Vec<usize> = (0..m).map(|i| m - 1 - i).collect();
            let mut orbits: Vec<Vec<usize>> = (0..rank - 1).map(|i| vec![i, m - 1 - i]).collect();
            orbits.push(vec![rank - 1]);
            Some((cartan, sigma, orbits))
        }
        'F' => {
            let cartan = super::cartan_matrix_pub('E', 6)?;
            let sigma = vec![5, 1, 4, 3, 2, 0];
            let orbits = vec![vec![1], vec![3], vec![2, 4], vec![0, 5]];
            Some((cartan, sigma, orbits))
        }
        'G' => {
            let cartan = super::cartan_matrix_pub('D', 4)?;
            // center is node 1; triality rotates 0 -> 2 -> 3 -> 0
            let sigma = vec![2, 1, 3, 0];
            let orbits = vec![vec![0, 2, 3], vec![1]];
            Some((cartan, sigma, orbits))
        }
        _ => None,
    }
}

pub(crate) fn structure_constants(sys: &RootSystem) -> HashMap<(RootIx, RootIx), i64> {
    let letter = sys.label().chars().next().unwrap();
    let raw = if matches!(letter, 'A' | 'D' | 'E') || sys.rank() == 1 {
        simply_laced_constants(sys)
    } else {
        folded_constants(sys)
    };
    renormalize_extraspecial(sys, raw)
}

fn simply_laced_constants(sys: &RootSystem) -> HashMap<(RootIx, RootIx), i64> {
    let identity: Vec<usize> = (0..sys.rank()).collect();
    let parent = Parent::new(sys.cartan().clone(), &identity);
    // parent ordering coincides with the system's own root ordering
    let mut table = HashMap::new();
    let n = sys.n_roots();
    for a in 0..n {
        for b in 0..n {
            if sys.root_sum(a, b).is_some() {
                let pa = parent.index[&sys.root(a).coeffs];
                let pb = parent.index[&sys.root(b).coeffs];
                table.insert((a, b), parent.n_raw(pa, pb));
            }
        }
    }
    table
}

fn folded_constants(sys: &RootSystem) -> HashMap<(RootIx, RootIx), i64> {
    let (pcartan, sigma, orbits) =
        fold_data(sys.label(), sys.rank()).expect("foldable type");
    let parent = Parent::new(pcartan, &sigma);
    // parent node -> folded node
    let mut node_of = vec![0usize; parent.rank];
    for (fi, orb) in orbits.iter().enumerate() {
        for &j in orb {
            node_of[j] = fi;
        }
    }
    // parent root -> folded root (sum of coefficients over each orbit)
    let project = |coeffs: &[i32]| -> Vec<i32> {
        let mut v = vec![0i32; sys.rank()];
        for (j, &c) in coeffs.iter().enumerate() {
            v[node_of[j]] += c;
        }
        v
    };
    let mut fibers: Vec<Vec<usize>> = vec![vec![]; sys.n_roots()];
    for (pix, pr) in parent.roots.iter().enumerate() {
        let img = project(pr);
        let fix = sys
            .index_of(&img)
            .expect("every parent root restricts to a folded root");
        fibers[fix].push(pix);
    }
    for (fix, fib) in fibers.iter().enumerate() {
        assert!(
            !fib.is_empty() && fib.len() <= 3,
            "fiber size out of range for root {fix}"
        );
    }
    let mut table = HashMap::new();
    for a in 0..sys.n_roots() {
        for b in 0..sys.n_roots() {
            let Some(c) = sys.root_sum(a, b) else { continue };
            // [sum_{x in fiber a} X_x, sum_{y in fiber b} X_y] =
            //   sum over c' in fiber(c) of (sum_{x+y=c'} N(x,y)) X_{c'}
            let mut per_target: HashMap<usize, i64> = HashMap::new();
            for &x in &fibers[a] {
                for &y in &fibers[b] {
                    let sum: Vec<i32> = parent.roots[x]
                        .iter()
                        .zip(&parent.roots[y])
                        .map(|(&u, &v)| u + v)
                        .collect();
                    if let Some(&z) = parent.index.get(&sum) {
                        *per_target.entry(z).or_insert(0) += parent.n_raw(x, y);
                    }
                }
            }
            let vals: Vec<i64> = fibers[c]
                .iter()
                .map(|z| per_target.get(z).copied().unwrap_or(0))
                .collect();
            assert!(
                vals.windows(2).all(|w| w[0] == w[1]),
                "folded bracket is not proportional to the orbit sum"
            );
            table.insert((a, b), vals[0]);
        }
    }
    // cross-check: [X_b, X_{-b}] = sum of parent coroots over the fiber, which
    // lies in the sigma-fixed Cartan; its coordinates are constant on each node
    // orbit and the common value is the coefficient over the folded coroot
    // basis H_i = sum_{j in O_i} h_j. This must match the folded coroot.
    for b in 0..sys.n_roots() {
        let mut acc = vec![0i64; parent.rank];
        for &x in &fibers[b] {
            // parent coroot coefficients equal root coefficients (simply laced)
            for (j, &cc) in parent.roots[x].iter().enumerate() {
                acc[j] += cc as i64;
            }
        }
        let mut h = vec![i64::MIN; sys.rank()];
        for (j, &v) in acc.iter().enumerate() {
            let fi = node_of[j];
            if h[fi] == i64::MIN {
                h[fi] = v;
            } else {
                assert_eq!(h[fi], v, "fixed-coroot coordinates not orbit-constant");
            }
        }
        assert_eq!(h, sys.coroot_coeffs(b), "folded coroot mismatch at {b}");
    }
    table
}

/// Renormalize so that every extraspecial pair has positive constant; signs of
/// all other pairs are then forced by the bracket structure.
fn renormalize_extraspecial(
    sys: &RootSystem,
    raw: HashMap<(RootIx, RootIx), i64>,
) -> HashMap<(RootIx, RootIx), i64> {
    let npos = sys.n_positive();
    let mut s = vec![1i64; sys.n_roots()];
    for g in 0..npos {
        if sys.root(g).height == 1 {
            continue;
        }
        let (a, b) = extraspecial_pair(sys, g).expect("special pair exists");
        let n = raw[&(a, b)];
        assert!(n != 0);
        s[g] = s[a] * s[b] * n.signum();
        s[sys.neg(g)] = s[g];
    }
    raw.into_iter()
        .map(|((a, b), n)| {
            let c = sys.root_sum(a, b).unwrap();
            ((a, b), s[a] * s[b] * s[c] * n)
        })
        .collect()
}

/// The extraspecial pair of a non-simple positive root g: the special pair
/// (a, b), a+b = g, with a minimal in the root order.
pub(crate) fn extraspecial_pair(sys: &RootSystem, g: RootIx) -> Option<(RootIx, RootIx)> {
    for a in 0..sys.n_positive() {
        let diff: Vec<i32> = sys
            .root(g)
            .coeffs
            .iter()
            .zip(&sys.root(a).coeffs)
            .map(|(&x, &y)| x - y)
            .collect();
        if diff.iter().all(|&x| x == 0) {
            continue;
        }
        if let Some(b) = sys.index_of(&diff) {
            if sys.is_positive(b) {
                return Some((a, b));
            }
        }
    }
    None
}
