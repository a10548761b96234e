//! Root systems of types A-G at desk rank: root enumeration, Weyl group
//! actions with signs, Chevalley structure constants, closed-subsystem
//! enumeration and the long/short duality map of F4 and G2.
//!
//! Conventions. Simple roots are numbered as in the usual tables with long
//! fundamental roots on the left for F4 (diagram o-o=>o-o, highest root 2342);
//! for G2 the first simple root is short (diagram o<=o, highest root 32).
//! Positive roots are totally ordered by height and then by descending
//! lexicographic comparison of coefficient tuples, so the simple roots come
//! first in natural order. Structure constants follow the extraspecial-pair
//! normalization with respect to that order: for every non-simple positive
//! root g the minimal special pair (a,b) with a+b=g has N(a,b) = +(p+1).

mod adjoint;
mod constants;
pub mod ipoly;
mod subsystems;

pub use subsystems::{Subsystem, SubsystemAnnotation};

use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum LengthClass {
    Long,
    Short,
}

#[derive(Clone, Debug, Serialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub length_class: LengthClass,
    pub height: i32,
}

pub type RootIx = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("commutator terms are undefined for beta = +/-alpha")]
    DegeneratePair,
    #[error("subsystem enumeration is only provided for rank <= 4 (got rank {0})")]
    RankTooLarge(usize),
    #[error("the duality map exists only for F4 and G2")]
    NoDuality,
}

/// A word in Weyl-group representatives n_alpha; entries are root indices.
#[derive(Clone, Debug, Default)]
pub struct WeylWord(pub Vec<RootIx>);

pub struct RootSystem {
    label: String,
    rank: usize,
    /// Cartan matrix: cartan[i][j] = <alpha_j, alpha_i^vee>.
    cartan: Vec<Vec<i64>>,
    /// Half square lengths d_i = (alpha_i, alpha_i)/2, normalized so short = 1.
    d: Vec<i64>,
    /// All roots: positives first (sorted by height then descending-lex
    /// coefficient tuple), then negatives in mirrored order.
    roots: Vec<Root>,
    n_pos: usize,
    index: HashMap<Vec<i32>, RootIx>,
    /// Full structure constant table N(a,b) on pairs of roots with a+b a root.
    n_table: HashMap<(RootIx, RootIx), i64>,
    /// Divided powers of ad(e_g) on the adjoint module, per root.
    adjoint_pows: Vec<Vec<ipoly::IMat>>,
    eta_cache: Mutex<HashMap<(RootIx, RootIx), (RootIx, i64)>>,
    comm_cache: Mutex<HashMap<(RootIx, RootIx), Vec<(i32, i32, i64)>>>,
    duality_cache: OnceLock<Option<Vec<RootIx>>>,
}

impl std::fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RootSystem({}, {} roots)", self.label, self.roots.len())
    }
}

/// Cartan data for the supported simple types.
/// Returns (cartan matrix with entries <alpha_j, alpha_i^vee>, label).
fn cartan_matrix(letter: char, rank: usize) -> Option<Vec<Vec<i64>>> {
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let mut chain = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match (letter, rank) {
        ('A', r) if r >= 1 => {
            for i in 0..n.saturating_sub(1) {
                chain(i, i + 1);
            }
        }
        ('B', r) if r >= 2 => {
            for i in 0..n - 2 {
                chain(i, i + 1);
            }
            // alpha_{n-1} long, alpha_n short
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
        }
        ('C', r) if r >= 2 => {
            for i in 0..n - 2 {
                chain(i, i + 1);
            }
            // alpha_{n-1} short, alpha_n long
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
        }
        ('D', r) if r >= 3 => {
            for i in 0..n - 2 {
                chain(i, i + 1);
            }
            chain(n - 3, n - 1);
        }
        ('E', 6) | ('E', 7) | ('E', 8) => {
            // Bourbaki: chain 1-3-4-5-...-n with 2 attached to 4.
            let chain_nodes: Vec<usize> = std::iter::once(0).chain(2..n).collect();
            for w in chain_nodes.windows(2) {
                chain(w[0], w[1]);
            }
            chain(1, 3);
        }
        ('F', 4) => {
            chain(0, 1);
            chain(2, 3);
            a[1][2] = -1;
            a[2][1] = -2;
        }
        ('G', 2) => {
            // first simple root short, second long; highest root 32
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => return None,
    }
    Some(a)
}

pub(crate) fn cartan_matrix_pub(letter: char, rank: usize) -> Option<Vec<Vec<i64>>> {
    cartan_matrix(letter, rank)
}

fn parse_label(label: &str) -> Option<(char, usize)> {
    let label = label.trim();
    let mut chars = label.chars();
    let letter = chars.next()?.to_ascii_uppercase();
    let rank: usize = chars.as_str().parse().ok()?;
    if !"ABCDEFG".contains(letter) || rank == 0 || rank > 8 {
        return None;
    }
    Some((letter, rank))
}

/// Total order on positive roots: height ascending, then coefficient tuple
/// in descending lexicographic order (so alpha_1 < alpha_2 < ...).
fn root_order_key(coeffs: &[i32]) -> (i32, Vec<i32>) {
    let h: i32 = coeffs.iter().sum();
    (h, coeffs.iter().map(|&c| -c).collect())
}

impl RootSystem {
    pub fn build(label: &str) -> Result<Arc<RootSystem>, RootError> {
        let (letter, rank) =
            parse_label(label).ok_or_else(|| RootError::UnsupportedType(label.to_string()))?;
        let letter = match (letter, rank) {
            ('B', 1) | ('C', 1) | ('D', 1) => 'A',
            ('D', 2) => return Err(RootError::UnsupportedType(label.to_string())),
            _ => letter,
        };
        let cartan = cartan_matrix(letter, rank)
            .ok_or_else(|| RootError::UnsupportedType(label.to_string()))?;
        Ok(Arc::new(Self::from_cartan(
            format!("{}{}", letter, rank),
            cartan,
        )))
    }

    pub(crate) fn from_cartan(label: String, cartan: Vec<Vec<i64>>) -> RootSystem {
        let rank = cartan.len();
        let d = compute_d(&cartan);
        let pos = close_positive_roots(&cartan);
        let n_pos = pos.len();

        let norm2 = |c: &[i32]| -> i64 {
            let mut s = 0i64;
            for i in 0..rank {
                for j in 0..rank {
                    s += c[i] as i64 * c[j] as i64 * d[i] * cartan[i][j];
                }
            }
            s
        };
        let min_norm = pos.iter().map(|c| norm2(c)).min().unwrap();
        let max_norm = pos.iter().map(|c| norm2(c)).max().unwrap();

        let mut roots = Vec::with_capacity(2 * n_pos);
        for c in &pos {
            let n2 = norm2(c);
            roots.push(Root {
                coeffs: c.clone(),
                length_class: if n2 == min_norm && min_norm != max_norm {
                    LengthClass::Short
                } else {
                    LengthClass::Long
                },
                height: c.iter().sum(),
            });
        }
        for i in 0..n_pos {
            let c: Vec<i32> = roots[i].coeffs.iter().map(|&x| -x).collect();
            roots.push(Root {
                coeffs: c,
                length_class: roots[i].length_class,
                height: -roots[i].height,
            });
        }
        let index: HashMap<Vec<i32>, RootIx> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();

        let mut sys = RootSystem {
            label,
            rank,
            cartan,
            d,
            roots,
            n_pos,
            index,
            n_table: HashMap::new(),
            adjoint_pows: vec![],
            eta_cache: Mutex::new(HashMap::new()),
            comm_cache: Mutex::new(HashMap::new()),
            duality_cache: OnceLock::new(),
        };
        sys.n_table = constants::structure_constants(&sys);
        sys.adjoint_pows = adjoint::adjoint_divided_powers(&sys);
        sys
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }
    pub fn n_positive(&self) -> usize {
        self.n_pos
    }
    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }
    pub fn root(&self, ix: RootIx) -> &Root {
        &self.roots[ix]
    }
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }
    pub fn is_positive(&self, ix: RootIx) -> bool {
        ix < self.n_pos
    }
    pub fn simple(&self, i: usize) -> RootIx {
        debug_assert!(self.roots[i].height == 1);
        i
    }

    pub fn index_of(&self, coeffs: &[i32]) -> Option<RootIx> {
        self.index.get(coeffs).copied()
    }

    pub fn neg(&self, ix: RootIx) -> RootIx {
        if ix < self.n_pos {
            ix + self.n_pos
        } else {
            ix - self.n_pos
        }
    }

    pub fn highest_root(&self) -> RootIx {
        self.n_pos - 1
    }

    /// Inner product scaled so that short roots have (a,a) = 2.
    pub fn inner(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] as i64 * b[j] as i64 * self.d[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// <beta, alpha^vee> = 2(beta,alpha)/(alpha,alpha).
    pub fn pairing(&self, beta: RootIx, alpha: RootIx) -> i64 {
        let b = &self.roots[beta].coeffs;
        let a = &self.roots[alpha].coeffs;
        2 * self.inner(b, a) / self.inner(a, a)
    }

    /// <weight-as-coeff-vector, alpha^vee> for an arbitrary integer vector in
    /// the root lattice basis.
    pub fn pairing_vec(&self, vec: &[i32], alpha: RootIx) -> i64 {
        let a = &self.roots[alpha].coeffs;
        2 * self.inner(vec, a) / self.inner(a, a)
    }

    /// Reflection s_alpha(beta).
    pub fn reflect(&self, alpha: RootIx, beta: RootIx) -> RootIx {
        let k = self.pairing(beta, alpha);
        let a = &self.roots[alpha].coeffs;
        let b = &self.roots[beta].coeffs;
        let c: Vec<i32> = b
            .iter()
            .zip(a)
            .map(|(&x, &y)| x - (k as i32) * y)
            .collect();
        self.index[&c]
    }

    /// Coefficients of alpha^vee over the simple coroots.
    pub fn coroot_coeffs(&self, alpha: RootIx) -> Vec<i64> {
        let a = &self.roots[alpha].coeffs;
        let da = self.inner(a, a) / 2;
        (0..self.rank)
            .map(|j| {
                let v = a[j] as i64 * self.d[j];
                assert!(v % da == 0, "coroot coefficients must be integral");
                v / da
            })
            .collect()
    }

    /// N(a, b): the structure constant on e_a, e_b ([e_a, e_b] = N e_{a+b});
    /// zero when a+b is not a root.
    pub fn n_of(&self, a: RootIx, b: RootIx) -> i64 {
        self.n_table.get(&(a, b)).copied().unwrap_or(0)
    }

    /// The extraspecial pair of a non-simple positive root: the special pair
    /// (a, b) with a + b = g and a minimal in the root order.
    pub fn extraspecial_pair(&self, g: RootIx) -> Option<(RootIx, RootIx)> {
        constants::extraspecial_pair(self, g)
    }

    pub fn root_sum(&self, a: RootIx, b: RootIx) -> Option<RootIx> {
        let c: Vec<i32> = self.roots[a]
            .coeffs
            .iter()
            .zip(&self.roots[b].coeffs)
            .map(|(&x, &y)| x + y)
            .collect();
        if c.iter().all(|&x| x == 0) {
            None
        } else {
            self.index_of(&c)
        }
    }

    /// Length p of the a-string down through b: max m with b - m*a a root.
    pub fn string_down(&self, a: RootIx, b: RootIx) -> i64 {
        let mut m = 0;
        let mut c = self.roots[b].coeffs.clone();
        loop {
            for (x, y) in c.iter_mut().zip(&self.roots[a].coeffs) {
                *x -= y;
            }
            if c.iter().all(|&v| v == 0) || !self.index.contains_key(&c) {
                break;
            }
            m += 1;
        }
        m
    }

    /// The coefficients C_{ij} with [x_a(t), x_b(u)] = prod x_{ia+jb}(C_{ij} t^i u^j),
    /// the group commutator being g^-1 h^-1 g h and the product running over the
    /// roots ia+jb (i, j >= 1) ordered by i+j then i. Derived by expanding the
    /// commutator on the adjoint module and peeling the factors in that order.
    pub fn commutator_terms(
        &self,
        a: RootIx,
        b: RootIx,
    ) -> Result<Vec<(i32, i32, i64)>, RootError> {
        if a == b || a == self.neg(b) {
            return Err(RootError::DegeneratePair);
        }
        if let Some(v) = self.comm_cache.lock().unwrap().get(&(a, b)) {
            return Ok(v.clone());
        }
        let v = adjoint::commutator_terms(self, a, b);
        self.comm_cache.lock().unwrap().insert((a, b), v.clone());
        Ok(v)
    }

    /// The image root and sign of conjugation by n_alpha := n_alpha(1):
    /// x_beta(t)^{n_alpha} = x_{s_alpha(beta)}(eta * t).
    pub fn eta(&self, alpha: RootIx, beta: RootIx) -> (RootIx, i64) {
        if let Some(v) = self.eta_cache.lock().unwrap().get(&(alpha, beta)) {
            return *v;
        }
        let v = adjoint::eta(self, alpha, beta);
        self.eta_cache.lock().unwrap().insert((alpha, beta), v);
        v
    }

    /// Conjugate x_beta(t) by the product of Weyl representatives in `word`
    /// (leftmost applied first): returns (image root, sign).
    pub fn weyl_conjugate(&self, word: &WeylWord, beta: RootIx) -> (RootIx, i64) {
        let mut cur = beta;
        let mut sign = 1i64;
        for &alpha in &word.0 {
            let (img, s) = self.eta(alpha, cur);
            cur = img;
            sign *= s;
        }
        (cur, sign)
    }

    /// Divided powers of ad(e_g): [I-part omitted] element k is ad^k/k!.
    pub(crate) fn adjoint_pows(&self, g: RootIx) -> &[ipoly::IMat] {
        &self.adjoint_pows[g]
    }

    /// Adjoint-module matrix of x_g(c) for an integer value c.
    pub fn adjoint_unipotent(&self, g: RootIx, c: i64) -> ipoly::IMat {
        let dim = self.n_roots() + self.rank;
        let mut m = ipoly::IMat::identity(dim);
        let mut ck = 1i64;
        for pw in self.adjoint_pows(g) {
            ck *= c;
            m = m.add(&pw.scale(ck));
        }
        m
    }

    pub fn enumerate_subsystems(&self) -> Result<Vec<Subsystem>, RootError> {
        subsystems::enumerate(self)
    }

    pub fn subsystem_annotations(&self) -> Vec<SubsystemAnnotation> {
        subsystems::annotations(self)
    }

    /// The combinatorial long/short duality permutation on roots (F4, G2):
    /// the unique bijection fixing tau(alpha_i) = alpha_{rank+1-i} on simples,
    /// commuting with negation and equivariant for reflections.
    pub fn duality_map(&self) -> Result<Vec<RootIx>, RootError> {
        let res = self.duality_cache.get_or_init(|| self.compute_duality());
        res.clone().ok_or(RootError::NoDuality)
    }

    fn compute_duality(&self) -> Option<Vec<RootIx>> {
        if self.label != "F4" && self.label != "G2" {
            return None;
        }
        let n = self.n_roots();
        let mut tau: Vec<Option<RootIx>> = vec![None; n];
        for i in 0..self.rank {
            let img = self.simple(self.rank - 1 - i);
            tau[self.simple(i)] = Some(img);
            tau[self.neg(self.simple(i))] = Some(self.neg(img));
        }
        // propagate: tau(s_a(b)) = s_{tau a}(tau b)
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..self.rank {
                for b in 0..n {
                    let (ta, tb) = (tau[self.simple(a)], tau[b]);
                    if let (Some(ta), Some(tb)) = (ta, tb) {
                        let src = self.reflect(self.simple(a), b);
                        let dst = self.reflect(ta, tb);
                        match tau[src] {
                            None => {
                                tau[src] = Some(dst);
                                tau[self.neg(src)] = Some(self.neg(dst));
                                changed = true;
                            }
                            Some(prev) => assert_eq!(prev, dst, "duality map inconsistent"),
                        }
                    }
                }
            }
        }
        let tau: Vec<RootIx> = tau.into_iter().map(|x| x.expect("duality total")).collect();
        for (i, &t) in tau.iter().enumerate() {
            assert_ne!(
                self.roots[i].length_class, self.roots[t].length_class,
                "duality must swap length classes"
            );
        }
        Some(tau)
    }

    /// Weyl orbit of a root, as a sorted set of root indices.
    pub fn weyl_orbit(&self, beta: RootIx) -> Vec<RootIx> {
        let mut seen = vec![false; self.n_roots()];
        seen[beta] = true;
        let mut stack = vec![beta];
        let mut out = vec![beta];
        while let Some(b) = stack.pop() {
            for i in 0..self.rank {
                let r = self.reflect(self.simple(i), b);
                if !seen[r] {
                    seen[r] = true;
                    out.push(r);
                    stack.push(r);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbit of an integral weight (coefficients over the root-lattice basis
    /// scaled by a common denominator) under the Weyl group.
    pub fn weyl_orbit_weight(&self, w: &[i64]) -> Vec<Vec<i64>> {
        let reflect_w = |w: &[i64], i: usize| -> Vec<i64> {
            // s_i(w) = w - <w, alpha_i^vee> alpha_i, computed in the same basis
            let mut num = 0i64;
            for j in 0..self.rank {
                num += w[j] * self.d[j] * self.cartan[j][i];
            }
            let k = num / self.d[i];
            let mut r = w.to_vec();
            r[i] -= k;
            r
        };
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![w.to_vec()];
        seen.insert(w.to_vec());
        let mut out = vec![w.to_vec()];
        while let Some(v) = stack.pop() {
            for i in 0..self.rank {
                let r = reflect_w(&v, i);
                if seen.insert(r.clone()) {
                    out.push(r.clone());
                    stack.push(r);
                }
            }
        }
        out
    }

    pub fn d_values(&self) -> &[i64] {
        &self.d
    }

    /// Test-only constructor from an explicit Cartan matrix (used to check
    /// stability of the constants under relabeled derivations).
    #[doc(hidden)]
    pub fn from_cartan_for_tests(label: String, cartan: Vec<Vec<i64>>) -> RootSystem {
        Self::from_cartan(label, cartan)
    }
}

/// Folding data for a non simply laced system: the simply laced parent, the
/// diagram automorphism, and the root correspondence.
pub struct FoldInfo {
    pub parent: Arc<RootSystem>,
    /// parent simple-node permutation realizing the diagram automorphism
    pub sigma_nodes: Vec<usize>,
    /// folded node -> parent nodes in its orbit
    pub node_orbits: Vec<Vec<usize>>,
    /// folded root index -> parent root indices restricting to it
    pub fibers: Vec<Vec<RootIx>>,
    /// parent root index -> folded root index
    pub project: Vec<RootIx>,
}

/// The simply laced parent and root correspondence of a foldable system
/// (B_n from D_{n+1}, C_n from A_{2n-1}, F4 from E6, G2 from D4).
pub fn fold_info(sys: &RootSystem) -> Option<FoldInfo> {
    let (pcartan, sigma, orbits) = constants::fold_data(sys.label(), sys.rank())?;
    let prank = pcartan.len();
    let parent_label = match sys.label().chars().next().unwrap() {
        'B' => format!("D{}", sys.rank() + 1),
        'C' => format!("A{}", 2 * sys.rank() - 1),
        'F' => "E6".to_string(),
        'G' => "D4".to_string(),
        _ => return None,
    };
    let parent = Arc::new(RootSystem::from_cartan(parent_label, pcartan));
    let mut node_of = vec![0usize; prank];
    for (fi, orb) in orbits.iter().enumerate() {
        for &j in orb {
            node_of[j] = fi;
        }
    }
    let mut fibers: Vec<Vec<RootIx>> = vec![vec![]; sys.n_roots()];
    let mut project = vec![0 as RootIx; parent.n_roots()];
    for pix in 0..parent.n_roots() {
        let mut v = vec![0i32; sys.rank()];
        for (j, &c) in parent.root(pix).coeffs.iter().enumerate() {
            v[node_of[j]] += c;
        }
        let fix = sys.index_of(&v).expect("parent root restricts to a folded root");
        fibers[fix].push(pix);
        project[pix] = fix;
    }
    Some(FoldInfo {
        parent,
        sigma_nodes: sigma,
        node_orbits: orbits,
        fibers,
        project,
    })
}

/// Close the simple roots under root strings; returns the positive roots
/// sorted by the total order (height, then descending lex).
pub(crate) fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i32>> {
    let rank = cartan.len();
    let mut pos: Vec<Vec<i32>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: HashMap<Vec<i32>, ()> = pos.iter().cloned().map(|v| (v, ())).collect();
    let mut frontier = pos.clone();
    while !frontier.is_empty() {
        let mut next = vec![];
        for beta in &frontier {
            for i in 0..rank {
                // p = largest m with beta - m*alpha_i a positive root (or zero)
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe.iter().all(|&c| c == 0) || seen.contains_key(&probe) {
                        p += 1;
                        if probe.iter().all(|&c| c == 0) {
                            break;
                        }
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| beta[j] as i64 * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !seen.contains_key(&up) {
                        seen.insert(up.clone(), ());
                        pos.push(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    pos.sort_by_key(|c| root_order_key(c));
    pos
}

fn compute_d(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    // d_i a_ij = d_j a_ji; propagate over the Dynkin graph with rationals
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut done = vec![false; n];
    done[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            if !done[i] {
                continue;
            }
            for j in 0..n {
                if i == j || done[j] || cartan[i][j] == 0 {
                    continue;
                }
                // d_j = d_i * a_ij / a_ji
                num[j] = num[i] * cartan[i][j].abs();
                den[j] = den[i] * cartan[j][i].abs();
                let g = gcd(num[j], den[j]);
                num[j] /= g;
                den[j] /= g;
                done[j] = true;
                changed = true;
            }
        }
    }
    let lcm_den = den.iter().fold(1i64, |a, &b| a / gcd(a, b) * b);
    let mut d: Vec<i64> = (0..n).map(|i| num[i] * (lcm_den / den[i])).collect();
    let g = d.iter().fold(0i64, |a, &b| gcd(a, b));
    for x in d.iter_mut() {
        *x /= g;
    }
    d
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_root_data() {
        let f4 = RootSystem::build("F4").unwrap();
        assert_eq!(f4.n_roots(), 48);
        assert_eq!(f4.n_positive(), 24);
        assert_eq!(f4.root(f4.highest_root()).coeffs, vec![2, 3, 4, 2]);
    }

    #[test]
    fn g2_root_data() {
        let g2 = RootSystem::build("G2").unwrap();
        assert_eq!(g2.n_roots(), 12);
        assert_eq!(g2.root(g2.highest_root()).coeffs, vec![3, 2]);
        assert_eq!(g2.root(g2.simple(0)).length_class, LengthClass::Short);
        assert_eq!(g2.root(g2.simple(1)).length_class, LengthClass::Long);
    }

    #[test]
    fn e6_d4_counts() {
        assert_eq!(RootSystem::build("E6").unwrap().n_roots(), 72);
        assert_eq!(RootSystem::build("D4").unwrap().n_roots(), 24);
        assert_eq!(RootSystem::build("A1").unwrap().n_roots(), 2);
        assert_eq!(RootSystem::build("B3").unwrap().n_roots(), 18);
        assert_eq!(RootSystem::build("C3").unwrap().n_roots(), 18);
        assert_eq!(RootSystem::build("B4").unwrap().n_roots(), 32);
        assert_eq!(RootSystem::build("E7").unwrap().n_roots(), 126);
        assert_eq!(RootSystem::build("E8").unwrap().n_roots(), 240);
    }

    #[test]
    fn unsupported_type_is_an_error() {
        assert!(RootSystem::build("H3").is_err());
        assert!(RootSystem::build("F5").is_err());
        assert!(RootSystem::build("E9").is_err());
    }

    #[test]
    fn n_antisymmetry_and_magnitudes() {
        for label in ["A2", "B2", "G2", "F4", "D4"] {
            let sys = RootSystem::build(label).unwrap();
            for a in 0..sys.n_roots() {
                for b in 0..sys.n_roots() {
                    if sys.root_sum(a, b).is_some() {
                        let n = sys.n_of(a, b);
                        assert_eq!(n, -sys.n_of(b, a), "{label}: antisymmetry");
                        let p = sys.string_down(a, b);
                        assert_eq!(n.abs(), p + 1, "{label}: |N| = p+1");
                    }
                }
            }
        }
    }

    #[test]
    fn extraspecial_pairs_are_positive() {
        for label in ["F4", "G2", "E6"] {
            let sys = RootSystem::build(label).unwrap();
            for g in sys.rank()..sys.n_positive() {
                let mut found = None;
                for a in 0..sys.n_positive() {
                    let diff: Vec<i32> = sys
                        .root(g)
                        .coeffs
                        .iter()
                        .zip(&sys.root(a).coeffs)
                        .map(|(&x, &y)| x - y)
                        .collect();
                    if let Some(b) = sys.index_of(&diff) {
                        if sys.is_positive(b) {
                            found = Some((a, b));
                            break;
                        }
                    }
                }
                let (a, b) = found.expect("every non-simple positive root has a special pair");
                assert!(sys.n_of(a, b) > 0, "{label}: extraspecial N positive");
            }
        }
    }

    #[test]
    fn jacobi_identity_on_adjoint_table() {
        // exhaustive over basis triples for G2 and B2; sampled structure for F4
        for label in ["B2", "G2"] {
            let sys = RootSystem::build(label).unwrap();
            adjoint_jacobi_check(&sys);
        }
    }

    fn adjoint_jacobi_check(sys: &RootSystem) {
        let n = sys.n_roots();
        let rank = sys.rank();
        let dim = n + rank;
        let bracket = |x: usize, y: usize| -> Vec<(usize, i64)> {
            // basis: roots then h_i
            if x < n && y < n {
                if let Some(s) = sys.root_sum(x, y) {
                    let c = sys.n_of(x, y);
                    if c != 0 {
                        return vec![(s, c)];
                    }
                    return vec![];
                }
                if sys.neg(x) == y {
                    return sys
                        .coroot_coeffs(x)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(i, c)| (n + i, c))
                        .collect();
                }
                vec![]
            } else if x < n {
                let i = y - n;
                let k = -(0..rank)
                    .map(|j| sys.root(x).coeffs[j] as i64 * sys.cartan()[i][j])
                    .sum::<i64>();
                if k != 0 {
                    vec![(x, k)]
                } else {
                    vec![]
                }
            } else if y < n {
                bracket_neg(sys, x, y)
            } else {
                vec![]
            }
        };
        fn bracket_neg(sys: &RootSystem, x: usize, y: usize) -> Vec<(usize, i64)> {
            let n = sys.n_roots();
            let rank = sys.rank();
            let i = x - n;
            let k: i64 = (0..rank)
                .map(|j| sys.root(y).coeffs[j] as i64 * sys.cartan()[i][j])
                .sum();
            if k != 0 {
                vec![(y, k)]
            } else {
                vec![]
            }
        }
        let to_vec = |terms: Vec<(usize, i64)>| {
            let mut v = vec![0i64; dim];
            for (i, c) in terms {
                v[i] += c;
            }
            v
        };
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    // [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
                    let mut acc = vec![0i64; dim];
                    for (perm_x, perm_y, perm_z) in [(x, y, z), (y, z, x), (z, x, y)] {
                        for (m, c) in bracket(perm_x, perm_y) {
                            for (r, c2) in bracket(m, perm_z) {
                                acc[r] += c * c2;
                            }
                        }
                    }
                    let _ = to_vec(vec![]);
                    assert!(
                        acc.iter().all(|&v| v == 0),
                        "Jacobi fails at ({x},{y},{z})"
                    );
                }
            }
        }
    }

    #[test]
    fn g2_commutator_magnitude_three() {
        let g2 = RootSystem::build("G2").unwrap();
        let alpha = g2.simple(0); // short
        let beta = g2.simple(1); // long
        // the (1,1) coefficient always has magnitude (string-down length)+1
        for (a, b) in [(alpha, beta), (alpha, g2.index_of(&[1, 1]).unwrap()), (alpha, g2.index_of(&[2, 1]).unwrap())] {
            let terms = g2.commutator_terms(a, b).unwrap();
            if let Some(&(_, _, c)) = terms.iter().find(|&&(i, j, _)| (i, j) == (1, 1)) {
                assert_eq!(c.abs(), g2.string_down(a, b) + 1);
            }
        }
        // a magnitude-3 constant lands in the 3a+b direction: the alpha-string
        // through 2a+b has down-length 2, so [x_a(t), x_{2a+b}(u)] carries +/-3
        let two_ab = g2.index_of(&[2, 1]).unwrap();
        let terms = g2.commutator_terms(alpha, two_ab).unwrap();
        let (_, _, c) = terms
            .iter()
            .copied()
            .find(|&(i, j, _)| (i, j) == (1, 1))
            .expect("3a+b term present");
        assert_eq!(c.abs(), 3);
        // the simple pair must produce terms on every root ia+jb
        let simple_terms = g2.commutator_terms(alpha, beta).unwrap();
        let dirs: Vec<(i32, i32)> = simple_terms.iter().map(|&(i, j, _)| (i, j)).collect();
        assert!(dirs.contains(&(1, 1)) && dirs.contains(&(2, 1)) && dirs.contains(&(3, 1)));
    }

    #[test]
    fn orthogonal_pair_empty_commutator() {
        let d4 = RootSystem::build("D4").unwrap();
        // alpha_1 and alpha_3 are orthogonal in D4; no root of the form i*a+j*b
        let terms = d4.commutator_terms(d4.simple(0), d4.simple(2)).unwrap();
        assert!(terms.is_empty());
    }

    #[test]
    fn a2_adjacent_single_term() {
        let a2 = RootSystem::build("A2").unwrap();
        let terms = a2.commutator_terms(a2.simple(0), a2.simple(1)).unwrap();
        assert_eq!(terms.len(), 1);
        let (i, j, c) = terms[0];
        assert_eq!((i, j), (1, 1));
        assert_eq!(c.abs(), 1);
    }

    #[test]
    fn reflection_negates_own_root() {
        let f4 = RootSystem::build("F4").unwrap();
        for i in 0..4 {
            let a = f4.simple(i);
            let (img, _) = f4.weyl_conjugate(&WeylWord(vec![a]), a);
            assert_eq!(img, f4.neg(a));
        }
    }

    #[test]
    fn weyl_conjugate_roundtrip_sign() {
        let f4 = RootSystem::build("F4").unwrap();
        for a in 0..f4.n_roots() {
            for b in (0..f4.n_roots()).step_by(5) {
                let (img, s1) = f4.eta(a, b);
                // n_a(1)^-1 = n_a(-1) and n_{-a}(1) both invert; use the identity
                // x^{n n^-1} = x. n_a^-1 corresponds to eta through -a up to sign;
                // here we check the documented invariant via the inverse word.
                let (back, s2) = f4.eta(f4.neg(a), img);
                assert_eq!(back, b);
                assert_eq!(s1 * s2, 1, "sign product must be +1");
            }
        }
    }

    // The thesis lists the n_{0122} images of Q(3) = {1122,1222,1232,1242,1342,
    // 2342} as {1000,1100,1110,1120,1220,1122}. In epsilon-coordinates 2342 is
    // e1+e2 and 0122 is e1-e2, which are orthogonal, so 2342 is fixed by the
    // reflection; the other five roots map onto the shape 1**0 as published.
    #[test]
    fn n0122_maps_level3_roots() {
        let f4 = RootSystem::build("F4").unwrap();
        let n0122 = f4.index_of(&[0, 1, 2, 2]).unwrap();
        let sources = [
            [1, 1, 2, 2],
            [1, 2, 2, 2],
            [1, 2, 3, 2],
            [1, 2, 4, 2],
            [1, 3, 4, 2],
        ];
        let expected = [
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 1, 1, 0],
            [1, 1, 2, 0],
            [1, 2, 2, 0],
        ];
        let mut images: Vec<Vec<i32>> = sources
            .iter()
            .map(|s| {
                let ix = f4.index_of(s).unwrap();
                f4.root(f4.reflect(n0122, ix)).coeffs.clone()
            })
            .collect();
        let mut want: Vec<Vec<i32>> = expected.iter().map(|e| e.to_vec()).collect();
        images.sort();
        want.sort();
        assert_eq!(images, want);
        let theta = f4.index_of(&[2, 3, 4, 2]).unwrap();
        assert_eq!(f4.reflect(n0122, theta), theta);
    }

    #[test]
    fn duality_involutive_and_reverses_simples() {
        let f4 = RootSystem::build("F4").unwrap();
        let tau = f4.duality_map().unwrap();
        for i in 0..f4.n_roots() {
            assert_eq!(tau[tau[i]], i);
        }
        assert_eq!(tau[f4.simple(0)], f4.simple(3));
        let g2 = RootSystem::build("G2").unwrap();
        let tau2 = g2.duality_map().unwrap();
        assert_eq!(tau2[g2.simple(0)], g2.simple(1));
        assert!(RootSystem::build("E6").unwrap().duality_map().is_err());
    }
}
