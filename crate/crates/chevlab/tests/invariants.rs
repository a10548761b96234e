//! Property suites for the spec'd module invariants that live best as
//! integration tests: polynomial-matrix algebra laws, structure-constant
//! stability under a permuted derivation order, torus commutation on levels,
//! Weyl-representative order, and Jordan conjugation invariance.

use chevlab::chevrep::{RepSpec, build_rep};
use chevlab::ff::{FMatrix, PMatrix, Poly, VarSet, gf};
use chevlab::modax;
use chevlab::parab::levels;
use chevlab::rootsys::RootSystem;
use proptest::prelude::*;
use rand::SeedableRng;

fn arb_poly(max_terms: usize) -> impl Strategy<Value = (Vec<(u16, u16, u32)>,)> {
    (proptest::collection::vec((0u16..4, 0u16..4, 0u32..4), 0..max_terms),).prop_map(|t| t)
}

fn mk_poly(field: &std::sync::Arc<chevlab::ff::Fq>, vars: &std::sync::Arc<VarSet>, terms: &[(u16, u16, u32)]) -> Poly {
    let mut p = Poly::zero(field.clone(), vars.clone());
    for &(a, b, c) in terms {
        let m = Poly::monomial(field.clone(), vars.clone(), 0, a, c % field.order())
            .mul(&Poly::monomial(field.clone(), vars.clone(), 1, b, 1));
        p = p.add(&m);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // substitution is a ring homomorphism and commutes with products:
    // subst(a*b) = subst(a)*subst(b), and with evaluation at field points
    #[test]
    fn poly_subst_is_multiplicative((ta,) in arb_poly(5), (tb,) in arb_poly(5), (te,) in arb_poly(3)) {
        let f = gf(2, 2);
        let vars = VarSet::new(vec!["t", "u"]);
        let a = mk_poly(&f, &vars, &ta);
        let b = mk_poly(&f, &vars, &tb);
        let e = mk_poly(&f, &vars, &te);
        let lhs = a.mul(&b).subst("t", &e).unwrap();
        let rhs = a.subst("t", &e).unwrap().mul(&b.subst("t", &e).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    // the spec'd matrix law: pmat_subst(pmat_mul(a,b)) = pmat_mul(subst a, subst b)
    #[test]
    fn pmat_subst_commutes_with_mul(
        (ta,) in arb_poly(3), (tb,) in arb_poly(3), (tc,) in arb_poly(3), (td,) in arb_poly(3),
        (te,) in arb_poly(2),
    ) {
        let f = gf(3, 1);
        let vars = VarSet::new(vec!["t", "u"]);
        let mut a = PMatrix::identity(f.clone(), vars.clone(), 2);
        *a.at_mut(0, 1) = mk_poly(&f, &vars, &ta);
        *a.at_mut(1, 0) = mk_poly(&f, &vars, &tb);
        let mut b = PMatrix::identity(f.clone(), vars.clone(), 2);
        *b.at_mut(0, 0) = mk_poly(&f, &vars, &tc);
        *b.at_mut(1, 1) = mk_poly(&f, &vars, &td);
        let e = mk_poly(&f, &vars, &te);
        let lhs = a.mul(&b).unwrap().subst("t", &e).unwrap();
        let rhs = a.subst("t", &e).unwrap().mul(&b.subst("t", &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // evaluation-grid certification agrees with symbolic equality
    #[test]
    fn certified_eq_sound((ta,) in arb_poly(4), (tb,) in arb_poly(4)) {
        let f = gf(5, 1);
        let vars = VarSet::new(vec!["t", "u"]);
        let mut a = PMatrix::identity(f.clone(), vars.clone(), 2);
        *a.at_mut(0, 1) = mk_poly(&f, &vars, &ta);
        let mut b = PMatrix::identity(f.clone(), vars.clone(), 2);
        *b.at_mut(0, 1) = mk_poly(&f, &vars, &tb);
        prop_assert_eq!(a.certified_eq(&b).unwrap(), a == b);
    }
}

// Re-deriving structure constants from a permuted total order (here: D4
// rebuilt with two outer nodes of its diagram swapped, which permutes the
// order the extraspecial normalization walks) gives constants of the same
// magnitudes; the representation identities for the permuted system are
// covered by the folded-G2 checks, which consume a D4 parent.
#[test]
fn constants_stable_under_relabeling() {
    let d4 = RootSystem::build("D4").unwrap();
    let perm = [2usize, 1, 0, 3]; // swap the outer nodes 0 and 2
    let mut cartan = vec![vec![0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            cartan[i][j] = d4.cartan()[perm[i]][perm[j]];
        }
    }
    let rev = chevlab::rootsys::RootSystem::from_cartan_for_tests("D4".into(), cartan);
    let relabel = |c: &[i32]| -> Vec<i32> {
        let mut v = vec![0; 4];
        for (i, &x) in c.iter().enumerate() {
            v[perm[i]] = x;
        }
        v
    };
    let mut diffs = 0usize;
    for a in 0..d4.n_roots() {
        for b in 0..d4.n_roots() {
            if d4.root_sum(a, b).is_some() {
                let ra = rev.index_of(&relabel(&d4.root(a).coeffs)).unwrap();
                let rb = rev.index_of(&relabel(&d4.root(b).coeffs)).unwrap();
                assert_eq!(
                    d4.n_of(a, b).abs(),
                    rev.n_of(ra, rb).abs(),
                    "magnitudes must agree under relabeling"
                );
                if d4.n_of(a, b) != rev.n_of(ra, rb) {
                    diffs += 1;
                }
            }
        }
    }
    // the derivation order genuinely changed signs somewhere or nowhere; both
    // are acceptable, but the magnitudes above must always match
    let _ = diffs;
}

#[test]
fn level_action_torus_elements_commute() {
    let f4 = RootSystem::build("F4").unwrap();
    let pd = levels(&f4, &[0, 1, 2]).unwrap();
    let f = gf(5, 1);
    for lvl in [1usize, 2] {
        let mats: Vec<FMatrix> = (0..3)
            .flat_map(|i| {
                [2u32, 3]
                    .into_iter()
                    .map(move |c| (i, c))
            })
            .map(|(i, c)| pd.level_action_torus(lvl, f4.simple(i), &f, c).unwrap())
            .collect();
        for a in &mats {
            for b in &mats {
                assert_eq!(a.mul(b), b.mul(a));
            }
        }
    }
}

// n_alpha(1)^4 acts trivially by conjugation on every root subgroup.
#[test]
fn weyl_representative_fourth_power() {
    let rep = build_rep(&RepSpec::Folded("G2".into())).unwrap();
    let f = gf(5, 1);
    for a in 0..rep.sys.n_roots() {
        let n = rep.n_const(a, 1, &f);
        let n4 = n.pow(4);
        let n4inv = n4.inverse().unwrap();
        for b in 0..rep.sys.n_roots() {
            for t0 in 0..5 {
                let x = rep.x_const(b, t0, &f);
                assert_eq!(n4.mul(&x).mul(&n4inv), x, "n^4 conjugation at ({a},{b})");
            }
        }
    }
}

// Jordan partitions are invariant under conjugation (randomized check).
#[test]
fn jordan_conjugation_invariance() {
    let rep = build_rep(&RepSpec::FoldedQuotient("F4".into())).unwrap();
    let f = gf(2, 2);
    let short = rep.sys.simple(3);
    let u = rep.x_const(short, 1, &f);
    let base = modax::jordan_partition(&u).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    use rand::Rng;
    for _ in 0..5 {
        // conjugate by a random product of root elements
        let mut g = FMatrix::identity(f.clone(), rep.dim);
        for _ in 0..6 {
            let r = rng.gen_range(0..rep.sys.n_roots());
            let t = rng.gen_range(0..f.order());
            g = g.mul(&rep.x_const(r, t, &f));
        }
        let ginv = g.inverse().unwrap();
        let v = g.mul(&u).mul(&ginv);
        assert_eq!(modax::jordan_partition(&v).unwrap(), base);
    }
}

// Socle layers refine the composition factors and factor dims sum to the
// module dimension.
#[test]
fn socle_refines_factors() {
    let rep = build_rep(&RepSpec::FoldedQuotient("G2".into())).unwrap();
    let f = gf(2, 2);
    let simples: Vec<usize> = (0..2).map(|i| rep.sys.simple(i)).collect();
    let m = chevlab::complab::subsystem_module(&rep, &simples, &f);
    let report = modax::analyze(&m, &[], modax::DEFAULT_SEED);
    let total: usize = report.factors.iter().map(|e| e.dim * e.mult).sum();
    assert_eq!(total, report.dim);
    let socle_total: usize = report.socle_layers.iter().flatten().sum();
    assert_eq!(socle_total, report.dim);
    let n_layer_factors: usize = report.socle_layers.iter().map(|l| l.len()).sum();
    let n_factors: usize = report.factors.iter().map(|e| e.mult).sum();
    assert_eq!(n_layer_factors, n_factors);
}
