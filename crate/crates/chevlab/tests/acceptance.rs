//! Acceptance suite: every criterion runs at its stated tolerance (all values
//! are exact integers or partitions) and prints one pass/fail line.
//!
//! Scan-heavy criteria run in a sampled CI mode by default; set
//! CHEVLAB_FULL_SCAN=1 for the full published scans (criteria 8 and 9).

use chevlab::chevrep::{RepSpec, build_rep};
use chevlab::complab::{
    Family, build_complement, check_a1_relations, check_borel_relations,
    lift::{LiftAnsatz, torus_slots},
    lift_search, restriction_report, subsystem_module,
};
use chevlab::complab::{ConjResult, Conjugator, LiftOutcome, conj_action};
use chevlab::ff::{FF, gf};
use chevlab::modax::{self, FqModule};
use chevlab::parab::levels;
use chevlab::rootsys::RootSystem;
use chevlab::sl2coh::{self, A1ProductEmbedding, Bound};
use chevlab::{Rep, ff::Fq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

struct Ctx {
    f4: Arc<RootSystem>,
    g2: Arc<RootSystem>,
    v27: Rep,
    v8: Rep,
    v26: Rep,
    v7: Rep,
}

static CTX: OnceLock<Ctx> = OnceLock::new();

fn ctx() -> &'static Ctx {
    CTX.get_or_init(|| Ctx {
        f4: RootSystem::build("F4").unwrap(),
        g2: RootSystem::build("G2").unwrap(),
        v27: build_rep(&RepSpec::Folded("F4".into())).unwrap(),
        v8: build_rep(&RepSpec::Folded("G2".into())).unwrap(),
        v26: build_rep(&RepSpec::FoldedQuotient("F4".into())).unwrap(),
        v7: build_rep(&RepSpec::FoldedQuotient("G2".into())).unwrap(),
    })
}

fn full_scan() -> bool {
    std::env::var("CHEVLAB_FULL_SCAN").map(|v| v == "1").unwrap_or(false)
}

fn report(n: usize, name: &str, ok: bool, t: Instant, budget_s: u64) {
    let el = t.elapsed();
    println!(
        "criterion {n:2} [{}] {name} ({el:.2?})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {name}");
    assert!(
        el.as_secs() <= budget_s,
        "criterion {n} exceeded its runtime budget: {el:?} > {budget_s}s"
    );
}

#[test]
fn criterion_01_root_data() {
    let t = Instant::now();
    let f4 = RootSystem::build("F4").unwrap();
    let g2 = RootSystem::build("G2").unwrap();
    let e6 = RootSystem::build("E6").unwrap();
    let ok = f4.n_roots() == 48
        && f4.root(f4.highest_root()).coeffs == vec![2, 3, 4, 2]
        && g2.n_roots() == 12
        && g2.root(g2.highest_root()).coeffs == vec![3, 2]
        && e6.n_roots() == 72;
    report(1, "root data for F4, G2, E6", ok, t, 1);
}

#[test]
fn criterion_02_filtration_bookkeeping() {
    let t = Instant::now();
    let mut ok = true;
    for label in ["F4", "G2"] {
        let sys = RootSystem::build(label).unwrap();
        let rank = sys.rank();
        for mask in 0..(1u32 << rank) {
            let j: Vec<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
            let pd = levels(&sys, &j).unwrap();
            let levi_pos = pd
                .levi_roots()
                .iter()
                .filter(|&&r| sys.is_positive(r))
                .count();
            ok &= pd.dims().iter().sum::<usize>() == sys.n_positive() - levi_pos;
        }
    }
    let f4 = RootSystem::build("F4").unwrap();
    ok &= levels(&f4, &[0, 1, 2]).unwrap().dims() == vec![8, 7];
    let g2 = RootSystem::build("G2").unwrap();
    let long = levels(&g2, &[1]).unwrap();
    ok &= long.dims() == vec![2, 1, 2];
    let hw_long: Vec<Vec<i64>> = long
        .levels
        .iter()
        .map(|l| long.shape_high_weight(&l.shapes[0]))
        .collect();
    ok &= hw_long == vec![vec![1], vec![0], vec![1]];
    let short = levels(&g2, &[0]).unwrap();
    ok &= short.dims() == vec![4, 1];
    let hw_short: Vec<Vec<i64>> = short
        .levels
        .iter()
        .map(|l| short.shape_high_weight(&l.shapes[0]))
        .collect();
    ok &= hw_short == vec![vec![3], vec![0]];
    report(2, "level/shape bookkeeping for every parabolic of F4 and G2", ok, t, 1);
}

#[test]
fn criterion_03_representation_correctness() {
    let t = Instant::now();
    let c = ctx();
    let mut ok = c.v27.verify_additivity().is_ok() && c.v8.verify_additivity().is_ok();
    let gf16 = gf(2, 4);
    for (rep, label) in [(&c.v27, "F4"), (&c.v8, "G2")] {
        let n = rep.sys.n_roots();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                if b == rep.sys.neg(a) {
                    continue; // handled once per root below
                }
                if rep.verify_commutator_pair(a, b).is_err() {
                    ok = false;
                    println!("{label}: commutator identity fails at ({a},{b})");
                }
            }
        }
        for a in 0..n {
            if rep.verify_opposite_pair(a, &gf16).is_err() {
                ok = false;
                println!("{label}: rank-one relation fails at root {a}");
            }
        }
    }
    report(3, "folded Chevalley identities for all ordered root pairs (F4 on 27, G2 on 8)", ok, t, 300);
}

fn f4_f2_module(v26: &Rep, field: &Arc<Fq>) -> FqModule {
    let simples: Vec<usize> = (0..4).map(|i| v26.sys.simple(i)).collect();
    subsystem_module(v26, &simples, field)
}

#[test]
fn criterion_04_v26_structure() {
    let t = Instant::now();
    let c = ctx();
    let mut ok = c.v26.dim == 26;
    // p = 2: irreducible over GF(4) with F4(F2) generators
    let m2 = f4_f2_module(&c.v26, &gf(2, 2));
    let r2 = modax::analyze(&m2, &[], modax::DEFAULT_SEED);
    ok &= r2.factors.len() == 1 && r2.factors[0].dim == 26 && r2.factors[0].mult == 1;
    // p = 3: composition factors {25, 1} with a 1-dimensional radical
    let m3 = f4_f2_module(&c.v26, &gf(3, 2));
    let r3 = modax::analyze(&m3, &[], modax::DEFAULT_SEED);
    let mut dims: Vec<usize> = r3.factors.iter().flat_map(|f| std::iter::repeat(f.dim).take(f.mult)).collect();
    dims.sort_unstable();
    ok &= dims == vec![1, 25];
    // Weyl-module orientation: socle 1 at the bottom, head 25 on top
    ok &= r3.socle_layers == vec![vec![1], vec![25]];
    report(4, "V26: dim 26, irreducible at p=2, factors {25,1} with 1-dim radical at p=3", ok, t, 60);
}

#[test]
fn criterion_05_restriction_fixtures() {
    let t = Instant::now();
    let c = ctx();
    let mut ok = true;
    let subs = c.f4.enumerate_subsystems().unwrap();
    let find = |label: &str| -> Vec<usize> {
        subs.iter().find(|s| s.label == label).unwrap().simple_roots.clone()
    };
    // V26 | B4(F2): summands {10, 16}, socle layers (1,8,1) on the 10
    let mb4 = subsystem_module(&c.v26, &find("B4"), &gf(2, 1));
    let rb4 = modax::analyze(&mb4, &[], modax::DEFAULT_SEED);
    ok &= rb4.summands == vec![10, 16];
    let mut rng = ChaCha8Rng::seed_from_u64(modax::DEFAULT_SEED);
    let parts = modax::direct_summands(&mb4, &mut rng);
    ok &= modax::verify_summands(&mb4, &parts);
    for p in &parts {
        let sub = modax::restrict(&mb4, p);
        if sub.dim == 10 {
            ok &= modax::socle_series(&sub, &mut rng) == vec![vec![1], vec![8], vec![1]];
        }
    }
    // V26 | B3(F3): factors {7, 8, 8, 1, 1, 1}
    let b3: Vec<usize> = (0..3).map(|i| c.f4.simple(i)).collect();
    let mb3 = subsystem_module(&c.v26, &b3, &gf(3, 1));
    let rb3 = modax::analyze(&mb3, &[], modax::DEFAULT_SEED);
    let mut dims: Vec<usize> = rb3.factors.iter().flat_map(|f| std::iter::repeat(f.dim).take(f.mult)).collect();
    dims.sort_unstable();
    ok &= dims == vec![1, 1, 1, 7, 8, 8];
    // V26 | C3(F3): summand dims {6, 6, 14}
    let c3: Vec<usize> = (1..4).map(|i| c.f4.simple(i)).collect();
    let mc3 = subsystem_module(&c.v26, &c3, &gf(3, 1));
    let rc3 = modax::analyze(&mc3, &[], modax::DEFAULT_SEED);
    ok &= rc3.summands == vec![6, 6, 14];
    // V7 | A2 for G2: {3, 3bar, 1} (the two 3-dimensional factors non-isomorphic)
    let g2subs = c.g2.enumerate_subsystems().unwrap();
    let a2 = g2subs.iter().find(|s| s.label == "A2").unwrap();
    let ma2 = subsystem_module(&c.v7, &a2.simple_roots, &gf(2, 2));
    let ra2 = modax::analyze(&ma2, &[], modax::DEFAULT_SEED);
    let mut dims: Vec<usize> = ra2.factors.iter().flat_map(|f| std::iter::repeat(f.dim).take(f.mult)).collect();
    dims.sort_unstable();
    ok &= dims == vec![1, 3, 3];
    let facs = modax::composition_factors(&ma2, &mut rng);
    let threes: Vec<&FqModule> = facs.iter().filter(|f| f.dim == 3).collect();
    ok &= threes.len() == 2 && !modax::isomorphic(threes[0], threes[1]);
    report(5, "restriction fixtures: V26|B4(F2), V26|B3(F3), V26|C3(F3), V7|A2", ok, t, 120);
}

#[test]
fn criterion_06_jordan_data() {
    let t = Instant::now();
    let c = ctx();
    let short = c.f4.simple(3);
    let u2 = c.v26.x_const(short, 1, &gf(2, 1));
    let p2 = modax::jordan_partition(&u2).unwrap();
    let u3 = c.v26.x_const(short, 1, &gf(3, 1));
    let p3 = modax::jordan_partition(&u3).unwrap();
    let ok = modax::render_partition(&p2) == "2^10 1^6"
        && modax::render_partition(&p3) == "3 2^8 1^7";
    report(6, "Jordan partitions of x_short(1) on V26 at p=2 and p=3", ok, t, 10);
}

#[test]
fn criterion_07_precocycle_dimensions() {
    let t = Instant::now();
    let c = ctx();
    let mut ok = true;
    // long-A1 parabolic: twisted 7, untwisted 0
    let pd = levels(&c.f4, &[0]).unwrap();
    for (r, want) in [(1u32, 7usize), (0, 0)] {
        let emb = A1ProductEmbedding { factors: vec![vec![(c.f4.simple(0), r)]] };
        let rep = sl2coh::precocycle_a1(&pd, &emb, 2).unwrap();
        ok &= rep.v_dim == Bound::Exact(want);
    }
    // B2-parabolic, diagonal short A1^2 with twists (0,1): 4, from levels 1 and 3
    let pd = levels(&c.f4, &[1, 2]).unwrap();
    let g1 = c.f4.index_of(&[0, 0, 1, 0]).unwrap();
    let g2r = c.f4.index_of(&[0, 1, 1, 0]).unwrap();
    let emb = A1ProductEmbedding { factors: vec![vec![(g1, 0), (g2r, 1)]] };
    let rep = sl2coh::precocycle_a1(&pd, &emb, 2).unwrap();
    ok &= rep.v_dim == Bound::Exact(4);
    let by_level: Vec<(usize, Bound)> = rep.levels.iter().map(|l| (l.index, l.h1)).collect();
    ok &= by_level.contains(&(1, Bound::Exact(2))) && by_level.contains(&(3, Bound::Exact(2)));
    // B3-parabolic, A2 at p=3 (catalog row): 2
    let pd = levels(&c.f4, &[0, 1, 2]).unwrap();
    let rep = sl2coh::precocycle_cataloged(&pd, "A2", 3).unwrap();
    ok &= rep.v_dim == Bound::Exact(2);
    // P24 (nodes 2 and 4 deleted), product A1 x ~A1 twisted: 6
    let pd = levels(&c.f4, &[0, 2]).unwrap();
    let emb = A1ProductEmbedding {
        factors: vec![vec![(c.f4.simple(0), 1)], vec![(c.f4.simple(2), 1)]],
    };
    let rep = sl2coh::precocycle_a1(&pd, &emb, 2).unwrap();
    ok &= rep.v_dim == Bound::Exact(6);
    // B3-parabolic, A1 <= ~A1^3 with pairwise distinct twists: level-2 H1 = 3
    let pd = levels(&c.f4, &[0, 1, 2]).unwrap();
    let shorts = [
        c.f4.index_of(&[0, 0, 1, 0]).unwrap(),
        c.f4.index_of(&[0, 1, 1, 0]).unwrap(),
        c.f4.index_of(&[1, 1, 1, 0]).unwrap(),
    ];
    let emb = A1ProductEmbedding {
        factors: vec![vec![(shorts[0], 0), (shorts[1], 1), (shorts[2], 2)]],
    };
    let rep = sl2coh::precocycle_a1(&pd, &emb, 2).unwrap();
    let lvl2 = rep.levels.iter().find(|l| l.index == 2).unwrap();
    ok &= lvl2.h1 == Bound::Exact(3);
    report(7, "pre-cocycle dimensions: 7/0, 4, 2, 6, and level-2 value 3", ok, t, 30);
}

#[test]
fn criterion_08_cocycle_verification() {
    let t = Instant::now();
    let c = ctx();
    let f2 = gf(2, 1);
    let f4f = gf(2, 2);
    let scan = gf(2, 4);
    let full = full_scan();
    let mut ok = true;

    // long-A1 family over GF(2)^7 (all in full mode) and random GF(4)^7
    let gf2_tuples: Vec<[FF; 7]> = if full {
        (0..128u32).map(|c| core::array::from_fn(|i| (c >> i) & 1)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        (0..16).map(|_| core::array::from_fn(|_| rng.gen_range(0..2))).collect()
    };
    for k in gf2_tuples {
        let fam = Family::LongA1F4 { r: 1, k, field: f2.clone() };
        let gens = build_complement(&fam, &c.v26, &scan).unwrap();
        if !check_a1_relations(&gens, &c.v26).pass {
            ok = false;
            println!("long-A1 fails at k={k:?} over GF(2)");
        }
    }
    let n_gf4 = if full { 200 } else { 12 };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..n_gf4 {
        let k: [FF; 7] = core::array::from_fn(|_| rng.gen_range(0..4));
        let fam = Family::LongA1F4 { r: 1, k, field: f4f.clone() };
        let gens = build_complement(&fam, &c.v26, &scan).unwrap();
        if !check_a1_relations(&gens, &c.v26).pass {
            ok = false;
            println!("long-A1 fails at k={k:?} over GF(4)");
        }
    }

    // a1a1 families, both parabolics (validity: k1 k2 = 0 resp. m1 m2 = 0)
    let pairs: Vec<[FF; 6]> = if full {
        (0..64u32).map(|c| core::array::from_fn(|i| (c >> i) & 1)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        (0..10).map(|_| core::array::from_fn(|_| rng.gen_range(0..2))).collect()
    };
    for mut k in pairs {
        if k[0] != 0 && k[1] != 0 {
            k[1] = 0;
        }
        let fam = Family::A1A1P24 { r: 1, s: 3, k, field: f2.clone() };
        let gens = build_complement(&fam, &c.v26, &scan).unwrap();
        if !check_a1_relations(&gens, &c.v26).pass {
            ok = false;
            println!("P24 family fails at k={k:?}");
        }
        let fam = Family::A1A1P13 { r: 1, s: 3, m: k, field: f2.clone() };
        let gens = build_complement(&fam, &c.v26, &scan).unwrap();
        if !check_a1_relations(&gens, &c.v26).pass {
            ok = false;
            println!("P13 family fails at m={k:?}");
        }
    }

    // the published p=3 families are the lifted members: (k, +/-k) for the
    // (0,0,1) embedding and (k, 0) for (0,2,1); they pass the Borel-side
    // cocycle conditions (additivity of the dressed generator plus torus
    // equivariance)
    let f9 = gf(3, 2);
    let scan3 = gf(3, 4);
    let ks: Vec<FF> = if full { (0..9).collect() } else { vec![0, 1, 2, 3, 7] };
    for &k in &ks {
        let fams = [
            Family::B3Rst001 { k, l: k, field: f9.clone() },
            Family::B3Rst001 { k, l: f9.neg(k), field: f9.clone() },
            Family::B3Rst021 { k, l: 0, field: f9.clone() },
        ];
        for fam in fams {
            let gens = build_complement(&fam, &c.v26, &scan3).unwrap();
            let torus = torus_slots(&fam, &c.v26);
            if !check_borel_relations(&gens, &c.v26, &torus).pass {
                ok = false;
                println!("B3 lifted family fails at k={k} ({fam:?})");
            }
        }
    }

    // negative control: chi corrupted at a tuple with chi != 0
    let fam = Family::LongA1F4Corrupted {
        r: 1,
        k: [1, 0, 0, 1, 0, 1, 0],
        field: f2.clone(),
        delta: 1,
    };
    let gens = build_complement(&fam, &c.v26, &scan).unwrap();
    let verdict = check_a1_relations(&gens, &c.v26);
    ok &= !verdict.pass && !verdict.failures.is_empty();

    report(8, "published families pass the rank-one relations; chi-corrupted control fails", ok, t, 1800);
}

#[test]
fn criterion_09_lift_obstructions() {
    let t = Instant::now();
    let c = ctx();
    let f9 = gf(3, 2);
    let scan = gf(3, 4);
    let ansatz = LiftAnsatz::default();
    let full = full_scan();
    let mut ok = true;
    let pairs: Vec<(FF, FF)> = if full {
        (0..81).map(|c| (c / 9, c % 9)).collect()
    } else {
        vec![(0, 0), (1, 1), (1, 2), (1, 3), (3, 3), (3, 6), (5, 0), (0, 4), (7, 7), (2, 6)]
    };
    for &(k, l) in &pairs {
        let fam = Family::B3Rst001 { k, l, field: f9.clone() };
        let got = matches!(
            lift_search(&fam, &c.v26, &scan, &ansatz).unwrap(),
            LiftOutcome::Witness { .. }
        );
        let expect = k == l || k == f9.neg(l);
        if got != expect {
            ok = false;
            println!("001 lift mismatch at (k,l)=({k},{l}): got {got}, want {expect}");
        }
    }
    for &(k, l) in &pairs {
        let fam = Family::B3Rst021 { k, l, field: f9.clone() };
        let got = matches!(
            lift_search(&fam, &c.v26, &scan, &ansatz).unwrap(),
            LiftOutcome::Witness { .. }
        );
        let expect = l == 0;
        if got != expect {
            ok = false;
            println!("021 lift mismatch at (k,l)=({k},{l}): got {got}, want {expect}");
        }
    }
    report(9, "lift obstructions: (0,0,1) lifts iff k=+/-l, (0,2,1) lifts iff l=0", ok, t, 600);
}

#[test]
fn criterion_10_conjugation_tables() {
    let t = Instant::now();
    let c = ctx();
    let f8 = gf(2, 3);
    let sys = &c.f4;
    let ix = |cf: &[i32]| sys.index_of(cf).unwrap();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let tuples: Vec<[FF; 7]> = (0..10)
        .map(|_| core::array::from_fn(|_| rng.gen_range(0..8)))
        .chain([[1, 1, 1, 1, 1, 1, 1], [1, 0, 1, 0, 1, 0, 1]])
        .collect();
    let f = &f8;
    type RowFn = Box<dyn Fn(&Arc<Fq>, &[FF; 7], FF) -> Vec<FF>>;
    let rows: Vec<(Conjugator, RowFn, Vec<FF>)> = vec![
        (
            Conjugator::N(ix(&[0, 0, 1, 0])),
            Box::new(|_f, k, _c| vec![k[3], k[1], k[4], k[0], k[2], k[5], k[6]]),
            vec![1],
        ),
        (
            Conjugator::N(ix(&[0, 0, 0, 1])),
            Box::new(|_f, k, _c| vec![k[0], k[2], k[1], k[5], k[4], k[3], k[6]]),
            vec![1],
        ),
        (
            Conjugator::X(ix(&[0, 0, 1, 0]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![
                    k[0],
                    f.add(k[1], f.mul(c, k[0])),
                    k[2],
                    f.add(k[3], f.mul(f.mul(c, c), k[0])),
                    f.add(k[4], f.mul(c, k[2])),
                    k[5],
                    k[6],
                ]
            }),
            vec![1, 2, 5],
        ),
        (
            Conjugator::X(ix(&[0, 0, 0, 1]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![
                    k[0],
                    k[1],
                    f.add(k[2], f.mul(c, k[1])),
                    k[3],
                    f.add(k[4], f.mul(c, k[3])),
                    f.add(k[5], f.mul(f.mul(c, c), k[3])),
                    k[6],
                ]
            }),
            vec![1, 3, 7],
        ),
        (
            Conjugator::X(ix(&[0, 0, 1, 1]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![
                    k[0],
                    k[1],
                    f.add(k[2], f.mul(c, k[0])),
                    k[3],
                    f.add(k[4], f.mul(c, k[1])),
                    f.add(k[5], f.mul(f.mul(c, c), k[0])),
                    k[6],
                ]
            }),
            vec![1, 2, 4],
        ),
        (
            Conjugator::X(ix(&[1, 2, 4, 2]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![k[0], k[1], k[2], k[3], k[4], k[5], f.add(k[6], f.mul(c, k[0]))]
            }),
            vec![1, 6],
        ),
        (
            Conjugator::H(ix(&[0, 0, 1, 0]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![
                    f.mul(k[0], f.pow(c, -2)),
                    k[1],
                    f.mul(k[2], f.pow(c, -1)),
                    f.mul(k[3], f.pow(c, 2)),
                    f.mul(k[4], c),
                    k[5],
                    k[6],
                ]
            }),
            vec![2, 3, 5, 7],
        ),
        (
            Conjugator::H(ix(&[0, 0, 0, 1]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![
                    k[0],
                    f.mul(k[1], f.pow(c, -1)),
                    f.mul(k[2], c),
                    f.mul(k[3], f.pow(c, -2)),
                    k[4],
                    f.mul(k[5], f.pow(c, 2)),
                    k[6],
                ]
            }),
            vec![2, 3, 5, 7],
        ),
        (
            Conjugator::H(ix(&[1, 2, 4, 2]), 0),
            Box::new(|f: &Arc<Fq>, k, c| {
                vec![
                    f.mul(k[0], f.pow(c, -1)),
                    k[1],
                    k[2],
                    f.mul(k[3], c),
                    f.mul(k[4], c),
                    f.mul(k[5], c),
                    f.mul(k[6], c),
                ]
            }),
            vec![2, 3, 5, 7],
        ),
    ];
    for (g0, rowfn, cs) in &rows {
        for &cval in cs {
            let g = match g0 {
                Conjugator::N(r) => Conjugator::N(*r),
                Conjugator::X(r, _) => Conjugator::X(*r, cval),
                Conjugator::H(r, _) => Conjugator::H(*r, cval),
                Conjugator::Product(_) => unreachable!(),
            };
            for k in &tuples {
                let fam = Family::LongA1F4 { r: 1, k: *k, field: f8.clone() };
                let got = conj_action(&fam, &g, &c.v26, &f8).unwrap();
                let want = rowfn(f, k, cval);
                if got != ConjResult::Coeffs(want.clone()) {
                    ok = false;
                    println!("conjugation row mismatch: {g0:?} c={cval} k={k:?} -> {got:?}, want {want:?}");
                }
            }
        }
    }
    // the partial n_{1242} row: [0,k2,0,0,0,0,k7] -> [k7,k2,0,0,0,0,0]
    for (k2, k7) in [(1, 1), (3, 5), (0, 1), (1, 0)] {
        let k = [0, k2, 0, 0, 0, 0, k7];
        let fam = Family::LongA1F4 { r: 1, k, field: f8.clone() };
        let got = conj_action(&fam, &Conjugator::N(ix(&[1, 2, 4, 2])), &c.v26, &f8).unwrap();
        let want = vec![k7, k2, 0, 0, 0, 0, 0];
        if got != ConjResult::Coeffs(want.clone()) {
            ok = false;
            println!("n_1242 partial row mismatch at k={k:?}: {got:?}");
        }
    }
    report(10, "conjugation tables reproduced by matrix conjugation and peeling", ok, t, 60);
}

// Criterion 11 is implemented faithfully as stated and is expected to fail:
// the claim contradicts Steinberg projectivity. With r and s of opposite
// parity, the two 4-dimensional composition factors of V26 restricted to the
// L2(4) = A5 specialization are copies of the Steinberg module of SL2(F4)
// (dimension 4 = the Sylow-2 order, a defect-zero block), which is projective
// and therefore always a direct summand. The computation below exhibits the
// split explicitly (the summand decomposition is certified by an explicit
// block-diagonalizing change of basis), and exhaustive scans over every
// coefficient tuple in GF(2)^6 and GF(4)^6 of the published shape, in both
// twist parities, find no indecomposable restriction. The indecomposability
// assertion can only hold for the algebraic subgroup, where the twists do not
// collapse; the finite specialization named by the criterion splits.
#[test]
fn criterion_11_indecomposability() {
    let t = Instant::now();
    let c = ctx();
    // X_k with k = [1,0,1,1,1,0] and twists r=1, s=2 (r != s mod 2);
    // the criterion asserts the L2(4) specialization acts indecomposably
    let f4f = gf(2, 2);
    let fam = Family::A1A1P24 { r: 1, s: 2, k: [1, 0, 1, 1, 1, 0], field: f4f.clone() };
    let gens = build_complement(&fam, &c.v26, &f4f).unwrap();
    let verdict = check_a1_relations(&gens, &c.v26);
    assert!(verdict.pass, "the family words must satisfy the rank-one relations");
    let report26 = restriction_report(&gens, &c.v26, &[], modax::DEFAULT_SEED).unwrap();
    let ok = report26.dim == 26 && report26.indecomposable;
    if !ok {
        println!(
            "criterion 11 analysis: V26 | L2(4)-specialization decomposes as {:?};",
            report26.summands
        );
        println!(
            "  the 4-dimensional summands are the (projective, defect-zero) Steinberg"
        );
        println!(
            "  module of SL2(F4), which must split off whenever it is a composition"
        );
        println!(
            "  factor; with r != s (mod 2) the tensor factor 1^[r] (x) 1^[s] restricts"
        );
        println!(
            "  to exactly that module, so no coefficient tuple can act indecomposably."
        );
    }
    report(11, "V26 restricted to the L2(4) specialization of X_[1,0,1,1,1,0] is indecomposable", ok, t, 60);
}

#[test]
fn criterion_12_property_suites() {
    let t = Instant::now();
    let mut ok = true;
    // field axioms, exhaustive to GF(81)
    for (p, kk) in [(2u32, 6u32), (3, 4), (5, 2), (7, 2)] {
        for k in 1..=kk {
            let f = gf(p, k);
            if f.order() > 81 {
                continue;
            }
            let q = f.order();
            for a in 0..q {
                ok &= f.add(a, f.neg(a)) == 0;
                if a != 0 {
                    ok &= f.mul(a, f.inv(a)) == 1;
                }
                for b in 0..q {
                    ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                    for cc in 0..q {
                        ok &= f.mul(a, f.add(b, cc)) == f.add(f.mul(a, b), f.mul(a, cc));
                        ok &= f.add(f.add(a, b), cc) == f.add(a, f.add(b, cc));
                        ok &= f.mul(f.mul(a, b), cc) == f.mul(a, f.mul(b, cc));
                    }
                }
            }
        }
    }
    // Ext^1 symmetry over all lambda, mu <= 200 for p in {2, 3, 5}
    for p in [2u32, 3, 5] {
        for l in 0..=200u64 {
            for m in 0..=200u64 {
                ok &= sl2coh::ext1_dim(l, m, p) == sl2coh::ext1_dim(m, l, p);
            }
        }
    }
    // H^1 twist behavior for r <= 10 at p=2: zero untwisted, K for r > 0
    ok &= sl2coh::h1_simple(1, 2) == 0;
    for r in 1..=10u32 {
        ok &= sl2coh::h1_simple(1 << r, 2) == 1;
    }
    // subsystem closure, exhaustive for F4 and G2
    for label in ["F4", "G2"] {
        let sys = RootSystem::build(label).unwrap();
        for s in sys.enumerate_subsystems().unwrap() {
            let set: std::collections::HashSet<usize> = s.all_roots.iter().copied().collect();
            for &a in &s.all_roots {
                for &b in &s.all_roots {
                    if let Some(c) = sys.root_sum(a, b) {
                        ok &= set.contains(&c);
                    }
                }
            }
        }
    }
    report(12, "property suites: field axioms, Ext symmetry, twist behavior, subsystem closure", ok, t, 120);
}
