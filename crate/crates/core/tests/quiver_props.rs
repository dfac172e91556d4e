mod common;

use common::*;
use hlcluster::quiver::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ade_types() -> Vec<DynkinType> {
    let mut v: Vec<DynkinType> = (1..=8).map(DynkinType::a).collect();
    v.extend((4..=8).map(DynkinType::d));
    v.extend((6..=8).map(DynkinType::e));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn mutation_is_an_involution(seed in any::<u64>(), n_mut in 1usize..=6, n_frozen in 0usize..=3, k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, n_mut, n_frozen, 3);
        let k = k % n_mut;
        let m = q.mutate(k).unwrap();
        prop_assert!(m.mutable_block_is_skew());
        prop_assert_eq!(m.mutate(k).unwrap(), q);
    }

    #[test]
    fn isomorphism_search_matches_brute_force(seed in any::<u64>(), n_mut in 1usize..=5, n_frozen in 0usize..=2, setwise in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q1 = random_quiver(&mut rng, n_mut, n_frozen, 1);
        let mut sigma: Vec<usize> = (0..n_mut).collect();
        sigma.shuffle(&mut rng);
        let mut frozen: Vec<usize> = (n_mut..n_mut + n_frozen).collect();
        if setwise {
            frozen.shuffle(&mut rng);
        }
        sigma.extend(frozen);
        let q2 = relabel(&q1, &sigma);
        let mut fast = isomorphisms(&q1, &q2, setwise);
        fast.sort();
        prop_assert_eq!(&fast, &brute_force_isomorphisms(&q1, &q2, setwise));
        prop_assert!(fast.contains(&sigma));
    }
}

#[test]
fn isomorphism_search_matches_brute_force_on_eight_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..12 {
        let (n_mut, n_frozen) = [(8, 0), (6, 2), (5, 3)][case % 3];
        let q1 = random_quiver(&mut rng, n_mut, n_frozen, 1);
        let mut sigma: Vec<usize> = (0..n_mut).collect();
        sigma.shuffle(&mut rng);
        sigma.extend(n_mut..n_mut + n_frozen);
        let q2 = relabel(&q1, &sigma);
        let mut fast = isomorphisms(&q1, &q2, true);
        fast.sort();
        assert_eq!(fast, brute_force_isomorphisms(&q1, &q2, true), "case {case}");
        // unrelated quiver
        let q3 = random_quiver(&mut rng, n_mut, n_frozen, 1);
        let mut fast = isomorphisms(&q1, &q3, true);
        fast.sort();
        assert_eq!(fast, brute_force_isomorphisms(&q1, &q3, true), "case {case}");
    }
}

#[test]
fn arrow_count_formula() {
    for t in ade_types() {
        let n = t.rank;
        let edges = n - 1;
        for l in 1..=4 {
            let arrows = hl_arrows(t, l).unwrap();
            assert_eq!(arrows.len(), (l + 1) * edges + l * edges + l * n, "{t} l={l}");
            let q = build_hl_quiver(t, l).unwrap();
            assert_eq!((q.n_mut(), q.n_frozen()), (n * l, n));
            // only the horizontal arrows among frozen vertices are dropped
            let total: i64 = q.arrows().iter().map(|a| a.mult).sum();
            assert_eq!(total as usize, arrows.len() - edges, "{t} l={l}");
        }
    }
}

#[test]
fn bipartite_orientation() {
    for t in ade_types() {
        let q = dynkin_quiver(t);
        for v in 0..q.n() {
            let out = (0..q.n()).any(|u| q.entry(v, u) > 0);
            let inc = (0..q.n()).any(|u| q.entry(v, u) < 0);
            assert!(!(out && inc), "{t}: vertex {} is neither source nor sink", v + 1);
        }
        assert_eq!(q.arrows().len(), t.rank - 1);
        // node 1 sits on the sink side
        assert!((0..q.n()).all(|u| q.entry(0, u) <= 0), "{t}");
    }
}

#[test]
fn arrow_families_match_the_rule() {
    let t = DynkinType::a(4);
    let arrows = hl_arrows(t, 1).unwrap();
    let oriented = [(2, 1), (2, 3), (4, 3)];
    for &(i, j) in &oriented {
        for k in 1..=2 {
            assert!(arrows.contains(&HlArrow { src: (i, k), dst: (j, k), family: 1 }));
        }
        assert!(arrows.contains(&HlArrow { src: (j, 1), dst: (i, 2), family: 2 }));
    }
    for i in 1..=4 {
        assert!(arrows.contains(&HlArrow { src: (i, 2), dst: (i, 1), family: 3 }));
    }
    assert_eq!(arrows.len(), 13);
}
