use hlcluster::clusterauto::{automorphism_group, matches_expr};
use hlcluster::invariants::*;
use hlcluster::quiver::*;
use hlcluster::seeds::{Seed, DEFAULT_BUDGET};
use num_bigint::BigUint;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        Just(GroupExpr::Trivial),
        Just(GroupExpr::Z),
        (1u64..6).prop_map(GroupExpr::zn),
        (1u64..6).prop_map(GroupExpr::dihedral),
        (0u64..5).prop_map(GroupExpr::sym),
        (1u64..4).prop_map(|n| GroupExpr::ga(n, Base::Q)),
        "[a-c]".prop_map(GroupExpr::named),
        "[x-z]".prop_map(GroupExpr::unknown),
    ]
}

fn expr() -> impl Strategy<Value = GroupExpr> {
    leaf().prop_recursive(4, 32, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(GroupExpr::product),
            (inner.clone(), 0u64..4).prop_map(|(b, c)| GroupExpr::power(b, c)),
            (inner.clone(), inner.clone()).prop_map(|(a, n)| GroupExpr::semidirect(a, n)),
            (inner.clone(), inner.clone(), inner).prop_map(|(l, r, o)| GroupExpr::Amalgam {
                left: Box::new(l),
                right: Box::new(r),
                over: Box::new(o),
            }),
        ]
    })
}

fn has_trivial_factor(g: &GroupExpr) -> bool {
    match g {
        GroupExpr::Product { factors } => {
            factors.len() < 2 || factors.iter().any(|f| f.is_trivial() || has_trivial_factor(f))
        }
        GroupExpr::Power { base, count } => *count < 2 || base.is_trivial() || has_trivial_factor(base),
        GroupExpr::Semidirect { actor, normal } => {
            actor.is_trivial() || normal.is_trivial() || has_trivial_factor(actor) || has_trivial_factor(normal)
        }
        GroupExpr::Amalgam { left, right, over } => {
            has_trivial_factor(left) || has_trivial_factor(right) || has_trivial_factor(over)
        }
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn simplify_is_idempotent(g in expr()) {
        let s = g.simplify();
        prop_assert_eq!(s.simplify(), s.clone());
        prop_assert!(!has_trivial_factor(&s), "{}", s);
    }

    #[test]
    fn simplify_preserves_order(g in expr()) {
        prop_assert_eq!(g.simplify().finite_order(), g.finite_order());
    }

    #[test]
    fn trivial_normal_subgroup_collapses(g in expr()) {
        prop_assert_eq!(GroupExpr::semidirect(g.clone(), GroupExpr::Trivial).simplify(), g.simplify());
        prop_assert_eq!(GroupExpr::product(vec![GroupExpr::Trivial, g.clone()]).simplify(), g.simplify());
    }

    #[test]
    fn json_round_trip(g in expr()) {
        let j = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<GroupExpr>(&j).unwrap(), g);
    }
}

fn signed_permutation_count(n: usize) -> u64 {
    // brute force over {-1,0,1}^(n x n)
    let cells = n * n;
    let mut count = 0;
    for code in 0..3u64.pow(cells as u32) {
        let mut m = vec![0i64; cells];
        let mut c = code;
        for x in m.iter_mut() {
            *x = (c % 3) as i64 - 1;
            c /= 3;
        }
        let rows_ok = (0..n).all(|i| (0..n).filter(|&j| m[i * n + j] != 0).count() == 1);
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| m[i * n + j] != 0).count() == 1);
        if rows_ok && cols_ok {
            count += 1;
        }
    }
    count
}

#[test]
fn hyperoctahedral_order_matches_enumeration() {
    for n in 1..=3 {
        assert_eq!(hyperoctahedral_order(n as u32), BigUint::from(signed_permutation_count(n)));
    }
}

#[test]
fn friedland_exceptional_dimensions() {
    let expected: [(u32, u64); 7] = [
        (2, 12),
        (4, 1152),
        (6, 103_680),
        (7, 2_903_040),
        (8, 696_729_600),
        (9, 1_393_459_200),
        (10, 8_360_755_200),
    ];
    for (n, order) in expected {
        let (got, _) = max_finite_subgroup_order(n);
        assert_eq!(got, BigUint::from(order));
        assert!(got > hyperoctahedral_order(n), "n = {n}");
    }
    for n in [1, 3, 5, 11, 12] {
        assert_eq!(max_finite_subgroup_order(n).0, hyperoctahedral_order(n));
    }
}

#[test]
fn polynomial_part_cells() {
    for (family, ranks) in [("A", 1..=5), ("D", 4..=6), ("E", 6..=8)] {
        for rank in ranks {
            let t = DynkinType::parse(family, rank).unwrap();
            for l in 1..=3 {
                let r = invariant_report(t, l).unwrap();
                let n = (rank * (l + 1)) as u64;
                assert_eq!(r.pic_com_a.value, GroupExpr::Trivial);
                assert_eq!(r.aut_a.value, GroupExpr::ga(n, Base::Q));
                assert_eq!(r.pic_a.value, GroupExpr::ga(n, Base::Q));
                assert_eq!(r.k0_a.value, GroupExpr::Z);
                assert_eq!(r.k0_tensor_square.value, GroupExpr::Z);
                assert_eq!(r.structural_notes.len(), usize::from(n == 2));
                for note in r.notes() {
                    assert!(!note.ends_with(": "), "{note}");
                }
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    for (t, l) in [(DynkinType::a(1), 1), (DynkinType::a(3), 1), (DynkinType::a(1), 4), (DynkinType::d(4), 2)] {
        let a = serde_json::to_string(&invariant_report(t, l).unwrap()).unwrap();
        let b = serde_json::to_string(&invariant_report(t, l).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn principal_part_group_matches_computation() {
    // mutable part of the level-l quiver of A1, enumerated directly
    for l in 1..=3 {
        let report = invariant_report(DynkinType::a(1), l).unwrap();
        let seed = Seed::initial(build_hl_quiver(DynkinType::a(1), l).unwrap()).specialize();
        let (group, _) = automorphism_group(&seed, DEFAULT_BUDGET).unwrap();
        assert!(matches_expr(&group, &report.aut_cl_aex.value), "l = {l}");
    }
    for n in 1..=3 {
        let report = invariant_report(DynkinType::a(n), 1).unwrap();
        let seed = Seed::initial(build_hl_quiver(DynkinType::a(n), 1).unwrap()).specialize();
        let (group, _) = automorphism_group(&seed, DEFAULT_BUDGET).unwrap();
        assert!(matches_expr(&group, &report.aut_cl_aex.value), "A{n}");
    }
}

#[test]
fn relations_never_get_a_fabricated_value() {
    use hlcluster::exactalg::{LaurentPoly, VarSet};
    let vars = VarSet::new(["u", "v", "w"]).unwrap();
    let rel = LaurentPoly::parse("u*v*w - u - v - 1", &vars).unwrap();
    for base in [Base::Q, Base::Z] {
        let r = RingDescriptor::quotient(base, 3, vec![rel.clone()]);
        assert!(pic_com(&r).value.is_unknown());
        assert!(aut(&r).value.is_unknown());
        assert!(r.tensor_square().is_none());
        assert!(matches!(pic_bimodule(&r).value, GroupExpr::Semidirect { .. }));
    }
}
