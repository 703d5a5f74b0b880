use proptest::prelude::*;

use maxqap::instance::{value_qap, QapInstance, WeightedGraph};
use maxqap::labelcover::{canonical_map, reduce_to_qap, LabelCoverInstance, Labeling};
use maxqap::lp::{solve_instance, LpSolution, Variant};
use maxqap::matching::{
    decompose_fractional_matching, max_weight_perfect_matching, CostMatrix, FractionalMatching,
};
use maxqap::oracle::{brute_force_opt, integrality_gap};
use maxqap::rounding::{
    certified_bound, derandomized_round, greedy_max_cut, greedy_max_dicut, randomized_round,
    vol_lp, Digraph,
};

fn symmetric(n: usize, max: u32) -> impl Strategy<Value = WeightedGraph> {
    prop::collection::vec(0..=max, n * (n - 1) / 2).prop_map(move |upper| {
        let mut it = upper.into_iter();
        let mut w = vec![0.0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let x = it.next().unwrap() as f64;
                w[u * n + v] = x;
                w[v * n + u] = x;
            }
        }
        WeightedGraph::from_flat(n, w).unwrap()
    })
}

fn instance(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = QapInstance> {
    n.prop_flat_map(|n| (symmetric(n, 4), symmetric(n, 4)))
        .prop_map(|(g, h)| QapInstance::weighted(g, h).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn instance_and_map() -> impl Strategy<Value = (QapInstance, Vec<usize>)> {
    instance(1..=7).prop_flat_map(|inst| {
        let n = inst.n_g();
        (Just(inst), permutation(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn value_matches_direct_double_sum((inst, map) in instance_and_map()) {
        let n = inst.n_g();
        let mut direct = 0.0;
        for u in 0..n {
            for v in 0..n {
                direct += inst.g().weight(u, v) * inst.h().weight(map[u], map[v]);
            }
        }
        prop_assert_eq!(value_qap(&inst, &map).unwrap(), direct);
    }

    #[test]
    fn swapping_roles_inverts_the_map((inst, map) in instance_and_map()) {
        let mut inverse = vec![0; map.len()];
        for (u, &p) in map.iter().enumerate() {
            inverse[p] = u;
        }
        let swapped = inst.swapped().unwrap();
        prop_assert_eq!(value_qap(&inst, &map).unwrap(), value_qap(&swapped, &inverse).unwrap());
    }

    #[test]
    fn scaling_g_scales_the_value((inst, map) in instance_and_map(), c in 0u32..5) {
        let scaled = QapInstance::weighted(inst.g().scaled(c as f64).unwrap(), inst.h().clone()).unwrap();
        prop_assert_eq!(value_qap(&scaled, &map).unwrap(), c as f64 * value_qap(&inst, &map).unwrap());
    }

    #[test]
    fn relabeling_h_turns_the_map_into_the_identity((inst, map) in instance_and_map()) {
        let relabeled = QapInstance::weighted(inst.g().clone(), inst.h().permuted(&map)).unwrap();
        let identity: Vec<usize> = (0..map.len()).collect();
        prop_assert_eq!(value_qap(&relabeled, &identity).unwrap(), value_qap(&inst, &map).unwrap());
    }

    #[test]
    fn integral_solution_volume_is_twice_the_value((inst, map) in instance_and_map(), split in any::<u64>()) {
        let sol = LpSolution::from_permutation(&inst, &map).unwrap();
        let value = value_qap(&inst, &map).unwrap();
        prop_assert!((sol.objective() - value).abs() < 1e-9);
        let n = inst.n_g();
        let side = |i: usize| split >> (i % 64) & 1 == 1;
        let (s1, s2): (Vec<usize>, Vec<usize>) = (0..n).partition(|&u| side(u));
        let (t1, t2): (Vec<usize>, Vec<usize>) = (0..n).partition(|&p| side(p + 7));
        let total = vol_lp(&sol, &inst, &s1, &t1) + vol_lp(&sol, &inst, &s2, &t2);
        prop_assert!((total - 2.0 * value).abs() < 1e-9);
    }

    #[test]
    fn greedy_cut_bounds(g in (1usize..=12).prop_flat_map(|n| symmetric(n, 9)),
                         arcs in (1usize..=12).prop_flat_map(|n| (Just(n), prop::collection::vec(0u32..10, n * n)))) {
        let cut = greedy_max_cut(&g);
        prop_assert!(2.0 * cut.cut_value >= g.total_edge_weight());
        let (n, w) = arcs;
        let d = Digraph::from_fn(n, |p, q| if p == q { 0.0 } else { w[p * n + q] as f64 }).unwrap();
        let dicut = greedy_max_dicut(&d);
        prop_assert!(4.0 * dicut.cut_value >= d.total_weight());
        prop_assert_eq!(dicut.left.len() + dicut.right.len(), n);
    }

    #[test]
    fn hungarian_beats_any_permutation(n in 1usize..=7, entries in prop::collection::vec(-20i32..=20, 49), perm_seed in any::<u64>()) {
        let c = CostMatrix::from_fn(n, n, |i, j| entries[i * 7 + j] as f64).unwrap();
        let best = max_weight_perfect_matching(&c).unwrap();
        let mut other: Vec<usize> = (0..n).collect();
        other.rotate_left((perm_seed % n as u64) as usize);
        prop_assert!(c.permutation_value(&best) >= c.permutation_value(&other));
    }

    #[test]
    fn decomposition_reconstructs(rows in 1usize..=5, cols in 1usize..=5,
                                  raw in prop::collection::vec(prop_oneof![Just(0u32), 1u32..100], 25)) {
        let mut z: Vec<f64> = (0..rows * cols).map(|i| raw[i] as f64).collect();
        let peak = (0..rows).map(|i| z[i * cols..(i + 1) * cols].iter().sum::<f64>())
            .chain((0..cols).map(|j| (0..rows).map(|i| z[i * cols + j]).sum::<f64>()))
            .fold(0.0, f64::max);
        if peak > 0.0 {
            z.iter_mut().for_each(|x| *x /= peak);
        }
        let fm = FractionalMatching::new(rows, cols, z.clone()).unwrap();
        let d = decompose_fractional_matching(&fm);
        prop_assert!(d.terms.len() <= fm.support_size().max(1));
        prop_assert!(d.total_weight() <= 1.0 + 1e-9);
        let back = d.reconstruct(rows, cols);
        for i in 0..rows * cols {
            prop_assert!((back[i] - z[i]).abs() <= 1e-9);
        }
        for (w, m) in &d.terms {
            prop_assert!(*w > 0.0);
            let mut used = vec![false; cols];
            for (i, j) in m.iter().enumerate() {
                if let Some(j) = *j {
                    prop_assert!(z[i * cols + j] > 0.0);
                    prop_assert!(!used[j]);
                    used[j] = true;
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_dominates_and_lp_bounds(inst in instance(1..=5), seed in any::<u64>()) {
        let opt = brute_force_opt(&inst).unwrap();
        prop_assert_eq!(opt.opt_value, value_qap(&inst, &opt.opt_map).unwrap());
        let sol = solve_instance(&inst, Variant::Equality).unwrap();
        prop_assert!(sol.objective() >= opt.opt_value - 1e-6);
        let r = randomized_round(&inst, &sol, seed).unwrap();
        let d = derandomized_round(&inst, &sol).unwrap();
        prop_assert!(r.value <= opt.opt_value + 1e-9);
        prop_assert!(d.value <= opt.opt_value + 1e-9);
        prop_assert!(d.value >= certified_bound(sol.objective(), inst.n_g()) - 1e-9);
        prop_assert!(integrality_gap(&inst).unwrap().gap >= 1.0 - 1e-6);
    }

    #[test]
    fn canonical_value_counts_satisfied_edge_sets(
        seed in any::<u64>(),
        lambda in prop::collection::vec(0usize..2, 3),
        rel in prop::collection::vec(prop::collection::vec((0usize..2, 0usize..2), 0..4), 3),
        cloud in 1usize..=3,
    ) {
        let lc = LabelCoverInstance::new(3, 2, vec![(0, 1), (1, 2), (0, 2)], rel).unwrap();
        let out = reduce_to_qap(&lc, Some(cloud), Some(0.5), seed).unwrap();
        let lab = Labeling { lambda };
        let a = canonical_map(&out, &lab).unwrap();
        let mut sorted = a.map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), a.map.len());
        let expected: usize = lc.satisfied(&lab.lambda).iter().map(|&e| out.edge_sets[e].len()).sum();
        prop_assert_eq!(a.value, expected as f64);
        prop_assert_eq!(reduce_to_qap(&lc, Some(cloud), Some(0.5), seed).unwrap(), out);
    }
}
