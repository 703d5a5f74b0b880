//! Exhaustive solvers used as ground truth on small instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{value_qap, QapInstance};
use crate::labelcover::{value_label_cover, LabelCoverInstance, Labeling};
use crate::lp::{solve_instance, Variant};
use crate::matching::CostMatrix;

/// Default cap on the number of maps or labelings an oracle will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub opt_value: f64,
    pub opt_map: Vec<usize>,
    /// Number of complete injective maps examined.
    pub enumerated: u128,
}

/// `n_h! / (n_h − n_g)!`, saturating.
pub fn injective_map_count(n_g: usize, n_h: usize) -> u128 {
    if n_g > n_h {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..n_g {
        c = c.saturating_mul((n_h - i) as u128);
    }
    c
}

pub fn brute_force_opt(inst: &QapInstance) -> Result<ExactResult> {
    brute_force_opt_with_limit(inst, ENUMERATION_LIMIT)
}

/// Exact optimum by depth-first enumeration of injective maps in
/// lexicographic order. The first optimal map in that order is returned.
pub fn brute_force_opt_with_limit(inst: &QapInstance, limit: u128) -> Result<ExactResult> {
    let (n_g, n_h) = (inst.n_g(), inst.n_h());
    let count = injective_map_count(n_g, n_h);
    if count > limit {
        return Err(Error::Guard {
            what: "injective maps",
            required: count,
            limit,
        });
    }
    let mut search = Search {
        inst,
        map: Vec::with_capacity(n_g),
        used: vec![false; n_h],
        best_value: f64::NEG_INFINITY,
        best_map: Vec::new(),
        enumerated: 0,
    };
    search.descend(0.0);
    let opt_value = value_qap(inst, &search.best_map)?;
    Ok(ExactResult {
        opt_value,
        opt_map: search.best_map,
        enumerated: search.enumerated,
    })
}

struct Search<'a> {
    inst: &'a QapInstance,
    map: Vec<usize>,
    used: Vec<bool>,
    best_value: f64,
    best_map: Vec<usize>,
    enumerated: u128,
}

impl Search<'_> {
    /// Objective gained by mapping the next vertex `u = map.len()` to `p`.
    fn gain(&self, p: usize) -> f64 {
        let (g, h) = (self.inst.g(), self.inst.h());
        let u = self.map.len();
        if self.inst.is_unweighted() {
            self.map
                .iter()
                .enumerate()
                .filter(|&(v, &q)| g.weight(u, v) != 0.0 && h.weight(p, q) != 0.0)
                .count() as f64
        } else {
            let cross: f64 = self
                .map
                .iter()
                .enumerate()
                .map(|(v, &q)| g.weight(u, v) * h.weight(p, q))
                .sum();
            g.weight(u, u) * h.weight(p, p) + 2.0 * cross
        }
    }

    fn descend(&mut self, value: f64) {
        if self.map.len() == self.inst.n_g() {
            self.enumerated += 1;
            if value > self.best_value {
                self.best_value = value;
                self.best_map = self.map.clone();
            }
            return;
        }
        for p in 0..self.inst.n_h() {
            if self.used[p] {
                continue;
            }
            let gain = self.gain(p);
            self.used[p] = true;
            self.map.push(p);
            self.descend(value + gain);
            self.map.pop();
            self.used[p] = false;
        }
    }
}

/// Exact `OPT_LC` over all `k^n` labelings, counting up in base `k` with
/// vertex 0 as the most significant digit. The first optimum is returned.
pub fn brute_force_label_cover(lc: &LabelCoverInstance) -> Result<(f64, Labeling)> {
    brute_force_label_cover_with_limit(lc, ENUMERATION_LIMIT)
}

pub fn brute_force_label_cover_with_limit(
    lc: &LabelCoverInstance,
    limit: u128,
) -> Result<(f64, Labeling)> {
    let (n, k) = (lc.n(), lc.k());
    let count = (k as u128).saturating_pow(n as u32);
    if count > limit {
        return Err(Error::Guard {
            what: "labelings",
            required: count,
            limit,
        });
    }
    let mut lambda = vec![0usize; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let satisfied = lc.satisfied_edges(&lambda);
        if best.as_ref().is_none_or(|(b, _)| satisfied > *b) {
            best = Some((satisfied, lambda.clone()));
        }
        // Next labeling in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                let (_, lambda) = best.expect("at least one labeling");
                let lab = Labeling { lambda };
                return Ok((value_label_cover(lc, &lab)?, lab));
            }
            i -= 1;
            lambda[i] += 1;
            if lambda[i] < k {
                break;
            }
            lambda[i] = 0;
        }
    }
}

/// Best perfect matching value by enumerating every injection of rows into
/// columns. Needs `rows ≤ cols`.
pub fn brute_force_assignment_value(c: &CostMatrix) -> Result<f64> {
    let count = injective_map_count(c.rows(), c.cols());
    if c.rows() > c.cols() || count > ENUMERATION_LIMIT {
        return Err(Error::Guard {
            what: "row-to-column injections",
            required: count,
            limit: ENUMERATION_LIMIT,
        });
    }
    fn go(c: &CostMatrix, i: usize, used: &mut [bool], acc: f64, best: &mut f64) {
        if i == c.rows() {
            *best = best.max(acc);
            return;
        }
        for j in 0..c.cols() {
            if !used[j] {
                used[j] = true;
                go(c, i + 1, used, acc + c.get(i, j), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::NEG_INFINITY;
    go(c, 0, &mut vec![false; c.cols()], 0.0, &mut best);
    Ok(best)
}

/// Best partial matching value: every row is either left unmatched or sent
/// to a distinct column.
pub fn brute_force_partial_matching_value(c: &CostMatrix) -> Result<f64> {
    let count = (0..=c.rows().min(c.cols())).fold(0u128, |acc, m| {
        let choose = (0..m).fold(1u128, |x, i| x * (c.rows() - i) as u128 / (i + 1) as u128);
        acc.saturating_add(choose.saturating_mul(injective_map_count(m, c.cols())))
    });
    if count > ENUMERATION_LIMIT {
        return Err(Error::Guard {
            what: "partial matchings",
            required: count,
            limit: ENUMERATION_LIMIT,
        });
    }
    fn go(c: &CostMatrix, i: usize, used: &mut [bool], acc: f64, best: &mut f64) {
        if i == c.rows() {
            *best = best.max(acc);
            return;
        }
        go(c, i + 1, used, acc, best);
        for j in 0..c.cols() {
            if !used[j] {
                used[j] = true;
                go(c, i + 1, used, acc + c.get(i, j), best);
                used[j] = false;
            }
        }
    }
    let mut best = 0.0;
    go(c, 0, &mut vec![false; c.cols()], 0.0, &mut best);
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralityGap {
    pub lp_value: f64,
    pub opt_value: f64,
    /// `LP*/OPT`; `+∞` when `OPT = 0 < LP*`; 1 when both vanish.
    pub gap: f64,
}

impl IntegralityGap {
    pub fn from_values(lp_value: f64, opt_value: f64) -> Self {
        let gap = if opt_value > 0.0 {
            lp_value / opt_value
        } else if lp_value > crate::lp::LP_TOLERANCE {
            f64::INFINITY
        } else {
            1.0
        };
        IntegralityGap {
            lp_value,
            opt_value,
            gap,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.gap.is_infinite()
    }
}

/// Equality-variant `LP*` against the brute-force optimum. For an unweighted
/// instance the LP value is halved to match the unordered-edge count.
pub fn integrality_gap(inst: &QapInstance) -> Result<IntegralityGap> {
    let exact = brute_force_opt(inst)?;
    let lp = solve_instance(inst, Variant::Equality)?;
    let lp_value = if inst.is_unweighted() {
        lp.objective() / 2.0
    } else {
        lp.objective()
    };
    Ok(IntegralityGap::from_values(lp_value, exact.opt_value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_injection, random_instance, WeightLaw, WeightedGraph};

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::from_rows(vec![vec![2.0]]).unwrap();
        let inst = QapInstance::weighted(g.clone(), g).unwrap();
        let r = brute_force_opt(&inst).unwrap();
        assert_eq!(r.opt_map, vec![0]);
        assert_eq!(r.opt_value, 4.0);
        assert_eq!(r.enumerated, 1);
    }

    #[test]
    fn counts_injective_maps() {
        let inst = QapInstance::weighted(WeightedGraph::zeros(2), WeightedGraph::zeros(4)).unwrap();
        let r = brute_force_opt(&inst).unwrap();
        assert_eq!(r.enumerated, 12);
        assert_eq!(r.opt_map, vec![0, 1]);
        assert_eq!(injective_map_count(3, 5), 60);
    }

    #[test]
    fn guard_refuses_with_the_count() {
        let inst = random_instance(11, WeightLaw::Integer(1), 0).unwrap();
        match brute_force_opt(&inst) {
            Err(Error::Guard { required, .. }) => assert_eq!(required, 39_916_800),
            other => panic!("expected a guard refusal, got {other:?}"),
        }
    }

    #[test]
    fn dominates_random_maps() {
        let inst = random_instance(5, WeightLaw::Uniform01, 21).unwrap();
        let r = brute_force_opt(&inst).unwrap();
        assert!((r.opt_value - value_qap(&inst, &r.opt_map).unwrap()).abs() < 1e-12);
        let mut rng = crate::seed::rng_from(3);
        for _ in 0..1000 {
            let m = random_injection(5, 5, &mut rng);
            assert!(value_qap(&inst, &m).unwrap() <= r.opt_value + 1e-12);
        }
    }

    #[test]
    fn unweighted_isomorphic_copy_reaches_edge_count() {
        let edges = [(0, 1), (1, 2), (2, 3), (0, 2)];
        let adj = |perm: [usize; 4]| {
            WeightedGraph::from_fn(4, |u, v| {
                let hit = edges.iter().any(|&(a, b)| {
                    (perm[a], perm[b]) == (u, v) || (perm[a], perm[b]) == (v, u)
                });
                if hit { 1.0 } else { 0.0 }
            })
            .unwrap()
        };
        let g = adj([0, 1, 2, 3]);
        let h = adj([2, 0, 3, 1]);
        let inst = QapInstance::new(g, h, true).unwrap();
        assert_eq!(brute_force_opt(&inst).unwrap().opt_value, 4.0);
        // A 4-cycle has the same edge count but is not isomorphic.
        let cycle = WeightedGraph::from_fn(4, |u, v| {
            if (u + 1) % 4 == v || (v + 1) % 4 == u { 1.0 } else { 0.0 }
        })
        .unwrap();
        let inst = QapInstance::new(adj([0, 1, 2, 3]), cycle, true).unwrap();
        assert!(brute_force_opt(&inst).unwrap().opt_value < 4.0);
    }

    #[test]
    fn label_cover_with_one_jointly_satisfiable_edge() {
        // Edge (0,1) wants equal labels, edge (1,2) wants label 1 on both, and
        // (0,2) forbids everything: the best labeling satisfies 2 of 3 edges.
        let lc = LabelCoverInstance::new(
            3,
            2,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![vec![(0, 0), (1, 1)], vec![(1, 1)], vec![]],
        )
        .unwrap();
        let (v, lab) = brute_force_label_cover(&lc).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(lab.lambda, vec![1, 1, 1]);

        // Two edges sharing vertex 1 with contradictory demands on it.
        let lc = LabelCoverInstance::new(3, 2, vec![(0, 1), (1, 2)], vec![vec![(0, 0)], vec![(1, 1)]])
            .unwrap();
        assert_eq!(brute_force_label_cover(&lc).unwrap().0, 0.5);
    }

    #[test]
    fn matching_enumerators_on_a_hand_matrix() {
        let c = CostMatrix::from_rows(&[vec![4.0, 1.0, 0.0], vec![3.0, -2.0, 5.0]]).unwrap();
        assert_eq!(brute_force_assignment_value(&c).unwrap(), 9.0);
        let neg = CostMatrix::from_rows(&[vec![-1.0, -2.0], vec![-3.0, 6.0]]).unwrap();
        assert_eq!(brute_force_partial_matching_value(&neg).unwrap(), 6.0);
        assert_eq!(brute_force_assignment_value(&neg).unwrap(), 5.0);
    }

    #[test]
    fn gap_sentinels() {
        let g = random_instance(3, WeightLaw::Integer(2), 1).unwrap().g().clone();
        let inst = QapInstance::weighted(g, WeightedGraph::zeros(3)).unwrap();
        let gap = integrality_gap(&inst).unwrap();
        assert_eq!((gap.lp_value, gap.opt_value, gap.gap), (0.0, 0.0, 1.0));
        assert!(IntegralityGap::from_values(1.0, 0.0).is_unbounded());
    }

    #[test]
    fn integral_instance_has_unit_gap() {
        let edge = |n| {
            WeightedGraph::from_fn(n, |u, v| if u + v == 1 && u != v { 1.0 } else { 0.0 }).unwrap()
        };
        let inst = QapInstance::weighted(edge(4), edge(4)).unwrap();
        let gap = integrality_gap(&inst).unwrap();
        assert!(gap.gap >= 1.0 - 1e-9 && gap.gap <= 1.0 + 1e-6, "{gap:?}");
    }
}
