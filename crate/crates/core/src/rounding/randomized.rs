//! The four-step randomized rounding of an equality-variant LP solution.

use rand::seq::index::sample;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::instance::{Assignment, QapInstance};
use crate::lp::LpSolution;
use crate::matching::{max_weight_perfect_matching, CostMatrix};
use crate::seed::{derive_seed, sub_rng};

const TAG_HALVES: u64 = 0x4a1f;
const TAG_PICK: u64 = 0x4a20;
const TAG_COLLISION: u64 = 0x4a21;
const TAG_BEST_OF: u64 = 0x4a22;

/// Largest tolerated deviation of an `x` row or column sum from 1.
pub const MARGINAL_TOLERANCE: f64 = 1e-6;

pub(crate) fn check_square(inst: &QapInstance, sol: &LpSolution) -> Result<()> {
    if !inst.is_square() {
        return Err(Error::SizeMismatch(
            "rounding needs a square instance; pad G first".into(),
        ));
    }
    if sol.n() != inst.n_g() {
        return Err(Error::SizeMismatch(format!(
            "solution has n = {} but the instance has n = {}",
            sol.n(),
            inst.n_g()
        )));
    }
    Ok(())
}

fn check_marginals(sol: &LpSolution) -> Result<()> {
    let n = sol.n();
    for u in 0..n {
        let row: f64 = (0..n).map(|p| sol.x(u, p)).sum();
        let col: f64 = (0..n).map(|p| sol.x(p, u)).sum();
        for (what, s) in [("row", row), ("column", col)] {
            if (s - 1.0).abs() > MARGINAL_TOLERANCE {
                return Err(Error::Invalid(format!(
                    "x {what} {u} sums to {s}; randomized rounding needs an equality-variant solution"
                )));
            }
        }
    }
    Ok(())
}

/// Intermediate state of one rounding run, kept for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedRun {
    pub l_g: Vec<usize>,
    pub l_h: Vec<usize>,
    /// Image chosen for each vertex of `L_G` before collisions, if any.
    pub proposals: Vec<(usize, Option<usize>)>,
    /// Collision survivors `u ↦ φ(u)`, by increasing `u`.
    pub phi: Vec<(usize, usize)>,
    pub assignment: Assignment,
}

pub fn randomized_round(inst: &QapInstance, sol: &LpSolution, seed: u64) -> Result<Assignment> {
    Ok(randomized_round_traced(inst, sol, seed)?.assignment)
}

pub fn randomized_round_traced(
    inst: &QapInstance,
    sol: &LpSolution,
    seed: u64,
) -> Result<RandomizedRun> {
    check_square(inst, sol)?;
    check_marginals(sol)?;
    let n = inst.n_g();
    let half = n / 2;

    let mut rng = sub_rng(seed, TAG_HALVES, &[]);
    let mut l_g = sample(&mut rng, n, half).into_vec();
    let mut l_h = sample(&mut rng, n, half).into_vec();
    l_g.sort_unstable();
    l_h.sort_unstable();
    let mut in_lg = vec![false; n];
    let mut in_lh = vec![false; n];
    l_g.iter().for_each(|&u| in_lg[u] = true);
    l_h.iter().for_each(|&p| in_lh[p] = true);

    let proposals: Vec<(usize, Option<usize>)> = l_g
        .iter()
        .map(|&u| {
            let r: f64 = sub_rng(seed, TAG_PICK, &[u as u64]).gen();
            let mut acc = 0.0;
            let pick = l_h.iter().copied().find(|&p| {
                acc += sol.x(u, p);
                r < acc
            });
            (u, pick)
        })
        .collect();

    let mut phi: Vec<(usize, usize)> = Vec::new();
    for &p in &l_h {
        let colliders: Vec<usize> = proposals
            .iter()
            .filter(|(_, q)| *q == Some(p))
            .map(|&(u, _)| u)
            .collect();
        if !colliders.is_empty() {
            let k = sub_rng(seed, TAG_COLLISION, &[p as u64]).gen_range(0..colliders.len());
            phi.push((colliders[k], p));
        }
    }
    phi.sort_unstable();

    let r_g: Vec<usize> = (0..n).filter(|&v| !in_lg[v]).collect();
    let r_h: Vec<usize> = (0..n).filter(|&q| !in_lh[q]).collect();
    let (g, h) = (inst.g(), inst.h());
    let cost = CostMatrix::from_fn(r_g.len(), r_h.len(), |i, j| {
        phi.iter()
            .map(|&(u, p)| g.weight(u, r_g[i]) * h.weight(p, r_h[j]))
            .sum()
    })?;
    let psi = max_weight_perfect_matching(&cost)?;

    let mut map = vec![usize::MAX; n];
    let mut used_h = vec![false; n];
    for &(u, p) in &phi {
        map[u] = p;
        used_h[p] = true;
    }
    for (i, &v) in r_g.iter().enumerate() {
        map[v] = r_h[psi[i]];
    }
    let mut spare = l_h.iter().copied().filter(|&p| !used_h[p]);
    for &u in &l_g {
        if map[u] == usize::MAX {
            map[u] = spare.next().expect("|L_G| = |L_H|");
        }
    }
    let assignment = Assignment::evaluate(inst, map)?;
    Ok(RandomizedRun {
        l_g,
        l_h,
        proposals,
        phi,
        assignment,
    })
}

/// Seed of the `i`-th run of a best-of-k batch.
pub fn round_seed(seed: u64, i: usize) -> u64 {
    derive_seed(seed, TAG_BEST_OF, &[i as u64])
}

/// Best of `k` independent runs; ties keep the earliest run. Returns the
/// winning assignment and its run index.
pub fn best_of_k(
    inst: &QapInstance,
    sol: &LpSolution,
    seed: u64,
    k: usize,
) -> Result<(Assignment, usize)> {
    if k == 0 {
        return Err(Error::Invalid("best-of-k needs k ≥ 1".into()));
    }
    let mut best: Option<(Assignment, usize)> = None;
    for i in 0..k {
        let a = randomized_round(inst, sol, round_seed(seed, i))?;
        if best.as_ref().is_none_or(|(b, _)| a.value > b.value) {
            best = Some((a, i));
        }
    }
    Ok(best.expect("k ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_instance, WeightLaw, WeightedGraph};
    use crate::lp::{solve_instance, Variant};

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::from_rows(vec![vec![3.0]]).unwrap();
        let h = WeightedGraph::from_rows(vec![vec![2.0]]).unwrap();
        let inst = QapInstance::weighted(g, h).unwrap();
        let sol = solve_instance(&inst, Variant::Equality).unwrap();
        let a = randomized_round(&inst, &sol, 0).unwrap();
        assert_eq!(a.map, vec![0]);
        assert_eq!(a.value, 6.0);
    }

    #[test]
    fn point_mass_is_followed() {
        let inst = random_instance(6, WeightLaw::Integer(3), 2).unwrap();
        let perm = [3, 0, 5, 1, 4, 2];
        let sol = LpSolution::from_permutation(&inst, &perm).unwrap();
        let mut hits = 0;
        for seed in 0..200 {
            let run = randomized_round_traced(&inst, &sol, seed).unwrap();
            let image: Vec<usize> = run.l_g.iter().map(|&u| perm[u]).collect();
            if image.iter().all(|p| run.l_h.contains(p)) {
                hits += 1;
                for &u in &run.l_g {
                    assert_eq!(run.assignment.map[u], perm[u]);
                }
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn rejects_inequality_style_marginals() {
        let inst = random_instance(3, WeightLaw::Uniform01, 1).unwrap();
        let sol = LpSolution::from_permutation(&inst, &[0, 1, 2]).unwrap();
        let partial = sol.restrict(&inst, &[0, 1], &[0, 1]);
        assert!(randomized_round(&inst, &partial, 0).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let inst = random_instance(5, WeightLaw::Uniform01, 4).unwrap();
        let sol = solve_instance(&inst, Variant::Equality).unwrap();
        assert_eq!(
            randomized_round(&inst, &sol, 17).unwrap(),
            randomized_round(&inst, &sol, 17).unwrap()
        );
        let (best, _) = best_of_k(&inst, &sol, 17, 8).unwrap();
        let single = randomized_round(&inst, &sol, round_seed(17, 0)).unwrap();
        assert!(best.value >= single.value);
    }
}
