//! Quantities the rounding analysis is phrased in: the heavy/light split of
//! `G`'s edges, the star decomposition by heaviest LP partner, and LP volume.

use serde::Serialize;

use crate::instance::QapInstance;
use crate::lp::LpSolution;

/// `⌈√n⌉` computed in integers.
pub fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// `P[u][v] = Σ_{p,q} w_G(u,v) w_H(p,q) y_upvq`, the LP mass on the ordered
/// `G`-pair `(u, v)`. Symmetric because `y` is.
pub fn pair_mass(inst: &QapInstance, sol: &LpSolution) -> Vec<f64> {
    let n = sol.n();
    let (g, h) = (inst.g(), inst.h());
    let mut m = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            let wg = g.weight(u, v);
            if wg == 0.0 {
                continue;
            }
            let mut s = 0.0;
            for p in 0..n {
                for q in 0..n {
                    let wh = h.weight(p, q);
                    if wh != 0.0 {
                        s += wh * sol.y(u, p, v, q);
                    }
                }
            }
            m[u * n + v] = wg * s;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeavyLightSplit {
    /// `W_u`: the `⌈√n⌉` vertices with the largest `w_G(u, ·)`, `u` itself
    /// eligible, ties to the lower index. Sorted ascending.
    pub heavy_sets: Vec<Vec<usize>>,
    /// LP mass on pairs `(u, v)` with `v ∈ W_u`.
    pub lp_heavy: f64,
    /// LP mass on the remaining pairs.
    pub lp_light: f64,
}

impl HeavyLightSplit {
    pub fn light_dominates(&self) -> bool {
        self.lp_light >= self.lp_heavy
    }
}

pub fn heavy_sets(inst: &QapInstance) -> Vec<Vec<usize>> {
    let g = inst.g();
    let n = g.n();
    let k = ceil_sqrt(n).min(n);
    (0..n)
        .map(|u| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| g.weight(u, b).total_cmp(&g.weight(u, a)).then(a.cmp(&b)));
            let mut w = order[..k].to_vec();
            w.sort_unstable();
            w
        })
        .collect()
}

pub fn heavy_light_split(inst: &QapInstance, sol: &LpSolution) -> HeavyLightSplit {
    let n = sol.n();
    let heavy_sets = heavy_sets(inst);
    let mass = pair_mass(inst, sol);
    let (mut lp_heavy, mut lp_light) = (0.0, 0.0);
    for u in 0..n {
        let mut in_w = vec![false; n];
        heavy_sets[u].iter().for_each(|&v| in_w[v] = true);
        for v in 0..n {
            if in_w[v] {
                lp_heavy += mass[u * n + v];
            } else {
                lp_light += mass[u * n + v];
            }
        }
    }
    HeavyLightSplit {
        heavy_sets,
        lp_heavy,
        lp_light,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarDecomposition {
    /// `l(v)`: the `u` maximizing `P[u][v]`, lowest index on ties.
    pub center_of: Vec<usize>,
    /// `(u, R_u)` with `R_u = {v ∈ r_g : l(v) = u}`, for every `u` whose
    /// `R_u` is nonempty, by increasing `u`.
    pub stars: Vec<(usize, Vec<usize>)>,
}

pub fn build_stars(inst: &QapInstance, sol: &LpSolution, r_g: &[usize]) -> StarDecomposition {
    let n = sol.n();
    let mass = pair_mass(inst, sol);
    let center_of: Vec<usize> = (0..n)
        .map(|v| {
            let mut best = 0;
            for u in 1..n {
                if mass[u * n + v] > mass[best * n + v] {
                    best = u;
                }
            }
            best
        })
        .collect();
    let mut leaves: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sorted = r_g.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for v in sorted {
        leaves[center_of[v]].push(v);
    }
    let stars = leaves
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .collect();
    StarDecomposition { center_of, stars }
}

/// Per-vertex LP mass: `a[u] = Σ_{v,p,q} w_G(u,v) w_H(p,q) y_upvq` and
/// `b[p] = Σ_{u,v,q} w_G(u,v) w_H(p,q) y_upvq`. Each sums to `LP*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeProfile {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl VolumeProfile {
    pub fn new(inst: &QapInstance, sol: &LpSolution) -> Self {
        let n = sol.n();
        let m = sol.couple_mass(inst);
        let a = (0..n).map(|u| m[u * n..(u + 1) * n].iter().sum()).collect();
        let b = (0..n).map(|p| (0..n).map(|u| m[u * n + p]).sum()).collect();
        VolumeProfile { a, b }
    }

    pub fn vol(&self, s: &[usize], t: &[usize]) -> f64 {
        s.iter().map(|&u| self.a[u]).sum::<f64>() + t.iter().map(|&p| self.b[p]).sum::<f64>()
    }
}

/// `vol_LP(S, T)`: LP mass touching `S` through its first `G` index plus mass
/// touching `T` through its first `H` index.
pub fn vol_lp(sol: &LpSolution, inst: &QapInstance, s: &[usize], t: &[usize]) -> f64 {
    VolumeProfile::new(inst, sol).vol(s, t)
}
