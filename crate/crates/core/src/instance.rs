//! Instances, assignments and the quadratic assignment objective.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

/// Symmetric nonnegative weight matrix on `n` vertices, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct WeightedGraph {
    n: usize,
    w: Vec<f64>,
}

impl WeightedGraph {
    pub fn zeros(n: usize) -> Self {
        WeightedGraph {
            n,
            w: vec![0.0; n * n],
        }
    }

    /// Build from a closure evaluated on every ordered pair; the result is
    /// validated, so `f` must itself be symmetric.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut w = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                w.push(f(u, v));
            }
        }
        Self::from_flat(n, w)
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut w = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            w.extend(row);
        }
        Self::from_flat(n, w)
    }

    pub fn from_flat(n: usize, w: Vec<f64>) -> Result<Self> {
        if w.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                w.len()
            )));
        }
        let g = WeightedGraph { n, w };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        for u in 0..self.n {
            for v in 0..self.n {
                let a = self.weight(u, v);
                if !a.is_finite() {
                    return Err(Error::NonFinite { row: u, col: v });
                }
                if a < 0.0 {
                    return Err(Error::NegativeWeight {
                        row: u,
                        col: v,
                        value: a,
                    });
                }
                let b = self.weight(v, u);
                if a != b {
                    return Err(Error::Asymmetric {
                        row: u,
                        col: v,
                        a,
                        b,
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.w[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.w[u * self.n..(u + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|u| self.row(u).to_vec()).collect()
    }

    /// Sum over unordered pairs `u < v`.
    pub fn total_edge_weight(&self) -> f64 {
        let mut s = 0.0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                s += self.weight(u, v);
            }
        }
        s
    }

    pub fn is_zero_one(&self) -> bool {
        self.w.iter().all(|&x| x == 0.0 || x == 1.0)
    }

    pub fn has_nonzero_diagonal(&self) -> bool {
        (0..self.n).any(|u| self.weight(u, u) != 0.0)
    }

    /// Same graph with `extra` isolated vertices appended.
    pub fn padded(&self, extra: usize) -> Self {
        let m = self.n + extra;
        let mut w = vec![0.0; m * m];
        for u in 0..self.n {
            w[u * m..u * m + self.n].copy_from_slice(self.row(u));
        }
        WeightedGraph { n: m, w }
    }

    /// Induced subgraph on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let m = keep.len();
        let mut w = Vec::with_capacity(m * m);
        for &u in keep {
            for &v in keep {
                w.push(self.weight(u, v));
            }
        }
        WeightedGraph { n: m, w }
    }

    /// Multiply every weight by `c >= 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::from_flat(self.n, self.w.iter().map(|x| x * c).collect())
    }

    /// Relabel vertices: vertex `u` of the result is vertex `perm[u]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.induced(perm)
    }
}

impl TryFrom<Vec<Vec<f64>>> for WeightedGraph {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<WeightedGraph> for Vec<Vec<f64>> {
    fn from(g: WeightedGraph) -> Self {
        g.rows()
    }
}

/// A MAXQAP instance `(G, H)` with `|V_G| <= |V_H|`.
///
/// In weighted mode the objective sums `w_G(u,v) w_H(φ(u),φ(v))` over all
/// ordered pairs, diagonal included. In unweighted mode (0/1 weights) it
/// counts unordered edges `u < v` of `G` that land on edges of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct QapInstance {
    g: WeightedGraph,
    h: WeightedGraph,
    unweighted: bool,
}

impl QapInstance {
    pub fn new(g: WeightedGraph, h: WeightedGraph, unweighted: bool) -> Result<Self> {
        if g.n() > h.n() {
            return Err(Error::SizeMismatch(format!(
                "|V_G| = {} exceeds |V_H| = {}",
                g.n(),
                h.n()
            )));
        }
        if unweighted && !(g.is_zero_one() && h.is_zero_one()) {
            return Err(Error::Invalid(
                "unweighted instance has weights outside {0, 1}".into(),
            ));
        }
        Ok(QapInstance { g, h, unweighted })
    }

    pub fn weighted(g: WeightedGraph, h: WeightedGraph) -> Result<Self> {
        Self::new(g, h, false)
    }

    pub fn g(&self) -> &WeightedGraph {
        &self.g
    }

    pub fn h(&self) -> &WeightedGraph {
        &self.h
    }

    pub fn n_g(&self) -> usize {
        self.g.n()
    }

    pub fn n_h(&self) -> usize {
        self.h.n()
    }

    pub fn is_unweighted(&self) -> bool {
        self.unweighted
    }

    pub fn is_square(&self) -> bool {
        self.g.n() == self.h.n()
    }

    /// Pad `G` with isolated vertices until both sides have the same size.
    /// Maps on the padded instance restrict to maps on the original by
    /// truncation, with identical value.
    pub fn padded_to_square(&self) -> QapInstance {
        QapInstance {
            g: self.g.padded(self.h.n() - self.g.n()),
            h: self.h.clone(),
            unweighted: self.unweighted,
        }
    }

    /// `(H, G)`; only valid for square instances.
    pub fn swapped(&self) -> Result<QapInstance> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("swap needs a square instance".into()));
        }
        Ok(QapInstance {
            g: self.h.clone(),
            h: self.g.clone(),
            unweighted: self.unweighted,
        })
    }

    pub fn induced(&self, keep_g: &[usize], keep_h: &[usize]) -> Result<QapInstance> {
        QapInstance::new(self.g.induced(keep_g), self.h.induced(keep_h), self.unweighted)
    }

    /// Diagonal entries are allowed but unusual; report them rather than guess.
    pub fn diagonal_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.g.has_nonzero_diagonal() {
            out.push("w_G has nonzero diagonal entries; they contribute w_G(u,u) w_H(φ(u),φ(u))".into());
        }
        if self.h.has_nonzero_diagonal() {
            out.push("w_H has nonzero diagonal entries".into());
        }
        out
    }

    pub fn validate_map(&self, map: &[usize]) -> Result<()> {
        validate_injective(map, self.n_g(), self.n_h())
    }
}

pub(crate) fn validate_injective(map: &[usize], len: usize, bound: usize) -> Result<()> {
    if map.len() != len {
        return Err(Error::MapLength {
            got: map.len(),
            expected: len,
        });
    }
    let mut owner = vec![usize::MAX; bound];
    for (u, &p) in map.iter().enumerate() {
        if p >= bound {
            return Err(Error::IndexOutOfRange { index: p, bound });
        }
        if owner[p] != usize::MAX {
            return Err(Error::NonInjective {
                first: owner[p],
                second: u,
                target: p,
            });
        }
        owner[p] = u;
    }
    Ok(())
}

/// Objective value of an injective map `V_G -> V_H`.
pub fn value_qap(inst: &QapInstance, map: &[usize]) -> Result<f64> {
    inst.validate_map(map)?;
    Ok(value_unchecked(inst, map))
}

pub(crate) fn value_unchecked(inst: &QapInstance, map: &[usize]) -> f64 {
    let (g, h) = (inst.g(), inst.h());
    let n = g.n();
    if inst.is_unweighted() {
        let mut count = 0usize;
        for u in 0..n {
            for v in u + 1..n {
                if g.weight(u, v) != 0.0 && h.weight(map[u], map[v]) != 0.0 {
                    count += 1;
                }
            }
        }
        count as f64
    } else {
        let mut s = 0.0;
        for u in 0..n {
            let hu = h.row(map[u]);
            for (v, &wg) in g.row(u).iter().enumerate() {
                if wg != 0.0 {
                    s += wg * hu[map[v]];
                }
            }
        }
        s
    }
}

/// An injective map together with its objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub map: Vec<usize>,
    pub value: f64,
}

impl Assignment {
    pub fn evaluate(inst: &QapInstance, map: Vec<usize>) -> Result<Self> {
        let value = value_qap(inst, &map)?;
        Ok(Assignment { map, value })
    }

    pub fn identity(inst: &QapInstance) -> Self {
        let map: Vec<usize> = (0..inst.n_g()).collect();
        let value = value_unchecked(inst, &map);
        Assignment { map, value }
    }
}

/// Random weight distributions for [`random_instance`]. Diagonals are always 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightLaw {
    /// Uniform in `[0, 1)`.
    Uniform01,
    /// Uniform integer in `0..=max`.
    Integer(u32),
    /// Weight 1 with probability `p`, else 0.
    Sparse(f64),
}

impl fmt::Display for WeightLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightLaw::Uniform01 => write!(f, "uniform01"),
            WeightLaw::Integer(m) => write!(f, "int{m}"),
            WeightLaw::Sparse(p) => write!(f, "sparse{p}"),
        }
    }
}

impl FromStr for WeightLaw {
    type Err = Error;

    /// Accepts `uniform01`, `int<max>` / `integer(<max>)`, `sparse<p>` / `sparse(<p>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |prefix: &str| -> Option<&str> {
            s.strip_prefix(prefix)
                .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
        };
        if s == "uniform01" || s == "uniform" {
            return Ok(WeightLaw::Uniform01);
        }
        if let Some(a) = arg("integer").or_else(|| arg("int")) {
            let m = a
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad integer law '{s}'")))?;
            return Ok(WeightLaw::Integer(m));
        }
        if let Some(a) = arg("sparse") {
            let p = a
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad sparse law '{s}'")))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Parse(format!("sparse probability {p} not in [0,1]")));
            }
            return Ok(WeightLaw::Sparse(p));
        }
        Err(Error::Parse(format!("unknown weight law '{s}'")))
    }
}

fn random_graph(n: usize, law: WeightLaw, rng: &mut seed::Rng) -> WeightedGraph {
    let mut g = WeightedGraph::zeros(n);
    for u in 0..n {
        for v in u + 1..n {
            let x = match law {
                WeightLaw::Uniform01 => rng.gen::<f64>(),
                WeightLaw::Integer(m) => rng.gen_range(0..=m) as f64,
                WeightLaw::Sparse(p) => {
                    if rng.gen::<f64>() < p {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
            g.w[u * n + v] = x;
            g.w[v * n + u] = x;
        }
    }
    g
}

/// Square weighted-mode instance with both graphs drawn from `law`.
pub fn random_instance(n: usize, law: WeightLaw, seed: u64) -> Result<QapInstance> {
    if n == 0 {
        return Err(Error::Invalid("instance needs at least one vertex".into()));
    }
    let mut rng = seed::rng_from(seed::derive_seed(seed, 0x1257, &[n as u64]));
    let g = random_graph(n, law, &mut rng);
    let h = random_graph(n, law, &mut rng);
    QapInstance::weighted(g, h)
}

/// A random injective map `[len] -> [bound]`.
pub fn random_injection(len: usize, bound: usize, rng: &mut seed::Rng) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..bound).collect();
    for i in 0..len {
        let j = rng.gen_range(i..bound);
        pool.swap(i, j);
    }
    pool.truncate(len);
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> WeightedGraph {
        WeightedGraph::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    #[test]
    fn single_edge_identity_counts_both_orders() {
        let inst = QapInstance::weighted(edge(), edge()).unwrap();
        assert_eq!(value_qap(&inst, &[0, 1]).unwrap(), 2.0);
    }

    #[test]
    fn unweighted_counts_unordered_edges() {
        let inst = QapInstance::new(edge(), edge(), true).unwrap();
        assert_eq!(value_qap(&inst, &[1, 0]).unwrap(), 1.0);
    }

    #[test]
    fn zero_h_annihilates() {
        let inst = random_instance(5, WeightLaw::Integer(3), 2).unwrap();
        let inst = QapInstance::weighted(inst.g().clone(), WeightedGraph::zeros(5)).unwrap();
        assert_eq!(value_qap(&inst, &[4, 2, 0, 1, 3]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_maps() {
        let inst = QapInstance::weighted(edge(), edge()).unwrap();
        assert!(matches!(
            value_qap(&inst, &[1, 1]),
            Err(Error::NonInjective { .. })
        ));
        assert!(matches!(
            value_qap(&inst, &[0, 2]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(value_qap(&inst, &[0]), Err(Error::MapLength { .. })));
    }

    #[test]
    fn rejects_asymmetric_and_negative() {
        assert!(matches!(
            WeightedGraph::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(Error::Asymmetric { .. })
        ));
        assert!(matches!(
            WeightedGraph::from_rows(vec![vec![-1.0]]),
            Err(Error::NegativeWeight { .. })
        ));
    }

    #[test]
    fn g_larger_than_h_rejected() {
        assert!(QapInstance::weighted(WeightedGraph::zeros(3), WeightedGraph::zeros(2)).is_err());
    }

    #[test]
    fn single_vertex_instance() {
        let inst = random_instance(1, WeightLaw::Uniform01, 9).unwrap();
        let v = value_qap(&inst, &[0]).unwrap();
        assert_eq!(v, inst.g().weight(0, 0) * inst.h().weight(0, 0));
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_instance(4, WeightLaw::Integer(3), 7).unwrap();
        let b = random_instance(4, WeightLaw::Integer(3), 7).unwrap();
        assert_eq!(a, b);
        let c = random_instance(4, WeightLaw::Integer(3), 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sparse_generator_is_symmetric() {
        let inst = random_instance(6, WeightLaw::Sparse(0.5), 1).unwrap();
        for g in [inst.g(), inst.h()] {
            for u in 0..6 {
                for v in 0..6 {
                    assert_eq!(g.weight(u, v), g.weight(v, u));
                }
            }
        }
    }

    #[test]
    fn weight_law_parsing() {
        assert_eq!("uniform01".parse::<WeightLaw>().unwrap(), WeightLaw::Uniform01);
        assert_eq!("int3".parse::<WeightLaw>().unwrap(), WeightLaw::Integer(3));
        assert_eq!("integer(5)".parse::<WeightLaw>().unwrap(), WeightLaw::Integer(5));
        assert_eq!("sparse(0.5)".parse::<WeightLaw>().unwrap(), WeightLaw::Sparse(0.5));
        assert!("sparse2".parse::<WeightLaw>().is_err());
        assert!("gauss".parse::<WeightLaw>().is_err());
    }

    #[test]
    fn padding_preserves_values() {
        let inst = QapInstance::weighted(edge(), random_instance(4, WeightLaw::Integer(3), 3).unwrap().h().clone()).unwrap();
        let padded = inst.padded_to_square();
        assert_eq!(padded.n_g(), 4);
        let v = value_qap(&inst, &[2, 3]).unwrap();
        let vp = value_qap(&padded, &[2, 3, 0, 1]).unwrap();
        assert_eq!(v, vp);
    }
}
