//! Greedy cut heuristics: the one-pass MAX CUT rule and its directed variant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutPartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Undirected: weight between the sides. Directed: weight from `left`
    /// to `right`.
    pub cut_value: f64,
}

impl CutPartition {
    /// Side membership: `true` for `left`.
    pub fn sides(&self, n: usize) -> Vec<bool> {
        let mut s = vec![false; n];
        self.left.iter().for_each(|&v| s[v] = true);
        s
    }
}

/// Nonnegative directed weights `w[p][q]` on `n` vertices. Loops are ignored
/// by every cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    w: Vec<f64>,
}

impl Digraph {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut w = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let x = f(p, q);
                if !x.is_finite() {
                    return Err(Error::NonFinite { row: p, col: q });
                }
                if x < 0.0 {
                    return Err(Error::NegativeWeight {
                        row: p,
                        col: q,
                        value: x,
                    });
                }
                w.push(x);
            }
        }
        Ok(Digraph { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, p: usize, q: usize) -> f64 {
        self.w[p * self.n + q]
    }

    /// Total weight of non-loop arcs.
    pub fn total_weight(&self) -> f64 {
        let mut s = 0.0;
        for p in 0..self.n {
            for q in 0..self.n {
                if p != q {
                    s += self.weight(p, q);
                }
            }
        }
        s
    }

    /// Weight of arcs from `from` to `to`.
    pub fn weight_between(&self, from: &[usize], to: &[usize]) -> f64 {
        from.iter()
            .flat_map(|&p| to.iter().map(move |&q| (p, q)))
            .map(|(p, q)| self.weight(p, q))
            .sum()
    }
}

/// One pass in index order: `v` joins `left` iff its weight to the current
/// `right` strictly exceeds its weight to the current `left`.
fn greedy_sides(n: usize, w: impl Fn(usize, usize) -> f64) -> Vec<bool> {
    let mut left = vec![false; n];
    for v in 0..n {
        let (mut to_l, mut to_r) = (0.0, 0.0);
        for u in 0..v {
            if left[u] {
                to_l += w(u, v);
            } else {
                to_r += w(u, v);
            }
        }
        left[v] = to_r > to_l;
    }
    left
}

fn split(sides: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let left = (0..sides.len()).filter(|&v| sides[v]).collect();
    let right = (0..sides.len()).filter(|&v| !sides[v]).collect();
    (left, right)
}

pub fn greedy_max_cut(g: &WeightedGraph) -> CutPartition {
    let sides = greedy_sides(g.n(), |u, v| g.weight(u, v));
    let (left, right) = split(&sides);
    let cut_value = left
        .iter()
        .flat_map(|&u| right.iter().map(move |&v| (u, v)))
        .map(|(u, v)| g.weight(u, v))
        .sum();
    CutPartition {
        left,
        right,
        cut_value,
    }
}

/// Greedy undirected cut on `w(p,q) + w(q,p)`, then oriented: `(A, B)` if
/// strictly more weight runs `A → B`, otherwise `(B, A)`.
pub fn greedy_max_dicut(d: &Digraph) -> CutPartition {
    let sides = greedy_sides(d.n(), |p, q| d.weight(p, q) + d.weight(q, p));
    let (a, b) = split(&sides);
    let forward = d.weight_between(&a, &b);
    let backward = d.weight_between(&b, &a);
    if forward > backward {
        CutPartition {
            left: a,
            right: b,
            cut_value: forward,
        }
    } else {
        CutPartition {
            left: b,
            right: a,
            cut_value: backward,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_triangle() {
        let g = WeightedGraph::from_fn(3, |u, v| if u == v { 0.0 } else { 1.0 }).unwrap();
        let cut = greedy_max_cut(&g);
        assert_eq!(cut.left, vec![1]);
        assert_eq!(cut.right, vec![0, 2]);
        assert_eq!(cut.cut_value, 2.0);
    }

    #[test]
    fn single_edge() {
        let g = WeightedGraph::from_rows(vec![vec![0.0, 2.5], vec![2.5, 0.0]]).unwrap();
        assert_eq!(greedy_max_cut(&g).cut_value, 2.5);
    }

    #[test]
    fn single_arc() {
        let d = Digraph::from_fn(2, |p, q| if (p, q) == (1, 0) { 3.0 } else { 0.0 }).unwrap();
        let cut = greedy_max_dicut(&d);
        assert_eq!(cut.cut_value, 3.0);
        assert_eq!((cut.left, cut.right), (vec![1], vec![0]));
    }

    #[test]
    fn antiparallel_pair() {
        let d = Digraph::from_fn(2, |p, q| if p != q { 1.0 } else { 0.0 }).unwrap();
        let cut = greedy_max_dicut(&d);
        assert_eq!(cut.cut_value, 1.0);
        assert_eq!(d.total_weight(), 2.0);
    }

    #[test]
    fn loops_do_not_count() {
        let d = Digraph::from_fn(2, |p, q| if p == q { 5.0 } else { 0.0 }).unwrap();
        assert_eq!(d.total_weight(), 0.0);
        assert_eq!(greedy_max_dicut(&d).cut_value, 0.0);
    }

    #[test]
    fn negative_arcs_rejected() {
        assert!(Digraph::from_fn(2, |_, _| -1.0).is_err());
    }
}
