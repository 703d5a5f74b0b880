//! Bipartite matching kernels: maximum-weight perfect and partial matchings,
//! and decomposition of a fractional matching into integral ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries of a fractional matching at or below this are treated as zero.
const SUPPORT_EPS: f64 = 1e-12;

/// Slack allowed on the row and column sums of a fractional matching.
pub const SUBSTOCHASTIC_TOLERANCE: f64 = 1e-7;

/// A dense `rows × cols` matrix of finite reals. Negative entries are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    c: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, c: Vec<f64>) -> Result<Self> {
        if c.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{rows}×{cols} cost matrix needs {} entries, got {}",
                rows * cols,
                c.len()
            )));
        }
        if let Some(i) = c.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: i / cols.max(1),
                col: i % cols.max(1),
            });
        }
        Ok(CostMatrix { rows, cols, c })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged cost matrix".into()));
        }
        CostMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut c = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                c.push(f(i, j));
            }
        }
        CostMatrix::new(rows, cols, c)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[i * self.cols + j]
    }

    /// Total cost of a (partial) row → column assignment.
    pub fn value_of(&self, map: &[Option<usize>]) -> f64 {
        map.iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|j| self.get(i, j)))
            .sum()
    }

    pub fn permutation_value(&self, perm: &[usize]) -> f64 {
        perm.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }
}

/// Minimum-cost assignment of every row of an `n × m` matrix (`n ≤ m`) to a
/// distinct column, by shortest augmenting paths with potentials. Returns the
/// column of each row. Ties go to the lowest column index.
fn hungarian_min(n: usize, m: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    debug_assert!(n <= m);
    // 1-based arrays; index 0 is the virtual root.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=m {
        if p[j] != 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

/// Permutation `π` maximizing `Σ c[i][π(i)]`.
pub fn max_weight_perfect_matching(c: &CostMatrix) -> Result<Vec<usize>> {
    if c.rows != c.cols {
        return Err(Error::SizeMismatch(format!(
            "perfect matching needs a square matrix, got {}×{}",
            c.rows, c.cols
        )));
    }
    Ok(hungarian_min(c.rows, c.cols, |i, j| -c.get(i, j)))
}

/// Injective partial map maximizing total cost; an unmatched row contributes
/// zero, so no returned pair has nonpositive cost.
pub fn max_weight_partial_matching(c: &CostMatrix) -> Vec<Option<usize>> {
    let m = c.rows.max(c.cols);
    let clamped = |i: usize, j: usize| {
        if i < c.rows && j < c.cols {
            c.get(i, j).max(0.0)
        } else {
            0.0
        }
    };
    let assign = hungarian_min(m, m, |i, j| -clamped(i, j));
    (0..c.rows)
        .map(|i| {
            let j = assign[i];
            (j < c.cols && c.get(i, j) > 0.0).then_some(j)
        })
        .collect()
}

/// A doubly substochastic `rows × cols` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalMatching {
    rows: usize,
    cols: usize,
    z: Vec<f64>,
}

impl FractionalMatching {
    pub fn new(rows: usize, cols: usize, z: Vec<f64>) -> Result<Self> {
        if z.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{rows}×{cols} fractional matching needs {} entries, got {}",
                rows * cols,
                z.len()
            )));
        }
        for (i, &v) in z.iter().enumerate() {
            let (row, col) = (i / cols, i % cols);
            if !v.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
            if v < -SUBSTOCHASTIC_TOLERANCE {
                return Err(Error::NegativeWeight { row, col, value: v });
            }
        }
        let z: Vec<f64> = z.into_iter().map(|v| v.max(0.0)).collect();
        for i in 0..rows {
            let s: f64 = z[i * cols..(i + 1) * cols].iter().sum();
            if s > 1.0 + SUBSTOCHASTIC_TOLERANCE {
                return Err(Error::Invalid(format!("row {i} of z sums to {s}")));
            }
        }
        for j in 0..cols {
            let s: f64 = (0..rows).map(|i| z[i * cols + j]).sum();
            if s > 1.0 + SUBSTOCHASTIC_TOLERANCE {
                return Err(Error::Invalid(format!("column {j} of z sums to {s}")));
            }
        }
        Ok(FractionalMatching { rows, cols, z })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged fractional matching".into()));
        }
        FractionalMatching::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.z[i * self.cols + j]
    }

    pub fn support_size(&self) -> usize {
        self.z.iter().filter(|&&v| v > SUPPORT_EPS).count()
    }
}

/// A convex combination of integral partial matchings. Weight not covered by
/// `terms` belongs to the empty matching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub terms: Vec<(f64, Vec<Option<usize>>)>,
}

impl Decomposition {
    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|(w, _)| w).sum()
    }

    /// `Σ_k w_k · M_k` as a dense matrix.
    pub fn reconstruct(&self, rows: usize, cols: usize) -> Vec<f64> {
        let mut z = vec![0.0; rows * cols];
        for (w, m) in &self.terms {
            for (i, j) in m.iter().enumerate() {
                if let Some(j) = j {
                    z[i * cols + j] += w;
                }
            }
        }
        z
    }

    /// Draw one matching with probability equal to its weight; `None` is the
    /// empty matching.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Option<&[Option<usize>]> {
        let mut r: f64 = rng.gen();
        for (w, m) in &self.terms {
            if r < *w {
                return Some(m);
            }
            r -= w;
        }
        None
    }
}

/// Perfect matching on the support of a square matrix by augmenting paths,
/// scanning columns in index order.
fn support_perfect_matching(s: usize, m: &[f64]) -> Option<Vec<usize>> {
    fn augment(
        i: usize,
        s: usize,
        m: &[f64],
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..s {
            if m[i * s + j] > SUPPORT_EPS && !seen[j] {
                seen[j] = true;
                if col_owner[j].is_none_or(|k| augment(k, s, m, seen, col_owner)) {
                    col_owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut col_owner = vec![None; s];
    for i in 0..s {
        let mut seen = vec![false; s];
        if !augment(i, s, m, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut row_to_col = vec![0; s];
    for (j, owner) in col_owner.iter().enumerate() {
        row_to_col[owner.expect("perfect matching covers every column")] = j;
    }
    Some(row_to_col)
}

/// Express `z` as a convex combination of integral partial matchings whose
/// pairs all lie in the support of `z`. Deterministic; at most `nnz(z)` terms.
///
/// `z` is embedded in the doubly stochastic `(r+c)×(r+c)` matrix
/// `[[Z, diag(1−rowsum)], [diag(1−colsum), Zᵀ]]`, which is peeled into
/// permutation matrices; each permutation restricted to the `Z` block is a
/// partial matching of `z`.
pub fn decompose_fractional_matching(z: &FractionalMatching) -> Decomposition {
    let (r, c) = (z.rows, z.cols);
    let s = r + c;
    let mut m = vec![0.0; s * s];
    for i in 0..r {
        let mut row_sum = 0.0;
        for j in 0..c {
            let v = z.get(i, j);
            if v > SUPPORT_EPS {
                m[i * s + j] = v;
                m[(r + j) * s + c + i] = v;
                row_sum += v;
            }
        }
        m[i * s + c + i] = (1.0 - row_sum).max(0.0);
    }
    for j in 0..c {
        let col_sum: f64 = (0..r).map(|i| m[i * s + j]).sum();
        m[(r + j) * s + j] = (1.0 - col_sum).max(0.0);
    }

    let mut terms: Vec<(f64, Vec<Option<usize>>)> = Vec::new();
    let mut remaining = 1.0;
    while remaining > SUPPORT_EPS {
        let Some(perm) = support_perfect_matching(s, &m) else {
            break;
        };
        let theta = (0..s).map(|i| m[i * s + perm[i]]).fold(f64::INFINITY, f64::min);
        for (i, &j) in perm.iter().enumerate() {
            let e = &mut m[i * s + j];
            *e -= theta;
            if *e <= SUPPORT_EPS {
                *e = 0.0;
            }
        }
        remaining -= theta;
        let partial: Vec<Option<usize>> = perm[..r].iter().map(|&j| (j < c).then_some(j)).collect();
        if partial.iter().all(Option::is_none) {
            continue;
        }
        match terms.iter_mut().find(|(_, p)| *p == partial) {
            Some((w, _)) => *w += theta,
            None => terms.push((theta, partial)),
        }
    }
    reduce_terms(z, &mut terms);
    Decomposition { terms }
}

/// Conic Carathéodory step: while there are more matchings than support
/// cells, move along a null-space direction of the matching vectors until a
/// weight hits zero. The direction is oriented so total weight never grows.
fn reduce_terms(z: &FractionalMatching, terms: &mut Vec<(f64, Vec<Option<usize>>)>) {
    let cells: Vec<(usize, usize)> = (0..z.rows)
        .flat_map(|i| (0..z.cols).map(move |j| (i, j)))
        .filter(|&(i, j)| z.get(i, j) > SUPPORT_EPS)
        .collect();
    let d = cells.len();
    while terms.len() > d {
        let k = terms.len();
        // d × k incidence matrix.
        let mut a: Vec<Vec<f64>> = cells
            .iter()
            .map(|&(i, j)| {
                terms
                    .iter()
                    .map(|(_, p)| if p[i] == Some(j) { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        let mut lambda = null_vector(&mut a, k);
        if lambda.iter().sum::<f64>() < 0.0 {
            lambda.iter_mut().for_each(|l| *l = -*l);
        }
        let mut best: Option<(usize, f64)> = None;
        for (idx, &l) in lambda.iter().enumerate() {
            if l > 1e-12 {
                let t = terms[idx].0 / l;
                if best.is_none_or(|(_, bt)| t < bt) {
                    best = Some((idx, t));
                }
            }
        }
        let Some((hit, t)) = best else {
            break;
        };
        for (idx, &l) in lambda.iter().enumerate() {
            terms[idx].0 -= t * l;
        }
        terms[hit].0 = 0.0;
        terms.retain(|(w, _)| *w > SUPPORT_EPS);
    }
}

/// A nonzero vector in the null space of a `rows × k` matrix with `k > rows`.
fn null_vector(a: &mut [Vec<f64>], k: usize) -> Vec<f64> {
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| a[i][col].abs() > 1e-9)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
        else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][col];
        a[r].iter_mut().for_each(|v| *v /= pv);
        for i in 0..rows {
            if i != r && a[i][col] != 0.0 {
                let f = a[i][col];
                for j in 0..k {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let free = (0..k)
        .find(|c| !pivot_cols.contains(c))
        .expect("more columns than rows leaves a free column");
    let mut lambda = vec![0.0; k];
    lambda[free] = 1.0;
    for (row, &pc) in pivot_cols.iter().enumerate() {
        lambda[pc] = -a[row][free];
    }
    lambda
}

/// Decompose `z` and draw one matching from the decomposition.
pub fn sample_fractional_matching(z: &FractionalMatching, seed: u64) -> Vec<Option<usize>> {
    let mut rng = crate::seed::sub_rng(seed, 0xdec0, &[]);
    let decomposition = decompose_fractional_matching(z);
    match decomposition.sample(&mut rng) {
        Some(m) => m.to_vec(),
        None => vec![None; z.rows],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_perfect() {
        let c = CostMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 5.0]]).unwrap();
        let p = max_weight_perfect_matching(&c).unwrap();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(c.permutation_value(&p), 6.0);
    }

    #[test]
    fn zero_matrix_perfect() {
        let c = CostMatrix::new(4, 4, vec![0.0; 16]).unwrap();
        let p = max_weight_perfect_matching(&c).unwrap();
        assert_eq!(c.permutation_value(&p), 0.0);
        let mut sorted = p.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn non_square_rejected() {
        let c = CostMatrix::new(2, 3, vec![0.0; 6]).unwrap();
        assert!(max_weight_perfect_matching(&c).is_err());
    }

    #[test]
    fn partial_examples() {
        let c = CostMatrix::from_rows(&[vec![-1.0]]).unwrap();
        assert_eq!(max_weight_partial_matching(&c), vec![None]);
        let c = CostMatrix::from_rows(&[vec![5.0, -2.0], vec![-2.0, 5.0]]).unwrap();
        let m = max_weight_partial_matching(&c);
        assert_eq!(m, vec![Some(0), Some(1)]);
        assert_eq!(c.value_of(&m), 10.0);
    }

    #[test]
    fn partial_rectangular_both_ways() {
        let tall = CostMatrix::from_rows(&[vec![1.0], vec![4.0], vec![2.0]]).unwrap();
        assert_eq!(max_weight_partial_matching(&tall), vec![None, Some(0), None]);
        let wide = CostMatrix::from_rows(&[vec![1.0, 4.0, -2.0]]).unwrap();
        assert_eq!(max_weight_partial_matching(&wide), vec![Some(1)]);
    }

    #[test]
    fn integral_z_is_a_single_term() {
        let z = FractionalMatching::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let d = decompose_fractional_matching(&z);
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].0, 1.0);
        assert_eq!(d.terms[0].1, vec![Some(1), None, Some(0)]);
    }

    #[test]
    fn uniform_two_by_two() {
        let z = FractionalMatching::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let d = decompose_fractional_matching(&z);
        assert_eq!(d.terms.len(), 2);
        for (w, m) in &d.terms {
            assert!((w - 0.5).abs() < 1e-12);
            assert!(m.iter().all(Option::is_some));
        }
        let back = d.reconstruct(2, 2);
        assert!(back.iter().all(|v| (v - 0.5).abs() < 1e-12));
    }

    #[test]
    fn residual_weight_goes_to_the_empty_matching() {
        let z = FractionalMatching::from_rows(&[vec![0.25, 0.0], vec![0.0, 0.25]]).unwrap();
        let d = decompose_fractional_matching(&z);
        assert!((d.total_weight() - 0.25).abs() < 1e-12);
        assert!(d.terms.len() <= z.support_size());
    }

    #[test]
    fn rejects_overfull_rows() {
        assert!(FractionalMatching::from_rows(&[vec![0.7, 0.4]]).is_err());
        assert!(FractionalMatching::from_rows(&[vec![0.7], vec![0.4]]).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let z = FractionalMatching::from_rows(&[vec![0.3, 0.6], vec![0.5, 0.2]]).unwrap();
        assert_eq!(sample_fractional_matching(&z, 9), sample_fractional_matching(&z, 9));
    }
}
