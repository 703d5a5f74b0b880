//! Dense revised simplex for `max cᵀx, Ax (≤|=|≥) b, x ≥ 0`.
//!
//! The basis inverse is kept explicitly and updated in product form, with a
//! full Gauss-Jordan re-inversion every `refactor_every` pivots. Phase one
//! drives artificial variables to zero, or is skipped entirely when a feasible
//! vertex is supplied. Artificials still basic at zero afterwards are never
//! priced again and leave the basis on the first pivot that touches their row.
//!
//! Optimality is certified at the end: the primal point is re-checked against
//! the original rows and the dual prices against every column, and the
//! duality gap is reported.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub kind: RowKind,
    pub rhs: f64,
}

/// A maximization problem over nonnegative variables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, kind: RowKind, rhs: f64) {
        self.rows.push(Row { coeffs, kind, rhs });
    }

    /// Largest violation of any row or sign constraint at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = x.iter().fold(0.0f64, |m, &v| m.max(-v));
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            let viol = match row.kind {
                RowKind::Le => lhs - row.rhs,
                RowKind::Ge => row.rhs - lhs,
                RowKind::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(viol);
        }
        worst
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// Entering-variable rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pricing {
    /// Lowest-index improving column on every pivot.
    Bland,
    /// Most positive reduced cost; switches to Bland's rule after a run of
    /// degenerate pivots and back after the next non-degenerate one.
    DantzigWithBlandFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub pricing: Pricing,
    /// Absolute feasibility and optimality tolerance of the certificate.
    pub tolerance: f64,
    /// `None` picks a limit proportional to the problem size.
    pub max_iterations: Option<usize>,
    pub refactor_every: usize,
    /// Consecutive degenerate pivots before Bland's rule takes over.
    pub degenerate_run: usize,
    /// Scale of the right-hand-side perturbation applied before phase two;
    /// `0.0` disables it.
    pub perturbation: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            pricing: Pricing::DantzigWithBlandFallback,
            tolerance: 1e-7,
            max_iterations: None,
            refactor_every: 1000,
            degenerate_run: 50,
            perturbation: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Dual prices, one per row of the input problem.
    pub duals: Vec<f64>,
    pub iterations: usize,
    pub max_primal_violation: f64,
    /// Largest positive reduced cost at the returned basis.
    pub max_dual_violation: f64,
    /// `|cᵀx − bᵀπ|`.
    pub duality_gap: f64,
}

const PIVOT_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<'a> {
    lp: &'a LinearProgram,
    m: usize,
    cols: Vec<Vec<(usize, f64)>>,
    kind: Vec<ColKind>,
    /// +1 or -1: rows with negative rhs are negated on entry.
    row_sign: Vec<f64>,
    b: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    pivots_since_refactor: usize,
    iterations: usize,
    max_iterations: usize,
    opts: SimplexOptions,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram, opts: SimplexOptions) -> Result<Self> {
        let m = lp.rows.len();
        let nv = lp.num_vars;
        if lp.objective.len() != nv {
            return Err(Error::Invalid(format!(
                "objective has {} coefficients for {nv} variables",
                lp.objective.len()
            )));
        }
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
        let mut kind = vec![ColKind::Structural; nv];
        let mut row_sign = vec![1.0; m];
        let mut b = vec![0.0; m];
        let mut basis = vec![0usize; m];
        for (i, row) in lp.rows.iter().enumerate() {
            let sign = if row.rhs < 0.0 { -1.0 } else { 1.0 };
            row_sign[i] = sign;
            b[i] = sign * row.rhs;
            for &(j, a) in &row.coeffs {
                if j >= nv {
                    return Err(Error::IndexOutOfRange { index: j, bound: nv });
                }
                if a != 0.0 {
                    cols[j].push((i, sign * a));
                }
            }
            let eff = match (row.kind, sign < 0.0) {
                (RowKind::Eq, _) => RowKind::Eq,
                (RowKind::Le, false) | (RowKind::Ge, true) => RowKind::Le,
                (RowKind::Ge, false) | (RowKind::Le, true) => RowKind::Ge,
            };
            match eff {
                RowKind::Le => {
                    basis[i] = cols.len();
                    cols.push(vec![(i, 1.0)]);
                    kind.push(ColKind::Slack);
                }
                RowKind::Ge => {
                    cols.push(vec![(i, -1.0)]);
                    kind.push(ColKind::Slack);
                    basis[i] = cols.len();
                    cols.push(vec![(i, 1.0)]);
                    kind.push(ColKind::Artificial);
                }
                RowKind::Eq => {
                    basis[i] = cols.len();
                    cols.push(vec![(i, 1.0)]);
                    kind.push(ColKind::Artificial);
                }
            }
        }
        // Merge duplicate (row, col) entries so pricing sees one coefficient.
        for col in cols.iter_mut().take(nv) {
            col.sort_by_key(|&(r, _)| r);
            col.dedup_by(|next, prev| {
                if next.0 == prev.0 {
                    prev.1 += next.1;
                    true
                } else {
                    false
                }
            });
            col.retain(|&(_, a)| a != 0.0);
        }
        let mut in_basis = vec![false; cols.len()];
        for &j in &basis {
            in_basis[j] = true;
        }
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        let max_iterations = opts
            .max_iterations
            .unwrap_or_else(|| 50 * (cols.len() + m) + 1000);
        Ok(Tableau {
            lp,
            m,
            xb: b.clone(),
            cols,
            kind,
            row_sign,
            b,
            basis,
            in_basis,
            binv,
            pivots_since_refactor: 0,
            iterations: 0,
            max_iterations,
            opts,
        })
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut pi = vec![0.0; m];
        for i in 0..m {
            let c = cost[self.basis[i]];
            if c != 0.0 {
                let row = &self.binv[i * m..(i + 1) * m];
                for (p, &r) in pi.iter_mut().zip(row) {
                    *p += c * r;
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, cost: &[f64], pi: &[f64], j: usize) -> f64 {
        cost[j] - self.cols[j].iter().map(|&(r, a)| pi[r] * a).sum::<f64>()
    }

    fn column(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut col = vec![0.0; m];
        for &(r, a) in &self.cols[j] {
            for (i, c) in col.iter_mut().enumerate() {
                let v = self.binv[i * m + r];
                if v != 0.0 {
                    *c += v * a;
                }
            }
        }
        col
    }

    fn pivot(&mut self, r: usize, j: usize, col: &[f64], theta: f64) {
        let m = self.m;
        for (i, x) in self.xb.iter_mut().enumerate() {
            if i != r {
                *x -= theta * col[i];
                if x.abs() < ZERO_TOL {
                    *x = 0.0;
                }
            }
        }
        self.xb[r] = theta;
        let p = col[r];
        let pivot_row: Vec<f64> = self.binv[r * m..(r + 1) * m].iter().map(|v| v / p).collect();
        for i in 0..m {
            if i == r || col[i] == 0.0 {
                continue;
            }
            let f = col[i];
            let row = &mut self.binv[i * m..(i + 1) * m];
            for (x, &pr) in row.iter_mut().zip(&pivot_row) {
                if pr != 0.0 {
                    *x -= f * pr;
                }
            }
        }
        self.binv[r * m..(r + 1) * m].copy_from_slice(&pivot_row);
        self.in_basis[self.basis[r]] = false;
        self.in_basis[j] = true;
        self.basis[r] = j;
        self.pivots_since_refactor += 1;
        self.iterations += 1;
    }

    /// Rebuild `B⁻¹` from scratch and recompute the basic values.
    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for (i, &j) in self.basis.iter().enumerate() {
            for &(r, v) in &self.cols[j] {
                a[r * m + i] = v;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let piv = (c..m)
                .max_by(|&x, &y| a[x * m + c].abs().total_cmp(&a[y * m + c].abs()))
                .unwrap_or(c);
            if a[piv * m + c].abs() < 1e-13 {
                return Err(Error::Internal("singular basis during refactorization".into()));
            }
            if piv != c {
                for k in 0..m {
                    a.swap(piv * m + k, c * m + k);
                    inv.swap(piv * m + k, c * m + k);
                }
            }
            let p = a[c * m + c];
            for k in 0..m {
                a[c * m + k] /= p;
                inv[c * m + k] /= p;
            }
            for i in 0..m {
                if i == c {
                    continue;
                }
                let f = a[i * m + c];
                if f == 0.0 {
                    continue;
                }
                for k in 0..m {
                    a[i * m + k] -= f * a[c * m + k];
                    inv[i * m + k] -= f * inv[c * m + k];
                }
            }
        }
        self.binv = inv;
        for i in 0..m {
            let row = &self.binv[i * m..(i + 1) * m];
            let v: f64 = row.iter().zip(&self.b).map(|(x, y)| x * y).sum();
            self.xb[i] = if v.abs() < ZERO_TOL { 0.0 } else { v };
        }
        self.pivots_since_refactor = 0;
        Ok(())
    }

    /// Run simplex iterations for `cost` until optimal.
    fn optimize(&mut self, cost: &[f64], allow_artificial: bool) -> Result<()> {
        let tol = self.opts.tolerance * 1e-2;
        let mut degenerate_streak = 0usize;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(Error::IterationLimit(self.max_iterations));
            }
            if self.pivots_since_refactor >= self.opts.refactor_every {
                self.refactor()?;
            }
            let pi = self.duals(cost);
            let bland = match self.opts.pricing {
                Pricing::Bland => true,
                Pricing::DantzigWithBlandFallback => degenerate_streak >= self.opts.degenerate_run,
            };
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..self.cols.len() {
                if self.in_basis[j] || (!allow_artificial && self.kind[j] == ColKind::Artificial) {
                    continue;
                }
                let d = self.reduced_cost(cost, &pi, j);
                if d > tol {
                    if bland {
                        entering = Some((j, d));
                        break;
                    }
                    if entering.is_none_or(|(_, best)| d > best) {
                        entering = Some((j, d));
                    }
                }
            }
            let Some((j, _)) = entering else {
                return Ok(());
            };
            let col = self.column(j);
            // A zero-level artificial must leave before it can move off zero.
            let mut leave: Option<(usize, f64)> = if allow_artificial {
                None
            } else {
                (0..self.m)
                    .find(|&i| {
                        self.kind[self.basis[i]] == ColKind::Artificial && col[i].abs() > PIVOT_TOL
                    })
                    .map(|i| (i, 0.0))
            };
            if leave.is_none() {
                for i in 0..self.m {
                    if col[i] > PIVOT_TOL {
                        let ratio = self.xb[i].max(0.0) / col[i];
                        let better = match leave {
                            None => true,
                            Some((r, best)) => {
                                ratio < best - ZERO_TOL
                                    || (ratio <= best + ZERO_TOL && self.basis[i] < self.basis[r])
                            }
                        };
                        if better {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
            let Some((r, theta)) = leave else {
                return Err(Error::Unbounded);
            };
            if theta <= ZERO_TOL {
                degenerate_streak += 1;
            } else {
                degenerate_streak = 0;
            }
            self.pivot(r, j, &col, theta);
        }
    }

    /// Replace the slack/artificial basis by one containing the support of
    /// a feasible point `start`. Returns `false` when the support columns
    /// are linearly dependent (the point is not a vertex).
    fn crash(&mut self, start: &[f64]) -> Result<bool> {
        let m = self.m;
        let nv = self.lp.num_vars;
        if start.len() != nv {
            return Err(Error::SizeMismatch(format!(
                "start point has {} entries for {nv} variables",
                start.len()
            )));
        }
        // Residual of each (sign-adjusted) row; positive residuals need their
        // slack or surplus in the basis.
        let mut resid = self.b.clone();
        for j in 0..nv {
            if start[j] != 0.0 {
                for &(r, a) in &self.cols[j] {
                    resid[r] -= a * start[j];
                }
            }
        }
        let mut candidates: Vec<usize> = (0..nv).filter(|&j| start[j] > ZERO_TOL).collect();
        let mut unit_for_row: Vec<Option<usize>> = vec![None; m];
        for j in nv..self.cols.len() {
            let (r, a) = self.cols[j][0];
            match self.kind[j] {
                ColKind::Slack => {
                    // Slack (+1) on Le rows, surplus (−1) on Ge rows.
                    if resid[r] * a > ZERO_TOL {
                        candidates.push(j);
                    } else if a > 0.0 {
                        unit_for_row[r] = Some(j);
                    }
                }
                ColKind::Artificial => {
                    if unit_for_row[r].is_none() {
                        unit_for_row[r] = Some(j);
                    }
                }
                ColKind::Structural => {}
            }
        }
        if candidates.len() > m {
            return Ok(false);
        }
        // Row selection by elimination with partial pivoting.
        let k = candidates.len();
        let mut dense = vec![0.0; m * k];
        for (c, &j) in candidates.iter().enumerate() {
            for &(r, a) in &self.cols[j] {
                dense[r * k + c] = a;
            }
        }
        let mut row_used = vec![false; m];
        for c in 0..k {
            let piv = (0..m)
                .filter(|&r| !row_used[r])
                .max_by(|&x, &y| dense[x * k + c].abs().total_cmp(&dense[y * k + c].abs()));
            let Some(piv) = piv else { return Ok(false) };
            let p = dense[piv * k + c];
            if p.abs() < 1e-9 {
                return Ok(false);
            }
            row_used[piv] = true;
            for r in 0..m {
                if r == piv || dense[r * k + c] == 0.0 {
                    continue;
                }
                let f = dense[r * k + c] / p;
                for cc in c..k {
                    dense[r * k + cc] -= f * dense[piv * k + cc];
                }
            }
        }
        let mut basis = candidates;
        for r in 0..m {
            if !row_used[r] {
                match unit_for_row[r] {
                    Some(j) => basis.push(j),
                    None => return Ok(false),
                }
            }
        }
        let old = std::mem::replace(&mut self.basis, basis);
        self.in_basis.iter_mut().for_each(|b| *b = false);
        for &j in &self.basis {
            self.in_basis[j] = true;
        }
        if self.refactor().is_err() || self.xb.iter().any(|&v| v < -1e-9) {
            self.basis = old;
            self.in_basis.iter_mut().for_each(|b| *b = false);
            for &j in &self.basis {
                self.in_basis[j] = true;
            }
            self.refactor()?;
            return Ok(false);
        }
        for v in self.xb.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(true)
    }

    /// Shift every non-artificial basic variable up by a small pseudo-random
    /// amount and move the right-hand side with it (`b ← b + B·ε`), which
    /// keeps the rows consistent while breaking ties between vertices.
    fn perturb(&mut self) {
        let m = self.m;
        let mut eps = vec![0.0; m];
        for (i, e) in eps.iter_mut().enumerate() {
            if self.kind[self.basis[i]] != ColKind::Artificial {
                let h = crate::seed::derive_seed(0x5eed, 0x9e7, &[i as u64]);
                *e = self.opts.perturbation * (1.0 + (h >> 11) as f64 / (1u64 << 53) as f64);
            }
        }
        for (i, &e) in eps.iter().enumerate() {
            if e == 0.0 {
                continue;
            }
            self.xb[i] += e;
            for &(r, a) in &self.cols[self.basis[i]] {
                self.b[r] += a * e;
            }
        }
    }

    /// Restore the true right-hand side on the current basis.
    fn unperturb(&mut self, b: Vec<f64>) -> Result<()> {
        self.b = b;
        self.refactor()
    }

    /// Dual simplex: from a dual-feasible basis, pivot out negative basics.
    fn dual_repair(&mut self, cost: &[f64]) -> Result<()> {
        let m = self.m;
        let feas = self.opts.tolerance * 1e-3;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(Error::IterationLimit(self.max_iterations));
            }
            let leave = (0..m)
                .filter(|&i| self.xb[i] < -feas)
                .min_by(|&a, &b| self.xb[a].total_cmp(&self.xb[b]).then(a.cmp(&b)));
            let Some(r) = leave else {
                for v in self.xb.iter_mut() {
                    if *v < 0.0 {
                        *v = 0.0;
                    }
                }
                return Ok(());
            };
            let pi = self.duals(cost);
            let row = self.binv[r * m..(r + 1) * m].to_vec();
            let mut enter: Option<(usize, f64)> = None;
            for j in 0..self.cols.len() {
                if self.in_basis[j] || self.kind[j] == ColKind::Artificial {
                    continue;
                }
                let alpha: f64 = self.cols[j].iter().map(|&(k, a)| row[k] * a).sum();
                if alpha < -PIVOT_TOL {
                    let d = self.reduced_cost(cost, &pi, j).min(0.0);
                    let ratio = d / alpha;
                    if enter.is_none_or(|(_, best)| ratio < best - ZERO_TOL) {
                        enter = Some((j, ratio));
                    }
                }
            }
            let Some((j, _)) = enter else {
                return Err(Error::Infeasible);
            };
            let col = self.column(j);
            let theta = self.xb[r] / col[r];
            self.pivot(r, j, &col, theta);
        }
    }

    fn primal(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.lp.num_vars];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.lp.num_vars {
                x[j] = self.xb[i].max(0.0);
            }
        }
        x
    }
}

/// Solve `lp` to a certified optimum from the slack/artificial basis.
pub fn solve(lp: &LinearProgram, opts: &SimplexOptions) -> Result<LpOutcome> {
    let mut t = Tableau::new(lp, *opts)?;
    phase_one(&mut t)?;
    finish(t)
}

/// Solve `lp` starting from a known feasible vertex `start`. Phase one is
/// skipped when the support of `start` yields a basis; otherwise this falls
/// back to [`solve`].
pub fn solve_from(lp: &LinearProgram, opts: &SimplexOptions, start: &[f64]) -> Result<LpOutcome> {
    if lp.max_violation(start) > opts.tolerance {
        return Err(Error::Invalid("start point is not feasible".into()));
    }
    let mut t = Tableau::new(lp, *opts)?;
    if !t.crash(start)? {
        log::debug!("start point support is not a basis; running phase one");
        phase_one(&mut t)?;
    }
    finish(t)
}

fn phase_one(t: &mut Tableau<'_>) -> Result<()> {
    if !t.kind.contains(&ColKind::Artificial) {
        return Ok(());
    }
    let phase1: Vec<f64> = t
        .kind
        .iter()
        .map(|&k| if k == ColKind::Artificial { -1.0 } else { 0.0 })
        .collect();
    t.optimize(&phase1, true)?;
    t.refactor()?;
    t.optimize(&phase1, true)?;
    let infeas: f64 = t
        .basis
        .iter()
        .zip(&t.xb)
        .filter(|(&j, _)| t.kind[j] == ColKind::Artificial)
        .map(|(_, &v)| v)
        .sum();
    if infeas > t.opts.tolerance {
        return Err(Error::Infeasible);
    }
    Ok(())
}

fn finish(mut t: Tableau<'_>) -> Result<LpOutcome> {
    let lp = t.lp;
    let opts = t.opts;
    let ncols = t.cols.len();
    let mut cost = vec![0.0; ncols];
    cost[..lp.num_vars].copy_from_slice(&lp.objective);
    if opts.perturbation > 0.0 {
        let b = t.b.clone();
        t.perturb();
        t.optimize(&cost, false)?;
        t.unperturb(b)?;
        t.dual_repair(&cost)?;
    }
    // Re-invert once and re-optimize so the certificate is computed on a
    // freshly factored basis.
    t.refactor()?;
    t.optimize(&cost, false)?;

    let x = t.primal();
    let max_primal_violation = lp.max_violation(&x);
    let pi = t.duals(&cost);
    let mut max_dual_violation = 0.0f64;
    for j in 0..ncols {
        if t.kind[j] == ColKind::Artificial {
            continue;
        }
        max_dual_violation = max_dual_violation.max(t.reduced_cost(&cost, &pi, j));
    }
    let duals: Vec<f64> = pi.iter().zip(&t.row_sign).map(|(p, s)| p * s).collect();
    let objective = lp.objective_value(&x);
    let dual_objective: f64 = lp.rows.iter().zip(&duals).map(|(r, p)| r.rhs * p).sum();
    let duality_gap = (objective - dual_objective).abs();
    let scale = 1.0 + objective.abs();
    if max_primal_violation > opts.tolerance
        || max_dual_violation > opts.tolerance * scale
        || duality_gap > opts.tolerance * scale
    {
        return Err(Error::Internal(format!(
            "simplex certificate failed: primal {max_primal_violation:e}, dual {max_dual_violation:e}, gap {duality_gap:e}"
        )));
    }
    Ok(LpOutcome {
        x,
        objective,
        duals,
        iterations: t.iterations,
        max_primal_violation,
        max_dual_violation,
        duality_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(pricing: Pricing) -> SimplexOptions {
        SimplexOptions {
            pricing,
            ..SimplexOptions::default()
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  →  (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![3.0, 5.0];
        lp.add_row(vec![(0, 1.0)], RowKind::Le, 4.0);
        lp.add_row(vec![(1, 2.0)], RowKind::Le, 12.0);
        lp.add_row(vec![(0, 3.0), (1, 2.0)], RowKind::Le, 18.0);
        for p in [Pricing::Bland, Pricing::DantzigWithBlandFallback] {
            let out = solve(&lp, &opts(p)).unwrap();
            assert!((out.objective - 36.0).abs() < 1e-9);
            assert!((out.x[0] - 2.0).abs() < 1e-9 && (out.x[1] - 6.0).abs() < 1e-9);
        }
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x + y, x + y = 1, x ≥ 0.25, y ≤ 0.5  →  1
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.add_row(vec![(0, 1.0), (1, 1.0)], RowKind::Eq, 1.0);
        lp.add_row(vec![(0, 1.0)], RowKind::Ge, 0.25);
        lp.add_row(vec![(1, 1.0)], RowKind::Le, 0.5);
        let out = solve(&lp, &SimplexOptions::default()).unwrap();
        assert!((out.objective - 1.0).abs() < 1e-9);
        assert!(out.x[0] >= 0.25 - 1e-9);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![2.0, 1.0];
        lp.add_row(vec![(0, 1.0), (1, 1.0)], RowKind::Eq, 1.0);
        lp.add_row(vec![(0, 2.0), (1, 2.0)], RowKind::Eq, 2.0);
        let out = solve(&lp, &SimplexOptions::default()).unwrap();
        assert!((out.objective - 2.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_rows() {
        // -x ≤ -2 means x ≥ 2; max -x  →  -2
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![-1.0];
        lp.add_row(vec![(0, -1.0)], RowKind::Le, -2.0);
        let out = solve(&lp, &SimplexOptions::default()).unwrap();
        assert!((out.objective + 2.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_detected() {
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.add_row(vec![(0, 1.0)], RowKind::Eq, 1.0);
        lp.add_row(vec![(0, 1.0)], RowKind::Eq, 2.0);
        assert_eq!(solve(&lp, &SimplexOptions::default()), Err(Error::Infeasible));
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 0.0];
        lp.add_row(vec![(0, 1.0), (1, -1.0)], RowKind::Le, 1.0);
        assert_eq!(solve(&lp, &SimplexOptions::default()), Err(Error::Unbounded));
    }

    #[test]
    fn iteration_limit_is_an_error() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![3.0, 5.0];
        lp.add_row(vec![(0, 1.0)], RowKind::Le, 4.0);
        lp.add_row(vec![(1, 2.0)], RowKind::Le, 12.0);
        lp.add_row(vec![(0, 3.0), (1, 2.0)], RowKind::Le, 18.0);
        let o = SimplexOptions {
            max_iterations: Some(1),
            ..SimplexOptions::default()
        };
        assert_eq!(solve(&lp, &o), Err(Error::IterationLimit(1)));
    }

    #[test]
    fn duals_certify_optimum() {
        let mut lp = LinearProgram::new(3);
        lp.objective = vec![2.0, 3.0, 4.0];
        lp.add_row(vec![(0, 3.0), (1, 2.0), (2, 1.0)], RowKind::Le, 10.0);
        lp.add_row(vec![(0, 2.0), (1, 5.0), (2, 3.0)], RowKind::Le, 15.0);
        let out = solve(&lp, &SimplexOptions::default()).unwrap();
        assert!(out.duality_gap < 1e-9);
        assert!(out.duals.iter().all(|&p| p >= -1e-9));
    }
}
