//! The Adams–Johnson linearization of MAXQAP.
//!
//! Variables are the assignment marginals `x[u][p]` and the pair variables
//! `y[u][p][v][q]`. The symmetry `y_upvq = y_vqup` is structural: only one
//! variable exists per unordered pair of `(vertex, image)` couples, keyed by
//! the lexicographically smaller couple first.
//!
//! Two variants share the row layout: [`Variant::Equality`] uses `=` in the
//! four assignment families, [`Variant::Inequality`] uses `≤`. The weaker
//! variant stays feasible after vertices are deleted from a solution.

pub mod simplex;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::QapInstance;
use simplex::{LinearProgram, RowKind, SimplexOptions};

pub use simplex::Pricing;

/// Feasibility and optimality tolerance shared by everything downstream.
pub const LP_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Equality,
    Inequality,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equality" | "eq" => Ok(Variant::Equality),
            "inequality" | "ineq" => Ok(Variant::Inequality),
            _ => Err(Error::Parse(format!("unknown LP variant '{s}'"))),
        }
    }
}

/// Index of the folded `y` variable for couples `a = u·n + p`, `b = v·n + q`.
#[inline]
pub(crate) fn fold_index(n2: usize, a: usize, b: usize) -> usize {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    // Row `lo` of the upper triangle starts at lo·n2 − lo(lo−1)/2.
    lo * n2 - lo * lo.saturating_sub(1) / 2 + (hi - lo)
}

pub(crate) fn folded_len(n: usize) -> usize {
    let n2 = n * n;
    n2 * (n2 + 1) / 2
}

/// Row family labels, in the order rows are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowFamily {
    /// `Σ_p x_up (=|≤) 1` for each `u`.
    RowSums,
    /// `Σ_u x_up (=|≤) 1` for each `p`.
    ColumnSums,
    /// `Σ_u y_upvq (=|≤) x_vq` for each `v, p, q`.
    PairOverG,
    /// `Σ_p y_upvq (=|≤) x_vq` for each `u, v, q`.
    PairOverH,
}

/// A built relaxation: the linear program plus its variable layout.
#[derive(Debug, Clone)]
pub struct AjLp {
    variant: Variant,
    n: usize,
    program: LinearProgram,
    families: Vec<(RowFamily, std::ops::Range<usize>)>,
}

impl AjLp {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn program(&self) -> &LinearProgram {
        &self.program
    }

    pub fn num_variables(&self) -> usize {
        self.program.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.program.rows.len()
    }

    pub fn families(&self) -> &[(RowFamily, std::ops::Range<usize>)] {
        &self.families
    }

    #[inline]
    pub fn x_var(&self, u: usize, p: usize) -> usize {
        u * self.n + p
    }

    #[inline]
    pub fn y_var(&self, u: usize, p: usize, v: usize, q: usize) -> usize {
        let n = self.n;
        n * n + fold_index(n * n, u * n + p, v * n + q)
    }

    /// Flatten a solution into this program's variable vector.
    pub fn flatten(&self, sol: &LpSolution) -> Result<Vec<f64>> {
        if sol.n != self.n {
            return Err(Error::SizeMismatch(format!(
                "solution has n = {}, program has n = {}",
                sol.n, self.n
            )));
        }
        let mut v = sol.x.clone();
        v.extend_from_slice(&sol.y);
        Ok(v)
    }

    /// Largest constraint violation of `sol` against this program.
    pub fn max_violation(&self, sol: &LpSolution) -> Result<f64> {
        Ok(self.program.max_violation(&self.flatten(sol)?))
    }

    /// CPLEX-style LP text (objective, constraints, bounds) for cross-checks
    /// with external solvers. Variables are `x_u_p` and `y_u_p_v_q` with
    /// `(u,p) ≤ (v,q)`.
    pub fn to_lp_text(&self) -> String {
        let n = self.n;
        let mut names = Vec::with_capacity(self.num_variables());
        for u in 0..n {
            for p in 0..n {
                names.push(format!("x_{u}_{p}"));
            }
        }
        names.resize(self.num_variables(), String::new());
        for a in 0..n * n {
            for b in a..n * n {
                let (u, p, v, q) = (a / n, a % n, b / n, b % n);
                names[self.y_var(u, p, v, q)] = format!("y_{u}_{p}_{v}_{q}");
            }
        }
        let term = |c: f64, name: &str| {
            if c >= 0.0 {
                format!(" + {c} {name}")
            } else {
                format!(" - {} {name}", -c)
            }
        };
        let mut out = String::from("\\ Adams-Johnson relaxation\nMaximize\n obj:");
        let mut any = false;
        for (j, &c) in self.program.objective.iter().enumerate() {
            if c != 0.0 {
                out.push_str(&term(c, &names[j]));
                any = true;
            }
        }
        if !any {
            out.push_str(&format!(" 0 {}", names[0]));
        }
        out.push_str("\nSubject To\n");
        for (i, row) in self.program.rows.iter().enumerate() {
            let _ = write!(out, " c{i}:");
            for &(j, a) in &row.coeffs {
                out.push_str(&term(a, &names[j]));
            }
            let op = match row.kind {
                RowKind::Le => "<=",
                RowKind::Eq => "=",
                RowKind::Ge => ">=",
            };
            let _ = writeln!(out, " {op} {}", row.rhs);
        }
        out.push_str("Bounds\n");
        for name in &names {
            let _ = writeln!(out, " 0 <= {name} <= 1");
        }
        out.push_str("End\n");
        out
    }
}

/// Build the relaxation of a square instance.
pub fn build_aj_lp(inst: &QapInstance, variant: Variant) -> Result<AjLp> {
    if !inst.is_square() {
        return Err(Error::SizeMismatch(format!(
            "relaxation needs |V_G| = |V_H|, got {} and {}; pad G first",
            inst.n_g(),
            inst.n_h()
        )));
    }
    let n = inst.n_g();
    let n2 = n * n;
    let num_vars = n2 + folded_len(n);
    let mut program = LinearProgram::new(num_vars);
    let (g, h) = (inst.g(), inst.h());
    for a in 0..n2 {
        for b in a..n2 {
            let (u, p, v, q) = (a / n, a % n, b / n, b % n);
            let c = g.weight(u, v) * h.weight(p, q);
            // Off-diagonal folded variables stand for both ordered terms.
            program.objective[n2 + fold_index(n2, a, b)] = if a == b { c } else { 2.0 * c };
        }
    }
    let kind = match variant {
        Variant::Equality => RowKind::Eq,
        Variant::Inequality => RowKind::Le,
    };
    let x = |u: usize, p: usize| u * n + p;
    let y = |u: usize, p: usize, v: usize, q: usize| n2 + fold_index(n2, u * n + p, v * n + q);
    let mut families = Vec::new();

    let start = program.rows.len();
    for u in 0..n {
        program.add_row((0..n).map(|p| (x(u, p), 1.0)).collect(), kind, 1.0);
    }
    families.push((RowFamily::RowSums, start..program.rows.len()));

    let start = program.rows.len();
    for p in 0..n {
        program.add_row((0..n).map(|u| (x(u, p), 1.0)).collect(), kind, 1.0);
    }
    families.push((RowFamily::ColumnSums, start..program.rows.len()));

    let start = program.rows.len();
    for v in 0..n {
        for p in 0..n {
            for q in 0..n {
                let mut coeffs: Vec<(usize, f64)> = (0..n).map(|u| (y(u, p, v, q), 1.0)).collect();
                coeffs.push((x(v, q), -1.0));
                program.add_row(coeffs, kind, 0.0);
            }
        }
    }
    families.push((RowFamily::PairOverG, start..program.rows.len()));

    let start = program.rows.len();
    for u in 0..n {
        for v in 0..n {
            for q in 0..n {
                let mut coeffs: Vec<(usize, f64)> = (0..n).map(|p| (y(u, p, v, q), 1.0)).collect();
                coeffs.push((x(v, q), -1.0));
                program.add_row(coeffs, kind, 0.0);
            }
        }
    }
    families.push((RowFamily::PairOverH, start..program.rows.len()));

    Ok(AjLp {
        variant,
        n,
        program,
        families,
    })
}

/// Solver bookkeeping attached to a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpCertificate {
    pub backend: LpBackend,
    pub iterations: usize,
    pub max_primal_violation: f64,
    /// Only the dense backend exposes duals.
    pub duality_gap: Option<f64>,
    pub max_dual_violation: Option<f64>,
}

/// A (possibly restricted) point of the relaxation.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    n: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    objective: f64,
    certificate: Option<LpCertificate>,
}

impl LpSolution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `LP*`, the objective value of this point.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn certificate(&self) -> Option<&LpCertificate> {
        self.certificate.as_ref()
    }

    #[inline]
    pub fn x(&self, u: usize, p: usize) -> f64 {
        self.x[u * self.n + p]
    }

    #[inline]
    pub fn y(&self, u: usize, p: usize, v: usize, q: usize) -> f64 {
        let n = self.n;
        self.y[fold_index(n * n, u * n + p, v * n + q)]
    }

    pub fn x_matrix(&self) -> Vec<Vec<f64>> {
        self.x.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    /// The integral point of an assignment: `x` a permutation matrix and
    /// `y_upvq = x_up · x_vq`.
    pub fn from_permutation(inst: &QapInstance, perm: &[usize]) -> Result<LpSolution> {
        if !inst.is_square() {
            return Err(Error::SizeMismatch("integral point needs a square instance".into()));
        }
        inst.validate_map(perm)?;
        let n = inst.n_g();
        let mut x = vec![0.0; n * n];
        let mut y = vec![0.0; folded_len(n)];
        for u in 0..n {
            x[u * n + perm[u]] = 1.0;
            for v in 0..n {
                y[fold_index(n * n, u * n + perm[u], v * n + perm[v])] = 1.0;
            }
        }
        let mut sol = LpSolution {
            n,
            x,
            y,
            objective: 0.0,
            certificate: None,
        };
        sol.objective = sol.objective_on(inst);
        Ok(sol)
    }

    /// `m[u·n + p] = Σ_{v,q} w_G(u,v) w_H(p,q) y_upvq`: the share of the
    /// objective carried by the couple `(u, p)`. Sums to the objective.
    pub fn couple_mass(&self, inst: &QapInstance) -> Vec<f64> {
        let n = self.n;
        let (g, h) = (inst.g(), inst.h());
        let mut m = vec![0.0; n * n];
        for u in 0..n {
            for p in 0..n {
                let mut s = 0.0;
                for v in 0..n {
                    let wg = g.weight(u, v);
                    if wg == 0.0 {
                        continue;
                    }
                    for q in 0..n {
                        let yv = self.y(u, p, v, q);
                        if yv != 0.0 {
                            s += wg * h.weight(p, q) * yv;
                        }
                    }
                }
                m[u * n + p] = s;
            }
        }
        m
    }

    /// Objective recomputed against the weights of `inst`.
    pub fn objective_on(&self, inst: &QapInstance) -> f64 {
        self.couple_mass(inst).iter().sum()
    }

    /// Same size, with every variable touching a vertex outside `keep_g` or
    /// `keep_h` set to zero. The result is feasible for the inequality
    /// variant whenever `self` is feasible for either variant.
    pub fn restrict(&self, inst: &QapInstance, keep_g: &[usize], keep_h: &[usize]) -> LpSolution {
        let n = self.n;
        let mut kg = vec![false; n];
        let mut kh = vec![false; n];
        keep_g.iter().for_each(|&u| kg[u] = true);
        keep_h.iter().for_each(|&p| kh[p] = true);
        let mut out = self.clone();
        out.certificate = None;
        for u in 0..n {
            for p in 0..n {
                if !(kg[u] && kh[p]) {
                    out.x[u * n + p] = 0.0;
                }
            }
        }
        for a in 0..n * n {
            for b in a..n * n {
                let (u, p, v, q) = (a / n, a % n, b / n, b % n);
                if !(kg[u] && kh[p] && kg[v] && kh[q]) {
                    out.y[fold_index(n * n, a, b)] = 0.0;
                }
            }
        }
        out.objective = out.objective_on(inst);
        out
    }

    /// Compact copy on the kept vertices, renumbered in the given order.
    /// Both lists must have the same length.
    /// Restrict to the kept vertices and renumber them `0..m` in the given
    /// order. Returns the induced instance together with the induced point,
    /// whose objective is recomputed on that instance.
    pub fn induced(
        &self,
        inst: &QapInstance,
        keep_g: &[usize],
        keep_h: &[usize],
    ) -> Result<(QapInstance, LpSolution)> {
        if keep_g.len() != keep_h.len() {
            return Err(Error::SizeMismatch(format!(
                "kept {} G-vertices but {} H-vertices",
                keep_g.len(),
                keep_h.len()
            )));
        }
        let m = keep_g.len();
        let mut x = vec![0.0; m * m];
        let mut y = vec![0.0; folded_len(m)];
        for (i, &u) in keep_g.iter().enumerate() {
            for (j, &p) in keep_h.iter().enumerate() {
                x[i * m + j] = self.x(u, p);
            }
        }
        for a in 0..m * m {
            for b in a..m * m {
                let (u, p, v, q) = (keep_g[a / m], keep_h[a % m], keep_g[b / m], keep_h[b % m]);
                y[fold_index(m * m, a, b)] = self.y(u, p, v, q);
            }
        }
        let sub = inst.induced(keep_g, keep_h)?;
        let mut sol = LpSolution {
            n: m,
            x,
            y,
            objective: 0.0,
            certificate: None,
        };
        sol.objective = sol.objective_on(&sub);
        Ok((sub, sol))
    }
}

/// Which simplex implementation solves the relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpBackend {
    /// Sparse LU simplex from the `microlp` crate. Fast enough for n ≈ 8.
    #[default]
    Sparse,
    /// The dense revised simplex in [`simplex`]. Reports duals and a duality
    /// gap, but degenerate pivoting makes it slow beyond n ≈ 5.
    Dense,
}

impl std::str::FromStr for LpBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sparse" => Ok(LpBackend::Sparse),
            "dense" => Ok(LpBackend::Dense),
            _ => Err(Error::Invalid(format!(
                "unknown LP backend '{s}' (expected sparse or dense)"
            ))),
        }
    }
}

/// Solve a built relaxation with the default backend.
pub fn solve_lp(lp: &AjLp) -> Result<LpSolution> {
    solve_lp_with(lp, LpBackend::default())
}

pub fn solve_lp_with(lp: &AjLp, backend: LpBackend) -> Result<LpSolution> {
    match backend {
        LpBackend::Sparse => solve_lp_sparse(lp),
        LpBackend::Dense => solve_lp_dense(lp, &SimplexOptions::default()),
    }
}

/// Variable vector of the integral point of the identity assignment. It is a
/// vertex of both variants and seeds the simplex basis.
fn identity_vertex(lp: &AjLp) -> Vec<f64> {
    let n = lp.n;
    let mut v = vec![0.0; lp.num_variables()];
    for u in 0..n {
        v[lp.x_var(u, u)] = 1.0;
        for w in 0..n {
            v[lp.y_var(u, u, w, w)] = 1.0;
        }
    }
    v
}

fn infeasible_is_a_bug(e: Error) -> Error {
    match e {
        Error::Infeasible => Error::Internal(
            "relaxation reported infeasible; every permutation is a feasible point".into(),
        ),
        other => other,
    }
}

fn snap(v: f64) -> f64 {
    if v.abs() < 1e-12 {
        0.0
    } else {
        v.clamp(0.0, 1.0)
    }
}

fn split_solution(lp: &AjLp, values: &[f64], certificate: LpCertificate) -> LpSolution {
    let n2 = lp.n * lp.n;
    let x: Vec<f64> = values[..n2].iter().map(|&v| snap(v)).collect();
    let y: Vec<f64> = values[n2..].iter().map(|&v| snap(v)).collect();
    let objective = lp.program.objective_value(&[x.as_slice(), y.as_slice()].concat());
    LpSolution {
        n: lp.n,
        x,
        y,
        objective,
        certificate: Some(certificate),
    }
}

pub fn solve_lp_dense(lp: &AjLp, opts: &SimplexOptions) -> Result<LpSolution> {
    let outcome =
        simplex::solve_from(&lp.program, opts, &identity_vertex(lp)).map_err(infeasible_is_a_bug)?;
    let cert = LpCertificate {
        backend: LpBackend::Dense,
        iterations: outcome.iterations,
        max_primal_violation: outcome.max_primal_violation,
        duality_gap: Some(outcome.duality_gap),
        max_dual_violation: Some(outcome.max_dual_violation),
    };
    Ok(split_solution(lp, &outcome.x, cert))
}

pub fn solve_lp_sparse(lp: &AjLp) -> Result<LpSolution> {
    use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome};
    let prog = &lp.program;
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    // Every AJ variable lies in [0, 1] at any feasible point, so the explicit
    // bound only helps the solver.
    let vars: Vec<_> = prog
        .objective
        .iter()
        .map(|&c| problem.add_var(c, (0.0, 1.0)))
        .collect();
    for row in &prog.rows {
        let expr: Vec<_> = row.coeffs.iter().map(|&(j, a)| (vars[j], a)).collect();
        let op = match row.kind {
            RowKind::Le => ComparisonOp::Le,
            RowKind::Eq => ComparisonOp::Eq,
            RowKind::Ge => ComparisonOp::Ge,
        };
        problem.add_constraint(&expr[..], op, row.rhs);
    }
    let solution = match problem.solve() {
        Ok(SolveOutcome::Solution(s)) => s,
        Ok(SolveOutcome::Interrupted(_)) => {
            return Err(Error::Internal("LP solve interrupted".into()))
        }
        Err(microlp::Error::Infeasible) => return Err(infeasible_is_a_bug(Error::Infeasible)),
        Err(microlp::Error::Unbounded) => return Err(Error::Unbounded),
        Err(e) => return Err(Error::Internal(format!("LP solver: {e}"))),
    };
    if solution.status() != microlp::SolutionStatus::Optimal {
        return Err(Error::Internal("LP solver stopped without proving optimality".into()));
    }
    let values: Vec<f64> = vars.iter().map(|&v| solution.var_value(v)).collect();
    let violation = prog.max_violation(&values);
    let scale = 1.0 + prog.objective.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if violation > LP_TOLERANCE * scale {
        return Err(Error::Internal(format!(
            "LP solution violates a row by {violation:e}"
        )));
    }
    let cert = LpCertificate {
        backend: LpBackend::Sparse,
        iterations: solution.stats().lp_iterations as usize,
        max_primal_violation: violation,
        duality_gap: None,
        max_dual_violation: None,
    };
    Ok(split_solution(lp, &values, cert))
}

/// Pad, build and solve in one call.
pub fn solve_instance(inst: &QapInstance, variant: Variant) -> Result<LpSolution> {
    let square = inst.padded_to_square();
    solve_lp(&build_aj_lp(&square, variant)?)
}

/// Zero every variable touching a vertex outside the kept sets.
pub fn restrict_solution(
    sol: &LpSolution,
    inst: &QapInstance,
    keep_g: &[usize],
    keep_h: &[usize],
) -> LpSolution {
    sol.restrict(inst, keep_g, keep_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_instance, WeightLaw, WeightedGraph};

    #[test]
    fn fold_index_is_a_bijection_onto_the_upper_triangle() {
        for n in 1..5 {
            let n2 = n * n;
            let mut seen = vec![false; folded_len(n)];
            for a in 0..n2 {
                for b in a..n2 {
                    let i = fold_index(n2, a, b);
                    assert!(!seen[i]);
                    seen[i] = true;
                    assert_eq!(i, fold_index(n2, b, a));
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn single_vertex_relaxation() {
        let g = WeightedGraph::from_rows(vec![vec![2.0]]).unwrap();
        let h = WeightedGraph::from_rows(vec![vec![3.0]]).unwrap();
        let inst = QapInstance::weighted(g, h).unwrap();
        let lp = build_aj_lp(&inst, Variant::Equality).unwrap();
        assert_eq!(lp.num_variables(), 2);
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.x(0, 0) - 1.0).abs() < 1e-9);
        assert!((sol.y(0, 0, 0, 0) - 1.0).abs() < 1e-9);
        assert!((sol.objective() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn two_vertices_all_ones() {
        let one = WeightedGraph::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let inst = QapInstance::weighted(one.clone(), one).unwrap();
        let sol = solve_instance(&inst, Variant::Equality).unwrap();
        assert!((sol.objective() - 2.0).abs() < 1e-7);
    }

    #[test]
    fn row_counts() {
        let inst = random_instance(3, WeightLaw::Integer(2), 1).unwrap();
        let lp = build_aj_lp(&inst, Variant::Equality).unwrap();
        assert_eq!(lp.num_variables(), 9 + 45);
        assert_eq!(lp.num_rows(), 3 + 3 + 27 + 27);
        let fams: Vec<_> = lp.families().iter().map(|(f, r)| (*f, r.len())).collect();
        assert_eq!(
            fams,
            vec![
                (RowFamily::RowSums, 3),
                (RowFamily::ColumnSums, 3),
                (RowFamily::PairOverG, 27),
                (RowFamily::PairOverH, 27)
            ]
        );
    }

    #[test]
    fn non_square_rejected() {
        let inst = QapInstance::weighted(WeightedGraph::zeros(2), WeightedGraph::zeros(3)).unwrap();
        assert!(matches!(
            build_aj_lp(&inst, Variant::Equality),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn integral_points_are_feasible() {
        let inst = random_instance(4, WeightLaw::Integer(3), 11).unwrap();
        let perm = [2, 0, 3, 1];
        let sol = LpSolution::from_permutation(&inst, &perm).unwrap();
        for variant in [Variant::Equality, Variant::Inequality] {
            let lp = build_aj_lp(&inst, variant).unwrap();
            assert!(lp.max_violation(&sol).unwrap() < 1e-12);
        }
        let value = crate::instance::value_qap(&inst, &perm).unwrap();
        assert!((sol.objective() - value).abs() < 1e-9);
    }

    #[test]
    fn restrict_keep_all_and_none() {
        let inst = random_instance(3, WeightLaw::Integer(3), 4).unwrap();
        let sol = solve_instance(&inst, Variant::Equality).unwrap();
        let all = [0, 1, 2];
        let same = sol.restrict(&inst, &all, &all);
        assert_eq!(same.x, sol.x);
        assert_eq!(same.y, sol.y);
        assert!((same.objective() - sol.objective()).abs() < 1e-9);
        let none = sol.restrict(&inst, &[], &all);
        assert!(none.x.iter().chain(&none.y).all(|&v| v == 0.0));
        assert_eq!(none.objective(), 0.0);
    }

    #[test]
    fn lp_text_mentions_every_row() {
        let inst = random_instance(2, WeightLaw::Integer(2), 1).unwrap();
        let lp = build_aj_lp(&inst, Variant::Inequality).unwrap();
        let text = lp.to_lp_text();
        assert!(text.starts_with("\\ Adams-Johnson"));
        assert!(text.contains(&format!(" c{}:", lp.num_rows() - 1)));
        assert!(text.contains("y_0_0_0_0"));
        assert!(text.trim_end().ends_with("End"));
    }

    #[test]
    fn backends_agree_on_small_instances() {
        for (n, seed) in [(2, 1), (3, 2), (3, 3), (4, 4)] {
            let inst = random_instance(n, WeightLaw::Uniform01, seed).unwrap();
            for variant in [Variant::Equality, Variant::Inequality] {
                let lp = build_aj_lp(&inst, variant).unwrap();
                let sparse = solve_lp_with(&lp, LpBackend::Sparse).unwrap();
                let dense = solve_lp_with(&lp, LpBackend::Dense).unwrap();
                assert!(
                    (sparse.objective() - dense.objective()).abs() < 1e-6,
                    "n={n} {variant:?}: {} vs {}",
                    sparse.objective(),
                    dense.objective()
                );
                let cert = dense.certificate().unwrap();
                assert!(cert.duality_gap.unwrap() < 1e-6);
                assert!(lp.max_violation(&sparse).unwrap() < 1e-7);
            }
        }
    }
}
