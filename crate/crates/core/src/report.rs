//! The solve pipeline and its report: LP, rounding, optional exact optimum,
//! the ratios between them and the consistency checks they must satisfy.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Assignment, QapInstance};
use crate::lp::{build_aj_lp, solve_lp_with, AjLp, LpBackend, LpSolution, Variant};
use crate::oracle::{brute_force_opt, injective_map_count, ENUMERATION_LIMIT};
use crate::rounding::{best_of_k, certified_bound, derandomized_round};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoundMode {
    Randomized,
    Derandomized,
    #[default]
    Both,
}

impl RoundMode {
    fn randomized(self) -> bool {
        matches!(self, RoundMode::Randomized | RoundMode::Both)
    }

    fn derandomized(self) -> bool {
        matches!(self, RoundMode::Derandomized | RoundMode::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Variant used for LP* and the derandomized rounding. Randomized
    /// rounding always uses the equality variant.
    pub variant: Variant,
    pub backend: LpBackend,
    pub round: RoundMode,
    pub rounds: usize,
    pub exact: bool,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            variant: Variant::Equality,
            backend: LpBackend::default(),
            round: RoundMode::Both,
            rounds: 1,
            exact: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    /// File path or generator spec.
    pub source: String,
    pub n_g: usize,
    pub n_h: usize,
    pub unweighted: bool,
    /// Set when `G` was padded with isolated vertices to size `n_h`.
    pub padded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpRecord {
    pub variant: Variant,
    pub backend: LpBackend,
    /// `LP*` on the ordered-pair scale.
    pub value: f64,
    /// Upper bound on the instance objective: `LP*`, or `LP*/2` for
    /// unweighted instances.
    pub bound: f64,
    pub max_primal_violation: Option<f64>,
    pub duality_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundingRecord {
    pub value: f64,
    pub map: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub winning_round: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certified_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub opt_value: f64,
    pub opt_map: Vec<usize>,
    pub enumerated: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Ratios {
    pub randomized_over_lp: Option<f64>,
    pub randomized_over_opt: Option<f64>,
    pub derandomized_over_lp: Option<f64>,
    pub derandomized_over_opt: Option<f64>,
    /// `LP bound / OPT`.
    pub integrality_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Wall-clock milliseconds. Excluded from determinism comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub lp_ms: f64,
    pub randomized_ms: Option<f64>,
    pub derandomized_ms: Option<f64>,
    pub exact_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: InstanceDescriptor,
    pub seed: u64,
    pub lp: Vec<LpRecord>,
    pub randomized: Option<RoundingRecord>,
    pub derandomized: Option<RoundingRecord>,
    pub exact: Option<ExactRecord>,
    pub ratios: Ratios,
    pub checks: Vec<Check>,
    pub timings: Timings,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

const CHECK_TOLERANCE: f64 = 1e-6;

impl RunReport {
    /// The LP record matching `variant`.
    pub fn lp_for(&self, variant: Variant) -> Option<&LpRecord> {
        self.lp.iter().find(|r| r.variant == variant)
    }

    /// The LP record the ratios are taken against: the first one solved.
    pub fn primary_lp(&self) -> &LpRecord {
        &self.lp[0]
    }

    /// Ratios derived from the raw values in this report.
    pub fn recompute_ratios(&self) -> Ratios {
        let bound = self.primary_lp().bound;
        let opt = self.exact.as_ref().map(|e| e.opt_value);
        let r = self.randomized.as_ref().map(|r| r.value);
        let d = self.derandomized.as_ref().map(|r| r.value);
        Ratios {
            randomized_over_lp: r.and_then(|v| ratio(v, bound)),
            randomized_over_opt: r.zip(opt).and_then(|(v, o)| ratio(v, o)),
            derandomized_over_lp: d.and_then(|v| ratio(v, bound)),
            derandomized_over_opt: d.zip(opt).and_then(|(v, o)| ratio(v, o)),
            integrality_gap: opt.and_then(|o| ratio(bound, o)),
        }
    }

    fn recompute_checks(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(Check {
                name: name.to_string(),
                passed,
                detail,
            })
        };
        let lp = self.primary_lp();
        let slack = CHECK_TOLERANCE * (1.0 + lp.bound.abs());
        for (name, rec) in [("randomized", &self.randomized), ("derandomized", &self.derandomized)] {
            if let Some(rec) = rec {
                push(
                    &format!("lp_bounds_{name}"),
                    rec.value <= lp.bound + slack,
                    format!("{} <= {}", rec.value, lp.bound),
                );
            }
        }
        if let Some(d) = &self.derandomized {
            let cb = d.certified_bound.unwrap_or(0.0);
            push(
                "derandomized_certified",
                d.value >= cb - 1e-9,
                format!("{} >= LP bound/(1024 sqrt n) = {cb}", d.value),
            );
        }
        if let Some(e) = &self.exact {
            push(
                "lp_bounds_opt",
                e.opt_value <= lp.bound + slack,
                format!("{} <= {}", e.opt_value, lp.bound),
            );
            for (name, rec) in [("randomized", &self.randomized), ("derandomized", &self.derandomized)] {
                if let Some(rec) = rec {
                    push(
                        &format!("opt_dominates_{name}"),
                        rec.value <= e.opt_value + CHECK_TOLERANCE * (1.0 + e.opt_value.abs()),
                        format!("{} <= {}", rec.value, e.opt_value),
                    );
                }
            }
        }
        checks
    }

    /// Exit status 0 iff this is true.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The report as one JSON line.
    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// The report with timing fields removed, for determinism comparisons.
    pub fn deterministic_view(&self) -> Result<serde_json::Value> {
        let mut v = serde_json::to_value(self)?;
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
        }
        Ok(v)
    }

    /// Human-readable summary table.
    pub fn render_table(&self) -> String {
        let fmt_opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
        let mut s = String::new();
        let d = &self.instance;
        let _ = writeln!(
            s,
            "instance  {} (n_g = {}, n_h = {}{}{})",
            d.source,
            d.n_g,
            d.n_h,
            if d.unweighted { ", unweighted" } else { "" },
            if d.padded { ", G padded" } else { "" }
        );
        let _ = writeln!(s, "seed      {}", self.seed);
        for lp in &self.lp {
            let variant = format!("{:?}", lp.variant).to_lowercase();
            let _ = writeln!(s, "LP*       {:.6} ({variant}, bound {:.6})", lp.value, lp.bound);
        }
        let _ = writeln!(s, "{:<14}{:>14}{:>12}{:>12}", "method", "value", "/ LP", "/ OPT");
        let r = &self.ratios;
        if let Some(rec) = &self.randomized {
            let label = format!("best-of-{}", rec.rounds.unwrap_or(1));
            let _ = writeln!(
                s,
                "{label:<14}{:>14.6}{:>12}{:>12}",
                rec.value,
                fmt_opt(r.randomized_over_lp),
                fmt_opt(r.randomized_over_opt)
            );
        }
        if let Some(rec) = &self.derandomized {
            let _ = writeln!(
                s,
                "{:<14}{:>14.6}{:>12}{:>12}",
                "derandomized",
                rec.value,
                fmt_opt(r.derandomized_over_lp),
                fmt_opt(r.derandomized_over_opt)
            );
        }
        if let Some(e) = &self.exact {
            let _ = writeln!(
                s,
                "{:<14}{:>14.6}{:>12}{:>12}",
                "exact",
                e.opt_value,
                fmt_opt(ratio(e.opt_value, self.primary_lp().bound)),
                "1.000000"
            );
        }
        for c in &self.checks {
            let _ = writeln!(s, "check     {:<28} {}", c.name, if c.passed { "ok" } else { "FAILED" });
        }
        s
    }
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn lp_record(inst: &QapInstance, sol: &LpSolution, variant: Variant, backend: LpBackend) -> LpRecord {
    let value = sol.objective();
    let cert = sol.certificate();
    LpRecord {
        variant,
        backend,
        value,
        bound: if inst.is_unweighted() { value / 2.0 } else { value },
        max_primal_violation: cert.map(|c| c.max_primal_violation),
        duality_gap: cert.and_then(|c| c.duality_gap),
    }
}

/// Everything `solve` computes, including the built relaxation for export.
pub struct SolveRun {
    pub report: RunReport,
    pub relaxation: AjLp,
}

/// Solve, round and optionally enumerate. Non-square instances are padded;
/// maps are reported on the original `G`.
pub fn solve(inst: &QapInstance, source: &str, opts: &SolveOptions) -> Result<SolveRun> {
    let square = inst.padded_to_square();
    let n = square.n_g();
    let n_g = inst.n_g();
    let maps = injective_map_count(n_g, inst.n_h());
    if opts.exact && maps > ENUMERATION_LIMIT {
        return Err(Error::Guard {
            what: "injective maps",
            required: maps,
            limit: ENUMERATION_LIMIT,
        });
    }

    let t = Instant::now();
    let relaxation = build_aj_lp(&square, opts.variant)?;
    let primary = solve_lp_with(&relaxation, opts.backend)?;
    let mut lp = vec![lp_record(inst, &primary, opts.variant, opts.backend)];
    let equality = if opts.round.randomized() && opts.variant != Variant::Equality {
        let sol = solve_lp_with(&build_aj_lp(&square, Variant::Equality)?, opts.backend)?;
        lp.push(lp_record(inst, &sol, Variant::Equality, opts.backend));
        sol
    } else {
        primary.clone()
    };
    let lp_ms = ms_since(t);

    let on_original = |a: Assignment| Assignment::evaluate(inst, a.map[..n_g].to_vec());

    let mut timings = Timings {
        lp_ms,
        ..Timings::default()
    };
    let randomized = if opts.round.randomized() {
        let t = Instant::now();
        let (a, i) = best_of_k(&square, &equality, opts.seed, opts.rounds.max(1))?;
        let a = on_original(a)?;
        timings.randomized_ms = Some(ms_since(t));
        Some(RoundingRecord {
            value: a.value,
            map: a.map,
            rounds: Some(opts.rounds.max(1)),
            winning_round: Some(i),
            certified_bound: None,
        })
    } else {
        None
    };
    let derandomized = if opts.round.derandomized() {
        let t = Instant::now();
        let a = on_original(derandomized_round(&square, &primary)?)?;
        timings.derandomized_ms = Some(ms_since(t));
        Some(RoundingRecord {
            value: a.value,
            map: a.map,
            rounds: None,
            winning_round: None,
            certified_bound: Some(certified_bound(lp[0].bound, n)),
        })
    } else {
        None
    };
    let exact = if opts.exact {
        let t = Instant::now();
        let e = brute_force_opt(inst)?;
        timings.exact_ms = Some(ms_since(t));
        Some(ExactRecord {
            opt_value: e.opt_value,
            opt_map: e.opt_map,
            enumerated: e.enumerated,
        })
    } else {
        None
    };

    let mut report = RunReport {
        instance: InstanceDescriptor {
            source: source.to_string(),
            n_g,
            n_h: inst.n_h(),
            unweighted: inst.is_unweighted(),
            padded: !inst.is_square(),
        },
        seed: opts.seed,
        lp,
        randomized,
        derandomized,
        exact,
        ratios: Ratios::default(),
        checks: Vec::new(),
        timings,
    };
    report.ratios = report.recompute_ratios();
    report.checks = report.recompute_checks();
    Ok(SolveRun { report, relaxation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_instance, WeightLaw, WeightedGraph};

    #[test]
    fn ratios_follow_the_raw_values() {
        let inst = random_instance(4, WeightLaw::Integer(3), 2).unwrap();
        let opts = SolveOptions {
            exact: true,
            rounds: 4,
            ..SolveOptions::default()
        };
        let r = solve(&inst, "test", &opts).unwrap().report;
        assert!(r.passed(), "{}", r.render_table());
        assert_eq!(r.ratios, r.recompute_ratios());
        let lp = r.primary_lp().bound;
        let opt = r.exact.as_ref().unwrap().opt_value;
        assert_eq!(r.ratios.integrality_gap, Some(lp / opt));
        assert_eq!(r.ratios.randomized_over_lp, Some(r.randomized.as_ref().unwrap().value / lp));
    }

    #[test]
    fn rectangular_instances_report_maps_on_g() {
        let g = WeightedGraph::from_fn(2, |u, v| if u != v { 1.0 } else { 0.0 }).unwrap();
        let h = WeightedGraph::from_fn(4, |p, q| if p + q == 5 { 2.0 } else { 0.0 }).unwrap();
        let inst = QapInstance::weighted(g, h).unwrap();
        let opts = SolveOptions {
            exact: true,
            ..SolveOptions::default()
        };
        let r = solve(&inst, "rect", &opts).unwrap().report;
        assert!(r.instance.padded);
        assert_eq!(r.derandomized.as_ref().unwrap().map.len(), 2);
        assert_eq!(r.exact.as_ref().unwrap().opt_value, 4.0);
        assert!(r.passed(), "{}", r.render_table());
    }

    #[test]
    fn inequality_variant_also_solves_equality_for_randomized() {
        let inst = random_instance(3, WeightLaw::Uniform01, 5).unwrap();
        let opts = SolveOptions {
            variant: Variant::Inequality,
            ..SolveOptions::default()
        };
        let r = solve(&inst, "ineq", &opts).unwrap().report;
        assert_eq!(r.lp.len(), 2);
        assert!(r.lp_for(Variant::Inequality).unwrap().value >= r.lp_for(Variant::Equality).unwrap().value - 1e-7);
    }
}
