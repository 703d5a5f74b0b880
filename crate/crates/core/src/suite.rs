//! The acceptance suite: ten checks over seeded random instances, each
//! reporting one pass/fail outcome with the numbers behind it.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::InstanceJson;
use crate::instance::{random_instance, QapInstance, WeightLaw, WeightedGraph};
use crate::labelcover::{
    canonical_map, edge_count_check, reduce_to_qap, LabelCoverInstance, Labeling,
};
use crate::lp::{solve_instance, Variant};
use crate::matching::{
    decompose_fractional_matching, max_weight_partial_matching, max_weight_perfect_matching,
    CostMatrix, FractionalMatching,
};
use crate::oracle::{
    brute_force_assignment_value, brute_force_opt, brute_force_opt_with_limit,
    brute_force_partial_matching_value, injective_map_count, integrality_gap, ENUMERATION_LIMIT,
};
use crate::rounding::{
    best_of_k, certified_bound, derandomized_round, greedy_max_cut, greedy_max_dicut,
    randomized_round, vol_lp, Digraph,
};
use crate::seed::{derive_seed, sub_rng};

const TAG_INSTANCES: u64 = 0x5a01;
const TAG_RANDOMIZED: u64 = 0x5a03;
const TAG_MATCHING: u64 = 0x5a04;
const TAG_CUTS: u64 = 0x5a05;
const TAG_VOLUME: u64 = 0x5a06;
const TAG_COMPLETENESS: u64 = 0x5a07;
const TAG_CONCENTRATION: u64 = 0x5a08;
const TAG_DECOMPOSITION: u64 = 0x5a09;

/// Largest `n` the suite will solve an LP and enumerate maps for.
pub const MAX_SUITE_SIZE: usize = 8;

/// One-sided normal quantile for the randomized-rounding mean check. With 10
/// instances and a union bound, a correct rounding fails with probability
/// below 10⁻⁴.
pub const MEAN_CHECK_Z: f64 = 4.27;

const GAP_FIXTURE: &str = include_str!("../fixtures/gap_n5.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Sizes for the relaxation and derandomization checks.
    pub sizes: Vec<usize>,
    /// Instances per size.
    pub per_size: usize,
    pub randomized_instances: usize,
    pub randomized_seeds: usize,
    pub best_of: usize,
    pub matching_trials: usize,
    pub cut_trials: usize,
    pub partitions: usize,
    pub label_covers: usize,
    pub reductions: usize,
    pub decompositions: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            sizes: vec![3, 4, 5, 6, 7],
            per_size: 20,
            randomized_instances: 10,
            randomized_seeds: 500,
            best_of: 32,
            matching_trials: 200,
            cut_trials: 200,
            partitions: 20,
            label_covers: 20,
            reductions: 100,
            decompositions: 100,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad: Vec<String> = self
            .sizes
            .iter()
            .filter(|&&n| n == 0 || n > MAX_SUITE_SIZE)
            .map(|n| n.to_string())
            .collect();
        if !bad.is_empty() {
            return Err(Error::Invalid(format!(
                "suite sizes must lie in 1..={MAX_SUITE_SIZE}; offending: {}",
                bad.join(", ")
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub metrics: BTreeMap<String, f64>,
}

impl CriterionOutcome {
    fn new(id: u8, name: &str, passed: bool, summary: String) -> Self {
        CriterionOutcome {
            id,
            name: name.to_string(),
            passed,
            summary,
            metrics: BTreeMap::new(),
        }
    }

    fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    /// Outcome for a criterion whose computation itself failed.
    pub fn errored(id: u8, name: &str, e: &Error) -> Self {
        CriterionOutcome::new(id, name, false, format!("error: {e}"))
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.summary)
    }
}

/// LP, exact optimum and derandomized value for one suite instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub n: usize,
    pub law: String,
    pub seed: u64,
    pub lp_value: f64,
    pub opt_value: f64,
    pub derandomized_value: f64,
}

const LAWS: [WeightLaw; 3] = [WeightLaw::Uniform01, WeightLaw::Integer(3), WeightLaw::Sparse(0.5)];

/// Solve every suite instance once; criteria 1 and 2 share the records.
pub fn suite_instances(cfg: &SuiteConfig) -> Result<Vec<InstanceRecord>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| (0..cfg.per_size).map(move |i| (n, i)))
        .collect();
    let solve = |&(n, i): &(usize, usize)| -> Result<InstanceRecord> {
        let law = LAWS[i % LAWS.len()];
        let seed = derive_seed(cfg.seed, TAG_INSTANCES, &[n as u64, i as u64]);
        let inst = random_instance(n, law, seed)?;
        let sol = solve_instance(&inst, Variant::Equality)?;
        let exact = brute_force_opt(&inst)?;
        let rounded = derandomized_round(&inst, &sol)?;
        Ok(InstanceRecord {
            n,
            law: law.to_string(),
            seed,
            lp_value: sol.objective(),
            opt_value: exact.opt_value,
            derandomized_value: rounded.value,
        })
    };
    // Records are independent; each carries its own seed, so splitting the
    // work across threads does not change the output.
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(jobs.len().max(1));
    let chunk = jobs.len().div_ceil(workers.max(1)).max(1);
    let results: Vec<Result<InstanceRecord>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(solve).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

pub fn relaxation_validity(records: &[InstanceRecord]) -> CriterionOutcome {
    let slack = records
        .iter()
        .map(|r| r.lp_value - r.opt_value)
        .fold(f64::INFINITY, f64::min);
    let violations = records.iter().filter(|r| r.lp_value < r.opt_value - 1e-6).count();
    CriterionOutcome::new(
        1,
        "relaxation validity",
        violations == 0 && !records.is_empty(),
        format!(
            "LP* >= OPT - 1e-6 on {}/{} instances, min LP* - OPT = {slack:.3e}",
            records.len() - violations,
            records.len()
        ),
    )
    .metric("instances", records.len() as f64)
    .metric("violations", violations as f64)
    .metric("min_slack", slack)
}

pub fn derandomized_guarantee(records: &[InstanceRecord]) -> CriterionOutcome {
    let mut violations = 0;
    let mut min_ratio = f64::INFINITY;
    let mut min_scaled = f64::INFINITY;
    for r in records {
        if r.derandomized_value < certified_bound(r.lp_value, r.n) - 1e-9 {
            violations += 1;
        }
        if r.lp_value > 0.0 {
            let ratio = r.derandomized_value / r.lp_value;
            min_ratio = min_ratio.min(ratio);
            min_scaled = min_scaled.min(ratio * (r.n as f64).sqrt());
        }
    }
    CriterionOutcome::new(
        2,
        "derandomized guarantee",
        violations == 0 && !records.is_empty(),
        format!(
            "value >= LP*/(1024 sqrt n) on {}/{} instances, min value/LP* = {min_ratio:.4}, min value*sqrt(n)/LP* = {min_scaled:.4}",
            records.len() - violations,
            records.len()
        ),
    )
    .metric("instances", records.len() as f64)
    .metric("violations", violations as f64)
    .metric("min_ratio", min_ratio)
    .metric("min_ratio_times_sqrt_n", min_scaled)
}

pub fn randomized_sanity(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let n = 6;
    let mut failures = 0;
    let mut raw_below = 0;
    let mut min_margin = f64::INFINITY;
    for i in 0..cfg.randomized_instances {
        let inst = random_instance(n, WeightLaw::Uniform01, derive_seed(cfg.seed, TAG_RANDOMIZED, &[i as u64]))?;
        let sol = solve_instance(&inst, Variant::Equality)?;
        let values: Vec<f64> = (0..cfg.randomized_seeds)
            .map(|s| {
                let seed = derive_seed(cfg.seed, TAG_RANDOMIZED, &[i as u64, s as u64]);
                randomized_round(&inst, &sol, seed).map(|a| a.value)
            })
            .collect::<Result<_>>()?;
        let m = values.len() as f64;
        let mean = values.iter().sum::<f64>() / m;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
        let se = (var / m).sqrt();
        let threshold = sol.objective() / (256.0 * (n as f64).sqrt());
        let (best, _) = best_of_k(&inst, &sol, derive_seed(cfg.seed, TAG_RANDOMIZED, &[i as u64, u64::MAX]), cfg.best_of)?;
        if mean + MEAN_CHECK_Z * se < threshold || best.value < mean {
            failures += 1;
        }
        if mean < threshold {
            raw_below += 1;
        }
        if threshold > 0.0 {
            min_margin = min_margin.min(mean / threshold);
        }
    }
    Ok(CriterionOutcome::new(
        3,
        "randomized rounding sanity",
        failures == 0 && cfg.randomized_instances > 0,
        format!(
            "{}/{} instances pass mean + {MEAN_CHECK_Z} se >= LP*/(256 sqrt 6) and best-of-{} >= mean; raw mean below threshold on {raw_below}, min mean/threshold = {min_margin:.1}",
            cfg.randomized_instances - failures,
            cfg.randomized_instances,
            cfg.best_of
        ),
    )
    .metric("failures", failures as f64)
    .metric("raw_mean_below_threshold", raw_below as f64)
    .metric("min_mean_over_threshold", min_margin))
}

pub fn matching_equivalence(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut perfect_bad = 0;
    let mut partial_bad = 0;
    for t in 0..cfg.matching_trials {
        let mut rng = sub_rng(cfg.seed, TAG_MATCHING, &[t as u64]);
        // Integer entries keep every sum exact, so equality is exact.
        let c = CostMatrix::from_fn(6, 6, |_, _| rng.gen_range(0..=100) as f64)?;
        let perm = max_weight_perfect_matching(&c)?;
        if c.permutation_value(&perm) != brute_force_assignment_value(&c)? {
            perfect_bad += 1;
        }
        let c = CostMatrix::from_fn(5, 7, |_, _| rng.gen_range(-50..=50) as f64)?;
        let partial = max_weight_partial_matching(&c);
        if c.value_of(&partial) != brute_force_partial_matching_value(&c)? {
            partial_bad += 1;
        }
    }
    Ok(CriterionOutcome::new(
        4,
        "matching oracle equivalence",
        perfect_bad == 0 && partial_bad == 0,
        format!(
            "Hungarian 6x6 matches enumeration on {}/{n}, partial 5x7 on {}/{n}",
            cfg.matching_trials - perfect_bad,
            cfg.matching_trials - partial_bad,
            n = cfg.matching_trials
        ),
    )
    .metric("perfect_mismatches", perfect_bad as f64)
    .metric("partial_mismatches", partial_bad as f64))
}

pub fn cut_invariants(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut cut_bad = 0;
    let mut dicut_bad = 0;
    let mut min_cut = f64::INFINITY;
    let mut min_dicut = f64::INFINITY;
    for t in 0..cfg.cut_trials {
        let mut rng = sub_rng(cfg.seed, TAG_CUTS, &[t as u64]);
        let n = rng.gen_range(1..=12);
        let mut w = vec![0.0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let x = rng.gen_range(0..=9) as f64;
                w[u * n + v] = x;
                w[v * n + u] = x;
            }
        }
        let g = WeightedGraph::from_flat(n, w.clone())?;
        let cut = greedy_max_cut(&g);
        let sides = cut.sides(n);
        let total: f64 = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| w[u * n + v]).sum();
        let across: f64 = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| sides[u] != sides[v])
            .map(|(u, v)| w[u * n + v])
            .sum();
        if across != cut.cut_value || 2.0 * across < total {
            cut_bad += 1;
        }
        if total > 0.0 {
            min_cut = min_cut.min(across / total);
        }

        let d: Vec<f64> = (0..n * n)
            .map(|i| if i / n == i % n { 0.0 } else { rng.gen_range(0..=9) as f64 })
            .collect();
        let dg = Digraph::from_fn(n, |p, q| d[p * n + q])?;
        let dicut = greedy_max_dicut(&dg);
        let left = dicut.sides(n);
        let total: f64 = d.iter().sum();
        let forward: f64 = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| left[p] && !left[q])
            .map(|(p, q)| d[p * n + q])
            .sum();
        if forward != dicut.cut_value || 4.0 * forward < total {
            dicut_bad += 1;
        }
        if total > 0.0 {
            min_dicut = min_dicut.min(forward / total);
        }
    }
    Ok(CriterionOutcome::new(
        5,
        "greedy cut invariants",
        cut_bad == 0 && dicut_bad == 0,
        format!(
            "cut >= total/2 violated {cut_bad} times, dicut >= total/4 violated {dicut_bad} times over {} graphs each; min ratios {min_cut:.3} and {min_dicut:.3}",
            cfg.cut_trials
        ),
    )
    .metric("cut_violations", cut_bad as f64)
    .metric("dicut_violations", dicut_bad as f64)
    .metric("min_cut_ratio", min_cut)
    .metric("min_dicut_ratio", min_dicut))
}

pub fn volume_partition_identity(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for n in [4usize, 5, 6] {
        let inst = random_instance(n, WeightLaw::Uniform01, derive_seed(cfg.seed, TAG_VOLUME, &[n as u64]))?;
        let sol = solve_instance(&inst, Variant::Equality)?;
        for t in 0..cfg.partitions {
            let mut rng = sub_rng(cfg.seed, TAG_VOLUME, &[n as u64, t as u64]);
            let parts = rng.gen_range(1..=n);
            let label_g: Vec<usize> = (0..n).map(|_| rng.gen_range(0..parts)).collect();
            let label_h: Vec<usize> = (0..n).map(|_| rng.gen_range(0..parts)).collect();
            let total: f64 = (0..parts)
                .map(|i| {
                    let s: Vec<usize> = (0..n).filter(|&u| label_g[u] == i).collect();
                    let t: Vec<usize> = (0..n).filter(|&p| label_h[p] == i).collect();
                    vol_lp(&sol, &inst, &s, &t)
                })
                .sum();
            worst = worst.max((total - 2.0 * sol.objective()).abs());
            checks += 1;
        }
    }
    Ok(CriterionOutcome::new(
        6,
        "vol_LP partition identity",
        worst <= 1e-6,
        format!("{checks} partitions, max |sum vol_LP - 2 LP*| = {worst:.3e}"),
    )
    .metric("partitions", checks as f64)
    .metric("max_error", worst))
}

/// A random label cover with a planted satisfying labeling.
pub fn planted_label_cover(seed: u64, n: usize, k: usize) -> Result<(LabelCoverInstance, Labeling)> {
    let mut rng = crate::seed::rng_from(seed);
    let lambda: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.6) {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() && n >= 2 {
        edges.push((0, 1));
    }
    let pi = edges
        .iter()
        .map(|&(u, v)| {
            let mut rel = vec![(lambda[u], lambda[v])];
            for x in 0..k {
                for y in 0..k {
                    if rng.gen_bool(0.3) {
                        rel.push((x, y));
                    }
                }
            }
            rel
        })
        .collect();
    Ok((LabelCoverInstance::new(n, k, edges, pi)?, Labeling { lambda }))
}

pub fn reduction_completeness(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut bad = 0;
    let mut confirmed = 0;
    for t in 0..cfg.label_covers {
        let mut rng = sub_rng(cfg.seed, TAG_COMPLETENESS, &[t as u64]);
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=3);
        let cloud = rng.gen_range(1..=4);
        let alpha = if rng.gen_bool(0.5) { 0.5 } else { 1.0 };
        let (lc, lab) = planted_label_cover(derive_seed(cfg.seed, TAG_COMPLETENESS, &[t as u64, 1]), n, k)?;
        let out = reduce_to_qap(&lc, Some(cloud), Some(alpha), derive_seed(cfg.seed, TAG_COMPLETENESS, &[t as u64, 2]))?;
        let edges = out.qap.g().total_edge_weight();
        let value = canonical_map(&out, &lab)?.value;
        if value != edges {
            bad += 1;
            continue;
        }
        if injective_map_count(out.qap.n_g(), out.qap.n_h()) <= ENUMERATION_LIMIT {
            let opt = brute_force_opt_with_limit(&out.qap, ENUMERATION_LIMIT)?.opt_value;
            if opt != edges {
                bad += 1;
            }
            confirmed += 1;
        }
    }
    Ok(CriterionOutcome::new(
        7,
        "reduction completeness",
        bad == 0 && cfg.label_covers > 0,
        format!(
            "canonical map reaches |E_G~| exactly on {}/{} planted instances; optimality confirmed by enumeration on {confirmed}",
            cfg.label_covers - bad,
            cfg.label_covers
        ),
    )
    .metric("mismatches", bad as f64)
    .metric("enumerated", confirmed as f64))
}

pub fn edge_count_concentration(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut passed = 0;
    let mut min_ratio = f64::INFINITY;
    for t in 0..cfg.reductions {
        let (lc, _) = planted_label_cover(derive_seed(cfg.seed, TAG_CONCENTRATION, &[t as u64]), 3, 2)?;
        let out = reduce_to_qap(&lc, Some(50), Some(0.2), derive_seed(cfg.seed, TAG_CONCENTRATION, &[t as u64, 1]))?;
        let r = edge_count_check(&out);
        passed += usize::from(r.passed);
        min_ratio = min_ratio.min(r.edges as f64 / r.expectation);
    }
    let rate = passed as f64 / cfg.reductions.max(1) as f64;
    Ok(CriterionOutcome::new(
        8,
        "edge-count concentration",
        rate >= 0.99 && cfg.reductions > 0,
        format!(
            "|E_G~| >= alpha |E_G| N^2 / 2 on {passed}/{} reductions (N = 50, alpha = 0.2), min |E_G~| / expectation = {min_ratio:.3}",
            cfg.reductions
        ),
    )
    .metric("pass_rate", rate)
    .metric("min_ratio", min_ratio))
}

fn random_substochastic(rng: &mut crate::seed::Rng) -> Result<FractionalMatching> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let mut z: Vec<f64> = (0..rows * cols)
        .map(|_| if rng.gen_bool(0.6) { rng.gen::<f64>() } else { 0.0 })
        .collect();
    let row_max = (0..rows).map(|i| z[i * cols..(i + 1) * cols].iter().sum::<f64>());
    let col_max = (0..cols).map(|j| (0..rows).map(|i| z[i * cols + j]).sum::<f64>());
    let peak = row_max.chain(col_max).fold(0.0, f64::max);
    if peak > 0.0 {
        // Some matrices are scaled to be tight, some are left slack.
        let scale = if rng.gen_bool(0.5) { 1.0 } else { rng.gen_range(0.3..1.0) };
        z.iter_mut().for_each(|x| *x *= scale / peak);
    }
    FractionalMatching::new(rows, cols, z)
}

pub fn decomposition_reconstruction(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut worst: f64 = 0.0;
    let mut off_support = 0;
    let mut max_terms = 0;
    for t in 0..cfg.decompositions {
        let mut rng = sub_rng(cfg.seed, TAG_DECOMPOSITION, &[t as u64]);
        let z = random_substochastic(&mut rng)?;
        let (rows, cols) = (z.rows(), z.cols());
        let d = decompose_fractional_matching(&z);
        max_terms = max_terms.max(d.terms.len());
        let mut sum = vec![0.0; rows * cols];
        for (w, m) in &d.terms {
            for (i, j) in m.iter().enumerate() {
                if let Some(j) = *j {
                    if z.get(i, j) <= 0.0 {
                        off_support += 1;
                    }
                    sum[i * cols + j] += w;
                }
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                worst = worst.max((sum[i * cols + j] - z.get(i, j)).abs());
            }
        }
    }
    Ok(CriterionOutcome::new(
        9,
        "fractional-matching decomposition",
        worst <= 1e-6 && off_support == 0,
        format!(
            "{} matrices, max reconstruction error {worst:.3e}, {off_support} matched pairs outside supp(z), at most {max_terms} terms",
            cfg.decompositions
        ),
    )
    .metric("max_error", worst)
    .metric("off_support", off_support as f64)
    .metric("max_terms", max_terms as f64))
}

/// The frozen integrality-gap fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapFixture {
    pub found_by: String,
    pub lp_value: f64,
    pub opt_value: f64,
    pub gap: f64,
    pub instance: InstanceJson,
}

impl GapFixture {
    pub fn load() -> Result<Self> {
        Ok(serde_json::from_str(GAP_FIXTURE)?)
    }

    pub fn instance(&self) -> Result<QapInstance> {
        self.instance.clone().try_into()
    }
}

pub fn gap_fixture() -> Result<CriterionOutcome> {
    let fx = GapFixture::load()?;
    let inst = fx.instance()?;
    let gap = integrality_gap(&inst)?;
    let n = inst.n_g() as f64;
    let matches = (gap.gap - fx.gap).abs() <= 1e-6;
    let passed = inst.n_g() == 5 && gap.gap > 1.05 && gap.gap <= n.sqrt() * 64.0 && matches;
    Ok(CriterionOutcome::new(
        10,
        "integrality-gap fixture",
        passed,
        format!(
            "recorded n=5 gap {:.4} recomputed as {:.4} (LP* {:.4}, OPT {:.4}); the asymptotic hardness factor and the sqrt(n)/log n gap family are not reproducible at this scale",
            fx.gap, gap.gap, gap.lp_value, gap.opt_value
        ),
    )
    .metric("gap", gap.gap)
    .metric("recorded_gap", fx.gap))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

const NAMES: [&str; 10] = [
    "relaxation validity",
    "derandomized guarantee",
    "randomized rounding sanity",
    "matching oracle equivalence",
    "greedy cut invariants",
    "vol_LP partition identity",
    "reduction completeness",
    "edge-count concentration",
    "fractional-matching decomposition",
    "integrality-gap fixture",
];

/// Run all ten criteria. A criterion whose computation errors is reported as
/// failed rather than aborting the rest.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let settle = |id: u8, r: Result<CriterionOutcome>| {
        r.unwrap_or_else(|e| CriterionOutcome::errored(id, NAMES[id as usize - 1], &e))
    };
    let mut outcomes = Vec::with_capacity(10);
    match suite_instances(cfg) {
        Ok(records) => {
            outcomes.push(relaxation_validity(&records));
            outcomes.push(derandomized_guarantee(&records));
        }
        Err(e) => {
            outcomes.push(CriterionOutcome::errored(1, NAMES[0], &e));
            outcomes.push(CriterionOutcome::errored(2, NAMES[1], &e));
        }
    }
    outcomes.push(settle(3, randomized_sanity(cfg)));
    outcomes.push(settle(4, matching_equivalence(cfg)));
    outcomes.push(settle(5, cut_invariants(cfg)));
    outcomes.push(settle(6, volume_partition_identity(cfg)));
    outcomes.push(settle(7, reduction_completeness(cfg)));
    outcomes.push(settle(8, edge_count_concentration(cfg)));
    outcomes.push(settle(9, decomposition_reconstruction(cfg)));
    outcomes.push(settle(10, gap_fixture()));
    Ok(SuiteReport {
        config: cfg.clone(),
        outcomes,
    })
}
