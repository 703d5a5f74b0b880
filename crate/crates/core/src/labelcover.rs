//! Label Cover instances and their reduction to unweighted MAXQAP.
//!
//! Each Label Cover vertex `u` becomes a cloud of `N` vertices `(u, i)` in
//! `G̃`, and a cloud of `k·N` vertices `(u, x, i)` in `H̃`. For every
//! constraint edge `(u, v)` a random set `E_uv ⊆ [N]×[N]` is drawn; `G̃`
//! joins `(u,i)–(v,j)` for `(i,j) ∈ E_uv`, and `H̃` joins
//! `(u,x,i)–(v,y,j)` when additionally `(x,y) ∈ π_uv`.
//!
//! Flat indices: `(u, i) ↦ u·N + i` and `(u, x, i) ↦ (u·k + x)·N + i`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Assignment, QapInstance, WeightedGraph};
use crate::oracle::{brute_force_label_cover_with_limit, brute_force_opt_with_limit};
use crate::seed::sub_rng;

const TAG_EDGE_SET: u64 = 0x1c5e;
const TAG_PROBE: u64 = 0x1c5f;

/// Environment variable overriding [`DEFAULT_MEMORY_BUDGET`].
pub const MEMORY_BUDGET_ENV: &str = "MAXQAP_MEMORY_BUDGET";

/// Largest `|V_H̃|²` a reduction may allocate.
pub const DEFAULT_MEMORY_BUDGET: u128 = 10_000_000;

/// Labelings enumerated exactly by the soundness probe.
pub const PROBE_LABELING_LIMIT: u128 = 10_000;

/// The active memory budget: the environment override if it parses.
pub fn memory_budget() -> u128 {
    std::env::var(MEMORY_BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MEMORY_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LabelCoverJson", into = "LabelCoverJson")]
pub struct LabelCoverInstance {
    n: usize,
    k: usize,
    edges: Vec<(usize, usize)>,
    /// Accepted `(label of u, label of v)` pairs per edge, sorted.
    pi: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LabelCoverJson {
    n: usize,
    k: usize,
    edges: Vec<[usize; 2]>,
    pi: Vec<Vec<[usize; 2]>>,
}

impl TryFrom<LabelCoverJson> for LabelCoverInstance {
    type Error = Error;
    fn try_from(j: LabelCoverJson) -> Result<Self> {
        LabelCoverInstance::new(
            j.n,
            j.k,
            j.edges.into_iter().map(|[u, v]| (u, v)).collect(),
            j.pi.into_iter()
                .map(|r| r.into_iter().map(|[x, y]| (x, y)).collect())
                .collect(),
        )
    }
}

impl From<LabelCoverInstance> for LabelCoverJson {
    fn from(lc: LabelCoverInstance) -> Self {
        LabelCoverJson {
            n: lc.n,
            k: lc.k,
            edges: lc.edges.iter().map(|&(u, v)| [u, v]).collect(),
            pi: lc
                .pi
                .iter()
                .map(|r| r.iter().map(|&(x, y)| [x, y]).collect())
                .collect(),
        }
    }
}

impl LabelCoverInstance {
    /// Validates endpoints and labels. Self-loops and repeated edges (in
    /// either orientation) are rejected since they would collide in `G̃`.
    pub fn new(
        n: usize,
        k: usize,
        edges: Vec<(usize, usize)>,
        pi: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("alphabet size k must be at least 1".into()));
        }
        if pi.len() != edges.len() {
            return Err(Error::SizeMismatch(format!(
                "{} edges but {} relations",
                edges.len(),
                pi.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { index: w, bound: n });
                }
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Invalid(format!("repeated edge ({u}, {v})")));
            }
        }
        let mut pi = pi;
        for rel in &mut pi {
            for &(x, y) in rel.iter() {
                for l in [x, y] {
                    if l >= k {
                        return Err(Error::IndexOutOfRange { index: l, bound: k });
                    }
                }
            }
            rel.sort_unstable();
            rel.dedup();
        }
        Ok(LabelCoverInstance { n, k, edges, pi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn relation(&self, e: usize) -> &[(usize, usize)] {
        &self.pi[e]
    }

    pub fn accepts(&self, e: usize, x: usize, y: usize) -> bool {
        self.pi[e].binary_search(&(x, y)).is_ok()
    }

    /// Indices of the edges a labeling satisfies. Labels must be in range.
    pub fn satisfied(&self, lambda: &[usize]) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                self.accepts(e, lambda[u], lambda[v])
            })
            .collect()
    }

    pub(crate) fn satisfied_edges(&self, lambda: &[usize]) -> usize {
        self.satisfied(lambda).len()
    }

    pub fn from_json(text: &[u8]) -> Result<Self> {
        Ok(serde_json::from_slice(text)?)
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        Ok(serde_json::to_vec(self)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub lambda: Vec<usize>,
}

impl Labeling {
    pub fn validate(&self, lc: &LabelCoverInstance) -> Result<()> {
        if self.lambda.len() != lc.n {
            return Err(Error::MapLength {
                got: self.lambda.len(),
                expected: lc.n,
            });
        }
        if let Some(&l) = self.lambda.iter().find(|&&l| l >= lc.k) {
            return Err(Error::IndexOutOfRange { index: l, bound: lc.k });
        }
        Ok(())
    }
}

/// Fraction of constraint edges satisfied.
pub fn value_label_cover(lc: &LabelCoverInstance, lab: &Labeling) -> Result<f64> {
    lab.validate(lc)?;
    if lc.edges.is_empty() {
        return Err(Error::Invalid("label cover has no edges".into()));
    }
    Ok(lc.satisfied_edges(&lab.lambda) as f64 / lc.edges.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionParams {
    /// Cloud size `N`.
    #[serde(rename = "N")]
    pub cloud: usize,
    pub alpha: f64,
    pub seed: u64,
}

/// Default cloud size `⌈n⁴ |E| k⁵⌉`, saturating.
pub fn default_cloud_size(lc: &LabelCoverInstance) -> u128 {
    let (n, e, k) = (lc.n as u128, lc.edges.len() as u128, lc.k as u128);
    n.saturating_pow(4)
        .saturating_mul(e)
        .saturating_mul(k.saturating_pow(5))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    pub qap: QapInstance,
    pub params: ReductionParams,
    /// `n` and `k` of the source instance, for index decoding.
    pub lc_n: usize,
    pub lc_k: usize,
    /// `E_uv` for each constraint edge, in edge order, row-major sorted.
    pub edge_sets: Vec<Vec<(usize, usize)>>,
}

impl ReductionOutput {
    pub fn g_vertex(&self, u: usize, i: usize) -> usize {
        u * self.params.cloud + i
    }

    pub fn h_vertex(&self, u: usize, x: usize, i: usize) -> usize {
        (u * self.lc_k + x) * self.params.cloud + i
    }

    /// `|E_G̃| = Σ |E_uv|`.
    pub fn edge_count(&self) -> usize {
        self.edge_sets.iter().map(Vec::len).sum()
    }

    pub fn sidecar(&self, lc: &LabelCoverInstance) -> ReductionSidecar {
        ReductionSidecar {
            params: self.params,
            edge_set_sizes: lc
                .edges
                .iter()
                .zip(&self.edge_sets)
                .map(|(&(u, v), s)| EdgeSetSize { u, v, size: s.len() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSetSize {
    pub u: usize,
    pub v: usize,
    pub size: usize,
}

/// Parameters and per-edge `|E_uv|` written next to a reduced instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionSidecar {
    #[serde(flatten)]
    pub params: ReductionParams,
    pub edge_set_sizes: Vec<EdgeSetSize>,
}

/// `E_uv` for constraint edge `(u, v)`: each of the `N²` pairs independently
/// with probability `alpha`, drawn from a stream keyed by `(seed, u, v)`.
pub fn sample_edge_set(cloud: usize, alpha: f64, seed: u64, u: usize, v: usize) -> Vec<(usize, usize)> {
    let mut rng = sub_rng(seed, TAG_EDGE_SET, &[u as u64, v as u64]);
    let mut set = Vec::new();
    for i in 0..cloud {
        for j in 0..cloud {
            if rng.gen::<f64>() < alpha {
                set.push((i, j));
            }
        }
    }
    set
}

/// Reduce with the budget from [`memory_budget`]. `None` parameters take the
/// defaults `N = ⌈n⁴|E|k⁵⌉` and `alpha = 1/n`.
pub fn reduce_to_qap(
    lc: &LabelCoverInstance,
    cloud: Option<usize>,
    alpha: Option<f64>,
    seed: u64,
) -> Result<ReductionOutput> {
    reduce_to_qap_with_budget(lc, cloud, alpha, seed, memory_budget())
}

pub fn reduce_to_qap_with_budget(
    lc: &LabelCoverInstance,
    cloud: Option<usize>,
    alpha: Option<f64>,
    seed: u64,
    budget: u128,
) -> Result<ReductionOutput> {
    let cloud_wide = cloud.map_or_else(|| default_cloud_size(lc), |c| c as u128);
    let alpha = alpha.unwrap_or(1.0 / lc.n.max(1) as f64);
    if cloud_wide == 0 {
        return Err(Error::Invalid("cloud size N must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Invalid(format!("alpha = {alpha} is outside (0, 1]")));
    }
    let h_size = (lc.n as u128).saturating_mul(lc.k as u128).saturating_mul(cloud_wide);
    let cells = h_size.saturating_mul(h_size);
    if cells > budget {
        return Err(Error::MemoryBudget {
            cloud: cloud_wide,
            cells,
            budget,
        });
    }
    let cloud = cloud_wide as usize;
    let (n, k) = (lc.n, lc.k);
    let n_g = n * cloud;
    let n_h = n * k * cloud;

    let edge_sets: Vec<Vec<(usize, usize)>> = lc
        .edges
        .iter()
        .map(|&(u, v)| sample_edge_set(cloud, alpha, seed, u, v))
        .collect();

    let mut wg = vec![0.0; n_g * n_g];
    let mut wh = vec![0.0; n_h * n_h];
    for (e, &(u, v)) in lc.edges.iter().enumerate() {
        for &(i, j) in &edge_sets[e] {
            let (a, b) = (u * cloud + i, v * cloud + j);
            wg[a * n_g + b] = 1.0;
            wg[b * n_g + a] = 1.0;
            for &(x, y) in &lc.pi[e] {
                let (p, q) = ((u * k + x) * cloud + i, (v * k + y) * cloud + j);
                wh[p * n_h + q] = 1.0;
                wh[q * n_h + p] = 1.0;
            }
        }
    }
    let qap = QapInstance::new(
        WeightedGraph::from_flat(n_g, wg)?,
        WeightedGraph::from_flat(n_h, wh)?,
        true,
    )?;
    Ok(ReductionOutput {
        qap,
        params: ReductionParams { cloud, alpha, seed },
        lc_n: n,
        lc_k: k,
        edge_sets,
    })
}

/// `(u, i) ↦ (u, Λ(u), i)`.
pub fn canonical_map(out: &ReductionOutput, lab: &Labeling) -> Result<Assignment> {
    if lab.lambda.len() != out.lc_n {
        return Err(Error::MapLength {
            got: lab.lambda.len(),
            expected: out.lc_n,
        });
    }
    if let Some(&l) = lab.lambda.iter().find(|&&l| l >= out.lc_k) {
        return Err(Error::IndexOutOfRange { index: l, bound: out.lc_k });
    }
    let cloud = out.params.cloud;
    let mut map = Vec::with_capacity(out.lc_n * cloud);
    for (u, &x) in lab.lambda.iter().enumerate() {
        for i in 0..cloud {
            map.push(out.h_vertex(u, x, i));
        }
    }
    Assignment::evaluate(&out.qap, map)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeCountReport {
    pub edges: usize,
    /// `α |E_G| N²`.
    pub expectation: f64,
    /// `edges ≥ expectation / 2`.
    pub passed: bool,
}

pub fn edge_count_check(out: &ReductionOutput) -> EdgeCountReport {
    let cloud = out.params.cloud as f64;
    let expectation = out.params.alpha * out.edge_sets.len() as f64 * cloud * cloud;
    let edges = out.edge_count();
    EdgeCountReport {
        edges,
        expectation,
        passed: edges as f64 >= expectation / 2.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub samples: usize,
    /// Best value over `samples` uniformly random injective maps.
    pub sampled_best: f64,
    /// Best canonical-map value over every labeling, if `k^n` is small.
    pub canonical_best: Option<f64>,
    /// Exact `OPT_LC`, if enumerable.
    pub opt_lc: Option<f64>,
    /// `α |E_G| N² (OPT_LC + 2α)`, when `OPT_LC` is known.
    pub bound: Option<f64>,
    /// Exact `OPT_QAP` of the reduced instance, if enumerable.
    pub exact_opt: Option<f64>,
    /// Some observed value exceeds `bound`. A finding, not a failure, unless
    /// it is `exact_opt` that does.
    pub bound_exceeded: bool,
}

/// Probe the soundness side empirically: how large can the reduced instance's
/// value get compared to what `OPT_LC` allows?
pub fn soundness_probe(
    out: &ReductionOutput,
    lc: &LabelCoverInstance,
    samples: usize,
    seed: u64,
) -> Result<SoundnessReport> {
    let (n_g, n_h) = (out.qap.n_g(), out.qap.n_h());
    let mut sampled_best: f64 = 0.0;
    for s in 0..samples {
        let mut rng = sub_rng(seed, TAG_PROBE, &[s as u64]);
        let map = crate::instance::random_injection(n_g, n_h, &mut rng);
        sampled_best = sampled_best.max(crate::instance::value_qap(&out.qap, &map)?);
    }

    let labelings = (lc.k as u128).saturating_pow(lc.n as u32);
    let canonical_best = if labelings <= PROBE_LABELING_LIMIT {
        let mut best: f64 = 0.0;
        let mut lambda = vec![0usize; lc.n];
        'outer: loop {
            best = best.max(canonical_map(out, &Labeling { lambda: lambda.clone() })?.value);
            let mut i = lc.n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                lambda[i] += 1;
                if lambda[i] < lc.k {
                    break;
                }
                lambda[i] = 0;
            }
        }
        Some(best)
    } else {
        None
    };

    let opt_lc = match brute_force_label_cover_with_limit(lc, crate::oracle::ENUMERATION_LIMIT) {
        Ok((v, _)) => Some(v),
        Err(Error::Guard { .. }) => None,
        Err(e) => return Err(e),
    };
    let alpha = out.params.alpha;
    let cloud = out.params.cloud as f64;
    let bound = opt_lc.map(|o| alpha * lc.edges.len() as f64 * cloud * cloud * (o + 2.0 * alpha));
    let exact_opt = match brute_force_opt_with_limit(&out.qap, crate::oracle::ENUMERATION_LIMIT) {
        Ok(r) => Some(r.opt_value),
        Err(Error::Guard { .. }) => None,
        Err(e) => return Err(e),
    };
    let observed = [Some(sampled_best), canonical_best, exact_opt];
    let bound_exceeded = bound.is_some_and(|b| observed.iter().flatten().any(|&v| v > b));
    Ok(SoundnessReport {
        samples,
        sampled_best,
        canonical_best,
        opt_lc,
        bound,
        exact_opt,
        bound_exceeded,
    })
}
