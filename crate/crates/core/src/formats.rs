//! On-disk instance formats: QAPLIB text and a native JSON layout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{QapInstance, WeightedGraph};

/// What to do with an asymmetric QAPLIB matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AsymmetryPolicy {
    #[default]
    Reject,
    /// Replace `A` by `(A + Aᵀ) / 2` and log a warning.
    Symmetrize,
}

/// Parse QAPLIB text: `n`, then the `n×n` flow matrix (becomes `G`), then the
/// `n×n` distance matrix (becomes `H`), all whitespace separated.
pub fn read_qaplib(text: &[u8], policy: AsymmetryPolicy) -> Result<QapInstance> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut tokens = text.split_ascii_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty QAPLIB file".into()))?
        .parse()
        .map_err(|_| Error::Parse("first token must be the size n".into()))?;
    let values: Vec<f64> = tokens
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number '{t}'")))
        })
        .collect::<Result<_>>()?;
    if values.len() != 2 * n * n {
        return Err(Error::Parse(format!(
            "expected {} matrix entries for n = {n}, found {}",
            2 * n * n,
            values.len()
        )));
    }
    let (a, b) = values.split_at(n * n);
    let g = qaplib_matrix(n, a.to_vec(), policy, "flow")?;
    let h = qaplib_matrix(n, b.to_vec(), policy, "distance")?;
    // QAPLIB carries no objective-mode flag; it is always the weighted sum.
    QapInstance::weighted(g, h)
}

fn qaplib_matrix(
    n: usize,
    mut w: Vec<f64>,
    policy: AsymmetryPolicy,
    name: &str,
) -> Result<WeightedGraph> {
    if let Some(i) = w.iter().position(|&x| x < 0.0) {
        return Err(Error::NegativeWeight {
            row: i / n,
            col: i % n,
            value: w[i],
        });
    }
    let asym = (0..n).any(|u| (u + 1..n).any(|v| w[u * n + v] != w[v * n + u]));
    if asym {
        match policy {
            AsymmetryPolicy::Reject => {
                return WeightedGraph::from_flat(n, w);
            }
            AsymmetryPolicy::Symmetrize => {
                log::warn!("{name} matrix is asymmetric; replacing it by (A + Aᵀ)/2");
                for u in 0..n {
                    for v in u + 1..n {
                        let s = 0.5 * (w[u * n + v] + w[v * n + u]);
                        w[u * n + v] = s;
                        w[v * n + u] = s;
                    }
                }
            }
        }
    }
    WeightedGraph::from_flat(n, w)
}

fn fmt_number(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

fn write_matrix(out: &mut String, g: &WeightedGraph) {
    for u in 0..g.n() {
        let row: Vec<String> = g.row(u).iter().map(|&x| fmt_number(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Write QAPLIB text. The layout is canonical: size line, blank line, flow
/// rows, blank line, distance rows. Needs a square instance.
pub fn write_qaplib(inst: &QapInstance) -> Result<Vec<u8>> {
    if !inst.is_square() {
        return Err(Error::SizeMismatch(
            "QAPLIB stores square instances; pad G first".into(),
        ));
    }
    let mut out = format!("{}\n\n", inst.n_g());
    write_matrix(&mut out, inst.g());
    out.push('\n');
    write_matrix(&mut out, inst.h());
    Ok(out.into_bytes())
}

/// Native JSON instance layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n_g: usize,
    pub n_h: usize,
    pub w_g: Vec<Vec<f64>>,
    pub w_h: Vec<Vec<f64>>,
    pub unweighted: bool,
}

impl From<&QapInstance> for InstanceJson {
    fn from(inst: &QapInstance) -> Self {
        InstanceJson {
            n_g: inst.n_g(),
            n_h: inst.n_h(),
            w_g: inst.g().rows(),
            w_h: inst.h().rows(),
            unweighted: inst.is_unweighted(),
        }
    }
}

impl TryFrom<InstanceJson> for QapInstance {
    type Error = Error;
    fn try_from(j: InstanceJson) -> Result<Self> {
        if j.w_g.len() != j.n_g || j.w_h.len() != j.n_h {
            return Err(Error::SizeMismatch(format!(
                "declared sizes ({}, {}) but matrices have ({}, {}) rows",
                j.n_g,
                j.n_h,
                j.w_g.len(),
                j.w_h.len()
            )));
        }
        QapInstance::new(
            WeightedGraph::from_rows(j.w_g)?,
            WeightedGraph::from_rows(j.w_h)?,
            j.unweighted,
        )
    }
}

pub fn read_json(text: &[u8]) -> Result<QapInstance> {
    let j: InstanceJson = serde_json::from_slice(text)?;
    j.try_into()
}

pub fn write_json(inst: &QapInstance) -> Result<Vec<u8>> {
    Ok(serde_json::to_vec(&InstanceJson::from(inst))?)
}

/// Sniff the format: JSON if the first non-blank byte is `{`, else QAPLIB.
pub fn read_instance(text: &[u8], policy: AsymmetryPolicy) -> Result<QapInstance> {
    match text.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => read_json(text),
        _ => read_qaplib(text, policy),
    }
}
