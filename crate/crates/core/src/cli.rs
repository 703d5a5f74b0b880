//! Argument parsing and command dispatch for the `maxqap` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::formats::{read_instance, write_json, AsymmetryPolicy};
use crate::instance::{random_instance, QapInstance, WeightLaw};
use crate::labelcover::{edge_count_check, reduce_to_qap, soundness_probe, LabelCoverInstance};
use crate::lp::{LpBackend, Variant};
use crate::report::{solve, RoundMode, SolveOptions};
use crate::suite::{run_suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "maxqap", version, about = "Maximum quadratic assignment solver lab")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the LP relaxation, round it, and optionally enumerate the optimum.
    Solve(SolveArgs),
    /// Reduce a label cover instance to unweighted MAXQAP.
    Reduce(ReduceArgs),
    /// Run the acceptance suite.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// QAPLIB or JSON instance file.
    #[arg(long, conflicts_with = "generate", required_unless_present = "generate")]
    pub instance: Option<PathBuf>,
    /// Random instance `n:law:seed`, e.g. `6:uniform01:3`, `5:int3:0`, `7:sparse0.4:1`.
    #[arg(long)]
    pub generate: Option<String>,
    #[arg(long, default_value = "equality")]
    pub variant: Variant,
    #[arg(long, value_enum, default_value = "both")]
    pub round: RoundArg,
    /// Randomized rounding runs; the best is kept.
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    /// Also compute the exact optimum by enumeration.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the JSON record instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Write `report.jsonl` and `summary.txt` here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the relaxation in LP text format to this file.
    #[arg(long)]
    pub lp_out: Option<PathBuf>,
    #[arg(long, default_value = "sparse")]
    pub lp_backend: LpBackend,
    /// Average asymmetric QAPLIB matrices instead of rejecting them.
    #[arg(long)]
    pub symmetrize: bool,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum RoundArg {
    Randomized,
    Derandomized,
    Both,
}

impl From<RoundArg> for RoundMode {
    fn from(r: RoundArg) -> Self {
        match r {
            RoundArg::Randomized => RoundMode::Randomized,
            RoundArg::Derandomized => RoundMode::Derandomized,
            RoundArg::Both => RoundMode::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Label cover JSON: `{n, k, edges: [[u,v],...], pi: [[[x,y],...],...]}`.
    #[arg(long)]
    pub labelcover: PathBuf,
    /// Cloud size N. Defaults to n⁴|E|k⁵, which the memory guard usually refuses.
    #[arg(long = "cloud", short = 'N')]
    pub cloud: Option<usize>,
    /// Edge probability. Defaults to 1/n.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for `reduced.json` and `reduced.sidecar.json`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also sample this many random maps for the soundness probe.
    #[arg(long)]
    pub probe: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sizes for the relaxation and derandomization criteria.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7")]
    pub sizes: Vec<usize>,
    /// Instances per size.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long)]
    pub json: bool,
    /// Write `suite.jsonl` (one record per criterion) and `summary.txt` here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse `n:law:seed`.
pub fn parse_generator(spec: &str) -> Result<(usize, WeightLaw, u64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [n, law, seed] = parts[..] else {
        return Err(Error::Parse(format!("generator spec '{spec}' is not n:law:seed")));
    };
    let n = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad size '{n}' in generator spec")))?;
    let seed = seed
        .parse()
        .map_err(|_| Error::Parse(format!("bad seed '{seed}' in generator spec")))?;
    Ok((n, law.parse()?, seed))
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

fn load_instance(args: &SolveArgs) -> Result<(QapInstance, String)> {
    if let Some(spec) = &args.generate {
        let (n, law, seed) = parse_generator(spec)?;
        return Ok((random_instance(n, law, seed)?, format!("generate:{spec}")));
    }
    let path = args.instance.as_ref().expect("clap requires one source");
    let text = fs::read(path).map_err(|e| io_err(path, e))?;
    let policy = if args.symmetrize {
        AsymmetryPolicy::Symmetrize
    } else {
        AsymmetryPolicy::Reject
    };
    Ok((read_instance(&text, policy)?, path.display().to_string()))
}

pub fn cmd_solve(args: &SolveArgs) -> Result<bool> {
    let (inst, source) = load_instance(args)?;
    for w in inst.diagonal_warnings() {
        log::warn!("{w}");
    }
    let opts = SolveOptions {
        variant: args.variant,
        backend: args.lp_backend,
        round: args.round.into(),
        rounds: args.rounds,
        exact: args.exact,
        seed: args.seed,
    };
    let run = solve(&inst, &source, &opts)?;
    let report = &run.report;
    if let Some(path) = &args.lp_out {
        write_file(path, run.relaxation.to_lp_text().as_bytes())?;
    }
    let line = report.to_json_line()?;
    let table = report.render_table();
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
        write_file(&dir.join("report.jsonl"), format!("{line}\n").as_bytes())?;
        write_file(&dir.join("summary.txt"), table.as_bytes())?;
    }
    if args.json {
        println!("{line}");
    } else {
        print!("{table}");
    }
    Ok(report.passed())
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<bool> {
    let text = fs::read(&args.labelcover).map_err(|e| io_err(&args.labelcover, e))?;
    let lc = LabelCoverInstance::from_json(&text)?;
    let out = reduce_to_qap(&lc, args.cloud, args.alpha, args.seed)?;
    ensure_dir(&args.out)?;
    write_file(&args.out.join("reduced.json"), &write_json(&out.qap)?)?;
    let sidecar = serde_json::to_vec_pretty(&out.sidecar(&lc))?;
    write_file(&args.out.join("reduced.sidecar.json"), &sidecar)?;

    let count = edge_count_check(&out);
    let probe = args
        .probe
        .map(|samples| soundness_probe(&out, &lc, samples, args.seed))
        .transpose()?;
    if args.json {
        let v = serde_json::json!({
            "params": out.params,
            "n_g": out.qap.n_g(),
            "n_h": out.qap.n_h(),
            "edge_count": count,
            "probe": probe,
        });
        println!("{v}");
    } else {
        println!(
            "N = {}, alpha = {}, seed = {}: |V_G~| = {}, |V_H~| = {}",
            out.params.cloud,
            out.params.alpha,
            out.params.seed,
            out.qap.n_g(),
            out.qap.n_h()
        );
        println!(
            "|E_G~| = {} against expectation {:.1} ({})",
            count.edges,
            count.expectation,
            if count.passed { "at least half" } else { "below half" }
        );
        if let Some(p) = &probe {
            println!("probe: best of {} random maps = {}", p.samples, p.sampled_best);
            if let Some(c) = p.canonical_best {
                println!("probe: best canonical map = {c}");
            }
            if let (Some(o), Some(b)) = (p.opt_lc, p.bound) {
                println!("probe: OPT_LC = {o}, bound alpha |E| N^2 (OPT_LC + 2 alpha) = {b}");
            }
            if let Some(e) = p.exact_opt {
                println!("probe: exact OPT of the reduction = {e}");
            }
            if p.bound_exceeded {
                println!("probe: an observed value exceeds the bound");
            }
        }
        println!("wrote {}", args.out.join("reduced.json").display());
    }
    // Exceeding the bound is a finding unless the exact optimum does it.
    let exact_violation = probe
        .as_ref()
        .is_some_and(|p| p.exact_opt.zip(p.bound).is_some_and(|(e, b)| e > b));
    Ok(!exact_violation)
}

pub fn cmd_suite(args: &SuiteArgs) -> Result<bool> {
    let cfg = SuiteConfig {
        seed: args.seed,
        sizes: args.sizes.clone(),
        per_size: args.count,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    let mut outcomes = report.outcomes.clone();
    outcomes.sort_by_key(|o| o.id);
    let lines: Vec<String> = outcomes
        .iter()
        .map(serde_json::to_string)
        .collect::<std::result::Result<_, _>>()?;
    let table: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
        write_file(&dir.join("suite.jsonl"), (lines.join("\n") + "\n").as_bytes())?;
        write_file(&dir.join("summary.txt"), table.as_bytes())?;
    }
    if args.json {
        let v = serde_json::json!({
            "config": report.config,
            "passed": report.all_passed(),
            "outcomes": outcomes,
        });
        println!("{v}");
    } else {
        print!("{table}");
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    }
    Ok(report.all_passed())
}

/// Run a parsed command. `Ok(false)` means it ran but a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Suite(a) => cmd_suite(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_specs() {
        assert_eq!(parse_generator("6:uniform01:3").unwrap(), (6, WeightLaw::Uniform01, 3));
        assert_eq!(parse_generator("5:int3:0").unwrap(), (5, WeightLaw::Integer(3), 0));
        assert!(parse_generator("5:int3").is_err());
        assert!(parse_generator("x:int3:1").is_err());
        assert!(parse_generator("4:gauss:1").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
