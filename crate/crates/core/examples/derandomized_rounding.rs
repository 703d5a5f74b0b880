//! The deterministic rounding, step by step.

use maxqap::instance::{random_instance, WeightLaw};
use maxqap::lp::{solve_instance, Variant};
use maxqap::rounding::derandomized::StepKind;
use maxqap::rounding::{derandomized_round_traced, heavy_light_split, DerandOptions};

fn main() -> maxqap::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let inst = random_instance(n, WeightLaw::Sparse(0.4), 11)?;
    let sol = solve_instance(&inst, Variant::Equality)?;
    let split = heavy_light_split(&inst, &sol);
    println!(
        "n = {n}, LP* = {:.4} (heavy {:.4}, light {:.4})",
        sol.objective(),
        split.lp_heavy,
        split.lp_light
    );

    let trace = derandomized_round_traced(&inst, &sol, &DerandOptions::default())?;
    for step in &trace.steps {
        let what = match &step.kind {
            StepKind::Light { guaranteed } => format!("light case, guaranteed {guaranteed:.4}"),
            StepKind::Star(s) => format!(
                "star at {} -> {}, leaves {:?}, profit {:.4}",
                s.center, s.center_image, s.leaves, s.profit
            ),
            StepKind::Exhausted => "LP mass exhausted".to_string(),
        };
        println!(
            "{:>3} left, LP {:.4} -> {:.4}: {what}",
            step.remaining, step.lp_before, step.lp_after
        );
    }
    println!(
        "map {:?}, value {:.4}, certified bound {:.6}",
        trace.assignment.map, trace.assignment.value, trace.certified_bound
    );
    Ok(())
}
