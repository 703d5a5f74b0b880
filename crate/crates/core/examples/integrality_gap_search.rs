//! Random search for instances where the relaxation is loose.
//!
//! Usage: `integrality_gap_search [n] [seeds per law]`.

use maxqap::instance::{random_instance, WeightLaw};
use maxqap::oracle::integrality_gap;

fn main() -> maxqap::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let seeds: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(30);
    let mut best: Option<(f64, String, u64)> = None;
    for law in ["sparse0.3", "sparse0.5", "int1", "uniform01"] {
        let l: WeightLaw = law.parse()?;
        let mut law_best: f64 = 1.0;
        for seed in 0..seeds {
            let g = integrality_gap(&random_instance(n, l, seed)?)?;
            if g.is_unbounded() {
                continue;
            }
            law_best = law_best.max(g.gap);
            if best.as_ref().is_none_or(|b| g.gap > b.0) {
                best = Some((g.gap, law.to_string(), seed));
            }
        }
        println!("{law:<10} max gap {law_best:.4}");
    }
    if let Some((gap, law, seed)) = best {
        println!("best: {gap:.4} from random_instance({n}, {law}, {seed})");
    }
    Ok(())
}
