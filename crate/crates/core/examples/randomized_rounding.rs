//! One traced randomized rounding run, then the spread over many seeds.

use maxqap::instance::{random_instance, WeightLaw};
use maxqap::lp::{solve_instance, Variant};
use maxqap::rounding::{best_of_k, randomized_round, randomized_round_traced};

fn main() -> maxqap::Result<()> {
    let inst = random_instance(6, WeightLaw::Uniform01, 3)?;
    let sol = solve_instance(&inst, Variant::Equality)?;
    println!("LP* = {:.4}", sol.objective());

    let run = randomized_round_traced(&inst, &sol, 42)?;
    println!("L_G = {:?}, L_H = {:?}", run.l_g, run.l_h);
    println!("proposals {:?}", run.proposals);
    println!("after collisions {:?}", run.phi);
    println!("map {:?}, value {:.4}", run.assignment.map, run.assignment.value);

    let values: Vec<f64> = (0..200)
        .map(|s| randomized_round(&inst, &sol, s).map(|a| a.value))
        .collect::<maxqap::Result<_>>()?;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let (best, i) = best_of_k(&inst, &sol, 42, 32)?;
    println!("mean over 200 seeds {mean:.4}, best of 32 {:.4} (run {i})", best.value);
    Ok(())
}
