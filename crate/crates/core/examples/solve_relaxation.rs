//! Solve the Adams–Johnson relaxation with both simplex backends and export it.

use maxqap::instance::{random_instance, WeightLaw};
use maxqap::lp::{build_aj_lp, solve_lp_with, LpBackend, Variant};
use maxqap::oracle::brute_force_opt;

fn main() -> maxqap::Result<()> {
    let inst = random_instance(4, WeightLaw::Integer(3), 7)?;
    for variant in [Variant::Equality, Variant::Inequality] {
        let lp = build_aj_lp(&inst, variant)?;
        println!("{variant:?}: {} variables, {} rows", lp.num_variables(), lp.num_rows());
        for backend in [LpBackend::Sparse, LpBackend::Dense] {
            let sol = solve_lp_with(&lp, backend)?;
            let cert = sol.certificate().expect("solver output is certified");
            println!(
                "  {backend:?}: LP* = {:.6}, {} iterations, max violation {:.1e}, duality gap {:?}",
                sol.objective(),
                cert.iterations,
                cert.max_primal_violation,
                cert.duality_gap
            );
        }
    }
    println!("OPT = {}", brute_force_opt(&inst)?.opt_value);

    let text = build_aj_lp(&inst, Variant::Equality)?.to_lp_text();
    println!("LP export, first lines:");
    text.lines().take(6).for_each(|l| println!("  {l}"));
    Ok(())
}
