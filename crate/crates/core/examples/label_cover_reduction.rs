//! Reduce a small label cover to unweighted MAXQAP and probe both directions.

use maxqap::labelcover::{
    canonical_map, edge_count_check, reduce_to_qap, soundness_probe, LabelCoverInstance, Labeling,
};
use maxqap::oracle::brute_force_label_cover;

fn main() -> maxqap::Result<()> {
    // A path 0-1-2 with "labels differ" on both edges: satisfiable with k = 2.
    let differ = vec![(0, 1), (1, 0)];
    let lc = LabelCoverInstance::new(3, 2, vec![(0, 1), (1, 2)], vec![differ.clone(), differ])?;
    let (opt, best) = brute_force_label_cover(&lc)?;
    println!("OPT_LC = {opt} with labeling {:?}", best.lambda);

    let out = reduce_to_qap(&lc, Some(2), Some(0.5), 9)?;
    println!(
        "|V_G~| = {}, |V_H~| = {}, |E_uv| = {:?}",
        out.qap.n_g(),
        out.qap.n_h(),
        out.edge_sets.iter().map(Vec::len).collect::<Vec<_>>()
    );
    let check = edge_count_check(&out);
    println!("|E_G~| = {} (expectation {})", check.edges, check.expectation);

    let good = canonical_map(&out, &best)?;
    let bad = canonical_map(&out, &Labeling { lambda: vec![0, 0, 0] })?;
    println!("canonical map of the optimum: {}, of an all-zero labeling: {}", good.value, bad.value);

    let probe = soundness_probe(&out, &lc, 200, 1)?;
    println!(
        "probe: random maps {}, canonical {:?}, exact {:?}",
        probe.sampled_best, probe.canonical_best, probe.exact_opt
    );

    match reduce_to_qap(&lc, None, None, 0) {
        Ok(out) => println!("default parameters fit: N = {}", out.params.cloud),
        Err(e) => println!("default parameters refused: {e}"),
    }
    Ok(())
}
