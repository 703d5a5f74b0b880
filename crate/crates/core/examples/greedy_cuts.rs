//! The one-pass greedy cut and its directed variant.

use maxqap::instance::WeightedGraph;
use maxqap::rounding::{greedy_max_cut, greedy_max_dicut, Digraph};

fn main() -> maxqap::Result<()> {
    // A 5-cycle with one chord.
    let g = WeightedGraph::from_fn(5, |u, v| {
        let d = (u + 5 - v) % 5;
        if d == 1 || d == 4 || (u.min(v), u.max(v)) == (0, 2) { 1.0 } else { 0.0 }
    })?;
    let cut = greedy_max_cut(&g);
    println!(
        "cut {:?} | {:?}: {} of {}",
        cut.left,
        cut.right,
        cut.cut_value,
        g.total_edge_weight()
    );

    // A directed cycle where every arc also has a lighter reverse arc.
    let d = Digraph::from_fn(4, |p, q| {
        if (p + 1) % 4 == q {
            3.0
        } else if (q + 1) % 4 == p {
            1.0
        } else {
            0.0
        }
    })?;
    let dicut = greedy_max_dicut(&d);
    println!(
        "dicut {:?} -> {:?}: {} of {}",
        dicut.left,
        dicut.right,
        dicut.cut_value,
        d.total_weight()
    );
    Ok(())
}
