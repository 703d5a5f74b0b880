//! Build an instance by hand, evaluate maps, and round-trip it through QAPLIB.

use maxqap::formats::{read_qaplib, write_qaplib, AsymmetryPolicy};
use maxqap::instance::{value_qap, QapInstance, WeightedGraph};

fn main() -> maxqap::Result<()> {
    // A weighted path 0-1-2 and a triangle with one heavy edge.
    let g = WeightedGraph::from_rows(vec![
        vec![0.0, 2.0, 0.0],
        vec![2.0, 0.0, 1.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    let h = WeightedGraph::from_rows(vec![
        vec![0.0, 5.0, 1.0],
        vec![5.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
    ])?;
    let inst = QapInstance::weighted(g.clone(), h.clone())?;

    for map in [[0, 1, 2], [0, 2, 1], [2, 0, 1]] {
        println!("{map:?} -> {}", value_qap(&inst, &map)?);
    }

    // Unweighted mode counts edges of G that land on edges of H.
    let on = |w: &WeightedGraph| WeightedGraph::from_fn(3, |u, v| if w.weight(u, v) > 0.0 { 1.0 } else { 0.0 });
    let unweighted = QapInstance::new(on(&g)?, on(&h)?, true)?;
    println!("unweighted [0, 1, 2] -> {}", value_qap(&unweighted, &[0, 1, 2])?);

    let text = write_qaplib(&inst)?;
    print!("{}", String::from_utf8_lossy(&text));
    assert_eq!(read_qaplib(&text, AsymmetryPolicy::Reject)?, inst);
    Ok(())
}
