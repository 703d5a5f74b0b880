//! Hungarian matchings and the decomposition of a fractional matching.

use maxqap::matching::{
    decompose_fractional_matching, max_weight_partial_matching, max_weight_perfect_matching,
    sample_fractional_matching, CostMatrix, FractionalMatching,
};

fn main() -> maxqap::Result<()> {
    let c = CostMatrix::from_rows(&[
        vec![7.0, 2.0, 1.0],
        vec![6.0, 8.0, 3.0],
        vec![5.0, 4.0, 9.0],
    ])?;
    let perm = max_weight_perfect_matching(&c)?;
    println!("perfect {perm:?}, value {}", c.permutation_value(&perm));

    // Negative entries are never worth matching.
    let mixed = CostMatrix::from_rows(&[vec![-3.0, 4.0, -1.0, 0.5], vec![2.0, 5.0, -6.0, -2.0]])?;
    let partial = max_weight_partial_matching(&mixed);
    println!("partial {partial:?}, value {}", mixed.value_of(&partial));

    let z = FractionalMatching::from_rows(&[
        vec![0.5, 0.25, 0.0],
        vec![0.0, 0.5, 0.5],
        vec![0.25, 0.0, 0.25],
    ])?;
    let d = decompose_fractional_matching(&z);
    for (w, m) in &d.terms {
        println!("{w:.4} x {m:?}");
    }
    println!("total weight {:.4}, {} nonzeros in z", d.total_weight(), z.support_size());
    println!("sampled {:?}", sample_fractional_matching(&z, 1));
    Ok(())
}
