// Diagonal sets, their stabilizers, and how permutations interact with the
// sorted cone.

use symprod::diagonal::{
    boundary_class, dist_to_diagonal, equality_partition, is_nondescending,
    nearest_diagonal_point, perm_displacement, stabilizer_of, BlockPartition,
};
use symprod::perm::permutations;
use symprod::RealTuple;

pub fn run_example() -> symprod::Result<()> {
    let x = RealTuple::new(vec![1.0, 1.0, 2.0, 2.0, 2.0])?;
    let blocks = equality_partition(&x, 0.0);
    let stab = stabilizer_of(&blocks)?;
    println!("x = {:?} is {}; equal blocks {blocks}", x.as_slice(), boundary_class(&x));
    println!("stabilizer order {} (= 2! · 3!)", stab.order());

    // only stabilizer elements keep x sorted
    let keep_sorted = permutations(5)?
        .filter(|s| is_nondescending(&x.permuted(s).unwrap()))
        .count();
    assert_eq!(keep_sorted, stab.order());

    // near a diagonal set, stabilizer elements barely move the point
    let p = BlockPartition::new(4, vec![vec![0, 2], vec![1, 3]])?;
    let y = RealTuple::new(vec![0.9, -3.0, 1.1, -2.8])?;
    let eps = dist_to_diagonal(&y, &p)?;
    println!(
        "distance from {:?} to the diagonal {p}: {eps:.3} (nearest {:?})",
        y.as_slice(),
        nearest_diagonal_point(&y, &p)?.as_slice()
    );
    for sigma in stabilizer_of(&p)?.elements() {
        let moved = perm_displacement(&y, sigma)?;
        println!("  σ = {sigma:<10} displacement {moved:.3}");
        assert!(moved <= 2.0 * eps + 1e-12);
    }
    Ok(())
}

fn main() {
    run_example().expect("diagonal example failed");
}
