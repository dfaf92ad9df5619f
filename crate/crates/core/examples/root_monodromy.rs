// Why sorting has no complex analogue: following the square roots of
// e^{iθ} once around the circle swaps them.

use symprod::monodromy::{
    propagate_labels, roots_loop_generator, rotating_symmetric_loop, track_loop,
    track_sorted_real_loop,
};
use symprod::Permutation;

pub fn run_example() -> symprod::Result<()> {
    for (k, steps) in [(2, 256), (3, 512), (4, 512)] {
        let path = roots_loop_generator(k, steps, 1.0)?;
        let h = track_loop(&path)?;
        println!(
            "k = {k}: holonomy {} ({}), path length {:.4}",
            h.permutation,
            h.class_label(),
            h.total_path_cost
        );
    }

    // any labeling of the starting roots comes back permuted
    let path = roots_loop_generator(2, 64, 1.0)?;
    let start = Permutation::identity(2);
    let end = propagate_labels(&path, &start)?;
    println!("labels {:?} return as {:?}", start.as_slice(), end.as_slice());
    assert_ne!(start, end);

    // a real spectral loop, sorted at every sample, closes up
    let real = rotating_symmetric_loop(128)?;
    let h = track_sorted_real_loop(&real)?;
    println!("real eigenvalue loop: {}", h.class_label());
    assert!(h.is_identity());
    Ok(())
}

fn main() {
    run_example().expect("monodromy example failed");
}
