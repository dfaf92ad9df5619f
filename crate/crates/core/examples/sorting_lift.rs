// Lifting a continuous spectrum-valued map by sorting.
//
// The eigenvalues of a symmetric 2×2 matrix family form an unordered pair at
// each parameter value. Sorting picks a representative at every sample, and
// the lifted path moves exactly as far as the unordered pairs do.

use std::f64::consts::PI;

use symprod::metric::UnorderedTuple;
use symprod::monodromy::symmetric_2x2_eigenvalues;
use symprod::selection::{continuity_report, lift_field, SampledField};

pub fn run_example() -> symprod::Result<()> {
    let steps = 64;
    let mut points = Vec::new();
    let mut values = Vec::new();
    for j in 0..=steps {
        let t = 2.0 * PI * j as f64 / steps as f64;
        // the two eigenvalues cross at t = π/2 and t = 3π/2
        let [hi, lo] = symmetric_2x2_eigenvalues(t.cos(), 0.0, -t.cos());
        points.push(vec![t]);
        values.push(UnorderedTuple::from_values(vec![hi, lo])?);
    }
    let phi = SampledField::path(1, points, values)?;
    let f = lift_field(&phi);

    for (p, v) in f.points().iter().zip(f.values()).step_by(16) {
        println!("t = {:5.3}  f(t) = {:?}", p[0], v.as_slice());
    }
    let report = continuity_report(&f, &phi)?;
    println!(
        "max ‖f(a) − f(b)‖₁ / d(φ(a), φ(b)) = {} over {} edges",
        report.max_ratio, report.edges_checked
    );
    assert!((report.max_ratio - 1.0).abs() < 1e-9);
    Ok(())
}

fn main() {
    run_example().expect("lift example failed");
}
