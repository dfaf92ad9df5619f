// Distance between unordered tuples with each engine, plus the permutation
// that realizes it.

use symprod::metric::{dist_assignment, dist_bruteforce, dist_sorted, Engine, UnorderedTuple};
use symprod::{ComplexTuple, RealTuple};
use num_complex::Complex64;

pub fn run_example() -> symprod::Result<()> {
    let y = RealTuple::new(vec![1.0, 5.0, -2.0, 0.5])?;
    let z = RealTuple::new(vec![0.0, 2.0, 3.0, -1.0])?;

    for engine in Engine::ALL {
        let d = engine.distance(&y, &z)?;
        println!(
            "{:>10}: d = {:<6} pairing y[k] with z[σ(k)], σ = {:?}",
            engine.name(),
            d.value,
            d.attaining_perm.as_slice()
        );
    }
    let brute = dist_bruteforce(&y, &z)?;
    assert_eq!(brute.value, dist_sorted(&y, &z)?.value);

    // reordering either side never changes the distance
    let a = UnorderedTuple::new(y.clone());
    let b = UnorderedTuple::new(RealTuple::new(vec![-1.0, 3.0, 0.0, 2.0])?);
    assert_eq!(a.distance(&b)?, brute.value);

    // complex tuples go through the assignment solver
    let i = Complex64::new(0.0, 1.0);
    let p = ComplexTuple::new(vec![i, -i, Complex64::new(2.0, 0.0)])?;
    let q = ComplexTuple::new(vec![Complex64::new(2.0, 0.1), -i, i])?;
    let d = dist_assignment(&p, &q)?;
    println!("complex: d = {:.3}, σ = {:?}", d.value, d.attaining_perm.as_slice());
    Ok(())
}

fn main() {
    run_example().expect("metric example failed");
}
