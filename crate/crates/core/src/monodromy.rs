//! Tracking unordered complex tuples around closed loops.
//!
//! Each step matches the components of consecutive samples by a minimal-cost
//! assignment; composing the steps around the loop gives the holonomy
//! permutation. A non-identity holonomy means no continuous labeling of the
//! loop exists, so no continuous selection of representatives can exist on
//! ℂⁿ/∼ the way sorting provides one on ℝⁿ/∼.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};
use crate::metric::{dist_assignment, dist_bruteforce, Distance, UnorderedTuple};
use crate::perm::{Permutation, BRUTE_FORCE_CAP};
use crate::selection::canonicalize;
use crate::tuple::{ComplexTuple, RealTuple};

/// Cyclically ordered samples; the last sample is followed by the first.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexLoop {
    samples: Vec<ComplexTuple>,
}

impl ComplexLoop {
    pub fn new(samples: Vec<ComplexTuple>) -> Result<Self> {
        let first = samples.first().ok_or(Error::Empty("loop has no samples"))?;
        let n = first.len();
        for s in &samples {
            check_len(n, s.len())?;
        }
        Ok(Self { samples })
    }

    /// Real samples embedded with zero imaginary parts.
    pub fn from_real(samples: &[RealTuple]) -> Result<Self> {
        Self::new(samples.iter().map(RealTuple::to_complex).collect())
    }

    pub fn samples(&self) -> &[ComplexTuple] {
        &self.samples
    }

    pub fn step_count(&self) -> usize {
        self.samples.len()
    }

    pub fn n(&self) -> usize {
        self.samples[0].len()
    }
}

/// Net relabeling after one traversal of a loop.
#[derive(Clone, Debug, PartialEq)]
pub struct Holonomy {
    /// Component `j` of sample 0 is carried to component `permutation(j)`.
    pub permutation: Permutation,
    pub total_path_cost: f64,
}

impl Holonomy {
    pub fn is_identity(&self) -> bool {
        self.permutation.is_identity()
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        self.permutation.cycle_type()
    }

    /// Conjugacy class label such as `identity`, `2-cycle` or `2-cycle + 2-cycle`.
    pub fn class_label(&self) -> String {
        let parts: Vec<String> = self
            .cycle_type()
            .into_iter()
            .filter(|&l| l > 1)
            .map(|l| format!("{l}-cycle"))
            .collect();
        if parts.is_empty() {
            "identity".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn step_matching(prev: &ComplexTuple, next: &ComplexTuple) -> Result<Distance> {
    if prev.len() <= BRUTE_FORCE_CAP {
        dist_bruteforce(prev, next)
    } else {
        dist_assignment(prev, next)
    }
}

/// Minimal-cost assignment between consecutive samples; `prev[j]` is matched
/// to `next[σ(j)]`. Ties resolve to the lexicographically smallest minimizer
/// for `n ≤ 8`.
pub fn match_step(prev: &ComplexTuple, next: &ComplexTuple) -> Result<Permutation> {
    Ok(step_matching(prev, next)?.attaining_perm)
}

struct Steps {
    matchings: Vec<Distance>,
}

/// Matches every consecutive pair, wrap-around included, and enforces the
/// anti-aliasing bound `step distance < ½ · min intra-sample gap`.
fn checked_steps(path: &ComplexLoop) -> Result<Steps> {
    let samples = path.samples();
    let mut min_gap = f64::INFINITY;
    for (i, s) in samples.iter().enumerate() {
        if let Some(g) = s.min_gap() {
            if g == 0.0 {
                return Err(Error::DegenerateLoop { sample: i });
            }
            min_gap = min_gap.min(g);
        }
    }
    let half_gap = min_gap / 2.0;

    let len = samples.len();
    let mut matchings = Vec::with_capacity(len);
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..len {
        let m = step_matching(&samples[i], &samples[(i + 1) % len])?;
        if m.value >= half_gap && worst.is_none_or(|(_, d)| m.value > d) {
            worst = Some((i, m.value));
        }
        matchings.push(m);
    }
    if let Some((step, distance)) = worst {
        let ratio = distance / half_gap;
        let suggested_steps = ((len as f64) * ratio * 2.0).ceil().max(len as f64 * 2.0) as usize;
        return Err(Error::Undersampled {
            step,
            distance,
            half_gap,
            suggested_steps,
        });
    }
    Ok(Steps { matchings })
}

/// Composes the step matchings around the loop.
pub fn track_loop(path: &ComplexLoop) -> Result<Holonomy> {
    let steps = checked_steps(path)?;
    let mut permutation = Permutation::identity(path.n());
    let mut total_path_cost = 0.0;
    for m in &steps.matchings {
        permutation = m.attaining_perm.compose(&permutation)?;
        total_path_cost += m.value;
    }
    Ok(Holonomy {
        permutation,
        total_path_cost,
    })
}

/// Carries a labeling of sample 0 around the loop by the step matchings.
///
/// `initial(j)` is the component of sample 0 carrying label `j`; the result
/// gives the component of sample 0 carrying label `j` after one traversal.
pub fn propagate_labels(path: &ComplexLoop, initial: &Permutation) -> Result<Permutation> {
    check_len(path.n(), initial.len())?;
    let steps = checked_steps(path)?;
    steps
        .matchings
        .iter()
        .try_fold(initial.clone(), |labels, m| m.attaining_perm.compose(&labels))
}

/// The `k` roots of `w^k = radius · e^{iθ}` for `θ = 2πj / steps`,
/// `j = 0..steps`. Sample `j` lists `radius^{1/k} e^{i(θ + 2πm)/k}` for
/// `m = 0..k`.
pub fn roots_loop_generator(k: usize, steps: usize, radius: f64) -> Result<ComplexLoop> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("root order k = {k} must be at least 2")));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {radius} must be positive")));
    }
    let minimum = 8 * k;
    if steps < minimum {
        return Err(Error::TooFewSteps { steps, minimum });
    }
    let modulus = radius.powf(1.0 / k as f64);
    let samples = (0..steps)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / steps as f64;
            let roots = (0..k)
                .map(|m| Complex64::from_polar(modulus, (theta + 2.0 * PI * m as f64) / k as f64))
                .collect();
            ComplexTuple::new(roots)
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexLoop::new(samples)
}

/// Eigenvalues of the symmetric matrix `[[a, b], [b, c]]` by the quadratic
/// formula, larger one first.
pub fn symmetric_2x2_eigenvalues(a: f64, b: f64, c: f64) -> [f64; 2] {
    let mean = 0.5 * (a + c);
    let radius = (0.5 * (a - c)).hypot(b);
    [mean + radius, mean - radius]
}

/// Spectra of `[[cos t, sin t], [sin t, −cos t]]` at `t = 2πj / steps`.
pub fn rotating_symmetric_loop(steps: usize) -> Result<Vec<RealTuple>> {
    (0..steps)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / steps as f64;
            RealTuple::new(symmetric_2x2_eigenvalues(t.cos(), t.sin(), -t.cos()).to_vec())
        })
        .collect()
}

/// Tracks a real loop after replacing every sample with its sorted
/// representative. Sorting is a continuous selection on ℝⁿ/∼, so the
/// resulting holonomy is always the identity.
pub fn track_sorted_real_loop(samples: &[RealTuple]) -> Result<Holonomy> {
    let sorted: Vec<RealTuple> = samples
        .iter()
        .map(|s| canonicalize(&UnorderedTuple::new(s.clone())))
        .collect();
    track_loop(&ComplexLoop::from_real(&sorted)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(v: &[(f64, f64)]) -> ComplexTuple {
        ComplexTuple::new(v.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap()
    }

    #[test]
    fn match_step_identity_on_equal_samples() {
        let a = ct(&[(1.0, 0.0), (0.0, 2.0), (-3.0, 1.0)]);
        assert!(match_step(&a, &a).unwrap().is_identity());
    }

    #[test]
    fn match_step_detects_swap() {
        let prev = ct(&[(1.0, 0.0), (-1.0, 0.0)]);
        let next = ct(&[(-1.01, 0.0), (1.01, 0.0)]);
        // identity costs 2.01 + 2.01, swap costs 0.01 + 0.01
        assert_eq!(match_step(&prev, &next).unwrap().as_slice(), &[1, 0]);
    }

    #[test]
    fn match_step_dimension_mismatch() {
        assert!(match_step(&ct(&[(0.0, 0.0)]), &ct(&[(0.0, 0.0), (1.0, 0.0)])).is_err());
    }

    #[test]
    fn constant_loop_has_identity_holonomy() {
        let a = ct(&[(1.0, 0.0), (0.0, 2.0), (-3.0, 1.0)]);
        let path = ComplexLoop::new(vec![a; 10]).unwrap();
        let h = track_loop(&path).unwrap();
        assert!(h.is_identity());
        assert_eq!(h.total_path_cost, 0.0);
        assert_eq!(h.class_label(), "identity");
    }

    #[test]
    fn square_and_cube_roots() {
        let h = track_loop(&roots_loop_generator(2, 256, 1.0).unwrap()).unwrap();
        assert_eq!(h.permutation.as_slice(), &[1, 0]);
        assert_eq!(h.class_label(), "2-cycle");
        let h = track_loop(&roots_loop_generator(3, 512, 1.0).unwrap()).unwrap();
        assert_eq!(h.cycle_type(), vec![3]);
        assert_eq!(h.class_label(), "3-cycle");
    }

    #[test]
    fn root_generator_samples() {
        let path = roots_loop_generator(3, 24, 1.0).unwrap();
        let first = &path.samples()[0];
        let expected = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0].map(|a| Complex64::from_polar(1.0, a));
        for (z, w) in first.as_slice().iter().zip(expected) {
            assert!((z - w).norm() < 1e-12);
        }
        assert_eq!(path.step_count(), 24);
    }

    #[test]
    fn root_generator_rejects_bad_arguments() {
        assert_eq!(
            roots_loop_generator(2, 15, 1.0).unwrap_err(),
            Error::TooFewSteps { steps: 15, minimum: 16 }
        );
        assert!(roots_loop_generator(1, 100, 1.0).is_err());
        assert!(roots_loop_generator(2, 100, 0.0).is_err());
    }

    #[test]
    fn undersampled_loop_is_rejected() {
        // two roots jump a quarter turn per step: chord sum exceeds half the gap
        let samples: Vec<ComplexTuple> = (0..4)
            .map(|j| {
                let t = PI * j as f64 / 2.0;
                ct(&[(t.cos(), t.sin()), (-t.cos(), -t.sin())])
            })
            .collect();
        let err = track_loop(&ComplexLoop::new(samples).unwrap()).unwrap_err();
        match err {
            Error::Undersampled { suggested_steps, .. } => assert!(suggested_steps > 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn coincident_components_are_degenerate() {
        let path = ComplexLoop::new(vec![ct(&[(1.0, 0.0), (1.0, 0.0)])]).unwrap();
        assert_eq!(track_loop(&path).unwrap_err(), Error::DegenerateLoop { sample: 0 });
    }

    #[test]
    fn eigenvalue_loop_lifts_to_identity() {
        let samples = rotating_symmetric_loop(64).unwrap();
        for s in &samples {
            assert!((s[0] - 1.0).abs() < 1e-12 && (s[1] + 1.0).abs() < 1e-12);
        }
        assert!(track_sorted_real_loop(&samples).unwrap().is_identity());
    }

    #[test]
    fn labels_come_back_permuted() {
        let path = roots_loop_generator(2, 64, 2.0).unwrap();
        let start = Permutation::identity(2);
        let end = propagate_labels(&path, &start).unwrap();
        assert_ne!(end, start);
    }
}
