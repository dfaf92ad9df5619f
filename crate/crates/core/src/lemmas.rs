//! Randomized and exhaustive checks of the order structure around diagonal
//! sets: stabilizer displacement bounds, openness of the exterior, rigidity
//! of interior and boundary points, and the diagonal-distance closed form.
//!
//! Results are deterministic for a given seed regardless of scheduling.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagonal::{
    boundary_class, dist_to_diagonal, equality_partition, exterior_radius, perm_displacement,
    stabilizer_of, BlockPartition, BoundaryClass,
};
use crate::error::{Error, Result};
use crate::perm::{factorial, permutations, Permutation};
use crate::tuple::RealTuple;

/// Largest `n` accepted by the suite (exhaustive loops over `n!` permutations).
pub const MAX_SUITE_N: usize = 7;

/// Radii tested by the stabilizer displacement check.
pub const DISPLACEMENT_EPSILONS: [f64; 3] = [0.1, 1.0, 10.0];

/// Grid used by the diagonal-distance oracle: `c ∈ [−10, 10]`, step `1e−3`.
const GRID_HALF_WIDTH: f64 = 10.0;
const GRID_STEP: f64 = 1e-3;
pub const GRID_TOLERANCE: f64 = 2e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    StabilizerDisplacement,
    ExteriorOpen,
    InteriorRigidity,
    BoundaryHasTies,
    MinimalDiagonalRigidity,
    StabilizerOrder,
    DiagonalDistance,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::StabilizerDisplacement,
        Check::ExteriorOpen,
        Check::InteriorRigidity,
        Check::BoundaryHasTies,
        Check::MinimalDiagonalRigidity,
        Check::StabilizerOrder,
        Check::DiagonalDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::StabilizerDisplacement => "stabilizer-displacement",
            Check::ExteriorOpen => "exterior-open",
            Check::InteriorRigidity => "interior-rigidity",
            Check::BoundaryHasTies => "boundary-has-ties",
            Check::MinimalDiagonalRigidity => "minimal-diagonal-rigidity",
            Check::StabilizerOrder => "stabilizer-order",
            Check::DiagonalDistance => "diagonal-distance",
        }
    }

    fn stream(self) -> u64 {
        Check::ALL.iter().position(|&c| c == self).unwrap() as u64
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Flips the order comparison used by the rigidity checks. Mutation
    /// testing only: a correct suite must report failures with this set.
    pub inject_fault: bool,
}

impl SuiteConfig {
    pub fn new(n_min: usize, n_max: usize, trials: usize, seed: u64) -> Result<Self> {
        if n_min < 2 || n_max > MAX_SUITE_N || n_min > n_max {
            return Err(Error::InvalidArgument(format!(
                "n range {n_min}..{n_max} must lie within 2..{MAX_SUITE_N}"
            )));
        }
        if trials == 0 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        Ok(Self {
            n_min,
            n_max,
            trials,
            seed,
            inject_fault: false,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub check: Check,
    pub n: usize,
    pub cases: usize,
    pub violations: usize,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<27} {:>2} {:>9} {:>10}  status",
            "check", "n", "cases", "violations"
        )?;
        for r in &self.results {
            writeln!(
                f,
                "{:<27} {:>2} {:>9} {:>10}  {}",
                r.check.name(),
                r.n,
                r.cases,
                r.violations,
                if r.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Runs every check for every `n` in the configured range.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let tasks: Vec<(Check, usize)> = Check::ALL
        .iter()
        .flat_map(|&c| (config.n_min..=config.n_max).map(move |n| (c, n)))
        .collect();
    let results = tasks
        .par_iter()
        .map(|&(check, n)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(check.stream() * 64 + n as u64);
            run_check(check, n, config, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { results })
}

fn run_check(
    check: Check,
    n: usize,
    config: &SuiteConfig,
    rng: &mut ChaCha8Rng,
) -> Result<CheckResult> {
    let mut out = CheckResult {
        check,
        n,
        cases: 0,
        violations: 0,
    };
    let fault = config.inject_fault;
    for _ in 0..config.trials {
        let (cases, violations) = match check {
            Check::StabilizerDisplacement => stabilizer_displacement(n, rng)?,
            Check::ExteriorOpen => exterior_open(n, rng)?,
            Check::InteriorRigidity => interior_rigidity(n, rng, fault)?,
            Check::BoundaryHasTies => boundary_has_ties(n, rng)?,
            Check::MinimalDiagonalRigidity => minimal_diagonal_rigidity(n, rng, fault)?,
            Check::StabilizerOrder => stabilizer_order(n, rng)?,
            Check::DiagonalDistance => diagonal_distance(n, rng)?,
        };
        out.cases += cases;
        out.violations += violations;
    }
    Ok(out)
}

fn ordered(x: &RealTuple, fault: bool) -> bool {
    if fault {
        x.as_slice().windows(2).all(|w| w[0] >= w[1])
    } else {
        crate::diagonal::is_nondescending(x)
    }
}

/// Random blocks over `{0..n}`; may be empty.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> BlockPartition {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut blocks = Vec::new();
    let mut rest = idx.as_slice();
    while !rest.is_empty() {
        let take = rng.gen_range(1..=rest.len());
        let (head, tail) = rest.split_at(take);
        if head.len() >= 2 {
            blocks.push(head.to_vec());
        }
        rest = tail;
    }
    BlockPartition::new(n, blocks).expect("shuffled chunks are disjoint")
}

/// Uniform point of the diagonal set with block values in `[−10, 10]`.
pub fn random_diagonal_point<R: Rng>(rng: &mut R, p: &BlockPartition) -> RealTuple {
    let mut z: Vec<f64> = (0..p.n()).map(|_| rng.gen_range(-10.0..10.0)).collect();
    for block in p.blocks() {
        let v = rng.gen_range(-10.0..10.0);
        for &k in block {
            z[k] = v;
        }
    }
    RealTuple::new(z).expect("finite")
}

/// Random direction scaled to 1-norm `radius · u`, `u ∈ [0, 1)`.
fn random_perturbation<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm: f64 = dir.iter().map(|v| v.abs()).sum();
    if norm == 0.0 {
        return vec![0.0; n];
    }
    let scale = radius * rng.gen_range(0.0..1.0) / norm;
    dir.into_iter().map(|v| v * scale).collect()
}

fn add(x: &RealTuple, delta: &[f64]) -> RealTuple {
    RealTuple::new(x.as_slice().iter().zip(delta).map(|(a, b)| a + b).collect())
        .expect("finite")
}

fn strictly_ascending<R: Rng>(rng: &mut R, n: usize) -> RealTuple {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[0] < w[1]) {
            return RealTuple::new(v).expect("finite");
        }
    }
}

/// Sorted tuple drawn from a small pool so that ties are common; at least one
/// tie is forced.
fn random_boundary_point<R: Rng>(rng: &mut R, n: usize) -> RealTuple {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-4..=4) as f64 * 0.5).collect();
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    v[b] = v[a];
    v.sort_by(f64::total_cmp);
    RealTuple::new(v).expect("finite")
}

fn stabilizer_displacement<R: Rng>(n: usize, rng: &mut R) -> Result<(usize, usize)> {
    let mut cases = 0;
    let mut violations = 0;
    for eps in DISPLACEMENT_EPSILONS {
        let p = random_partition(rng, n);
        let base = random_diagonal_point(rng, &p);
        let x = add(&base, &random_perturbation(rng, n, eps));
        if dist_to_diagonal(&x, &p)? >= eps {
            continue;
        }
        for sigma in stabilizer_of(&p)?.elements() {
            cases += 1;
            if perm_displacement(&x, sigma)? >= 2.0 * eps {
                violations += 1;
            }
        }
    }
    Ok((cases, violations))
}

fn exterior_open<R: Rng>(n: usize, rng: &mut R) -> Result<(usize, usize)> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
    if v[0] <= v[n - 1] {
        v.swap(0, n - 1);
        if v[0] == v[n - 1] {
            v[0] += 1.0;
        }
    }
    let x = RealTuple::new(v)?;
    let Some(r) = exterior_radius(&x) else {
        return Ok((1, 1));
    };
    let mut violations = 0;
    const SAMPLES: usize = 8;
    for _ in 0..SAMPLES {
        let y = add(&x, &random_perturbation(rng, n, r));
        if boundary_class(&y) != BoundaryClass::Exterior {
            violations += 1;
        }
    }
    Ok((SAMPLES, violations))
}

fn interior_rigidity<R: Rng>(n: usize, rng: &mut R, fault: bool) -> Result<(usize, usize)> {
    let x = strictly_ascending(rng, n);
    let mut cases = 0;
    let mut violations = 0;
    for sigma in permutations(n)?.filter(|s| !s.is_identity()) {
        cases += 1;
        if ordered(&x.permuted(&sigma)?, fault) {
            violations += 1;
        }
    }
    Ok((cases, violations))
}

fn boundary_has_ties<R: Rng>(n: usize, rng: &mut R) -> Result<(usize, usize)> {
    let x = random_boundary_point(rng, n);
    debug_assert_eq!(boundary_class(&x), BoundaryClass::Boundary);
    let empty = equality_partition(&x, 0.0).is_empty();
    Ok((1, usize::from(boundary_class(&x) == BoundaryClass::Boundary && empty)))
}

fn minimal_diagonal_rigidity<R: Rng>(
    n: usize,
    rng: &mut R,
    fault: bool,
) -> Result<(usize, usize)> {
    let x = random_boundary_point(rng, n);
    let p = equality_partition(&x, 0.0);
    let mut cases = 0;
    let mut violations = 0;
    for sigma in permutations(n)? {
        cases += 1;
        let moved = x.permuted(&sigma)?;
        let broken = if p.fixes(&sigma) {
            moved != x
        } else {
            ordered(&moved, fault)
        };
        if broken {
            violations += 1;
        }
    }
    Ok((cases, violations))
}

fn stabilizer_order<R: Rng>(n: usize, rng: &mut R) -> Result<(usize, usize)> {
    let p = random_partition(rng, n);
    let stab = stabilizer_of(&p)?;
    let expected: usize = p.blocks().iter().map(|b| factorial(b.len())).product();
    let mut violations = usize::from(stab.order() != expected);
    // distinct block values: the fixing permutations are exactly the stabilizer
    let z = random_diagonal_point(rng, &p);
    let fixing: Vec<Permutation> = permutations(n)?
        .filter(|s| z.permuted(s).is_ok_and(|m| m == z))
        .collect();
    let distinct = equality_partition(&z, 0.0) == p;
    if distinct && fixing != stab.elements() {
        violations += 1;
    }
    Ok((1, violations))
}

/// `min_c Σ_{j∈M} |x_j − c|` over the grid, summed over blocks.
pub fn grid_distance_to_diagonal(x: &RealTuple, p: &BlockPartition) -> f64 {
    let steps = (2.0 * GRID_HALF_WIDTH / GRID_STEP).round() as usize;
    p.blocks()
        .iter()
        .map(|block| {
            (0..=steps)
                .map(|i| {
                    let c = -GRID_HALF_WIDTH + i as f64 * GRID_STEP;
                    block.iter().map(|&k| (x[k] - c).abs()).sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

fn diagonal_distance<R: Rng>(n: usize, rng: &mut R) -> Result<(usize, usize)> {
    let p = random_partition(rng, n);
    let x = RealTuple::new((0..n).map(|_| rng.gen_range(-10.0..10.0)).collect())?;
    let closed = dist_to_diagonal(&x, &p)?;
    let grid = grid_distance_to_diagonal(&x, &p);
    Ok((1, usize::from((closed - grid).abs() > GRID_TOLERANCE)))
}
