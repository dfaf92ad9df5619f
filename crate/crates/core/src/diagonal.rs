//! Diagonal sets, their stabilizers, and the order structure of the
//! non-descending cone.
//!
//! A [`BlockPartition`] `M₁, …, M_i` names the diagonal set
//! `𝒳 = { z : z_m = z_l whenever m, l share a block }`. Its stabilizer is the
//! set of permutations fixing every point of `𝒳`, which is the product of the
//! symmetric groups on the blocks.

use std::fmt;

use crate::error::{check_len, Error, Result};
use crate::perm::{permutations, Permutation, ENUMERATION_CAP};
use crate::tuple::RealTuple;

/// Pairwise disjoint index blocks over `{0..n}`, each of size at least two.
///
/// Blocks are kept sorted internally and ordered by their smallest index, so
/// two partitions describing the same diagonal set compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![false; n];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.len() < 2 {
                return Err(Error::InvalidPartition(format!(
                    "block {block:?} has fewer than two indices"
                )));
            }
            block.sort_unstable();
            for &k in block.iter() {
                if k >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {k} out of range for n = {n}"
                    )));
                }
                if std::mem::replace(&mut owner[k], true) {
                    return Err(Error::InvalidPartition(format!(
                        "index {k} appears in more than one block"
                    )));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// The partition with no blocks; its diagonal set is all of ℝⁿ.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            blocks: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block id of every index, `None` for unconstrained indices.
    pub fn block_of(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &k in block {
                owner[k] = Some(b);
            }
        }
        owner
    }

    /// `Π |M_j|!`, the order of the stabilizer (saturating at `usize::MAX`).
    pub fn stabilizer_order(&self) -> usize {
        self.blocks.iter().fold(1usize, |acc, b| {
            acc.saturating_mul(factorial_checked(b.len()).unwrap_or(usize::MAX))
        })
    }

    /// Whether `z` lies in the diagonal set (exact equality within blocks).
    pub fn contains(&self, z: &RealTuple) -> bool {
        z.len() == self.n
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&k| z[k] == z[b[0]]))
    }

    /// Whether `σ` only moves indices within their own block.
    pub fn fixes(&self, sigma: &Permutation) -> bool {
        if sigma.len() != self.n {
            return false;
        }
        let owner = self.block_of();
        (0..self.n).all(|k| match owner[k] {
            Some(b) => owner[sigma.image(k)] == Some(b),
            None => sigma.image(k) == k,
        })
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let inner: Vec<String> = block.iter().map(|k| (k + 1).to_string()).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        f.write_str("]")
    }
}

/// The stabilizer `𝒴` of a diagonal set, materialized element by element.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    partition: BlockPartition,
    elements: Vec<Permutation>,
}

impl Stabilizer {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.partition.fixes(sigma)
    }
}

/// Minimal diagonal set containing `x`: indices are joined when their values
/// differ by at most `tol`, closed transitively. Singleton groups are dropped.
///
/// On the real line the components of the threshold graph are exactly the
/// runs of the sorted values whose consecutive gaps are at most `tol`.
pub fn equality_partition(x: &RealTuple, tol: f64) -> BlockPartition {
    let values = x.as_slice();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let mut blocks = Vec::new();
    let mut run: Vec<usize> = Vec::new();
    for (pos, &k) in order.iter().enumerate() {
        if pos > 0 && (values[k] - values[order[pos - 1]]).abs() > tol {
            if run.len() >= 2 {
                blocks.push(std::mem::take(&mut run));
            }
            run.clear();
        }
        run.push(k);
    }
    if run.len() >= 2 {
        blocks.push(run);
    }
    BlockPartition::new(values.len(), blocks).expect("runs are disjoint and have size >= 2")
}

/// Every permutation fixing the diagonal set of `p` pointwise.
///
/// Elements are listed in lexicographic order.
pub fn stabilizer_of(p: &BlockPartition) -> Result<Stabilizer> {
    let order = p.stabilizer_order();
    if order > ENUMERATION_CAP {
        return Err(Error::BruteForceTooLarge {
            what: "stabilizer order",
            size: order,
            cap: ENUMERATION_CAP,
        });
    }

    let mut elements = vec![Permutation::identity(p.n())];
    for block in p.blocks() {
        let local: Vec<Permutation> = permutations(block.len())?.collect();
        let mut next = Vec::with_capacity(elements.len() * local.len());
        for base in &elements {
            for tau in &local {
                let mut mapping = base.as_slice().to_vec();
                for (slot, &k) in block.iter().enumerate() {
                    mapping[k] = block[tau.image(slot)];
                }
                next.push(Permutation::from_mapping(mapping)?);
            }
        }
        elements = next;
    }
    elements.sort();
    debug_assert_eq!(elements.len(), order);
    Ok(Stabilizer {
        partition: p.clone(),
        elements,
    })
}

fn factorial_checked(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Point of the diagonal set nearest to `x` in the 1-norm.
///
/// Each block is collapsed onto the lower median of its values; other
/// components are left untouched.
pub fn nearest_diagonal_point(x: &RealTuple, p: &BlockPartition) -> Result<RealTuple> {
    check_len(p.n(), x.len())?;
    let mut y = x.as_slice().to_vec();
    for block in p.blocks() {
        let mut values: Vec<f64> = block.iter().map(|&k| x[k]).collect();
        values.sort_by(f64::total_cmp);
        let median = values[(values.len() - 1) / 2];
        for &k in block {
            y[k] = median;
        }
    }
    RealTuple::new(y)
}

/// `min_{y ∈ 𝒳} ‖x − y‖₁`, in closed form via block medians.
pub fn dist_to_diagonal(x: &RealTuple, p: &BlockPartition) -> Result<f64> {
    x.l1_distance(&nearest_diagonal_point(x, p)?)
}

/// `‖p_σ(x) − x‖₁`.
pub fn perm_displacement(x: &RealTuple, sigma: &Permutation) -> Result<f64> {
    x.permuted(sigma)?.l1_distance(x)
}

/// `x₁ ≤ x₂ ≤ … ≤ xₙ`, compared exactly.
pub fn is_nondescending(x: &RealTuple) -> bool {
    x.as_slice().windows(2).all(|w| w[0] <= w[1])
}

/// Position of a tuple relative to the non-descending cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryClass {
    /// Strictly ascending.
    Interior,
    /// Non-descending with at least one tie.
    Boundary,
    /// Not non-descending.
    Exterior,
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryClass::Interior => "interior",
            BoundaryClass::Boundary => "boundary",
            BoundaryClass::Exterior => "exterior",
        })
    }
}

pub fn boundary_class(x: &RealTuple) -> BoundaryClass {
    let w = x.as_slice().windows(2);
    if w.clone().any(|w| w[0] > w[1]) {
        BoundaryClass::Exterior
    } else if w.clone().any(|w| w[0] == w[1]) {
        BoundaryClass::Boundary
    } else {
        BoundaryClass::Interior
    }
}

/// Radius of a ball around an exterior `x` that stays exterior: a quarter of
/// the largest inversion `x_i − x_j` with `i < j`. `None` unless exterior.
pub fn exterior_radius(x: &RealTuple) -> Option<f64> {
    let v = x.as_slice();
    let mut largest = 0.0f64;
    let mut running_max = f64::NEG_INFINITY;
    for &value in v {
        largest = largest.max(running_max - value);
        running_max = running_max.max(value);
    }
    (largest > 0.0).then_some(largest / 4.0)
}
