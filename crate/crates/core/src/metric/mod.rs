//! The matching distance on unordered tuples,
//! `d(ȳ, z̄) = min_σ ‖y − p_σ(z)‖₁`, computed by three engines.
//!
//! * [`dist_bruteforce`] enumerates every permutation (oracle, `n ≤ 8`).
//! * [`dist_sorted`] pairs order statistics; exact for real tuples at any `n`.
//! * [`dist_assignment`] solves the assignment problem; works for complex tuples.

pub mod assignment;

use std::fmt;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};
use crate::perm::{permutations, Permutation, BRUTE_FORCE_CAP};
use crate::tuple::{Component, RealTuple, Tuple};

pub use assignment::min_cost_assignment;

/// A point of ℝⁿ/∼, stored as its non-descending representative.
#[derive(Clone, Debug, PartialEq)]
pub struct UnorderedTuple {
    canonical: RealTuple,
}

impl UnorderedTuple {
    /// The class of `x`. Every reordering of `x` yields a bitwise-identical value.
    pub fn new(x: RealTuple) -> Self {
        let mut values = x.into_vec();
        values.sort_by(f64::total_cmp);
        Self {
            canonical: RealTuple::new(values).expect("sorting preserves finiteness"),
        }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Ok(Self::new(RealTuple::new(values)?))
    }

    pub fn canonical(&self) -> &RealTuple {
        &self.canonical
    }

    pub fn n(&self) -> usize {
        self.canonical.len()
    }

    /// Distance to another class.
    pub fn distance(&self, other: &UnorderedTuple) -> Result<f64> {
        Ok(dist_sorted(&self.canonical, &other.canonical)?.value)
    }
}

impl From<RealTuple> for UnorderedTuple {
    fn from(x: RealTuple) -> Self {
        Self::new(x)
    }
}

/// A distance value together with a permutation attaining it.
///
/// `attaining_perm` is a minimizer `σ` of `‖y − p_σ(z)‖₁`: component `k` of
/// `y` is paired with component `σ(k)` of `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distance {
    pub value: f64,
    pub attaining_perm: Permutation,
}

/// `‖y − p_σ(z)‖₁` summed in index order.
fn matching_cost<T: Component>(y: &[T], z: &[T], sigma: &[usize]) -> f64 {
    y.iter()
        .zip(sigma)
        .map(|(&a, &k)| a.gap(z[k]))
        .sum()
}

/// Exhaustive minimum over all `n!` permutations. Ties resolve to the
/// lexicographically smallest permutation.
pub fn dist_bruteforce<T: Tuple>(y: &T, z: &T) -> Result<Distance> {
    let (y, z) = (y.components(), z.components());
    check_len(y.len(), z.len())?;
    if y.is_empty() {
        return Ok(Distance {
            value: 0.0,
            attaining_perm: Permutation::identity(0),
        });
    }
    if y.len() > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceTooLarge {
            what: "n",
            size: y.len(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut best: Option<Distance> = None;
    for sigma in permutations(y.len())? {
        let value = matching_cost(y, z, sigma.as_slice());
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Distance {
                value,
                attaining_perm: sigma,
            });
        }
    }
    Ok(best.expect("at least one permutation"))
}

/// Stable argsort under the IEEE total order.
fn argsort(x: &[f64]) -> Vec<usize> {
    // sorting (value, index) pairs in place beats index indirection on large inputs
    let mut keyed: Vec<(f64, usize)> = x.iter().copied().zip(0..).collect();
    keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, k)| k).collect()
}

/// Pairs the `r`-th smallest component of `y` with the `r`-th smallest of `z`.
///
/// On the real line this monotone pairing is always a minimizer, so the value
/// equals [`dist_bruteforce`]. Equal values keep their input order.
pub fn dist_sorted(y: &RealTuple, z: &RealTuple) -> Result<Distance> {
    check_len(y.len(), z.len())?;
    let order_y = argsort(y.as_slice());
    let order_z = argsort(z.as_slice());
    let mut mapping = vec![0usize; y.len()];
    for (&iy, &iz) in order_y.iter().zip(&order_z) {
        mapping[iy] = iz;
    }
    let value = matching_cost(y.as_slice(), z.as_slice(), &mapping);
    Ok(Distance {
        value,
        attaining_perm: Permutation::from_mapping(mapping)?,
    })
}

/// Minimum-cost perfect matching under `c(j, k) = |y_j − z_k|`.
pub fn dist_assignment<T: Tuple>(y: &T, z: &T) -> Result<Distance> {
    let (y, z) = (y.components(), z.components());
    check_len(y.len(), z.len())?;
    let n = y.len();
    let mut cost = Vec::with_capacity(n * n);
    for &a in y {
        cost.extend(z.iter().map(|&b| a.gap(b)));
    }
    let mapping = min_cost_assignment(&cost, n)?;
    let value = matching_cost(y, z, &mapping);
    Ok(Distance {
        value,
        attaining_perm: Permutation::from_mapping(mapping)?,
    })
}

/// Selects one of the distance engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    Brute,
    #[default]
    Sorted,
    Assignment,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Brute, Engine::Sorted, Engine::Assignment];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Sorted => "sorted",
            Engine::Assignment => "assignment",
        }
    }

    pub fn distance(self, y: &RealTuple, z: &RealTuple) -> Result<Distance> {
        match self {
            Engine::Brute => dist_bruteforce(y, z),
            Engine::Sorted => dist_sorted(y, z),
            Engine::Assignment => dist_assignment(y, z),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brute" | "bruteforce" => Ok(Engine::Brute),
            "sorted" => Ok(Engine::Sorted),
            "assignment" | "hungarian" => Ok(Engine::Assignment),
            other => Err(format!(
                "unknown engine '{other}' (expected brute, sorted or assignment)"
            )),
        }
    }
}
