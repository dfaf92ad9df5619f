//! Permutations of `{0..n}` and the action `p_σ(x)_k = x_{σ(k)}` on tuples.
//!
//! Indices are stored 0-based. Composition follows function composition:
//! `a.compose(&b)` maps `k` to `a(b(k))`, so that
//! `apply(a∘b, x) == apply(b, apply(a, x))`.

use std::fmt;

use crate::error::{check_len, Error, Result};

/// Largest `n` for which `n!` permutations are enumerated (8! = 40320).
pub const BRUTE_FORCE_CAP: usize = 8;

/// Largest number of group elements ever materialized.
pub const ENUMERATION_CAP: usize = 40_320;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    /// Builds a permutation from a 0-based image list, checking bijectivity.
    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for (k, &image) in mapping.iter().enumerate() {
            if image >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {image} of index {k} is out of range for n = {n}"
                )));
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {image} appears more than once"
                )));
            }
        }
        Ok(Self { mapping })
    }

    /// Builds a permutation from 1-based images, e.g. `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let mapping = images
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("1-based image 0".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_mapping(mapping)
    }

    /// Transposition of two 0-based indices.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) out of range for n = {n}"
            )));
        }
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(a, b);
        Ok(Self { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// Image of the 0-based index `k`.
    pub fn image(&self, k: usize) -> usize {
        self.mapping[k]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `self ∘ other`: `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_len(self.len(), other.len())?;
        Ok(Permutation {
            mapping: other.mapping.iter().map(|&k| self.mapping[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut mapping = vec![0; self.len()];
        for (k, &v) in self.mapping.iter().enumerate() {
            mapping[v] = k;
        }
        Permutation { mapping }
    }

    /// `p_σ(x)`: component `k` of the result is `x[σ(k)]`.
    pub fn apply<T: Copy>(&self, x: &[T]) -> Result<Vec<T>> {
        check_len(self.len(), x.len())?;
        Ok(self.mapping.iter().map(|&k| x[k]).collect())
    }

    /// Disjoint cycles of length at least two, each starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut cycle = vec![start];
            visited[start] = true;
            let mut k = self.mapping[start];
            while k != start {
                visited[k] = true;
                cycle.push(k);
                k = self.mapping[k];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Cycle lengths (fixed points included) in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat_n(1, self.len() - moved));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Cycle notation with 1-based indices, `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|k| (k + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }

    /// Rearranges `mapping` into its lexicographic successor; `false` on the last one.
    fn advance(&mut self) -> bool {
        let m = &mut self.mapping;
        let n = m.len();
        if n < 2 {
            return false;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| m[i] < m[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| m[j] > m[i]).expect("successor exists");
        m.swap(i, j);
        m[i + 1..].reverse();
        true
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.mapping)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Lexicographic iterator over all permutations of a given size.
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if successor.advance() {
            self.next = Some(successor);
        }
        Some(current)
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty("permutation size must be positive"));
    }
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceTooLarge {
            what: "n",
            size: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    Ok(())
}

/// Lazily walks all `n!` permutations in lexicographic order.
pub fn permutations(n: usize) -> Result<Permutations> {
    check_cap(n)?;
    Ok(Permutations {
        next: Some(Permutation::identity(n)),
    })
}

/// All `n!` permutations of size `n`, in lexicographic order.
pub fn enumerate_perms(n: usize) -> Result<Vec<Permutation>> {
    Ok(permutations(n)?.collect())
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn index_search_inverse(p: &Permutation) -> Vec<usize> {
        (0..p.len())
            .map(|k| (0..p.len()).find(|&j| p.image(j) == k).unwrap())
            .collect()
    }

    #[test]
    fn identity_and_transposition() {
        let x = [3.0, 1.0, 4.0];
        assert_eq!(Permutation::identity(3).apply(&x).unwrap(), x);
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(swap.apply(&[3.0, 7.0]).unwrap(), vec![7.0, 3.0]);
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let err = Permutation::identity(2).apply(&[1.0, 2.0, 3.0]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn from_mapping_rejects_non_bijections() {
        assert!(Permutation::from_mapping(vec![0, 0]).is_err());
        assert!(Permutation::from_mapping(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_perms(1).unwrap(), vec![Permutation::identity(1)]);
        assert_eq!(enumerate_perms(3).unwrap().len(), 6);
        let five: HashSet<_> = enumerate_perms(5).unwrap().into_iter().collect();
        assert_eq!(five.len(), 120);
        assert_eq!(enumerate_perms(8).unwrap().len(), 40_320);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = enumerate_perms(4).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_identity());
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_perms(9),
            Err(Error::BruteForceTooLarge { size: 9, cap: 8, .. })
        ));
        assert!(enumerate_perms(0).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(4).inverse().is_identity());
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.inverse(), Permutation::from_one_based(&[3, 1, 2]).unwrap());
    }

    #[test]
    fn inverse_matches_index_search_for_every_small_permutation() {
        for n in 1..=6 {
            for p in permutations(n).unwrap() {
                assert_eq!(p.inverse().as_slice(), index_search_inverse(&p).as_slice());
                assert_eq!(p.inverse().inverse(), p);
            }
        }
    }

    #[test]
    fn composition_matches_sequential_application() {
        let x = [0.5, -1.0, 2.0, 7.0];
        for a in permutations(4).unwrap() {
            for b in permutations(4).unwrap() {
                let composed = a.compose(&b).unwrap();
                // explicit index map k -> a(b(k))
                let expected: Vec<f64> = (0..4).map(|k| x[a.image(b.image(k))]).collect();
                assert_eq!(composed.apply(&x).unwrap(), expected);
                assert_eq!(
                    composed.apply(&x).unwrap(),
                    b.apply(&a.apply(&x).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn cycles_and_types() {
        let p = Permutation::from_one_based(&[2, 3, 1, 4, 5]).unwrap();
        assert_eq!(p.cycle_notation(), "(1 2 3)");
        assert_eq!(p.cycle_type(), vec![3, 1, 1]);
        let q = Permutation::from_one_based(&[2, 1, 4, 3]).unwrap();
        assert_eq!(q.cycle_notation(), "(1 2)(3 4)");
        assert_eq!(Permutation::identity(3).cycle_notation(), "()");
    }
}
