//! Ordered real and complex tuples with finite components.

use std::ops::Index;

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};
use crate::perm::Permutation;

/// A scalar that can be matched against another scalar of the same kind.
pub trait Component: Copy + std::fmt::Debug {
    /// Matching cost `|a - b|` (complex modulus for complex scalars).
    fn gap(self, other: Self) -> f64;
    fn is_finite(self) -> bool;
}

impl Component for f64 {
    fn gap(self, other: f64) -> f64 {
        (self - other).abs()
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Component for Complex64 {
    fn gap(self, other: Complex64) -> f64 {
        (self - other).norm()
    }

    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Shared read access to the components of a tuple.
pub trait Tuple {
    type Item: Component;

    fn components(&self) -> &[Self::Item];

    fn len(&self) -> usize {
        self.components().len()
    }

    fn is_empty(&self) -> bool {
        self.components().is_empty()
    }
}

fn check_finite<T: Component>(values: &[T]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// A vector in ℝⁿ with finite components.
#[derive(Clone, Debug, PartialEq)]
pub struct RealTuple(Vec<f64>);

impl RealTuple {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        check_finite(&components)?;
        Ok(Self(components))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        l1_norm(&self.0)
    }

    /// `‖self - other‖₁` componentwise, without any reordering.
    pub fn l1_distance(&self, other: &RealTuple) -> Result<f64> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum())
    }

    pub fn permuted(&self, sigma: &Permutation) -> Result<RealTuple> {
        Ok(RealTuple(sigma.apply(&self.0)?))
    }

    /// Same values with zero imaginary parts.
    pub fn to_complex(&self) -> ComplexTuple {
        ComplexTuple(self.0.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    /// Bitwise equality, distinguishing `-0.0` from `0.0`.
    pub fn bits_eq(&self, other: &RealTuple) -> bool {
        self.len() == other.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Tuple for RealTuple {
    type Item = f64;

    fn components(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for RealTuple {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl TryFrom<Vec<f64>> for RealTuple {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl TryFrom<&[f64]> for RealTuple {
    type Error = Error;

    fn try_from(v: &[f64]) -> Result<Self> {
        Self::new(v.to_vec())
    }
}

/// A vector in ℂⁿ with finite real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTuple(Vec<Complex64>);

impl ComplexTuple {
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        check_finite(&components)?;
        Ok(Self(components))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn permuted(&self, sigma: &Permutation) -> Result<ComplexTuple> {
        Ok(ComplexTuple(sigma.apply(&self.0)?))
    }

    /// Smallest modulus `|z_j - z_k|` over distinct index pairs; `None` when `n < 2`.
    pub fn min_gap(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (j, a) in self.0.iter().enumerate() {
            for b in &self.0[j + 1..] {
                let g = (a - b).norm();
                best = Some(best.map_or(g, |m| m.min(g)));
            }
        }
        best
    }
}

impl Tuple for ComplexTuple {
    type Item = Complex64;

    fn components(&self) -> &[Complex64] {
        &self.0
    }
}

impl Index<usize> for ComplexTuple {
    type Output = Complex64;

    fn index(&self, k: usize) -> &Complex64 {
        &self.0[k]
    }
}

/// `Σₖ |xₖ|`.
pub fn l1_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l1_norm_examples() {
        assert_eq!(l1_norm(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(l1_norm(&[1.0, -2.0]), 3.0);
        assert_eq!(RealTuple::new(vec![-5.0]).unwrap().l1_norm(), 5.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            RealTuple::new(vec![1.0, f64::NAN]).unwrap_err(),
            Error::NonFinite { index: 1 }
        );
        assert!(RealTuple::new(vec![f64::INFINITY]).is_err());
        assert!(ComplexTuple::new(vec![Complex64::new(0.0, f64::NAN)]).is_err());
    }

    #[test]
    fn complex_gap_is_modulus() {
        let a = Complex64::new(0.0, 1.0);
        let b = Complex64::new(0.0, -1.0);
        assert_eq!(a.gap(b), 2.0);
        let t = ComplexTuple::new(vec![a, b, Complex64::new(3.0, 1.0)]).unwrap();
        assert_eq!(t.min_gap(), Some(2.0));
    }

    #[test]
    fn permuted_uses_action() {
        let x = RealTuple::new(vec![3.0, 7.0]).unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(x.permuted(&swap).unwrap().as_slice(), &[7.0, 3.0]);
    }
}
