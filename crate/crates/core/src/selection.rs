//! The sorting section `ψ: ℝⁿ/∼ → ℝⁿ_o` and the lift `f = ψ ∘ φ` of sampled
//! quotient-valued fields.
//!
//! `ψ` is an isometry: `‖ψ(x̄) − ψ(ȳ)‖₁ = d(x̄, ȳ)`. Continuity of the lift is
//! reported empirically over the edges of the sampling graph.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{Engine, UnorderedTuple};
use crate::tuple::RealTuple;

/// `ψ(x̄)`: the unique non-descending representative of the class.
pub fn canonicalize(class: &UnorderedTuple) -> RealTuple {
    class.canonical().clone()
}

/// Consecutive-index edges `(0,1), (1,2), …` for `len` samples.
pub fn path_edges(len: usize) -> Vec<(usize, usize)> {
    (1..len).map(|k| (k - 1, k)).collect()
}

/// A quotient-valued map `φ: ℝᵐ → ℝⁿ/∼` sampled on a finite graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField {
    dim_m: usize,
    points: Vec<Vec<f64>>,
    values: Vec<UnorderedTuple>,
    adjacency: Vec<(usize, usize)>,
}

fn validate_shape<T>(
    dim_m: usize,
    points: &[Vec<f64>],
    values: &[T],
    n_of: impl Fn(&T) -> usize,
    adjacency: &[(usize, usize)],
) -> Result<()> {
    if points.len() != values.len() {
        return Err(Error::InvalidField(format!(
            "{} points but {} values",
            points.len(),
            values.len()
        )));
    }
    if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim_m) {
        return Err(Error::InvalidField(format!(
            "point {i} has dimension {}, expected {dim_m}",
            p.len()
        )));
    }
    if let Some(first) = values.first() {
        let n = n_of(first);
        if let Some(i) = values.iter().position(|v| n_of(v) != n) {
            return Err(Error::InvalidField(format!(
                "value {i} has length {}, expected {n}",
                n_of(&values[i])
            )));
        }
    }
    if let Some(&(a, b)) = adjacency
        .iter()
        .find(|&&(a, b)| a >= values.len() || b >= values.len())
    {
        return Err(Error::InvalidField(format!(
            "edge ({a}, {b}) references a missing sample"
        )));
    }
    Ok(())
}

impl SampledField {
    pub fn new(
        dim_m: usize,
        points: Vec<Vec<f64>>,
        values: Vec<UnorderedTuple>,
        adjacency: Vec<(usize, usize)>,
    ) -> Result<Self> {
        validate_shape(dim_m, &points, &values, UnorderedTuple::n, &adjacency)?;
        Ok(Self {
            dim_m,
            points,
            values,
            adjacency,
        })
    }

    /// Samples joined consecutively along a path.
    pub fn path(dim_m: usize, points: Vec<Vec<f64>>, values: Vec<UnorderedTuple>) -> Result<Self> {
        let edges = path_edges(values.len());
        Self::new(dim_m, points, values, edges)
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[UnorderedTuple] {
        &self.values
    }

    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Tuple length shared by all values, `None` for an empty field.
    pub fn n(&self) -> Option<usize> {
        self.values.first().map(UnorderedTuple::n)
    }
}

/// Ordered representatives `f(x)` on the same sample graph as the input.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedField {
    dim_m: usize,
    points: Vec<Vec<f64>>,
    values: Vec<RealTuple>,
    adjacency: Vec<(usize, usize)>,
}

impl LiftedField {
    pub fn new(
        dim_m: usize,
        points: Vec<Vec<f64>>,
        values: Vec<RealTuple>,
        adjacency: Vec<(usize, usize)>,
    ) -> Result<Self> {
        validate_shape(dim_m, &points, &values, RealTuple::len, &adjacency)?;
        Ok(Self {
            dim_m,
            points,
            values,
            adjacency,
        })
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[RealTuple] {
        &self.values
    }

    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `f = ψ ∘ φ`, applied pointwise.
pub fn lift_field(phi: &SampledField) -> LiftedField {
    LiftedField {
        dim_m: phi.dim_m,
        points: phi.points.clone(),
        values: phi.values.par_iter().map(canonicalize).collect(),
        adjacency: phi.adjacency.clone(),
    }
}

/// Largest observed ratio `‖f_a − f_b‖₁ / d(φ_a, φ_b)` over the sample edges.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuityReport {
    /// 1 when every edge falls in the equal-class branch; infinite when an
    /// equal-class edge has differing lifts.
    pub max_ratio: f64,
    pub worst_edge: Option<(usize, usize)>,
    pub edges_checked: usize,
    pub equal_class_edges: usize,
}

/// Lift differences at or below this count as zero on equal-class edges.
pub const EQUAL_CLASS_TOLERANCE: f64 = 1e-12;

/// Continuity report with `d` computed by the assignment engine, independent
/// of the sorting used by the lift.
pub fn continuity_report(f: &LiftedField, phi: &SampledField) -> Result<ContinuityReport> {
    continuity_report_with(f, phi, Engine::Assignment)
}

pub fn continuity_report_with(
    f: &LiftedField,
    phi: &SampledField,
    engine: Engine,
) -> Result<ContinuityReport> {
    if f.len() != phi.len() || f.adjacency != phi.adjacency {
        return Err(Error::InvalidField(
            "lifted field does not match the sampled field".into(),
        ));
    }
    let mut report = ContinuityReport {
        max_ratio: 1.0,
        worst_edge: None,
        edges_checked: 0,
        equal_class_edges: 0,
    };
    let mut best: Option<f64> = None;
    for &(a, b) in &phi.adjacency {
        let lifted = f.values[a].l1_distance(&f.values[b])?;
        let d = engine
            .distance(phi.values[a].canonical(), phi.values[b].canonical())?
            .value;
        report.edges_checked += 1;
        let ratio = if d == 0.0 {
            report.equal_class_edges += 1;
            if lifted <= EQUAL_CLASS_TOLERANCE {
                continue;
            }
            f64::INFINITY
        } else {
            lifted / d
        };
        if best.is_none_or(|m| ratio > m) {
            best = Some(ratio);
            report.worst_edge = Some((a, b));
        }
    }
    if let Some(m) = best {
        report.max_ratio = m;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::dist_bruteforce;

    fn class(v: &[f64]) -> UnorderedTuple {
        UnorderedTuple::from_values(v.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&class(&[3.0, 1.0, 2.0])).as_slice(), &[1.0, 2.0, 3.0]);
        assert_eq!(canonicalize(&class(&[5.0, 5.0])).as_slice(), &[5.0, 5.0]);
    }

    #[test]
    fn single_point_lift() {
        let phi = SampledField::path(1, vec![vec![0.0]], vec![class(&[2.0, -1.0])]).unwrap();
        let f = lift_field(&phi);
        assert_eq!(f.values()[0].as_slice(), &[-1.0, 2.0]);
        let report = continuity_report(&f, &phi).unwrap();
        assert_eq!(report.edges_checked, 0);
        assert_eq!(report.max_ratio, 1.0);
    }

    #[test]
    fn constant_field_is_all_equal_class() {
        let points: Vec<Vec<f64>> = (0..5).map(|k| vec![k as f64]).collect();
        let values = vec![class(&[4.0, -2.0, 0.5]); 5];
        let phi = SampledField::path(1, points, values).unwrap();
        let f = lift_field(&phi);
        assert!(f.values().windows(2).all(|w| w[0] == w[1]));
        let report = continuity_report(&f, &phi).unwrap();
        assert_eq!(report.equal_class_edges, 4);
        assert_eq!(report.max_ratio, 1.0);
        assert_eq!(report.worst_edge, None);
    }

    #[test]
    fn two_point_ratio_is_one() {
        let phi = SampledField::path(
            1,
            vec![vec![0.0], vec![1.0]],
            vec![class(&[0.0, 1.0]), class(&[0.5, 0.5])],
        )
        .unwrap();
        let oracle = dist_bruteforce(phi.values()[0].canonical(), phi.values()[1].canonical())
            .unwrap()
            .value;
        assert_eq!(oracle, 1.0);
        let report = continuity_report(&lift_field(&phi), &phi).unwrap();
        assert_eq!(report.max_ratio, 1.0);
        assert_eq!(report.worst_edge, Some((0, 1)));
    }

    #[test]
    fn detects_discontinuous_selection() {
        let phi = SampledField::path(
            1,
            vec![vec![0.0], vec![1.0]],
            vec![class(&[0.0, 1.0]), class(&[0.0, 1.1])],
        )
        .unwrap();
        // swapped labels at the second sample: not a sorted selection
        let f = LiftedField::new(
            1,
            phi.points().to_vec(),
            vec![
                RealTuple::new(vec![0.0, 1.0]).unwrap(),
                RealTuple::new(vec![1.1, 0.0]).unwrap(),
            ],
            phi.adjacency().to_vec(),
        )
        .unwrap();
        let report = continuity_report(&f, &phi).unwrap();
        assert!((report.max_ratio - 2.1 / 0.1).abs() < 1e-9);
    }

    #[test]
    fn field_validation() {
        assert!(SampledField::new(1, vec![vec![0.0]], vec![], vec![]).is_err());
        assert!(SampledField::new(2, vec![vec![0.0]], vec![class(&[1.0])], vec![]).is_err());
        assert!(SampledField::new(
            1,
            vec![vec![0.0], vec![1.0]],
            vec![class(&[1.0]), class(&[1.0, 2.0])],
            vec![]
        )
        .is_err());
        assert!(SampledField::new(1, vec![vec![0.0]], vec![class(&[1.0])], vec![(0, 1)]).is_err());
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let phi = SampledField::path(1, vec![vec![0.0]], vec![class(&[1.0])]).unwrap();
        let other = SampledField::path(
            1,
            vec![vec![0.0], vec![1.0]],
            vec![class(&[1.0]), class(&[2.0])],
        )
        .unwrap();
        assert!(continuity_report(&lift_field(&other), &phi).is_err());
    }
}
