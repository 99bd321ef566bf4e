//! Weighted-group societies over the unit hypercube.
//!
//! A [`Society`] is the input to every polarization computation: `m`
//! attribute axes and `n` groups, each carrying a population share and a
//! position in `[0,1]^m`. Validation is a separate, non-failing operation
//! ([`validate_society`]) so that callers can inspect every rule a dataset
//! breaks instead of stopping at the first one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance on `|sum of weights - 1|`.
pub const DEFAULT_WEIGHT_TOL: f64 = 1e-9;
/// Default tolerance on coordinates leaving `[0, 1]`.
pub const DEFAULT_COORD_TOL: f64 = 1e-9;

/// A point in the `m`-dimensional unit cube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Position(Vec<f64>);

impl Position {
    pub fn new(coords: Vec<f64>) -> Self {
        Position(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<f64>> for Position {
    fn from(coords: Vec<f64>) -> Self {
        Position(coords)
    }
}

impl AsRef<[f64]> for Position {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// One group of a society: a label, a population share and a position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Group {
    pub label: String,
    pub weight: f64,
    pub position: Position,
}

impl Group {
    pub fn new(label: impl Into<String>, weight: f64, coords: Vec<f64>) -> Self {
        Group {
            label: label.into(),
            weight,
            position: Position::new(coords),
        }
    }
}

/// A society of `n` weighted groups in `[0,1]^dim`.
///
/// The struct itself holds raw data; use [`validate_society`] (or
/// [`Society::validate`]) to check the invariants the index computations
/// rely on. Weights whose sum deviates from 1 within tolerance are
/// renormalized on the fly by the computations, never mutated here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Society {
    pub dim: usize,
    pub groups: Vec<Group>,
}

impl Society {
    pub fn new(dim: usize, groups: Vec<Group>) -> Self {
        Society { dim, groups }
    }

    /// Validates against the default tolerances.
    pub fn validate(&self) -> Vec<Violation> {
        validate_society(self, DEFAULT_WEIGHT_TOL, DEFAULT_COORD_TOL)
    }

    /// Labels of groups carrying exactly zero weight.
    ///
    /// Zero weights are legal (they contribute nothing to the center or the
    /// index) but usually indicate an empty union in a time series, so
    /// front ends surface them as warnings.
    pub fn zero_weight_groups(&self) -> Vec<&str> {
        self.groups
            .iter()
            .filter(|g| g.weight == 0.0)
            .map(|g| g.label.as_str())
            .collect()
    }

    /// Per-axis min-max rescaling into the unit cube.
    ///
    /// Intended for datasets whose coordinates live on some other scale;
    /// axes on which every group agrees are mapped to 0.5 (any constant
    /// would do: a constant axis contributes nothing to distances from the
    /// center). Weights are left untouched.
    pub fn rescaled_to_unit_cube(&self) -> Society {
        let mut mins = vec![f64::INFINITY; self.dim];
        let mut maxs = vec![f64::NEG_INFINITY; self.dim];
        for g in &self.groups {
            for (j, &x) in g.position.coords().iter().enumerate().take(self.dim) {
                mins[j] = mins[j].min(x);
                maxs[j] = maxs[j].max(x);
            }
        }
        let groups = self
            .groups
            .iter()
            .map(|g| {
                let coords = g
                    .position
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| {
                        let span = maxs[j] - mins[j];
                        if span > 0.0 {
                            (x - mins[j]) / span
                        } else {
                            0.5
                        }
                    })
                    .collect();
                Group {
                    label: g.label.clone(),
                    weight: g.weight,
                    position: Position::new(coords),
                }
            })
            .collect();
        Society {
            dim: self.dim,
            groups,
        }
    }
}

/// A single broken validation rule, naming the offending group where one exists.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("group weights sum to {sum}, expected 1 within {tol}")]
    WeightSum { sum: f64, tol: f64 },
    #[error("group {group} has negative weight {weight}")]
    NegativeWeight { group: String, weight: f64 },
    #[error("group {group} coordinate {axis} = {value} is outside [0, 1]")]
    CoordinateOutOfRange {
        group: String,
        axis: usize,
        value: f64,
    },
    #[error("group {group} has {actual} coordinates, expected {expected}")]
    WrongDimension {
        group: String,
        expected: usize,
        actual: usize,
    },
    #[error("society has no groups")]
    NoGroups,
    #[error("society dimensionality must be at least 1")]
    ZeroDimension,
}

fn group_name(index: usize, label: &str) -> String {
    if label.is_empty() {
        format!("#{index}")
    } else {
        format!("#{index} ('{label}')")
    }
}

/// Checks every invariant a society must satisfy and returns the full list
/// of violations (empty means valid).
///
/// Rules: at least one group, `dim >= 1`, every position of length `dim`,
/// all weights nonnegative and summing to 1 within `weight_tol`, every
/// coordinate in `[-coord_tol, 1 + coord_tol]`. Non-finite weights or
/// coordinates fail the corresponding range rule.
pub fn validate_society(society: &Society, weight_tol: f64, coord_tol: f64) -> Vec<Violation> {
    let mut violations = Vec::new();
    if society.dim == 0 {
        violations.push(Violation::ZeroDimension);
    }
    if society.groups.is_empty() {
        violations.push(Violation::NoGroups);
        return violations;
    }
    for (i, g) in society.groups.iter().enumerate() {
        if g.position.len() != society.dim {
            violations.push(Violation::WrongDimension {
                group: group_name(i, &g.label),
                expected: society.dim,
                actual: g.position.len(),
            });
        }
        if g.weight < 0.0 || g.weight.is_nan() {
            violations.push(Violation::NegativeWeight {
                group: group_name(i, &g.label),
                weight: g.weight,
            });
        }
        for (axis, &x) in g.position.coords().iter().enumerate() {
            if !(-coord_tol..=1.0 + coord_tol).contains(&x) {
                violations.push(Violation::CoordinateOutOfRange {
                    group: group_name(i, &g.label),
                    axis,
                    value: x,
                });
            }
        }
    }
    let sum = weight_sum(society);
    if !((sum - 1.0).abs() <= weight_tol) {
        violations.push(Violation::WeightSum {
            sum,
            tol: weight_tol,
        });
    }
    violations
}

/// Compensated (Neumaier) sum of the group weights, so the tolerance check
/// measures the data rather than the summation order.
pub(crate) fn weight_sum(society: &Society) -> f64 {
    neumaier_sum(society.groups.iter().map(|g| g.weight))
}

pub(crate) fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_group() -> Society {
        Society::new(
            2,
            vec![
                Group::new("A", 0.5, vec![0.0, 0.0]),
                Group::new("B", 0.25, vec![1.0, 0.0]),
                Group::new("C", 0.25, vec![1.0, 1.0]),
            ],
        )
    }

    #[test]
    fn valid_society_has_no_violations() {
        assert!(three_group().validate().is_empty());
    }

    #[test]
    fn weight_sum_violation() {
        let s = Society::new(
            1,
            vec![
                Group::new("A", 0.6, vec![0.0]),
                Group::new("B", 0.6, vec![1.0]),
            ],
        );
        let v = s.validate();
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::WeightSum { .. }));
    }

    #[test]
    fn coordinate_out_of_range_names_group() {
        let s = Society::new(
            2,
            vec![
                Group::new("A", 0.5, vec![0.0, 0.0]),
                Group::new("B", 0.5, vec![1.2, 0.0]),
            ],
        );
        let v = validate_society(&s, 1e-9, 1e-9);
        assert_eq!(v.len(), 1);
        match &v[0] {
            Violation::CoordinateOutOfRange { group, axis, value } => {
                assert!(group.contains("B"), "violation should name the group: {group}");
                assert_eq!(*axis, 0);
                assert_eq!(*value, 1.2);
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn coordinate_within_tolerance_accepted() {
        let s = Society::new(
            1,
            vec![Group::new("A", 1.0, vec![1.0 + 5e-10])],
        );
        assert!(s.validate().is_empty());
    }

    #[test]
    fn negative_weight_and_dimension_mismatch() {
        let s = Society::new(
            2,
            vec![
                Group::new("A", -0.5, vec![0.0, 0.0]),
                Group::new("B", 1.5, vec![1.0]),
            ],
        );
        let v = s.validate();
        assert!(v.iter().any(|v| matches!(v, Violation::NegativeWeight { .. })));
        assert!(v.iter().any(|v| matches!(v, Violation::WrongDimension { .. })));
    }

    #[test]
    fn empty_society_and_zero_dimension() {
        let v = Society::new(0, vec![]).validate();
        assert!(v.contains(&Violation::ZeroDimension));
        assert!(v.contains(&Violation::NoGroups));
    }

    #[test]
    fn nan_coordinate_is_a_violation() {
        let s = Society::new(1, vec![Group::new("A", 1.0, vec![f64::NAN])]);
        let v = s.validate();
        assert!(v.iter().any(|v| matches!(v, Violation::CoordinateOutOfRange { .. })));
    }

    #[test]
    fn zero_weight_groups_are_listed_not_rejected() {
        let s = Society::new(
            1,
            vec![
                Group::new("A", 1.0, vec![0.5]),
                Group::new("empty", 0.0, vec![0.5]),
            ],
        );
        assert!(s.validate().is_empty());
        assert_eq!(s.zero_weight_groups(), vec!["empty"]);
    }

    #[test]
    fn rescale_maps_axis_extremes_to_unit_interval() {
        let s = Society::new(
            2,
            vec![
                Group::new("A", 0.5, vec![-2.0, 10.0]),
                Group::new("B", 0.5, vec![6.0, 30.0]),
            ],
        );
        let r = s.rescaled_to_unit_cube();
        assert_eq!(r.groups[0].position.coords(), &[0.0, 0.0]);
        assert_eq!(r.groups[1].position.coords(), &[1.0, 1.0]);
        assert!(r.validate().is_empty());
    }

    #[test]
    fn rescale_constant_axis_goes_to_midpoint() {
        let s = Society::new(
            2,
            vec![
                Group::new("A", 0.5, vec![3.0, 7.0]),
                Group::new("B", 0.5, vec![3.0, 9.0]),
            ],
        );
        let r = s.rescaled_to_unit_cube();
        assert_eq!(r.groups[0].position.coords(), &[0.5, 0.0]);
        assert_eq!(r.groups[1].position.coords(), &[0.5, 1.0]);
    }
}
