//! The multidimensional polarization index and its modified family.
//!
//! For a society of `n` groups with shares `v_i` and positions `p_i`, the
//! index is `P = k * sum_i v_i * d(p_i, c)` where `c` is the weighted
//! center of mass and `k` the metric's normalizing coefficient. The
//! modified family is `P' = (2/n) * P`, which vanishes as the number of
//! groups grows.
//!
//! The Euclidean and Manhattan variants are bounded by 1 on valid
//! societies. The Chebyshev variant uses the coefficient 2 and is *not*
//! capped at 1 once `m >= 2`: see
//! [`crate::experiments::chebyshev_counterexample`], which evaluates to
//! 1.125. The numerical search in [`crate::experiments`] probes how far
//! above 1 the variant can go; no bound is hard-coded here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::society::{neumaier_sum, weight_sum, Position, Society};

/// One value per metric, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub euclidean: f64,
    pub manhattan: f64,
    pub chebyshev: f64,
}

impl MetricValues {
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Euclidean => self.euclidean,
            Metric::Manhattan => self.manhattan,
            Metric::Chebyshev => self.chebyshev,
        }
    }
}

/// Center of mass plus the index values for every metric and both families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizationReport {
    pub center: Position,
    pub n: usize,
    pub dim: usize,
    pub values: MetricValues,
    pub modified: MetricValues,
}

fn checked(society: &Society) -> Result<f64> {
    let violations = society.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidSociety(violations));
    }
    Ok(weight_sum(society))
}

fn center_with_sum(society: &Society, sum: f64) -> Position {
    let coords = (0..society.dim)
        .map(|j| {
            neumaier_sum(
                society
                    .groups
                    .iter()
                    .map(|g| g.weight * g.position.coords()[j]),
            ) / sum
        })
        .collect();
    Position::new(coords)
}

fn weighted_mean_distance(society: &Society, center: &Position, sum: f64, metric: Metric) -> f64 {
    society
        .groups
        .iter()
        .map(|g| (g.weight / sum) * metric.eval(g.position.coords(), center.coords()))
        .sum()
}

/// Weight-weighted mean position of the groups.
///
/// Weight sums within tolerance of 1 are renormalized, so the result is a
/// convex combination and stays inside the unit cube.
pub fn center_of_mass(society: &Society) -> Result<Position> {
    let sum = checked(society)?;
    Ok(center_with_sum(society, sum))
}

/// The polarization index `k * sum_i v_i * d(p_i, c)` under the given metric.
pub fn polarization(society: &Society, metric: Metric) -> Result<f64> {
    let sum = checked(society)?;
    let center = center_with_sum(society, sum);
    Ok(metric.coefficient(society.dim) * weighted_mean_distance(society, &center, sum, metric))
}

/// The modified index `P' = (2/n) * P`, computed exactly as that product.
pub fn polarization_modified(society: &Society, metric: Metric) -> Result<f64> {
    Ok(2.0 / society.groups.len() as f64 * polarization(society, metric)?)
}

/// Computes the center once and every index value for both families.
pub fn polarization_report(society: &Society) -> Result<PolarizationReport> {
    let sum = checked(society)?;
    let center = center_with_sum(society, sum);
    let n = society.groups.len();
    let value = |metric: Metric| {
        metric.coefficient(society.dim) * weighted_mean_distance(society, &center, sum, metric)
    };
    let values = MetricValues {
        euclidean: value(Metric::Euclidean),
        manhattan: value(Metric::Manhattan),
        chebyshev: value(Metric::Chebyshev),
    };
    let scale = 2.0 / n as f64;
    let modified = MetricValues {
        euclidean: scale * values.euclidean,
        manhattan: scale * values.manhattan,
        chebyshev: scale * values.chebyshev,
    };
    Ok(PolarizationReport {
        center,
        n,
        dim: society.dim,
        values,
        modified,
    })
}
