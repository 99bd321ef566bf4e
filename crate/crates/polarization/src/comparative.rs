//! One-dimensional comparison indices from the polarization literature.
//!
//! [`esteban_ray`] is the classical identification-alienation measure
//! `ER = k * sum_i sum_j pi_i^(1+alpha) pi_j |y_i - y_j|`. At `alpha = 0`,
//! `k = 1` it reduces to `sum_i sum_j pi_i pi_j |y_i - y_j|`, the mean
//! absolute difference of the distribution. That special case is commonly
//! identified with the Gini coefficient; note that the conventional Gini
//! additionally divides by twice the mean, which this function does not do
//! — it computes the double sum literally.
//!
//! [`reynal_querol`] replaces `|y_i - y_j|` with the discrete metric
//! (0 when `i = j`, 1 otherwise). Its customary calibration `alpha = 1`,
//! `k = 4` normalizes the two-equal-groups case to 1 and is available as
//! [`ErParams::reynal_querol_default`].

use crate::error::{Error, Result};
use crate::society::{neumaier_sum, DEFAULT_WEIGHT_TOL};

/// Largest admissible polarization sensitivity.
pub const ALPHA_MAX: f64 = 1.6;

/// Sensitivity and scale parameters of the ER family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErParams {
    alpha: f64,
    k: f64,
}

impl ErParams {
    /// Checks `0 <= alpha <= 1.6` and `k > 0`.
    pub fn new(alpha: f64, k: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha <= ALPHA_MAX) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} is outside [0, {ALPHA_MAX}]"
            )));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scale constant k = {k} must be positive and finite"
            )));
        }
        Ok(ErParams { alpha, k })
    }

    /// The customary Reynal-Querol calibration: `alpha = 1`, `k = 4`.
    pub fn reynal_querol_default() -> Self {
        ErParams { alpha: 1.0, k: 4.0 }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// A discrete one-dimensional distribution: shares over attribute levels.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution1D {
    shares: Vec<f64>,
    levels: Vec<f64>,
}

impl DiscreteDistribution1D {
    /// Builds a distribution, renormalizing shares whose sum is within
    /// `1e-9` of 1 and rejecting anything further off.
    pub fn new(shares: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        if shares.is_empty() {
            return Err(Error::InvalidParameter(
                "distribution needs at least one group".into(),
            ));
        }
        if shares.len() != levels.len() {
            return Err(Error::DimensionMismatch {
                expected: shares.len(),
                actual: levels.len(),
            });
        }
        if levels.iter().any(|y| !y.is_finite()) {
            return Err(Error::InvalidParameter("levels must be finite".into()));
        }
        let shares = normalized_shares(shares)?;
        Ok(DiscreteDistribution1D { shares, levels })
    }

    pub fn shares(&self) -> &[f64] {
        &self.shares
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }
}

fn normalized_shares(shares: Vec<f64>) -> Result<Vec<f64>> {
    if let Some(bad) = shares.iter().find(|&&p| !(p >= 0.0) || !p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "share {bad} is not a nonnegative finite number"
        )));
    }
    let sum = neumaier_sum(shares.iter().copied());
    if (sum - 1.0).abs() > DEFAULT_WEIGHT_TOL {
        return Err(Error::InvalidParameter(format!(
            "shares sum to {sum}, expected 1 within {DEFAULT_WEIGHT_TOL}"
        )));
    }
    Ok(shares.into_iter().map(|p| p / sum).collect())
}

/// The Esteban-Ray index `k * sum_i sum_j pi_i^(1+alpha) pi_j |y_i - y_j|`.
pub fn esteban_ray(dist: &DiscreteDistribution1D, params: &ErParams) -> f64 {
    let exponent = 1.0 + params.alpha;
    let mut total = 0.0;
    for (pi, yi) in dist.shares.iter().zip(&dist.levels) {
        let identification = pi.powf(exponent);
        for (pj, yj) in dist.shares.iter().zip(&dist.levels) {
            total += identification * pj * (yi - yj).abs();
        }
    }
    params.k * total
}

/// The Reynal-Querol variant: ER with the discrete metric, i.e.
/// `k * sum_i sum_{j != i} pi_i^(1+alpha) pi_j`.
pub fn reynal_querol(shares: &[f64], params: &ErParams) -> Result<f64> {
    if shares.is_empty() {
        return Err(Error::InvalidParameter(
            "distribution needs at least one group".into(),
        ));
    }
    let shares = normalized_shares(shares.to_vec())?;
    let exponent = 1.0 + params.alpha;
    let mut total = 0.0;
    for (i, pi) in shares.iter().enumerate() {
        let identification = pi.powf(exponent);
        for (j, pj) in shares.iter().enumerate() {
            if i != j {
                total += identification * pj;
            }
        }
    }
    Ok(params.k * total)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    fn dist(shares: &[f64], levels: &[f64]) -> DiscreteDistribution1D {
        DiscreteDistribution1D::new(shares.to_vec(), levels.to_vec()).unwrap()
    }

    #[test]
    fn two_equal_groups_unit_gap() {
        let d = dist(&[0.5, 0.5], &[0.0, 1.0]);
        let er = esteban_ray(&d, &ErParams::new(1.0, 1.0).unwrap());
        assert_abs_diff_eq!(er, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn alpha_zero_is_mean_absolute_difference() {
        let d = dist(&[0.5, 0.5], &[0.0, 1.0]);
        let er = esteban_ray(&d, &ErParams::new(0.0, 1.0).unwrap());
        assert_abs_diff_eq!(er, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn single_group_scores_zero() {
        let d = dist(&[1.0], &[0.7]);
        assert_eq!(esteban_ray(&d, &ErParams::new(1.0, 1.0).unwrap()), 0.0);
        assert_eq!(
            reynal_querol(&[1.0], &ErParams::reynal_querol_default()).unwrap(),
            0.0
        );
    }

    #[test]
    fn equal_levels_score_zero() {
        let d = dist(&[0.25, 0.75], &[0.4, 0.4]);
        assert_eq!(esteban_ray(&d, &ErParams::new(0.5, 2.0).unwrap()), 0.0);
    }

    #[test]
    fn reynal_querol_normalizes_two_equal_groups_to_one() {
        let rq = reynal_querol(&[0.5, 0.5], &ErParams::reynal_querol_default()).unwrap();
        assert_abs_diff_eq!(rq, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn reynal_querol_four_equal_groups() {
        let rq = reynal_querol(&[0.25; 4], &ErParams::reynal_querol_default()).unwrap();
        assert_abs_diff_eq!(rq, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn reynal_querol_matches_closed_form_at_alpha_one() {
        let shares = [0.1, 0.2, 0.3, 0.4];
        let params = ErParams::reynal_querol_default();
        let expected: f64 = shares.iter().map(|p| p * p * (1.0 - p)).sum::<f64>() * params.k();
        assert_abs_diff_eq!(
            reynal_querol(&shares, &params).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(ErParams::new(-0.1, 1.0).is_err());
        assert!(ErParams::new(1.7, 1.0).is_err());
        assert!(ErParams::new(ALPHA_MAX, 1.0).is_ok());
        assert!(ErParams::new(1.0, 0.0).is_err());
        assert!(ErParams::new(1.0, -2.0).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(DiscreteDistribution1D::new(vec![], vec![]).is_err());
        assert!(DiscreteDistribution1D::new(vec![0.5, 0.5], vec![1.0]).is_err());
        assert!(DiscreteDistribution1D::new(vec![0.5, 0.4], vec![0.0, 1.0]).is_err());
        assert!(DiscreteDistribution1D::new(vec![1.2, -0.2], vec![0.0, 1.0]).is_err());
        assert!(reynal_querol(&[0.9, 0.2], &ErParams::reynal_querol_default()).is_err());
    }

    #[test]
    fn translation_invariance_and_positive_scaling() {
        let params = ErParams::new(0.8, 1.3).unwrap();
        let base = dist(&[0.2, 0.5, 0.3], &[0.1, 0.4, 0.9]);
        let er = esteban_ray(&base, &params);

        let shifted = dist(&[0.2, 0.5, 0.3], &[2.1, 2.4, 2.9]);
        assert_abs_diff_eq!(esteban_ray(&shifted, &params), er, epsilon = 1e-12);

        let scaled = dist(&[0.2, 0.5, 0.3], &[0.3, 1.2, 2.7]);
        assert_abs_diff_eq!(esteban_ray(&scaled, &params), 3.0 * er, epsilon = 1e-12);
    }
}
