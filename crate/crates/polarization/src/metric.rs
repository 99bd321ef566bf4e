//! Distance functions and their normalizing coefficients.
//!
//! Three metrics are supported on `[0,1]^m`:
//!
//! * Euclidean: `sqrt(sum_j (a_j - b_j)^2)`, coefficient `2/sqrt(m)`
//! * Manhattan: `sum_j |a_j - b_j|`, coefficient `2/m`
//! * Chebyshev: `max_j |a_j - b_j|`, coefficient `2`
//!
//! The coefficient is what scales the weighted mean distance from the
//! center of mass into the polarization index; the modified family divides
//! it further by `n/2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::society::Position;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    /// All metrics, in the order reports list them.
    pub const ALL: [Metric; 3] = [Metric::Euclidean, Metric::Manhattan, Metric::Chebyshev];

    /// Distance between two coordinate slices of equal length.
    pub fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let d = x - y;
                    d * d
                })
                .sum::<f64>()
                .sqrt(),
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        }
    }

    /// Normalizing coefficient `k` of the index for dimensionality `dim`.
    pub fn coefficient(self, dim: usize) -> f64 {
        let m = dim as f64;
        match self {
            Metric::Euclidean => 2.0 / m.sqrt(),
            Metric::Manhattan => 2.0 / m,
            Metric::Chebyshev => 2.0,
        }
    }

    /// Coefficient `k'/n` of the modified index: `2/n` times [`Metric::coefficient`].
    pub fn modified_coefficient(self, dim: usize, n: usize) -> f64 {
        2.0 / n as f64 * self.coefficient(dim)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Chebyshev => "chebyshev",
        };
        f.write_str(name)
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "manhattan" => Ok(Metric::Manhattan),
            "chebyshev" => Ok(Metric::Chebyshev),
            other => Err(Error::InvalidParameter(format!("unknown metric '{other}'"))),
        }
    }
}

/// Distance between two positions, checking that they agree on length.
pub fn distance(a: &Position, b: &Position, metric: Metric) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(metric.eval(a.coords(), b.coords()))
}
