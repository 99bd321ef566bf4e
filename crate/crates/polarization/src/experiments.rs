//! Grid-convergence studies, Monte Carlo oracles and extremal search.
//!
//! The "equal" distribution places `l^m` equally weighted groups on a
//! uniform lattice of the unit cube; [`convergence_series`] tracks the
//! index along `l` and [`continuum_limit_estimate`] estimates the value
//! the series approaches (the index of the uniform continuum,
//! `k * E[d(X, center)]` for `X` uniform on the cube).
//!
//! All randomness flows through a seeded ChaCha8 stream evaluated
//! sequentially, so every function here is reproducible from its `seed`
//! argument.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::polarization_report;
use crate::metric::Metric;
use crate::society::{Group, Position, Society};

/// Default cap on `l^m`, the number of groups a grid may materialize.
pub const DEFAULT_GRID_CAP: u64 = 1_000_000;

/// One resolution step of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesRow {
    pub l: u32,
    pub n: u64,
    pub p_euc: f64,
    pub p_man: f64,
    pub p_cheb: f64,
}

/// A Monte Carlo estimate with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// `l^m` equally weighted groups at the lattice points whose per-axis
/// coordinates are `(i-1)/(l-1)`, `i = 1..=l`, under the default size cap.
pub fn uniform_grid_society(m: usize, l: u32) -> Result<Society> {
    uniform_grid_society_with_cap(m, l, DEFAULT_GRID_CAP)
}

/// Same as [`uniform_grid_society`] with an explicit cap on `l^m`.
pub fn uniform_grid_society_with_cap(m: usize, l: u32, cap: u64) -> Result<Society> {
    if m == 0 {
        return Err(Error::InvalidParameter("dimensionality must be at least 1".into()));
    }
    if l < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid resolution l = {l} must be at least 2"
        )));
    }
    let count = (l as u128)
        .checked_pow(m as u32)
        .filter(|&n| n <= cap as u128)
        .ok_or(Error::GridTooLarge {
            groups: (l as u128).checked_pow(m as u32).unwrap_or(u128::MAX),
            cap,
        })?;
    let count = count as usize;
    let weight = 1.0 / count as f64;
    let denom = (l - 1) as f64;
    let mut digits = vec![0u32; m];
    let mut groups = Vec::with_capacity(count);
    for _ in 0..count {
        let coords = digits.iter().map(|&d| d as f64 / denom).collect();
        groups.push(Group {
            label: String::new(),
            weight,
            position: Position::new(coords),
        });
        for d in digits.iter_mut() {
            *d += 1;
            if *d < l {
                break;
            }
            *d = 0;
        }
    }
    Ok(Society::new(m, groups))
}

/// Index values of the "equal" grid distribution for every `l` in
/// `l_min..=l_max`, under the default size cap.
pub fn convergence_series(m: usize, l_min: u32, l_max: u32) -> Result<Vec<SeriesRow>> {
    convergence_series_with_cap(m, l_min, l_max, DEFAULT_GRID_CAP)
}

/// Same as [`convergence_series`] with an explicit cap on `l^m`.
pub fn convergence_series_with_cap(
    m: usize,
    l_min: u32,
    l_max: u32,
    cap: u64,
) -> Result<Vec<SeriesRow>> {
    if l_min < 2 || l_min > l_max {
        return Err(Error::InvalidParameter(format!(
            "resolution range {l_min}..={l_max} must satisfy 2 <= l_min <= l_max"
        )));
    }
    (l_min..=l_max)
        .map(|l| {
            let society = uniform_grid_society_with_cap(m, l, cap)?;
            let report = polarization_report(&society)?;
            Ok(SeriesRow {
                l,
                n: society.groups.len() as u64,
                p_euc: report.values.euclidean,
                p_man: report.values.manhattan,
                p_cheb: report.values.chebyshev,
            })
        })
        .collect()
}

/// Monte Carlo estimate of `k * E[d(X, center)]` for `X` uniform on
/// `[0,1]^m` — the value the grid series converges to.
pub fn continuum_limit_estimate(m: usize, metric: Metric, samples: u64, seed: u64) -> McEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = vec![0.5; m];
    let mut point = vec![0.0; m];
    // Welford running mean and variance of the distance draws.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..samples {
        for x in point.iter_mut() {
            *x = rng.random::<f64>();
        }
        let d = metric.eval(&point, &center);
        let delta = d - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (d - mean);
    }
    let k = metric.coefficient(m);
    let std_error = if samples > 1 {
        let variance = m2 / (samples - 1) as f64;
        k * (variance / samples as f64).sqrt()
    } else {
        0.0
    };
    McEstimate {
        value: k * mean,
        std_error,
        samples,
        seed,
    }
}

fn random_society_from(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Society {
    let mut weights: Vec<f64> = (0..n)
        .map(|_| loop {
            let w = rng.random::<f64>();
            if w > 0.0 {
                break w;
            }
        })
        .collect();
    let sum: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= sum;
    }
    let groups = weights
        .into_iter()
        .enumerate()
        .map(|(i, weight)| {
            let coords = (0..m).map(|_| rng.random::<f64>()).collect();
            Group {
                label: format!("g{i}"),
                weight,
                position: Position::new(coords),
            }
        })
        .collect();
    Society::new(m, groups)
}

/// A valid random society: positions uniform on the cube, weights drawn
/// positive and normalized. Deterministic per `(m, n, seed)`.
pub fn random_society(m: usize, n: usize, seed: u64) -> Society {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_society_from(&mut rng, m, n)
}

/// The stored 2-D configuration whose Chebyshev index exceeds 1: half the
/// population at the origin and a quarter at each of `(1,0)` and `(1,1)`
/// evaluates to exactly 1.125.
pub fn chebyshev_counterexample() -> Society {
    counterexample_start(2)
}

/// The same three-group shape embedded in `m >= 2` dimensions; its
/// Chebyshev index is 1.125 for every such `m`.
fn counterexample_start(m: usize) -> Society {
    let mut corner = vec![0.0; m];
    corner[0] = 1.0;
    Society::new(
        m,
        vec![
            Group::new("origin", 0.5, vec![0.0; m]),
            Group::new("corner", 0.25, corner),
            Group::new("far", 0.25, vec![1.0; m]),
        ],
    )
}

const SEARCH_RESTARTS: usize = 8;

/// Random-restart hill climbing that maximizes the Chebyshev index.
///
/// Each start point (the stored counterexample shape for `m >= 2`, plus
/// [`SEARCH_RESTARTS`] random societies of 2 to 6 groups) receives
/// `iterations` proposals that perturb one coordinate or one weight and
/// keep strict improvements. Returns the best society seen and its value.
/// Only a lower bound on the supremum is claimed, never an optimum.
pub fn extremal_search_chebyshev(m: usize, iterations: u64, seed: u64) -> (Society, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let evaluate = |s: &Society| {
        crate::index::polarization(s, Metric::Chebyshev).expect("search candidates are valid")
    };

    let mut starts = Vec::with_capacity(SEARCH_RESTARTS + 1);
    if m >= 2 {
        starts.push(counterexample_start(m));
    }
    for _ in 0..SEARCH_RESTARTS {
        let n = rng.random_range(2..=6);
        starts.push(random_society_from(&mut rng, m, n));
    }

    let mut best_society = starts[0].clone();
    let mut best_value = evaluate(&best_society);
    for start in starts {
        let mut current = start;
        let mut current_value = evaluate(&current);
        for _ in 0..iterations {
            let candidate = perturb(&mut rng, &current);
            let value = evaluate(&candidate);
            if value > current_value {
                current = candidate;
                current_value = value;
            }
        }
        if current_value > best_value {
            best_value = current_value;
            best_society = current;
        }
    }
    (best_society, best_value)
}

fn perturb(rng: &mut ChaCha8Rng, society: &Society) -> Society {
    let mut candidate = society.clone();
    let n = candidate.groups.len();
    let m = candidate.dim;
    let target = rng.random_range(0..n);
    if rng.random::<f64>() < 0.7 {
        let axis = rng.random_range(0..m);
        let delta = (rng.random::<f64>() - 0.5) * 0.5;
        let coords = candidate.groups[target].position.coords_mut();
        coords[axis] = (coords[axis] + delta).clamp(0.0, 1.0);
    } else {
        let factor = 0.5 + rng.random::<f64>();
        candidate.groups[target].weight *= factor;
        let sum: f64 = candidate.groups.iter().map(|g| g.weight).sum();
        for g in candidate.groups.iter_mut() {
            g.weight /= sum;
        }
    }
    candidate
}
