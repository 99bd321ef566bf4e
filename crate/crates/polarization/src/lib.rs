//! Multidimensional polarization indices for weighted groups in the unit
//! hypercube, plus the machinery around them: comparison indices from the
//! literature, the member-to-group pipeline for legislature data,
//! grid-convergence experiments and the file formats tying it together.
//!
//! ```
//! use polarization::{polarization, Group, Metric, Society};
//!
//! let society = Society::new(
//!     2,
//!     vec![
//!         Group::new("left", 0.5, vec![0.0, 0.0]),
//!         Group::new("right", 0.5, vec![1.0, 1.0]),
//!     ],
//! );
//! let p = polarization(&society, Metric::Euclidean).unwrap();
//! assert!((p - 1.0).abs() < 1e-12);
//! ```

pub mod comparative;
pub mod dataio;
pub mod error;
pub mod experiments;
pub mod grouping;
pub mod index;
pub mod metric;
pub mod society;

pub use error::{Error, Result};
pub use index::{
    center_of_mass, polarization, polarization_modified, polarization_report, MetricValues,
    PolarizationReport,
};
pub use metric::{distance, Metric};
pub use society::{
    validate_society, Group, Position, Society, Violation, DEFAULT_COORD_TOL, DEFAULT_WEIGHT_TOL,
};
