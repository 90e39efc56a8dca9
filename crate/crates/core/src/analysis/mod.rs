//! Empirical measurement of convergence and smoothness quantities.
//!
//! Every estimator here is a pure function of completed runs. Ratios whose
//! denominator falls at or below the space tolerance are excluded (reported
//! as `None`) rather than producing infinities: constant data is a fixed
//! point of every scheme.

mod approximation;
mod cauchy;
mod contractivity;
mod displacement;
mod locality;
mod proximity;
mod smoothness;
mod stats;

pub use approximation::{approximation_experiment, ApproxOrderReport, ApproxRow};
pub use cauchy::{cauchy_trace, CauchyTrace};
pub use contractivity::{
    contractivity_from_trace, contractivity_of_run, delta_trace, estimate_contractivity, ContractivityReport,
    ContractivityRow,
};
pub use displacement::{displacement_of_run, estimate_displacement, DisplacementReport};
pub use locality::{locality_check, LocalityReport};
pub use proximity::{
    check_proximity_type1, check_proximity_type2, hermite_proximity_constant, ProximityBound,
    ProximityType1Report, ProximityType2Report, SweepPoint,
};
pub use smoothness::{c1_diagnostic, divided_differences, C1Report, DividedDiffLevel, DividedDiffTrace};
pub use stats::{fit_power_law, PowerLawFit};

/// Default number of sample parameters for sampled sup-distances (`2^10 + 1`).
pub const DEFAULT_SAMPLES: usize = 1025;

/// Default limit-curve proxy depth.
pub const DEFAULT_PROXY_LEVELS: usize = 8;

/// Ratio `num/den`, or `None` when `den <= tau`.
pub(crate) fn ratio(num: f64, den: f64, tau: f64) -> Option<f64> {
    (den > tau).then(|| num / den)
}
