//! Space-agnostic foundations.
//!
//! A [`MetricSpace`] pairs a distance with a binary average `A_w(x, y)`,
//! normalized so that `A_0(x, y) = x` and `A_1(x, y) = y`. Everything else in
//! the crate (refinement rules, the piecewise average interpolant, the
//! contractivity measurements) is written against this trait only.

mod axioms;
mod grid;
mod interpolant;
mod sequence;

pub use axioms::{check_average_axioms, check_metric_property, AxiomReport, MetricPropertyReport};
pub use grid::{LabeledSequence, ParamGrid, ParamRule};
pub use interpolant::{piecewise_average, sup_distance, sup_distance_on, Curve, FnCurve, PiecewiseAverage};
pub use sequence::{delta, Boundary, ElementSequence};

use crate::error::Result;
use std::fmt::Debug;

/// Absolute tolerance for equality-of-elements checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A complete metric space equipped with a binary average.
pub trait MetricSpace {
    type Element: Clone + Debug + PartialEq;

    /// Short identifier used in reports.
    fn name(&self) -> &'static str;

    fn distance(&self, x: &Self::Element, y: &Self::Element) -> Result<f64>;

    /// `A_w(x, y)` for `w` in `[0, 1]`.
    fn average(&self, w: f64, x: &Self::Element, y: &Self::Element) -> Result<Self::Element>;

    /// Whether the average claims the metric property `d(x, A_w(x, y)) = w d(x, y)`.
    fn is_intrinsic(&self) -> bool;

    fn tolerance(&self) -> f64 {
        DEFAULT_TOLERANCE
    }
}

/// Spaces whose elements live in (or are identified with) a Euclidean space.
/// Divided differences and order-one diagnostics are taken in this embedding.
pub trait EuclideanEmbedding: MetricSpace {
    fn embed(&self, x: &Self::Element) -> Vec<f64>;
}

pub(crate) fn check_weight(w: f64) -> Result<()> {
    if (0.0..=1.0).contains(&w) {
        Ok(())
    } else {
        Err(crate::Error::InvalidWeight(w))
    }
}
