//! Binary subdivision schemes over metric spaces equipped with a binary average.
//!
//! The crate is organized in four layers:
//!
//! - [`metric`]: the [`MetricSpace`] contract, element sequences, parameter
//!   grids, the piecewise average interpolant and the sampled sup-distance.
//! - [`spaces`]: Euclidean space, the unit sphere, Hermite point/tangent pairs,
//!   finite compact sets under the Hausdorff metric, and discrete measures on
//!   the line under `W_p`.
//! - [`schemes`]: refinement operators and the subdivision driver.
//! - [`analysis`]: empirical contractivity, displacement, proximity, Cauchy,
//!   smoothness, approximation and locality measurements.
//!
//! ```
//! use subdiv_core::prelude::*;
//!
//! let space = Euclidean::new(1);
//! let seq = ElementSequence::open(vec![vec![0.0], vec![1.0]]).unwrap();
//! let run = subdivide(&space, &Elementary, seq, 1).unwrap();
//! assert_eq!(run.last().points().elements(), &[vec![0.0], vec![0.5], vec![1.0]]);
//! ```

pub mod analysis;
pub mod error;
pub mod generators;
pub mod metric;
pub mod schemes;
pub mod spaces;

pub use error::{Error, Result};
pub use metric::MetricSpace;

/// Common imports.
pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::metric::{
        delta, piecewise_average, sup_distance, Boundary, Curve, ElementSequence,
        EuclideanEmbedding, FnCurve, LabeledSequence, MetricSpace, ParamGrid, ParamRule,
        PiecewiseAverage,
    };
    pub use crate::schemes::{
        subdivide, subdivide_labeled, Averaged, Elementary, HermiteBezier, HermiteNaive,
        LaneRiesenfeld, Refinement, SchemeSpec, SubdivisionRun,
    };
    pub use crate::spaces::{
        Euclidean, FiniteSet, HermitePair, HermiteSpace, Measure, SetSpace, Sphere, SpherePoint,
        Wasserstein,
    };
}
