//! Refinement operators and the subdivision driver.
//!
//! A refinement maps a coarse sequence `p` to a fine sequence indexed so that
//! fine indices `2j` and `2j + 1` belong to coarse index `j`. On closed
//! sequences the output has exactly `2n` elements and list position equals
//! fine index. On open sequences only outputs whose whole stencil exists are
//! emitted; [`Refined::first_index`] records the fine index of the first one.

mod driver;
mod hermite;
mod linear;
mod masks;

pub use driver::{subdivide, subdivide_labeled, Level, SubdivisionRun};
pub use hermite::{HermiteBezier, HermiteNaive};
pub use linear::{Averaged, Elementary, LaneRiesenfeld};
pub use masks::{linear_mask, Mask};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metric::{ElementSequence, MetricSpace, ParamRule};

/// Static description of a refinement operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SchemeSpec {
    pub name: String,
    /// Coarse offsets `k - j` read by the rule producing fine index `2j`.
    pub even_stencil: Vec<i64>,
    /// Coarse offsets read by the rule producing fine index `2j + 1`.
    pub odd_stencil: Vec<i64>,
    pub even_rule: String,
    pub odd_rule: String,
    /// `M_S`: every rule reads only coarse indices within `j +- M_S`.
    pub locality_range: usize,
    pub parameter_rule: ParamRule,
    pub interpolatory: bool,
    /// Element kinds the scheme needs beyond a binary average.
    pub requires: Vec<String>,
}

/// Output of one refinement step.
#[derive(Debug, Clone, PartialEq)]
pub struct Refined<E> {
    pub points: ElementSequence<E>,
    /// Fine index of the first emitted element (always 0 when closed).
    pub first_index: usize,
}

/// A refinement operator usable over the space `S`.
pub trait Refinement<S: MetricSpace> {
    fn spec(&self) -> SchemeSpec;

    fn refine(&self, space: &S, seq: &ElementSequence<S::Element>) -> Result<Refined<S::Element>>;
}

impl<S: MetricSpace, R: Refinement<S> + ?Sized> Refinement<S> for &R {
    fn spec(&self) -> SchemeSpec {
        (**self).spec()
    }

    fn refine(&self, space: &S, seq: &ElementSequence<S::Element>) -> Result<Refined<S::Element>> {
        (**self).refine(space, seq)
    }
}
