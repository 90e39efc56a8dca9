use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{ElementSequence, MetricSpace};
use crate::schemes::{subdivide, Refinement};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct LocalityReport {
    pub scheme: String,
    pub perturbed_index: usize,
    pub levels: usize,
    /// Outputs at level `K` that changed.
    pub affected: usize,
    /// Largest coarse-cell distance `|floor(i / 2^K) - j|` over changed outputs.
    pub spread: usize,
    /// `2 M_S`.
    pub bound: usize,
}

impl LocalityReport {
    pub fn within_bound(&self) -> bool {
        self.spread <= self.bound
    }
}

/// Refines `p` and `p` with element `j` replaced, and reports how far from
/// cell `j` the level-`K` outputs differ. Distances wrap for closed data.
pub fn locality_check<S, R>(
    space: &S,
    scheme: &R,
    p: &ElementSequence<S::Element>,
    j: usize,
    replacement: S::Element,
    levels: usize,
) -> Result<LocalityReport>
where
    S: MetricSpace + Clone,
    R: Refinement<S>,
{
    let perturbed = p.with_element(j, replacement)?;
    let a = subdivide(space, scheme, p.clone(), levels)?;
    let b = subdivide(space, scheme, perturbed, levels)?;
    let (la, lb) = (a.last(), b.last());
    if la.points().len() != lb.points().len() || la.origin != lb.origin {
        return Err(Error::Invalid("perturbed run changed the output layout".into()));
    }
    let n0 = p.len() as i64;
    let scale = 1i64 << levels;
    let mut affected = 0;
    let mut spread = 0i64;
    for (q, (x, y)) in la.points().elements().iter().zip(lb.points().elements()).enumerate() {
        if space.distance(x, y).map_err(|e| e.at("locality", q))? > 0.0 {
            affected += 1;
            let cell = (la.origin + q as i64).div_euclid(scale);
            let mut gap = (cell - j as i64).abs();
            if p.is_closed() {
                gap = gap.rem_euclid(n0);
                gap = gap.min(n0 - gap);
            }
            spread = spread.max(gap);
        }
    }
    let spec = scheme.spec();
    Ok(LocalityReport {
        scheme: spec.name,
        perturbed_index: j,
        levels,
        affected,
        spread: spread as usize,
        bound: 2 * spec.locality_range,
    })
}
