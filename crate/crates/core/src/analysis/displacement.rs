use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::ratio;
use crate::error::Result;
use crate::metric::{delta, ElementSequence, MetricSpace};
use crate::schemes::{subdivide, Refinement, SubdivisionRun};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct DisplacementReport {
    pub scheme: String,
    pub space: String,
    /// `max_j d(S^{k+1}(P)_{2j}, S^k(P)_j) / delta(S^k P)` for each level `k`.
    pub per_level: Vec<Option<f64>>,
    /// Largest per-level value (0 when none is defined).
    pub c_s: f64,
}

/// Displacement constant over every level of a run.
pub fn displacement_of_run<S: MetricSpace>(run: &SubdivisionRun<S>) -> Result<DisplacementReport> {
    let space = run.space();
    let tau = space.tolerance();
    let mut per_level = Vec::with_capacity(run.depth());
    for k in 0..run.depth() {
        let coarse = run.level(k);
        let fine = run.level(k + 1);
        let d = delta(space, coarse.points()).map_err(|e| e.at("displacement", k))?;
        let fp = fine.points().elements();
        let mut worst = 0.0_f64;
        for (q, p) in coarse.points().elements().iter().enumerate() {
            let pos = 2 * (coarse.origin + q as i64) - fine.origin;
            if let Some(x) = usize::try_from(pos).ok().and_then(|i| fp.get(i)) {
                worst = worst.max(space.distance(x, p).map_err(|e| e.at("displacement", q))?);
            }
        }
        per_level.push(ratio(worst, d, tau));
    }
    let c_s = per_level.iter().flatten().copied().fold(0.0, f64::max);
    Ok(DisplacementReport {
        scheme: run.scheme().name.clone(),
        space: space.name().to_string(),
        per_level,
        c_s,
    })
}

/// Measures `C_S` on `levels` refinements of `p`.
pub fn estimate_displacement<S, R>(
    space: &S,
    scheme: &R,
    p: ElementSequence<S::Element>,
    levels: usize,
) -> Result<DisplacementReport>
where
    S: MetricSpace + Clone,
    R: Refinement<S>,
{
    displacement_of_run(&subdivide(space, scheme, p, levels)?)
}
