use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::contractivity::{report_from_trace, ContractivityReport};
use crate::error::Result;
use crate::metric::{
    delta, sup_distance_on, ElementSequence, EuclideanEmbedding, LabeledSequence, MetricSpace,
    ParamGrid, PiecewiseAverage,
};
use crate::schemes::SubdivisionRun;
use crate::spaces::{linalg, Euclidean};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct DividedDiffLevel {
    pub level: usize,
    /// Interval midpoints the differences are attached to.
    pub knots: Vec<f64>,
    /// `(p_{j+1} - p_j)/(t_{j+1} - t_j)` in the Euclidean embedding.
    pub values: Vec<Vec<f64>>,
    /// `delta` of the difference sequence.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct DividedDiffTrace {
    pub scheme: String,
    pub levels: Vec<DividedDiffLevel>,
    /// Sampled sup distance between the piecewise-linear interpolants of
    /// consecutive levels' differences, over their common domain.
    pub sup_distances: Vec<Option<f64>>,
}

impl DividedDiffTrace {
    pub fn deltas(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.delta).collect()
    }
}

/// First-order divided differences of every level, taken in the Euclidean
/// embedding and divided by the actual knot spacing. Closed sequences wrap.
pub fn divided_differences<S>(run: &SubdivisionRun<S>, samples: usize) -> Result<DividedDiffTrace>
where
    S: MetricSpace + EuclideanEmbedding,
{
    let space = run.space();
    let mut levels = Vec::with_capacity(run.levels().len());
    let mut labeled = Vec::with_capacity(run.levels().len());
    for (k, level) in run.levels().iter().enumerate() {
        let grid = level.grid();
        let pts: Vec<Vec<f64>> = level.points().elements().iter().map(|p| space.embed(p)).collect();
        let seq = level.points();
        let n = pts.len();
        let mut knots = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        for j in 0..seq.pair_count() {
            let a = grid.knots()[j];
            let b = grid.right(j).expect("interval exists");
            let diff = linalg::sub(&pts[(j + 1) % n], &pts[j]);
            values.push(linalg::scale(1.0 / (b - a), &diff));
            knots.push(0.5 * (a + b));
        }
        let dim = pts[0].len();
        let e = Euclidean::new(dim);
        let d = if values.len() >= 2 {
            delta(&e, &ElementSequence::new(values.clone(), seq.boundary())?)?
        } else {
            0.0
        };
        if !values.is_empty() {
            let g = ParamGrid::with_level(knots.clone(), k, grid.rule(), grid.period())?;
            labeled.push(Some(LabeledSequence::new(g, ElementSequence::new(values.clone(), seq.boundary())?)?));
        } else {
            labeled.push(None);
        }
        levels.push(DividedDiffLevel {
            level: k,
            knots,
            values,
            delta: d,
        });
    }
    let mut sup_distances = Vec::new();
    for k in 0..labeled.len().saturating_sub(1) {
        let entry = match (&labeled[k], &labeled[k + 1]) {
            (Some(a), Some(b)) => {
                let e = Euclidean::new(a.points().elements()[0].len());
                let (f, g) = (PiecewiseAverage::new(&e, b), PiecewiseAverage::new(&e, a));
                let (fl, fh) = b.grid().domain();
                let (gl, gh) = a.grid().domain();
                let (lo, hi) = if a.grid().period().is_some() {
                    (fl, fh)
                } else {
                    (fl.max(gl), fh.min(gh))
                };
                if hi > lo {
                    Some(sup_distance_on(&e, &f, &g, lo, hi, samples)?)
                } else {
                    None
                }
            }
            _ => None,
        };
        sup_distances.push(entry);
    }
    Ok(DividedDiffTrace {
        scheme: run.scheme().name.clone(),
        levels,
        sup_distances,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct C1Report {
    /// Contractivity of the divided-difference `delta` trace: `mu_Delta(L)`.
    pub first_order: ContractivityReport,
}

/// First-order contractivity `mu_Delta(L)` for `L = 1..=l_max`, from level `start` on.
pub fn c1_diagnostic(trace: &DividedDiffTrace, l_max: usize, start: usize, tau: f64) -> C1Report {
    C1Report {
        first_order: report_from_trace(
            trace.scheme.clone(),
            "divided-differences".into(),
            trace.deltas(),
            l_max,
            tau,
            start,
        ),
    }
}
