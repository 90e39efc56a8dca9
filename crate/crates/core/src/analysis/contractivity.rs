use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::ratio;
use crate::error::{Error, Result};
use crate::metric::{delta, ElementSequence, MetricSpace};
use crate::schemes::{subdivide, Refinement, SubdivisionRun};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ContractivityRow {
    /// Contractivity number `L`.
    pub l: usize,
    /// `delta(S^{L(k+1)} P) / delta(S^{Lk} P)` per block; `None` when excluded.
    pub ratios: Vec<Option<f64>>,
    /// Largest admissible ratio.
    pub mu: Option<f64>,
    /// Per-step rate `mu^(1/L)`.
    pub rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ContractivityReport {
    pub scheme: String,
    pub space: String,
    /// `delta` of every level.
    pub delta_trace: Vec<f64>,
    /// First level entering the ratio statistics.
    pub start_level: usize,
    pub rows: Vec<ContractivityRow>,
    /// `L` minimizing `mu^(1/L)`.
    pub best_l: Option<usize>,
    pub best_mu: Option<f64>,
    pub best_rate: Option<f64>,
    /// Largest `delta` over the first `best_l` measured levels.
    pub c_p: Option<f64>,
    /// Every level is constant (no ratio is defined).
    pub degenerate: bool,
}

/// `delta` of every level of a run.
pub fn delta_trace<S: MetricSpace>(run: &SubdivisionRun<S>) -> Result<Vec<f64>> {
    run.levels()
        .iter()
        .enumerate()
        .map(|(k, l)| delta(run.space(), l.points()).map_err(|e| e.at("delta_trace", k)))
        .collect()
}

/// Contractivity table for `L = 1..=l_max` from a `delta` trace, using levels
/// `start..`.
pub fn contractivity_from_trace(
    trace: &[f64],
    l_max: usize,
    tau: f64,
    start: usize,
) -> (Vec<ContractivityRow>, Option<usize>) {
    let usable = trace.len().saturating_sub(start);
    let mut rows = Vec::new();
    for l in 1..=l_max {
        let blocks = usable.saturating_sub(1) / l;
        let ratios: Vec<Option<f64>> = (0..blocks)
            .map(|k| ratio(trace[start + l * (k + 1)], trace[start + l * k], tau))
            .collect();
        let mu = ratios.iter().flatten().copied().reduce(f64::max);
        rows.push(ContractivityRow {
            l,
            ratios,
            mu,
            rate: mu.map(|m| m.powf(1.0 / l as f64)),
        });
    }
    let best = rows
        .iter()
        .filter_map(|r| r.rate.map(|rate| (r.l, rate)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(l, _)| l);
    (rows, best)
}

/// Measures `mu(L)` on `levels` refinements of `p`. Needs `levels >= 2 l_max`.
pub fn estimate_contractivity<S, R>(
    space: &S,
    scheme: &R,
    p: ElementSequence<S::Element>,
    l_max: usize,
    levels: usize,
) -> Result<ContractivityReport>
where
    S: MetricSpace + Clone,
    R: Refinement<S>,
{
    if l_max == 0 || levels < 2 * l_max {
        return Err(Error::Invalid(format!(
            "contractivity needs levels >= 2 L_max (got {levels} levels, L_max {l_max})"
        )));
    }
    let run = subdivide(space, scheme, p, levels)?;
    contractivity_of_run(&run, l_max, 0)
}

/// Contractivity table of an existing run, from level `start` on.
pub fn contractivity_of_run<S: MetricSpace>(
    run: &SubdivisionRun<S>,
    l_max: usize,
    start: usize,
) -> Result<ContractivityReport> {
    let trace = delta_trace(run)?;
    Ok(report_from_trace(
        run.scheme().name.clone(),
        run.space().name().to_string(),
        trace,
        l_max,
        run.space().tolerance(),
        start,
    ))
}

pub(crate) fn report_from_trace(
    scheme: String,
    space: String,
    trace: Vec<f64>,
    l_max: usize,
    tau: f64,
    start: usize,
) -> ContractivityReport {
    let (rows, best_l) = contractivity_from_trace(&trace, l_max, tau, start);
    let best = best_l.and_then(|l| rows.iter().find(|r| r.l == l));
    let c_p = best_l.map(|l| {
        trace[start.min(trace.len())..]
            .iter()
            .take(l)
            .copied()
            .fold(0.0, f64::max)
    });
    let degenerate = trace[start.min(trace.len())..].iter().all(|d| *d <= tau);
    ContractivityReport {
        scheme,
        space,
        start_level: start,
        best_l,
        best_mu: best.and_then(|r| r.mu),
        best_rate: best.and_then(|r| r.rate),
        c_p,
        degenerate,
        rows,
        delta_trace: trace,
    }
}
