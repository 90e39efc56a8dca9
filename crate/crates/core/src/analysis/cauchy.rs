use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::ratio;
use super::stats::linear_fit;
use crate::error::{Error, Result};
use crate::metric::{sup_distance, MetricSpace};
use crate::schemes::SubdivisionRun;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CauchyTrace {
    pub scheme: String,
    pub space: String,
    pub samples: usize,
    /// Sampled `d_inf` between the level-`k` and level-`k+1` interpolants.
    pub d: Vec<f64>,
    /// `d_{k+1}/d_k`, `None` where `d_k <= tau`.
    pub ratios: Vec<Option<f64>>,
    /// Fitted `d_k ~ B r^k` over entries above `tau`.
    pub rate: Option<f64>,
    pub constant: Option<f64>,
}

impl CauchyTrace {
    /// Largest defined ratio `d_{k+1}/d_k` with `k >= from`.
    pub fn max_ratio_from(&self, from: usize) -> Option<f64> {
        self.ratios.iter().skip(from).flatten().copied().reduce(f64::max)
    }
}

/// Distances between consecutive interpolants of a run.
pub fn cauchy_trace<S: MetricSpace>(run: &SubdivisionRun<S>, samples: usize) -> Result<CauchyTrace> {
    if run.depth() == 0 {
        return Err(Error::Invalid("cauchy trace needs at least two levels".into()));
    }
    let tau = run.space().tolerance();
    let mut d = Vec::with_capacity(run.depth());
    for k in 0..run.depth() {
        let fine = run.interpolant(k + 1);
        let coarse = run.interpolant(k);
        d.push(sup_distance(run.space(), &fine, &coarse, samples).map_err(|e| e.at("cauchy_trace", k))?);
    }
    let ratios = d.windows(2).map(|w| ratio(w[1], w[0], tau)).collect();
    let pts: Vec<(f64, f64)> = d
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > tau)
        .map(|(k, v)| (k as f64, v.ln()))
        .collect();
    let fit = linear_fit(&pts);
    Ok(CauchyTrace {
        scheme: run.scheme().name.clone(),
        space: run.space().name().to_string(),
        samples,
        d,
        ratios,
        rate: fit.map(|f| f.0.exp()),
        constant: fit.map(|f| f.1.exp()),
    })
}
