use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::ratio;
use super::stats::fit_power_law;
use crate::error::{Error, Result};
use crate::metric::{sup_distance, Curve, ElementSequence, LabeledSequence, MetricSpace, ParamGrid};
use crate::schemes::{subdivide_labeled, Refinement};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ApproxRow {
    pub h: f64,
    pub points: usize,
    /// Sampled sup distance between the curve and the limit proxy.
    pub error: f64,
    /// `2 L h`.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ApproxOrderReport {
    pub scheme: String,
    pub space: String,
    pub lipschitz: f64,
    /// The Lipschitz constant is supplied by the caller and not verified.
    pub lipschitz_on_trust: bool,
    /// Depth of the level used as the limit proxy.
    pub proxy_levels: usize,
    pub samples: usize,
    /// Sorted by strictly decreasing `h`.
    pub rows: Vec<ApproxRow>,
    /// `error(h_{i+1}) / error(h_i)`, `None` where `error(h_i) <= tau`.
    pub ratios: Vec<Option<f64>>,
    /// Log-log slope of error against `h`, over errors above `tau`.
    pub slope: Option<f64>,
}

impl ApproxOrderReport {
    pub fn all_within_bound(&self) -> bool {
        self.rows.iter().all(|r| r.within_bound)
    }
}

/// Samples `gamma` with spacing `h`, refines `levels` times and compares the
/// level-`levels` interpolant with `gamma`.
///
/// A periodic `gamma` is sampled as closed data over one period; otherwise the
/// domain length must be a multiple of every `h`.
#[allow(clippy::too_many_arguments)]
pub fn approximation_experiment<S, R, G>(
    space: &S,
    scheme: &R,
    gamma: &G,
    lipschitz: f64,
    hs: &[f64],
    levels: usize,
    samples: usize,
) -> Result<ApproxOrderReport>
where
    S: MetricSpace + Clone,
    R: Refinement<S>,
    G: Curve<Element = S::Element>,
{
    if hs.windows(2).any(|w| w[1] >= w[0]) || hs.iter().any(|h| *h <= 0.0) {
        return Err(Error::Invalid("h values must be positive and strictly decreasing".into()));
    }
    let rule = scheme.spec().parameter_rule;
    let (lo, hi) = gamma.domain();
    let closed = gamma.period().is_some();
    let tau = space.tolerance();
    let mut rows = Vec::with_capacity(hs.len());
    for (i, &h) in hs.iter().enumerate() {
        let cells = (hi - lo) / h;
        let m = cells.round();
        if (cells - m).abs() > 1e-9 * cells.max(1.0) || m < 1.0 {
            return Err(Error::Invalid(format!("h = {h} does not divide the domain [{lo}, {hi}]")));
        }
        let n = if closed { m as usize } else { m as usize + 1 };
        let grid = ParamGrid::uniform(n, lo, h, rule, closed)?;
        let pts = grid
            .knots()
            .iter()
            .map(|&t| gamma.eval(t))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.at("approximation_sample", i))?;
        let seq = if closed {
            ElementSequence::closed(pts)?
        } else {
            ElementSequence::open(pts)?
        };
        let run = subdivide_labeled(space, scheme, LabeledSequence::new(grid, seq)?, levels)?;
        let proxy = run.interpolant(levels);
        let error = sup_distance(space, &proxy, gamma, samples).map_err(|e| e.at("approximation", i))?;
        let bound = 2.0 * lipschitz * h;
        rows.push(ApproxRow {
            h,
            points: n,
            error,
            bound,
            within_bound: error <= bound,
        });
    }
    let ratios = rows.windows(2).map(|w| ratio(w[1].error, w[0].error, tau)).collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.error > tau)
        .map(|r| (r.h, r.error))
        .unzip();
    Ok(ApproxOrderReport {
        scheme: scheme.spec().name,
        space: space.name().to_string(),
        lipschitz,
        lipschitz_on_trust: true,
        proxy_levels: levels,
        samples,
        rows,
        ratios,
        slope: fit_power_law(&xs, &ys, 2).map(|f| f.exponent),
    })
}
