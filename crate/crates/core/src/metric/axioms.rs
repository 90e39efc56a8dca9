use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::MetricSpace;
use crate::error::{Error, Result};

/// Largest observed residual per average axiom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct AxiomReport {
    pub space: String,
    pub samples: usize,
    /// `d(A_0(x, y), x)`
    pub endpoint_zero: f64,
    /// `d(A_1(x, y), y)`
    pub endpoint_one: f64,
    /// `d(A_w(x, x), x)`
    pub diagonal: f64,
    /// `d(A_w(x, y), A_{1-w}(y, x))`
    pub symmetry: f64,
    /// `max(d(x, A_w), d(y, A_w)) - d(x, y)`; nonpositive when bounded.
    pub boundedness: f64,
    /// Empirical `d(A_w, A_{w+h}) / (h d(x, y))`. Reported, never asserted.
    pub continuity_modulus: f64,
}

impl AxiomReport {
    /// Largest residual over the four equality axioms and boundedness.
    pub fn max_violation(&self) -> f64 {
        [
            self.endpoint_zero,
            self.endpoint_one,
            self.diagonal,
            self.symmetry,
            self.boundedness,
        ]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_violation() <= tol
    }
}

/// Relative residuals of the metric property and the intermediate-value identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct MetricPropertyReport {
    pub space: String,
    pub samples: usize,
    /// `|d(x, A_w) - w d(x, y)| / max(d(x, y), tau)`
    pub metric: f64,
    /// `|d(x, A_w) + d(A_w, y) - d(x, y)| / max(d(x, y), tau)`
    pub intermediate_value: f64,
}

impl MetricPropertyReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.metric <= tol && self.intermediate_value <= tol
    }
}

const CONTINUITY_STEP: f64 = 1e-4;

/// Measures every average axiom on the given pairs and weights.
pub fn check_average_axioms<S: MetricSpace>(
    space: &S,
    pairs: &[(S::Element, S::Element)],
    omegas: &[f64],
) -> Result<AxiomReport> {
    let tau = space.tolerance();
    let mut r = AxiomReport {
        space: space.name().to_string(),
        samples: 0,
        endpoint_zero: 0.0,
        endpoint_one: 0.0,
        diagonal: 0.0,
        symmetry: 0.0,
        boundedness: f64::NEG_INFINITY,
        continuity_modulus: 0.0,
    };
    for (i, (x, y)) in pairs.iter().enumerate() {
        let ctx = |e: Error| e.at("check_average_axioms", i);
        let dxy = space.distance(x, y).map_err(ctx)?;
        let a0 = space.average(0.0, x, y).map_err(ctx)?;
        let a1 = space.average(1.0, x, y).map_err(ctx)?;
        r.endpoint_zero = r.endpoint_zero.max(space.distance(&a0, x).map_err(ctx)?);
        r.endpoint_one = r.endpoint_one.max(space.distance(&a1, y).map_err(ctx)?);
        for &w in omegas {
            let a = space.average(w, x, y).map_err(ctx)?;
            let diag = space.average(w, x, x).map_err(ctx)?;
            let swapped = space.average(1.0 - w, y, x).map_err(ctx)?;
            r.diagonal = r.diagonal.max(space.distance(&diag, x).map_err(ctx)?);
            r.symmetry = r.symmetry.max(space.distance(&a, &swapped).map_err(ctx)?);
            let reach = space
                .distance(x, &a)
                .map_err(ctx)?
                .max(space.distance(y, &a).map_err(ctx)?);
            r.boundedness = r.boundedness.max(reach - dxy);
            let (lo, hi) = if w + CONTINUITY_STEP <= 1.0 {
                (w, w + CONTINUITY_STEP)
            } else {
                (w - CONTINUITY_STEP, w)
            };
            let b0 = space.average(lo, x, y).map_err(ctx)?;
            let b1 = space.average(hi, x, y).map_err(ctx)?;
            let jump = space.distance(&b0, &b1).map_err(ctx)?;
            r.continuity_modulus = r
                .continuity_modulus
                .max(jump / (CONTINUITY_STEP * dxy.max(tau)));
            r.samples += 1;
        }
    }
    if r.samples == 0 {
        r.boundedness = 0.0;
    }
    Ok(r)
}

/// Measures the metric property on an intrinsic space.
///
/// Errors with a contract violation when the space does not claim the property.
pub fn check_metric_property<S: MetricSpace>(
    space: &S,
    pairs: &[(S::Element, S::Element)],
    omegas: &[f64],
) -> Result<MetricPropertyReport> {
    if !space.is_intrinsic() {
        return Err(Error::Contract(format!(
            "{} average is not registered as intrinsic",
            space.name()
        )));
    }
    let tau = space.tolerance();
    let mut r = MetricPropertyReport {
        space: space.name().to_string(),
        samples: 0,
        metric: 0.0,
        intermediate_value: 0.0,
    };
    for (i, (x, y)) in pairs.iter().enumerate() {
        let ctx = |e: Error| e.at("check_metric_property", i);
        let dxy = space.distance(x, y).map_err(ctx)?;
        let scale = dxy.max(tau);
        for &w in omegas {
            let a = space.average(w, x, y).map_err(ctx)?;
            let dxa = space.distance(x, &a).map_err(ctx)?;
            let day = space.distance(&a, y).map_err(ctx)?;
            r.metric = r.metric.max((dxa - w * dxy).abs() / scale);
            r.intermediate_value = r.intermediate_value.max((dxa + day - dxy).abs() / scale);
            r.samples += 1;
        }
    }
    Ok(r)
}
