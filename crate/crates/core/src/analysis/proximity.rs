use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::stats::{fit_power_law, geometric_mean};
use crate::error::{Error, Result};
use crate::metric::{delta, ElementSequence, MetricSpace};
use crate::schemes::{subdivide, Level, Refinement};

/// Smallest `delta` admitted into a fit, keeping clear of cancellation.
const MIN_FIT_DELTA: f64 = 1e3 * f64::EPSILON;

/// `1/(8 cos^2(1/4))`, the proximity constant of the two Hermite schemes.
pub fn hermite_proximity_constant() -> f64 {
    let c = 0.25f64.cos();
    1.0 / (8.0 * c * c)
}

/// A closed-form bound `sup <= constant * delta^exponent` to verify pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ProximityBound {
    pub constant: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SweepPoint {
    pub scale: f64,
    pub delta: f64,
    /// `sup_j d(S1(P)_j, S2(P)_j)`
    pub sup: f64,
    /// Value of the closed-form bound at this `delta`, when one was given.
    pub bound: Option<f64>,
    pub within_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ProximityType1Report {
    pub scheme1: String,
    pub scheme2: String,
    /// Sorted by strictly decreasing `delta`.
    pub sweep: Vec<SweepPoint>,
    /// Fitted `1 + epsilon`.
    pub exponent: Option<f64>,
    /// Fitted `C`.
    pub constant: Option<f64>,
    pub residual: Option<f64>,
    /// Every sweep point has `sup <= tau`.
    pub identical: bool,
    pub bound: Option<ProximityBound>,
    pub all_within_bound: Option<bool>,
    /// Contractivity factor of `S1` supplied by the caller.
    pub mu: Option<f64>,
    /// `((1 - mu)/(2 C))^(1/epsilon)`: sufficient density for convergence of `S2`.
    pub admissible_delta: Option<f64>,
    /// `mu + 2 C nu^epsilon` at `nu` = half the admissible bound.
    pub mu_w: Option<f64>,
}

/// Sup distance between two refinements of the same data, aligned by fine index.
fn aligned_sup<S: MetricSpace>(space: &S, a: &Level<S::Element>, b: &Level<S::Element>) -> Result<f64> {
    aligned_sup_lift(space, a, b, |x: &S::Element| x.clone())
}

fn aligned_sup_lift<S1, S2, F>(
    space: &S2,
    a: &Level<S1>,
    b: &Level<S2::Element>,
    lift: F,
) -> Result<f64>
where
    S2: MetricSpace,
    F: Fn(&S1) -> S2::Element,
{
    let pa = a.points().elements();
    let pb = b.points().elements();
    let closed = a.points().is_closed();
    let mut best = 0.0_f64;
    let mut compared = 0usize;
    for (q, x) in pa.iter().enumerate() {
        let pos = if closed {
            Some(q)
        } else {
            usize::try_from(a.origin + q as i64 - b.origin).ok()
        };
        if let Some(y) = pos.and_then(|i| pb.get(i)) {
            best = best.max(space.distance(&lift(x), y).map_err(|e| e.at("proximity", q))?);
            compared += 1;
        }
    }
    if compared == 0 {
        return Err(Error::Invalid("refinements share no fine indices".into()));
    }
    Ok(best)
}

/// One-step proximity sweep over a scalable data family.
///
/// `family(scale)` builds the data at each scale; both schemes must share a
/// parameter rule.
#[allow(clippy::too_many_arguments)]
pub fn check_proximity_type1<S, R1, R2, F>(
    space: &S,
    s1: &R1,
    s2: &R2,
    family: F,
    scales: &[f64],
    bound: Option<ProximityBound>,
    mu: Option<f64>,
) -> Result<ProximityType1Report>
where
    S: MetricSpace + Clone,
    R1: Refinement<S>,
    R2: Refinement<S>,
    F: Fn(f64) -> Result<ElementSequence<S::Element>>,
{
    let (spec1, spec2) = (s1.spec(), s2.spec());
    if spec1.parameter_rule != spec2.parameter_rule {
        return Err(Error::Contract(format!(
            "{} ({:?}) and {} ({:?}) use different parameter rules",
            spec1.name, spec1.parameter_rule, spec2.name, spec2.parameter_rule
        )));
    }
    let tau = space.tolerance();
    let mut sweep = Vec::with_capacity(scales.len());
    for (i, &scale) in scales.iter().enumerate() {
        let p = family(scale).map_err(|e| e.at("proximity_family", i))?;
        let d = delta(space, &p)?;
        let r1 = subdivide(space, s1, p.clone(), 1)?;
        let r2 = subdivide(space, s2, p, 1)?;
        let sup = aligned_sup(space, r1.last(), r2.last())?;
        let b = bound.map(|b| b.constant * d.powf(b.exponent));
        sweep.push(SweepPoint {
            scale,
            delta: d,
            sup,
            bound: b,
            within_bound: b.map(|b| sup <= b * (1.0 + 1e-12)),
        });
    }
    sweep.sort_by(|a, b| b.delta.total_cmp(&a.delta));
    if sweep.windows(2).any(|w| w[1].delta >= w[0].delta) {
        return Err(Error::Invalid("sweep deltas must be distinct".into()));
    }
    let identical = sweep.iter().all(|p| p.sup <= tau);
    let (xs, ys): (Vec<f64>, Vec<f64>) = sweep
        .iter()
        .filter(|p| p.delta > MIN_FIT_DELTA && p.sup > tau)
        .map(|p| (p.delta, p.sup))
        .unzip();
    let fit = if identical { None } else { fit_power_law(&xs, &ys, 4) };
    let eps = fit.map(|f| f.exponent - 1.0);
    let admissible_delta = match (mu, fit, eps) {
        (Some(mu), Some(f), Some(e)) if e > 0.0 && mu < 1.0 => {
            Some(((1.0 - mu) / (2.0 * f.constant)).powf(1.0 / e))
        }
        _ => None,
    };
    let mu_w = match (mu, fit, eps, admissible_delta) {
        (Some(mu), Some(f), Some(e), Some(a)) => Some(mu + 2.0 * f.constant * (0.5 * a).powf(e)),
        _ => None,
    };
    let all_within_bound = bound.map(|_| sweep.iter().all(|p| p.within_bound == Some(true)));
    Ok(ProximityType1Report {
        scheme1: spec1.name,
        scheme2: spec2.name,
        sweep,
        exponent: fit.map(|f| f.exponent),
        constant: fit.map(|f| f.constant),
        residual: fit.map(|f| f.residual),
        identical,
        bound,
        all_within_bound,
        mu,
        admissible_delta,
        mu_w,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ProximityType2Report {
    pub scheme1: String,
    pub scheme2: String,
    pub l: usize,
    pub burn_in: usize,
    /// `e_j = sup_i d(S1^L(P^j)_i, S2^L(P^j)_i)` with `P^j = S1^{jL}(P)`.
    pub errors: Vec<f64>,
    /// `e_{j+1}/e_j`, `None` where `e_j <= tau`.
    pub ratios: Vec<Option<f64>>,
    /// Geometric mean of the ratios from the burn-in on, stopping at the first `e_j <= tau`.
    pub eta: Option<f64>,
    /// `floor(-log2(eta) - tau)`.
    pub order: Option<i64>,
    /// `max_{j >= J} e_j / eta^{j+1}`.
    pub e_hat: Option<f64>,
    /// Every `e_j <= tau`.
    pub identical: bool,
}

impl ProximityType2Report {
    /// Whether the trace supports proximity of order `m`: `eta < 2^-m` and
    /// `e_j <= E eta^{j+1}` for every `j` past the burn-in.
    pub fn satisfies_order(&self, m: i64) -> bool {
        let (Some(eta), Some(e)) = (self.eta, self.e_hat) else {
            return false;
        };
        eta < 2f64.powi(-m as i32)
            && self
                .errors
                .iter()
                .enumerate()
                .skip(self.burn_in)
                .all(|(j, ej)| *ej <= e * eta.powi(j as i32 + 1) * (1.0 + 1e-12))
    }
}

/// Second-type proximity trace of `S2` to `S1`.
///
/// `S1` refines in `space1`; `lift` maps its elements into `space2` where
/// `S2` refines and errors are measured. `levels` is the number of blocks `K`.
#[allow(clippy::too_many_arguments)]
pub fn check_proximity_type2<S1, S2, R1, R2, F>(
    space1: &S1,
    s1: &R1,
    space2: &S2,
    s2: &R2,
    lift: F,
    p: ElementSequence<S1::Element>,
    l: usize,
    levels: usize,
    burn_in: usize,
) -> Result<ProximityType2Report>
where
    S1: MetricSpace + Clone,
    S2: MetricSpace + Clone,
    R1: Refinement<S1>,
    R2: Refinement<S2>,
    F: Fn(&S1::Element) -> S2::Element,
{
    if l == 0 {
        return Err(Error::Invalid("L must be positive".into()));
    }
    let tau = space2.tolerance();
    let run1 = subdivide(space1, s1, p, levels * l)?;
    let mut errors = Vec::with_capacity(levels);
    for j in 0..levels {
        let base = run1.level(j * l);
        let lifted = base.points().map(&lift);
        let run2 = subdivide(space2, s2, lifted, l)?;
        let mut out2 = run2.last().clone();
        // Re-anchor the second run at the global origin of its input.
        out2.origin += (1i64 << l) * base.origin;
        let e = aligned_sup_lift(space2, run1.level((j + 1) * l), &out2, &lift)
            .map_err(|e| e.at("proximity_type2", j))?;
        errors.push(e);
    }
    let ratios: Vec<Option<f64>> = errors
        .windows(2)
        .map(|w| super::ratio(w[1], w[0], tau))
        .collect();
    let mut usable = Vec::new();
    for j in burn_in..ratios.len() {
        match ratios[j] {
            Some(r) if errors[j + 1] > tau => usable.push(r),
            _ => break,
        }
    }
    let identical = errors.iter().all(|e| *e <= tau);
    let eta = if identical { None } else { geometric_mean(&usable) };
    let order = eta.map(|e| (-e.log2() - tau).floor() as i64);
    let e_hat = eta.and_then(|eta| {
        errors
            .iter()
            .enumerate()
            .skip(burn_in)
            .filter(|(_, e)| **e > tau)
            .map(|(j, e)| e / eta.powi(j as i32 + 1))
            .reduce(f64::max)
    });
    Ok(ProximityType2Report {
        scheme1: s1.spec().name,
        scheme2: s2.spec().name,
        l,
        burn_in,
        errors,
        ratios,
        eta,
        order,
        e_hat,
        identical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{Averaged, Elementary, HermiteBezier, HermiteNaive};
    use crate::spaces::{Euclidean, HermitePair, HermiteSpace};

    fn line(scale: f64) -> Result<ElementSequence<Vec<f64>>> {
        ElementSequence::open((0..6).map(|i| vec![scale * (i * i) as f64]).collect())
    }

    #[test]
    fn identical_schemes_flagged() {
        let e = Euclidean::new(1);
        let r = check_proximity_type1(&e, &Elementary, &Elementary, line, &[1.0, 0.5, 0.25, 0.125], None, None).unwrap();
        assert!(r.identical);
        assert!(r.exponent.is_none());
    }

    #[test]
    fn different_rules_rejected() {
        let e = Euclidean::new(1);
        let r = check_proximity_type1(&e, &Elementary, &Averaged::chaikin(), line, &[1.0], None, None);
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn hermite_pair_quadratic() {
        let h = HermiteSpace::bezier(2);
        let fam = |s: f64| {
            let pairs = (0..5)
                .map(|i| {
                    let a = s * i as f64;
                    HermitePair::new(vec![(s * i as f64), 0.3 * s * (i * i) as f64], vec![a.cos(), a.sin()])
                })
                .collect::<Result<Vec<_>>>()?;
            ElementSequence::open(pairs)
        };
        let bound = ProximityBound {
            constant: hermite_proximity_constant(),
            exponent: 2.0,
        };
        let r = check_proximity_type1(&h, &HermiteNaive, &HermiteBezier, fam, &[0.2, 0.1, 0.05, 0.025], Some(bound), Some(0.5)).unwrap();
        assert_eq!(r.all_within_bound, Some(true));
        assert!(r.exponent.unwrap() > 1.9);
        assert!(r.admissible_delta.unwrap() > 0.0);
        assert!(r.mu_w.unwrap() < 1.0);
    }

    #[test]
    fn identical_type2() {
        let e = Euclidean::new(1);
        let p = line(1.0).unwrap();
        let r = check_proximity_type2(&e, &Elementary, &e, &Elementary, |x: &Vec<f64>| x.clone(), p, 1, 4, 2).unwrap();
        assert!(r.identical);
        assert_eq!(r.eta, None);
    }
}
