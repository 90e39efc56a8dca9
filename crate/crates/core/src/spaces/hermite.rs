use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::linalg;
use super::sphere::{angle, slerp, SpherePoint};
use crate::error::{Error, Result};
use crate::metric::{check_weight, MetricSpace};

/// A point with a unit tangent direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitePair {
    pub p: Vec<f64>,
    pub v: SpherePoint,
}

impl HermitePair {
    pub fn new(p: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        linalg::check_finite(&p)?;
        let v = SpherePoint::new(v)?;
        linalg::same_dim(&p, v.as_slice())?;
        Ok(Self { p, v })
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }
}

/// Choice of the Bezier arm length `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum CPolicy {
    /// `c = alpha/3` with `alpha = |p1 - p0| / cos^2(theta/4)`.
    Adaptive,
    Fixed(f64),
}

/// Which average a [`HermiteSpace`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "snake_case", tag = "mode", content = "c")]
pub enum HermiteMode {
    /// Arithmetic average of points, geodesic average of tangents.
    Naive,
    /// Value and normalized derivative of the cubic Bezier through the pairs.
    Bezier(CPolicy),
}

/// `R^n x S^{n-1}` with the mixed metric `sqrt(|p - q|^2 + d_S(v, w)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteSpace {
    dim: usize,
    mode: HermiteMode,
}

/// `alpha/3` for the pair, the arm length that keeps circle data on the circle.
pub fn adaptive_c(a: &HermitePair, b: &HermitePair) -> f64 {
    let gap = linalg::dist(&a.p, &b.p);
    let theta = angle(a.v.as_slice(), b.v.as_slice());
    let q = (theta / 4.0).cos();
    gap / (q * q) / 3.0
}

/// Cubic Bezier average with control points `p0, p0 + c v0, p1 - c v1, p1`,
/// evaluated literally at `w`: `(B(w), B'(w)/|B'(w)|)`.
///
/// Identical pairs return the pair itself.
pub fn bezier_average(w: f64, a: &HermitePair, b: &HermitePair, c: f64) -> Result<HermitePair> {
    check_weight(w)?;
    linalg::same_dim(&a.p, &b.p)?;
    if a == b || w == 0.0 {
        return Ok(a.clone());
    }
    if w == 1.0 {
        return Ok(b.clone());
    }
    if c == 0.0 {
        return Err(Error::DegenerateTangent { omega: w });
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Invalid(format!("Bezier arm length {c} must be positive")));
    }
    let p0 = &a.p;
    let p3 = &b.p;
    let p1 = linalg::axpy(p0, c, a.v.as_slice());
    let p2 = linalg::axpy(p3, -c, b.v.as_slice());
    let u = 1.0 - w;
    let (b0, b1, b2, b3) = (u * u * u, 3.0 * u * u * w, 3.0 * u * w * w, w * w * w);
    let point: Vec<f64> = (0..p0.len())
        .map(|i| b0 * p0[i] + b1 * p1[i] + b2 * p2[i] + b3 * p3[i])
        .collect();
    let (d0, d1, d2) = (3.0 * u * u, 6.0 * u * w, 3.0 * w * w);
    let deriv: Vec<f64> = (0..p0.len())
        .map(|i| d0 * (p1[i] - p0[i]) + d1 * (p2[i] - p1[i]) + d2 * (p3[i] - p2[i]))
        .collect();
    let scale = linalg::dist(p0, p3).max(c).max(f64::MIN_POSITIVE);
    if linalg::norm(&deriv) <= 1e-14 * scale {
        return Err(Error::DegenerateTangent { omega: w });
    }
    Ok(HermitePair {
        p: point,
        v: SpherePoint::new(deriv)?,
    })
}

/// Lexicographic order on the concatenated coordinates.
fn lex(a: &HermitePair, b: &HermitePair) -> Ordering {
    a.p.iter()
        .chain(a.v.as_slice())
        .zip(b.p.iter().chain(b.v.as_slice()))
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn negate(x: &HermitePair) -> HermitePair {
    HermitePair {
        p: x.p.clone(),
        v: x.v.neg(),
    }
}

impl HermiteSpace {
    pub fn new(dim: usize, mode: HermiteMode) -> Self {
        Self { dim, mode }
    }

    pub fn naive(dim: usize) -> Self {
        Self::new(dim, HermiteMode::Naive)
    }

    /// Bezier average with the data-dependent arm length.
    pub fn bezier(dim: usize) -> Self {
        Self::new(dim, HermiteMode::Bezier(CPolicy::Adaptive))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> HermiteMode {
        self.mode
    }

    fn check(&self, x: &HermitePair) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, x.dim()));
        }
        Ok(())
    }

    /// Bezier average oriented along the direction of travel.
    ///
    /// When the tangents point against the chord `p1 - p0` the curve is built
    /// from the reversed tangents and its tangent is reversed back, so that
    /// `A_w(x, y) = A_{1-w}(y, x)` holds exactly.
    fn oriented_bezier(&self, w: f64, x: &HermitePair, y: &HermitePair, policy: CPolicy) -> Result<HermitePair> {
        let c = match policy {
            CPolicy::Adaptive => adaptive_c(x, y),
            CPolicy::Fixed(c) => c,
        };
        let chord = linalg::sub(&y.p, &x.p);
        let s = linalg::dot(&linalg::add(x.v.as_slice(), y.v.as_slice()), &chord);
        let forward = match s.partial_cmp(&0.0) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Less) => false,
            _ => lex(x, y) != Ordering::Greater,
        };
        if forward {
            bezier_average(w, x, y, c)
        } else {
            Ok(negate(&bezier_average(w, &negate(x), &negate(y), c)?))
        }
    }
}

impl MetricSpace for HermiteSpace {
    type Element = HermitePair;

    fn name(&self) -> &'static str {
        match self.mode {
            HermiteMode::Naive => "hermite-naive",
            HermiteMode::Bezier(_) => "hermite",
        }
    }

    fn distance(&self, x: &HermitePair, y: &HermitePair) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let gap = linalg::dist(&x.p, &y.p);
        Ok(gap.hypot(angle(x.v.as_slice(), y.v.as_slice())))
    }

    fn average(&self, w: f64, x: &HermitePair, y: &HermitePair) -> Result<HermitePair> {
        check_weight(w)?;
        self.check(x)?;
        self.check(y)?;
        match self.mode {
            HermiteMode::Naive => Ok(HermitePair {
                p: linalg::lerp(w, &x.p, &y.p),
                v: SpherePoint::new(slerp(w, x.v.as_slice(), y.v.as_slice())?)?,
            }),
            HermiteMode::Bezier(policy) => self.oriented_bezier(w, x, y, policy),
        }
    }

    fn is_intrinsic(&self) -> bool {
        // The product average is a geodesic of the mixed metric; no metric is
        // known for which the Bezier average is.
        matches!(self.mode, HermiteMode::Naive)
    }
}
