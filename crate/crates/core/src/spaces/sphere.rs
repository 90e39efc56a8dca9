use serde::{Deserialize, Serialize};

use super::linalg;
use crate::error::{Error, Result};
use crate::metric::{check_weight, EuclideanEmbedding, MetricSpace};

/// Inputs closer than this to antipodal (in radians) have no unique geodesic.
pub const ANTIPODAL_MARGIN: f64 = 1e-8;

/// A unit vector, renormalized on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        linalg::check_finite(&v)?;
        let n = linalg::norm(&v);
        if v.is_empty() || n == 0.0 {
            return Err(Error::Invalid("cannot normalize a zero vector".into()));
        }
        Ok(Self(v.into_iter().map(|x| x / n).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

impl TryFrom<Vec<f64>> for SpherePoint {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SpherePoint> for Vec<f64> {
    fn from(p: SpherePoint) -> Self {
        p.0
    }
}

/// Great-circle angle between unit vectors, accurate near `0` and `pi`.
pub(crate) fn angle(v: &[f64], u: &[f64]) -> f64 {
    let diff = linalg::norm(&linalg::sub(v, u));
    let sum = linalg::norm(&linalg::add(v, u));
    2.0 * diff.atan2(sum)
}

/// `sin(x)/x` with a series near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Spherical linear interpolation. Errors on (near) antipodal inputs.
pub(crate) fn slerp(w: f64, v: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    if w == 0.0 {
        return Ok(v.to_vec());
    }
    if w == 1.0 {
        return Ok(u.to_vec());
    }
    let theta = angle(v, u);
    if theta > std::f64::consts::PI - ANTIPODAL_MARGIN {
        return Err(Error::Antipodal { angle: theta });
    }
    if theta == 0.0 {
        return Ok(v.to_vec());
    }
    // sin(a t)/sin(t) = a sinc(a t)/sinc(t), stable as t -> 0.
    let s = sinc(theta);
    let a = (1.0 - w) * sinc((1.0 - w) * theta) / s;
    let b = w * sinc(w * theta) / s;
    let out: Vec<f64> = v.iter().zip(u).map(|(x, y)| a * x + b * y).collect();
    let n = linalg::norm(&out);
    Ok(out.into_iter().map(|x| x / n).collect())
}

/// Unit sphere `S^{n-1}` in `R^n` with the geodesic (slerp) average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sphere {
    dim: usize,
}

impl Sphere {
    /// Sphere embedded in `R^dim`.
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, x: &SpherePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, x.dim()));
        }
        Ok(())
    }

    /// Point reached by following the geodesic from `base` with initial
    /// velocity `tangent` (projected onto the tangent space) for unit time.
    pub fn exp(&self, base: &SpherePoint, tangent: &[f64]) -> Result<SpherePoint> {
        self.check(base)?;
        linalg::same_dim(base.as_slice(), tangent)?;
        let b = base.as_slice();
        let t = linalg::axpy(tangent, -linalg::dot(b, tangent), b);
        let len = linalg::norm(&t);
        if len == 0.0 {
            return Ok(base.clone());
        }
        let out = linalg::add(&linalg::scale(len.cos(), b), &linalg::scale(len.sin() / len, &t));
        SpherePoint::new(out)
    }

    /// Inverse of [`Sphere::exp`] for non-antipodal points.
    pub fn log(&self, base: &SpherePoint, x: &SpherePoint) -> Result<Vec<f64>> {
        self.check(base)?;
        self.check(x)?;
        let b = base.as_slice();
        let theta = angle(b, x.as_slice());
        if theta > std::f64::consts::PI - ANTIPODAL_MARGIN {
            return Err(Error::Antipodal { angle: theta });
        }
        let t = linalg::axpy(x.as_slice(), -linalg::dot(b, x.as_slice()), b);
        let len = linalg::norm(&t);
        if len == 0.0 {
            return Ok(vec![0.0; b.len()]);
        }
        Ok(linalg::scale(theta / len, &t))
    }
}

impl MetricSpace for Sphere {
    type Element = SpherePoint;

    fn name(&self) -> &'static str {
        "sphere"
    }

    fn distance(&self, x: &SpherePoint, y: &SpherePoint) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(angle(x.as_slice(), y.as_slice()))
    }

    fn average(&self, w: f64, x: &SpherePoint, y: &SpherePoint) -> Result<SpherePoint> {
        check_weight(w)?;
        self.check(x)?;
        self.check(y)?;
        Ok(SpherePoint(slerp(w, x.as_slice(), y.as_slice())?))
    }

    fn is_intrinsic(&self) -> bool {
        true
    }
}

impl EuclideanEmbedding for Sphere {
    fn embed(&self, x: &SpherePoint) -> Vec<f64> {
        x.0.clone()
    }
}
