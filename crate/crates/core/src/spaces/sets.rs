use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::linalg;
use crate::error::{Error, Result};
use crate::metric::{check_weight, MetricSpace, DEFAULT_TOLERANCE};

/// Relative slack under which two candidate nearest neighbours tie.
const TIE_TOLERANCE: f64 = 1e-12;

/// Finite nonempty point cloud in `R^n`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct FiniteSet {
    points: Vec<Vec<f64>>,
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl FiniteSet {
    /// Builds a set, merging points closer than the default tolerance.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(points, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(mut points: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("finite set"))?;
        let dim = first.len();
        for p in &points {
            linalg::same_dim(p, &points[0])?;
            linalg::check_finite(p)?;
        }
        if dim == 0 {
            return Err(Error::Invalid("set points need at least one coordinate".into()));
        }
        points.sort_by(|a, b| lex(a, b));
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
        for p in points {
            if !kept.iter().any(|q| linalg::dist(q, &p) <= tol) {
                kept.push(p);
            }
        }
        Ok(Self { points: kept })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }
}

impl TryFrom<Vec<Vec<f64>>> for FiniteSet {
    type Error = Error;

    fn try_from(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<FiniteSet> for Vec<Vec<f64>> {
    fn from(s: FiniteSet) -> Self {
        s.points
    }
}

/// Metric pairs `Pi(A, B)` as index pairs into `A` and `B`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricPairSet {
    pub pairs: Vec<(usize, usize)>,
}

impl MetricPairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The pairs as points.
    pub fn resolve<'a>(&'a self, a: &'a FiniteSet, b: &'a FiniteSet) -> impl Iterator<Item = (&'a [f64], &'a [f64])> + 'a {
        self.pairs
            .iter()
            .map(move |&(i, k)| (a.points[i].as_slice(), b.points[k].as_slice()))
    }
}

fn nearest(from: &[f64], to: &FiniteSet) -> Vec<usize> {
    let d: Vec<f64> = to.points.iter().map(|q| linalg::dist(from, q)).collect();
    let m = d.iter().copied().fold(f64::INFINITY, f64::min);
    let cut = m + TIE_TOLERANCE * m;
    (0..d.len()).filter(|&k| d[k] <= cut).collect()
}

/// All pairs `(a, b)` where `b` is a nearest point of `B` to `a` or `a` a
/// nearest point of `A` to `b`. Near-ties within relative `1e-12` are all kept.
pub fn metric_pairs(a: &FiniteSet, b: &FiniteSet) -> Result<MetricPairSet> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut pairs = Vec::new();
    for (i, p) in a.points.iter().enumerate() {
        pairs.extend(nearest(p, b).into_iter().map(|k| (i, k)));
    }
    for (k, q) in b.points.iter().enumerate() {
        pairs.extend(nearest(q, a).into_iter().map(|i| (i, k)));
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(MetricPairSet { pairs })
}

/// Hausdorff distance, the longest metric pair.
pub fn hausdorff_distance(a: &FiniteSet, b: &FiniteSet) -> Result<f64> {
    let pairs = metric_pairs(a, b)?;
    Ok(pairs
        .resolve(a, b)
        .map(|(p, q)| linalg::dist(p, q))
        .fold(0.0, f64::max))
}

/// Metric average `{(1 - w) a + w b : (a, b) in Pi(A, B)}`.
pub fn metric_average(w: f64, a: &FiniteSet, b: &FiniteSet, tol: f64) -> Result<FiniteSet> {
    check_weight(w)?;
    let pairs = metric_pairs(a, b)?;
    let points = pairs.resolve(a, b).map(|(p, q)| linalg::lerp(w, p, q)).collect();
    FiniteSet::with_tolerance(points, tol)
}

/// Nonempty finite subsets of `R^n` with the Hausdorff metric and the metric average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetSpace {
    dim: usize,
    tol: f64,
}

impl SetSpace {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(dim: usize, tol: f64) -> Self {
        Self { dim, tol }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, x: &FiniteSet) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, x.dim()));
        }
        Ok(())
    }
}

impl MetricSpace for SetSpace {
    type Element = FiniteSet;

    fn name(&self) -> &'static str {
        "sets"
    }

    fn distance(&self, x: &FiniteSet, y: &FiniteSet) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        hausdorff_distance(x, y)
    }

    fn average(&self, w: f64, x: &FiniteSet, y: &FiniteSet) -> Result<FiniteSet> {
        self.check(x)?;
        self.check(y)?;
        metric_average(w, x, y, self.tol)
    }

    fn is_intrinsic(&self) -> bool {
        true
    }

    fn tolerance(&self) -> f64 {
        self.tol
    }
}
