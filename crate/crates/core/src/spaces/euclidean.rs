use super::linalg;
use crate::error::{Error, Result};
use crate::metric::{check_weight, EuclideanEmbedding, MetricSpace};

/// `R^n` with the arithmetic average `(1 - w) x + w y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, x.len()));
        }
        linalg::check_finite(x)
    }
}

impl MetricSpace for Euclidean {
    type Element = Vec<f64>;

    fn name(&self) -> &'static str {
        "euclidean"
    }

    fn distance(&self, x: &Vec<f64>, y: &Vec<f64>) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(linalg::dist(x, y))
    }

    fn average(&self, w: f64, x: &Vec<f64>, y: &Vec<f64>) -> Result<Vec<f64>> {
        check_weight(w)?;
        self.check(x)?;
        self.check(y)?;
        Ok(linalg::lerp(w, x, y))
    }

    fn is_intrinsic(&self) -> bool {
        true
    }
}

impl EuclideanEmbedding for Euclidean {
    fn embed(&self, x: &Vec<f64>) -> Vec<f64> {
        x.clone()
    }
}
