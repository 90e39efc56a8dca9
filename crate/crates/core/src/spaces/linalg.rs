//! Small dense-vector helpers.

use crate::error::{Error, Result};

pub fn same_dim(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a.len(), b.len()))
    }
}

pub fn check_finite(v: &[f64]) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: v[index],
        }),
        None => Ok(()),
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    let m = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    if (1e-140..1e140).contains(&m) {
        return a.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    // Rescale only where squaring would overflow or underflow.
    m * a.iter().map(|x| (x / m) * (x / m)).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(s: f64, a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| s * x).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

/// `(1 - w) a + w b`, exact at `w = 0` and `w = 1`.
pub fn lerp(w: f64, a: &[f64], b: &[f64]) -> Vec<f64> {
    if w == 0.0 {
        return a.to_vec();
    }
    if w == 1.0 {
        return b.to_vec();
    }
    a.iter().zip(b).map(|(x, y)| (1.0 - w) * x + w * y).collect()
}

/// `a + s b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}
