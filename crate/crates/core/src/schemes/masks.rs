use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::Refinement;
use crate::error::{Error, Result};
use crate::metric::ElementSequence;
use crate::spaces::Euclidean;

/// Weights `a_k` of a linear rule `out_i = sum_j a_{i-2j} p_j`, split by parity
/// of `k` and listed in ascending `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Mask {
    pub scheme: String,
    pub even_offsets: Vec<i64>,
    pub even: Vec<f64>,
    pub odd_offsets: Vec<i64>,
    pub odd: Vec<f64>,
}

impl Mask {
    pub fn sum_even(&self) -> f64 {
        self.even.iter().sum()
    }

    pub fn sum_odd(&self) -> f64 {
        self.odd.iter().sum()
    }
}

/// Recovers the mask of a scheme from its response to a unit impulse in the
/// middle of `impulse_len` scalar samples.
pub fn linear_mask<R: Refinement<Euclidean>>(scheme: &R, impulse_len: usize) -> Result<Mask> {
    let spec = scheme.spec();
    let reach = 2 * spec.locality_range + 1;
    if impulse_len < 2 * reach + 1 {
        return Err(Error::Invalid(format!(
            "impulse length {impulse_len} too short for {} (need {})",
            spec.name,
            2 * reach + 1
        )));
    }
    let m = impulse_len / 2;
    let data = (0..impulse_len)
        .map(|j| vec![if j == m { 1.0 } else { 0.0 }])
        .collect();
    let refined = scheme.refine(&Euclidean::new(1), &ElementSequence::open(data)?)?;
    let mut mask = Mask {
        scheme: spec.name,
        even_offsets: Vec::new(),
        even: Vec::new(),
        odd_offsets: Vec::new(),
        odd: Vec::new(),
    };
    for (q, p) in refined.points.elements().iter().enumerate() {
        let k = (refined.first_index + q) as i64 - 2 * m as i64;
        if p[0].abs() <= 1e-15 {
            continue;
        }
        if k.rem_euclid(2) == 0 {
            mask.even_offsets.push(k);
            mask.even.push(p[0]);
        } else {
            mask.odd_offsets.push(k);
            mask.odd.push(p[0]);
        }
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{Averaged, Elementary, LaneRiesenfeld};

    #[test]
    fn elementary_mask() {
        let m = linear_mask(&Elementary, 9).unwrap();
        assert_eq!(m.even, vec![1.0]);
        assert_eq!(m.odd, vec![0.5, 0.5]);
        assert_eq!(m.odd_offsets, vec![-1, 1]);
    }

    #[test]
    fn chaikin_mask() {
        let m = linear_mask(&Averaged::chaikin(), 9).unwrap();
        assert_eq!(m.even, vec![0.25, 0.75]);
        assert_eq!(m.odd, vec![0.75, 0.25]);
    }

    #[test]
    fn too_short_impulse() {
        assert!(linear_mask(&LaneRiesenfeld::new(2), 3).is_err());
    }
}
