use super::{Refined, Refinement, SchemeSpec};
use crate::error::{Error, Result};
use crate::metric::{ElementSequence, MetricSpace, ParamRule};
use crate::spaces::linalg;
use crate::spaces::{HermitePair, HermiteSpace, SpherePoint};

/// Interpolatory Hermite scheme: odd pair is the chord midpoint with the
/// geodesic midpoint of the tangents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HermiteNaive;

/// Circle-preserving Hermite scheme `W`: odd point
/// `(p_i + p_{i+1})/2 - (alpha_i/8)(v_{i+1} - v_i)` with
/// `alpha_i = |p_{i+1} - p_i| / cos^2(theta_i/4)`, tangent as in [`HermiteNaive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HermiteBezier;

fn hermite_spec(name: &str, odd_rule: &str) -> SchemeSpec {
    SchemeSpec {
        name: name.into(),
        even_stencil: vec![0],
        odd_stencil: vec![0, 1],
        even_rule: "(p_j, v_j)".into(),
        odd_rule: odd_rule.into(),
        locality_range: 1,
        parameter_rule: ParamRule::Primal,
        interpolatory: true,
        requires: vec!["hermite-pairs".into()],
    }
}

fn tangent_midpoint(a: &HermitePair, b: &HermitePair) -> Result<SpherePoint> {
    let sphere = crate::spaces::Sphere::new(a.dim());
    sphere.average(0.5, &a.v, &b.v)
}

/// The odd point of `W` for one interval.
pub(crate) fn bezier_odd_point(a: &HermitePair, b: &HermitePair) -> Vec<f64> {
    let alpha = 3.0 * crate::spaces::hermite_adaptive_c(a, b);
    let mid = linalg::lerp(0.5, &a.p, &b.p);
    let dv = linalg::sub(b.v.as_slice(), a.v.as_slice());
    linalg::axpy(&mid, -alpha / 8.0, &dv)
}

fn interpolatory<F>(
    space: &HermiteSpace,
    seq: &ElementSequence<HermitePair>,
    op: &'static str,
    odd: F,
) -> Result<Refined<HermitePair>>
where
    F: Fn(&HermitePair, &HermitePair) -> Result<HermitePair>,
{
    if !seq.is_closed() && seq.len() < 2 {
        return Err(Error::InsufficientData {
            level: 0,
            len: seq.len(),
            needed: 2,
        });
    }
    let p = seq.elements();
    let mut out = Vec::with_capacity(2 * p.len());
    for (j, (a, b)) in seq.pairs().enumerate() {
        for x in [a, b] {
            if x.dim() != space.dim() {
                return Err(Error::DimensionMismatch(space.dim(), x.dim()).at(op, j));
            }
        }
        out.push(a.clone());
        out.push(odd(a, b).map_err(|e| e.at(op, j))?);
    }
    if !seq.is_closed() {
        out.push(p[p.len() - 1].clone());
    }
    Ok(Refined {
        points: ElementSequence::new(out, seq.boundary())?,
        first_index: 0,
    })
}

impl Refinement<HermiteSpace> for HermiteNaive {
    fn spec(&self) -> SchemeSpec {
        hermite_spec("hermite-naive", "((p_j + p_j+1)/2, slerp_1/2(v_j, v_j+1))")
    }

    fn refine(&self, space: &HermiteSpace, seq: &ElementSequence<HermitePair>) -> Result<Refined<HermitePair>> {
        interpolatory(space, seq, "hermite_naive_refine", |a, b| {
            Ok(HermitePair {
                p: linalg::lerp(0.5, &a.p, &b.p),
                v: tangent_midpoint(a, b)?,
            })
        })
    }
}

impl Refinement<HermiteSpace> for HermiteBezier {
    fn spec(&self) -> SchemeSpec {
        hermite_spec(
            "hermite-bezier",
            "((p_j + p_j+1)/2 - (alpha_j/8)(v_j+1 - v_j), slerp_1/2(v_j, v_j+1))",
        )
    }

    fn refine(&self, space: &HermiteSpace, seq: &ElementSequence<HermitePair>) -> Result<Refined<HermitePair>> {
        interpolatory(space, seq, "hermite_bezier_refine", |a, b| {
            let v = tangent_midpoint(a, b)?;
            Ok(HermitePair {
                p: bezier_odd_point(a, b),
                v,
            })
        })
    }
}
