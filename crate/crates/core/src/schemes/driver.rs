use super::{Refinement, SchemeSpec};
use crate::error::{Error, Result};
use crate::metric::{ElementSequence, LabeledSequence, MetricSpace, ParamGrid, PiecewiseAverage};

/// One level `Q^k` of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Level<E> {
    pub q: LabeledSequence<E>,
    /// Global fine index of the first element: `origin_{k+1} = 2 origin_k + first_index`.
    pub origin: i64,
    /// Refined knots dropped at the open boundary when this level was produced.
    pub trimmed: usize,
}

impl<E> Level<E> {
    pub fn points(&self) -> &ElementSequence<E> {
        self.q.points()
    }

    pub fn grid(&self) -> &ParamGrid {
        self.q.grid()
    }
}

/// Levels `Q^0 .. Q^K` of repeated refinement.
#[derive(Debug, Clone)]
pub struct SubdivisionRun<S: MetricSpace> {
    space: S,
    scheme: SchemeSpec,
    levels: Vec<Level<S::Element>>,
}

impl<S: MetricSpace> SubdivisionRun<S> {
    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn scheme(&self) -> &SchemeSpec {
        &self.scheme
    }

    pub fn levels(&self) -> &[Level<S::Element>] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &Level<S::Element> {
        &self.levels[k]
    }

    pub fn last(&self) -> &Level<S::Element> {
        self.levels.last().expect("a run has at least one level")
    }

    /// Number of refinements performed.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Piecewise average interpolant of level `k`.
    pub fn interpolant(&self, k: usize) -> PiecewiseAverage<'_, S> {
        PiecewiseAverage::new(&self.space, &self.levels[k].q)
    }
}

/// Refines `seq` `levels` times on the integer grid with the scheme's parameter rule.
pub fn subdivide<S, R>(space: &S, scheme: &R, seq: ElementSequence<S::Element>, levels: usize) -> Result<SubdivisionRun<S>>
where
    S: MetricSpace + Clone,
    R: Refinement<S> + ?Sized,
{
    let grid = ParamGrid::for_sequence(&seq, scheme.spec().parameter_rule)?;
    subdivide_labeled(space, scheme, LabeledSequence::new(grid, seq)?, levels)
}

/// Refines labeled data; the grid's rule must match the scheme's.
pub fn subdivide_labeled<S, R>(space: &S, scheme: &R, q0: LabeledSequence<S::Element>, levels: usize) -> Result<SubdivisionRun<S>>
where
    S: MetricSpace + Clone,
    R: Refinement<S> + ?Sized,
{
    let spec = scheme.spec();
    if q0.grid().rule() != spec.parameter_rule {
        return Err(Error::Contract(format!(
            "scheme {} uses {:?} parameters but the grid is {:?}",
            spec.name,
            spec.parameter_rule,
            q0.grid().rule()
        )));
    }
    let mut out = Vec::with_capacity(levels + 1);
    out.push(Level {
        q: q0,
        origin: 0,
        trimmed: 0,
    });
    for k in 0..levels {
        let prev = &out[k];
        let refined = scheme.refine(space, prev.points()).map_err(|e| match e {
            Error::InsufficientData { len, needed, .. } => Error::InsufficientData { level: k, len, needed },
            e => e,
        })?;
        let full = prev.grid().refine_full();
        let len = refined.points.len();
        let grid = prev.grid().refine(refined.first_index, len)?;
        let trimmed = full.len() - grid.len();
        let origin = 2 * prev.origin + refined.first_index as i64;
        out.push(Level {
            q: LabeledSequence::new(grid, refined.points)?,
            origin,
            trimmed,
        });
    }
    Ok(SubdivisionRun {
        space: space.clone(),
        scheme: spec,
        levels: out,
    })
}
