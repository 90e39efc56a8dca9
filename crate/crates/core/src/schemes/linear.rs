use super::{Refined, Refinement, SchemeSpec};
use crate::error::{Error, Result};
use crate::metric::{Boundary, ElementSequence, MetricSpace, ParamRule};

/// Keep `p_j` at fine index `2j`; insert `A_{1/2}(p_j, p_{j+1})` at `2j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Elementary;

/// Corner cutting: `A_w(p_j, m_j)` and `A_w(m_j, p_{j+1})` with
/// `m_j = A_{1/2}(p_j, p_{j+1})`. `w = 1/2` is Chaikin's scheme in `R^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Averaged {
    omega: f64,
}

/// Elementary step followed by `rounds` rounds of midpoint averaging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaneRiesenfeld {
    rounds: usize,
}

impl Averaged {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega < 1.0) {
            return Err(Error::InvalidWeight(omega));
        }
        Ok(Self { omega })
    }

    pub fn chaikin() -> Self {
        Self { omega: 0.5 }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

impl LaneRiesenfeld {
    pub fn new(rounds: usize) -> Self {
        Self { rounds }
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Fine-index shift of the output relative to the smoothed sequence.
    fn shift(&self) -> usize {
        self.rounds / 2
    }
}

/// Coarse offsets read by fine index `i` in {0, 1} after `rounds` smoothing
/// rounds shifted by `shift`.
fn stencil(i: i64, rounds: i64, shift: i64) -> Vec<i64> {
    let lo = (i - shift).div_euclid(2);
    let hi = (i - shift + rounds + 1).div_euclid(2);
    (lo..=hi).collect()
}

fn linear_spec(name: String, rounds: usize, shift: usize, even_rule: String, odd_rule: String, interpolatory: bool) -> SchemeSpec {
    let (r, s) = (rounds as i64, shift as i64);
    let even_stencil = stencil(0, r, s);
    let odd_stencil = stencil(1, r, s);
    let locality_range = even_stencil
        .iter()
        .chain(&odd_stencil)
        .map(|k| k.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    SchemeSpec {
        name,
        even_stencil,
        odd_stencil,
        even_rule,
        odd_rule,
        locality_range,
        parameter_rule: if rounds.is_multiple_of(2) {
            ParamRule::Primal
        } else {
            ParamRule::Dual
        },
        interpolatory,
        requires: Vec::new(),
    }
}

fn too_short(len: usize, needed: usize) -> Error {
    Error::InsufficientData {
        level: 0,
        len,
        needed,
    }
}

/// `Q_{2j} = p_j`, `Q_{2j+1} = A_{1/2}(p_j, p_{j+1})`.
fn elementary_step<S: MetricSpace>(
    space: &S,
    seq: &ElementSequence<S::Element>,
    op: &'static str,
) -> Result<Vec<S::Element>> {
    let p = seq.elements();
    let mut out = Vec::with_capacity(2 * p.len());
    for (j, (a, b)) in seq.pairs().enumerate() {
        out.push(a.clone());
        out.push(space.average(0.5, a, b).map_err(|e| e.at(op, j))?);
    }
    if seq.boundary() == Boundary::Open {
        out.push(p[p.len() - 1].clone());
    }
    Ok(out)
}

/// `Q'_i = A_w(Q_i, Q_{i+1})`, cyclic when `closed`.
fn smoothing_round<S: MetricSpace>(
    space: &S,
    q: &[S::Element],
    w: f64,
    closed: bool,
    op: &'static str,
) -> Result<Vec<S::Element>> {
    let n = q.len();
    let count = if closed { n } else { n.saturating_sub(1) };
    (0..count)
        .map(|i| space.average(w, &q[i], &q[(i + 1) % n]).map_err(|e| e.at(op, i / 2)))
        .collect()
}

/// Elementary step then `rounds` rounds of `A_w`, shifted by `shift` fine indices.
fn smoothed<S: MetricSpace>(
    space: &S,
    seq: &ElementSequence<S::Element>,
    rounds: usize,
    w: f64,
    shift: usize,
    op: &'static str,
) -> Result<Refined<S::Element>> {
    let n = seq.len();
    let closed = seq.is_closed();
    if !closed && 2 * n < rounds + 3 {
        return Err(too_short(n, (rounds + 4) / 2));
    }
    let mut q = elementary_step(space, seq, op)?;
    for _ in 0..rounds {
        q = smoothing_round(space, &q, w, closed, op)?;
    }
    if closed {
        let len = q.len();
        q.rotate_right(shift % len);
        Ok(Refined {
            points: ElementSequence::closed(q)?,
            first_index: 0,
        })
    } else {
        Ok(Refined {
            points: ElementSequence::open(q)?,
            first_index: shift,
        })
    }
}

impl<S: MetricSpace> Refinement<S> for Elementary {
    fn spec(&self) -> SchemeSpec {
        linear_spec(
            "elementary".into(),
            0,
            0,
            "p_j".into(),
            "A_1/2(p_j, p_j+1)".into(),
            true,
        )
    }

    fn refine(&self, space: &S, seq: &ElementSequence<S::Element>) -> Result<Refined<S::Element>> {
        smoothed(space, seq, 0, 0.5, 0, "elementary_refine")
    }
}

impl<S: MetricSpace> Refinement<S> for Averaged {
    fn spec(&self) -> SchemeSpec {
        let w = self.omega;
        let name = if w == 0.5 {
            "chaikin".to_string()
        } else {
            format!("averaged({w})")
        };
        linear_spec(
            name,
            1,
            0,
            format!("A_{w}(p_j, A_1/2(p_j, p_j+1))"),
            format!("A_{w}(A_1/2(p_j, p_j+1), p_j+1)"),
            false,
        )
    }

    fn refine(&self, space: &S, seq: &ElementSequence<S::Element>) -> Result<Refined<S::Element>> {
        smoothed(space, seq, 1, self.omega, 0, "averaged_refine")
    }
}

impl<S: MetricSpace> Refinement<S> for LaneRiesenfeld {
    fn spec(&self) -> SchemeSpec {
        let n = self.rounds;
        linear_spec(
            format!("lane-riesenfeld({n})"),
            n,
            self.shift(),
            format!("elementary step, then {n} midpoint round(s)"),
            format!("elementary step, then {n} midpoint round(s)"),
            n == 0,
        )
    }

    fn refine(&self, space: &S, seq: &ElementSequence<S::Element>) -> Result<Refined<S::Element>> {
        smoothed(space, seq, self.rounds, 0.5, self.shift(), "lane_riesenfeld_refine")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Euclidean;

    fn scalars(v: &[f64], closed: bool) -> ElementSequence<Vec<f64>> {
        let b = if closed { Boundary::Closed } else { Boundary::Open };
        ElementSequence::new(v.iter().map(|&x| vec![x]).collect(), b).unwrap()
    }

    fn flat(s: &ElementSequence<Vec<f64>>) -> Vec<f64> {
        s.elements().iter().map(|p| p[0]).collect()
    }

    #[test]
    fn elementary_inserts_midpoints() {
        let e = Euclidean::new(1);
        let r = Elementary.refine(&e, &scalars(&[0.0, 1.0], false)).unwrap();
        assert_eq!(flat(&r.points), vec![0.0, 0.5, 1.0]);
        let r = Elementary.refine(&e, &scalars(&[0.0, 1.0], true)).unwrap();
        assert_eq!(flat(&r.points), vec![0.0, 0.5, 1.0, 0.5]);
    }

    #[test]
    fn chaikin_quarter_points() {
        let e = Euclidean::new(1);
        let r = Averaged::chaikin().refine(&e, &scalars(&[0.0, 1.0], false)).unwrap();
        assert_eq!(flat(&r.points), vec![0.25, 0.75]);
        assert_eq!(r.first_index, 0);
    }

    #[test]
    fn lane_riesenfeld_zero_is_elementary() {
        let e = Euclidean::new(1);
        let s = scalars(&[0.0, 1.0, 3.0], false);
        assert_eq!(
            LaneRiesenfeld::new(0).refine(&e, &s).unwrap(),
            Elementary.refine(&e, &s).unwrap()
        );
    }

    #[test]
    fn cubic_rounds_shift_closed_output() {
        let e = Euclidean::new(1);
        let r = LaneRiesenfeld::new(2).refine(&e, &scalars(&[0.0, 8.0, 0.0, 0.0], true)).unwrap();
        // Fine index 2 sits on coarse index 1: 1/8 + 6/8*8 + 1/8*0.
        assert_eq!(flat(&r.points), vec![1.0, 4.0, 6.0, 4.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn specs() {
        let s = <LaneRiesenfeld as Refinement<Euclidean>>::spec(&LaneRiesenfeld::new(2));
        assert_eq!(s.even_stencil, vec![-1, 0, 1]);
        assert_eq!(s.odd_stencil, vec![0, 1]);
        assert_eq!(s.locality_range, 1);
        assert_eq!(s.parameter_rule, ParamRule::Primal);
        let s = <Averaged as Refinement<Euclidean>>::spec(&Averaged::chaikin());
        assert_eq!((s.locality_range, s.parameter_rule), (1, ParamRule::Dual));
        let s = <LaneRiesenfeld as Refinement<Euclidean>>::spec(&LaneRiesenfeld::new(3));
        assert_eq!(s.locality_range, 2);
    }

    #[test]
    fn open_too_short() {
        let e = Euclidean::new(1);
        assert!(matches!(
            LaneRiesenfeld::new(3).refine(&e, &scalars(&[0.0, 1.0], false)),
            Err(Error::InsufficientData { .. })
        ));
        assert!(Averaged::new(1.0).is_err());
    }
}
