use super::grid::LabeledSequence;
use super::MetricSpace;
use crate::error::{Error, Result};

/// A parameterized curve in a metric space.
pub trait Curve {
    type Element;

    /// Closed parameter interval over which the curve is compared.
    fn domain(&self) -> (f64, f64);

    /// Period when the curve extends periodically beyond its domain.
    fn period(&self) -> Option<f64> {
        None
    }

    fn eval(&self, t: f64) -> Result<Self::Element>;
}

/// Curve backed by a closure.
pub struct FnCurve<F> {
    lo: f64,
    hi: f64,
    period: Option<f64>,
    f: F,
}

impl<F> FnCurve<F> {
    pub fn new(lo: f64, hi: f64, f: F) -> Self {
        Self {
            lo,
            hi,
            period: None,
            f,
        }
    }

    /// A curve with period `hi - lo`.
    pub fn periodic(lo: f64, hi: f64, f: F) -> Self {
        Self {
            lo,
            hi,
            period: Some(hi - lo),
            f,
        }
    }
}

impl<E, F: Fn(f64) -> Result<E>> Curve for FnCurve<F> {
    type Element = E;

    fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn period(&self) -> Option<f64> {
        self.period
    }

    fn eval(&self, t: f64) -> Result<E> {
        if self.period.is_none() && (t < self.lo || t > self.hi) {
            return Err(Error::Domain {
                t,
                lo: self.lo,
                hi: self.hi,
            });
        }
        (self.f)(t)
    }
}

/// Piecewise average interpolant of a labeled sequence: on `[t_j, t_{j+1}]`
/// it follows `A_w(p_j, p_{j+1})` with `w = (t - t_j)/(t_{j+1} - t_j)`.
pub struct PiecewiseAverage<'a, S: MetricSpace> {
    space: &'a S,
    q: &'a LabeledSequence<S::Element>,
}

impl<'a, S: MetricSpace> PiecewiseAverage<'a, S> {
    pub fn new(space: &'a S, q: &'a LabeledSequence<S::Element>) -> Self {
        Self { space, q }
    }
}

impl<S: MetricSpace> Curve for PiecewiseAverage<'_, S> {
    type Element = S::Element;

    fn domain(&self) -> (f64, f64) {
        self.q.grid().domain()
    }

    fn period(&self) -> Option<f64> {
        self.q.grid().period()
    }

    fn eval(&self, t: f64) -> Result<S::Element> {
        piecewise_average(self.space, self.q, t)
    }
}

/// Evaluates the piecewise average interpolant of `q` at `t`.
pub fn piecewise_average<S: MetricSpace>(
    space: &S,
    q: &LabeledSequence<S::Element>,
    t: f64,
) -> Result<S::Element> {
    let grid = q.grid();
    let knots = grid.knots();
    let pts = q.points().elements();
    let n = knots.len();
    let (lo, hi) = grid.domain();
    let t = match grid.period() {
        Some(p) => lo + (t - lo).rem_euclid(p),
        None => {
            if !(lo..=hi).contains(&t) {
                return Err(Error::Domain { t, lo, hi });
            }
            if t == hi {
                return Ok(pts[n - 1].clone());
            }
            t
        }
    };
    // Last knot <= t.
    let j = knots.partition_point(|&k| k <= t).saturating_sub(1);
    if t == knots[j] {
        return Ok(pts[j].clone());
    }
    let right = grid.right(j).expect("t lies inside an interval");
    let w = ((t - knots[j]) / (right - knots[j])).clamp(0.0, 1.0);
    space
        .average(w, &pts[j], &pts[(j + 1) % n])
        .map_err(|e| e.at("piecewise_average", j))
}

/// Sampled `d_inf`: max distance between `f` and `g` over `samples`
/// equispaced parameters spanning the domain of `f`.
///
/// The domain of `f` must lie within that of `g` unless `g` is periodic.
pub fn sup_distance<S, F, G>(space: &S, f: &F, g: &G, samples: usize) -> Result<f64>
where
    S: MetricSpace,
    F: Curve<Element = S::Element>,
    G: Curve<Element = S::Element>,
{
    let (f_lo, f_hi) = f.domain();
    let (g_lo, g_hi) = g.domain();
    if g.period().is_none() {
        let slack = 1e-12 * (1.0 + f_lo.abs().max(f_hi.abs()));
        if f_lo < g_lo - slack || f_hi > g_hi + slack {
            return Err(Error::DomainMismatch {
                f_lo,
                f_hi,
                g_lo,
                g_hi,
            });
        }
    }
    let lo = if g.period().is_none() { f_lo.max(g_lo) } else { f_lo };
    let hi = if g.period().is_none() { f_hi.min(g_hi) } else { f_hi };
    sup_distance_on(space, f, g, lo, hi, samples)
}

/// Sampled `d_inf` over an explicit interval `[lo, hi]`.
pub fn sup_distance_on<S, F, G>(
    space: &S,
    f: &F,
    g: &G,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<f64>
where
    S: MetricSpace,
    F: Curve<Element = S::Element>,
    G: Curve<Element = S::Element>,
{
    if samples == 0 {
        return Err(Error::Invalid("sample count must be positive".into()));
    }
    if hi < lo {
        return Err(Error::Invalid(format!("empty interval [{lo}, {hi}]")));
    }
    let mut best = 0.0_f64;
    for i in 0..samples {
        let t = match (samples, i) {
            (1, _) => lo,
            (n, i) if i == n - 1 => hi,
            (n, i) => lo + (hi - lo) * i as f64 / (n - 1) as f64,
        };
        let a = f.eval(t).map_err(|e| e.at("sup_distance", i))?;
        let b = g.eval(t).map_err(|e| e.at("sup_distance", i))?;
        best = best.max(space.distance(&a, &b).map_err(|e| e.at("sup_distance", i))?);
    }
    Ok(best)
}
