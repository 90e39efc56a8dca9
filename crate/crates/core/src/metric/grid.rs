use serde::{Deserialize, Serialize};

use super::sequence::ElementSequence;
use crate::error::{Error, Result};

/// How knots are placed when a grid is refined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum ParamRule {
    /// Keep every knot and insert interval midpoints: `T -> T/2` on dyadic grids.
    Primal,
    /// Replace each interval by its quarter points: `T -> (T + 1/2)/2` on dyadic grids.
    Dual,
}

/// Parameter grid `T^k`: strictly increasing knots with a refinement rule.
///
/// A closed grid carries a period; its knots lie in `[t_0, t_0 + period)` and
/// the interval after the last knot wraps back to `t_0 + period`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct ParamGrid {
    knots: Vec<f64>,
    level: usize,
    rule: ParamRule,
    zeta: f64,
    period: Option<f64>,
}

impl ParamGrid {
    pub fn new(knots: Vec<f64>, rule: ParamRule, period: Option<f64>) -> Result<Self> {
        Self::with_level(knots, 0, rule, period)
    }

    pub fn with_level(
        knots: Vec<f64>,
        level: usize,
        rule: ParamRule,
        period: Option<f64>,
    ) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::Empty("parameter grid"));
        }
        for (i, &t) in knots.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::NonFinite { index: i, value: t });
            }
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("knots must be strictly increasing".into()));
        }
        if let Some(p) = period {
            let span = knots[knots.len() - 1] - knots[0];
            if !(p.is_finite() && p > span) {
                return Err(Error::Invalid(format!(
                    "period {p} must exceed the knot span {span}"
                )));
            }
        }
        Ok(Self {
            knots,
            level,
            rule,
            zeta: 0.5,
            period,
        })
    }

    /// `n` knots `start, start + h, ...`; a closed grid gets period `n h`.
    pub fn uniform(n: usize, start: f64, spacing: f64, rule: ParamRule, closed: bool) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::Invalid(format!("grid spacing {spacing} must be positive")));
        }
        let knots = (0..n).map(|j| start + spacing * j as f64).collect();
        Self::new(knots, rule, closed.then_some(spacing * n as f64))
    }

    /// Integer knots `0, 1, ..., n-1`.
    pub fn integers(n: usize, rule: ParamRule, closed: bool) -> Result<Self> {
        Self::uniform(n, 0.0, 1.0, rule, closed)
    }

    /// Integer knots matching a sequence's length and boundary.
    pub fn for_sequence<E>(seq: &ElementSequence<E>, rule: ParamRule) -> Result<Self> {
        Self::integers(seq.len(), rule, seq.is_closed())
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rule(&self) -> ParamRule {
        self.rule
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    /// Right end of interval `j`, wrapping through the period when closed.
    pub fn right(&self, j: usize) -> Option<f64> {
        match (self.knots.get(j + 1), self.period) {
            (Some(&t), _) => Some(t),
            (None, Some(p)) if j + 1 == self.knots.len() => Some(self.knots[0] + p),
            _ => None,
        }
    }

    /// Evaluation domain: `[t_0, t_last]` when open, one full period when closed.
    pub fn domain(&self) -> (f64, f64) {
        let lo = self.knots[0];
        match self.period {
            Some(p) => (lo, lo + p),
            None => (lo, self.knots[self.knots.len() - 1]),
        }
    }

    /// Interval lengths, including the wrap interval when closed.
    pub fn spacings(&self) -> Vec<f64> {
        let n = self.knots.len();
        let count = if self.period.is_some() { n } else { n - 1 };
        (0..count)
            .map(|j| self.right(j).expect("interval exists") - self.knots[j])
            .collect()
    }

    /// Largest interval length; zero for a single open knot.
    pub fn mesh(&self) -> f64 {
        self.spacings().into_iter().fold(0.0, f64::max)
    }

    /// Every knot the rule produces from this grid before boundary trimming.
    ///
    /// Open primal grids of `n` knots yield `2n - 1`, open dual grids `2(n - 1)`,
    /// closed grids `2n`.
    pub fn refine_full(&self) -> ParamGrid {
        let n = self.knots.len();
        let count = if self.period.is_some() { n } else { n - 1 };
        let mut knots = Vec::with_capacity(2 * n);
        for j in 0..count {
            let a = self.knots[j];
            let h = self.right(j).expect("interval exists") - a;
            match self.rule {
                ParamRule::Primal => {
                    knots.push(a);
                    knots.push(a + 0.5 * h);
                }
                ParamRule::Dual => {
                    knots.push(a + 0.25 * h);
                    knots.push(a + 0.75 * h);
                }
            }
        }
        if self.period.is_none() && self.rule == ParamRule::Primal {
            knots.push(self.knots[n - 1]);
        }
        ParamGrid {
            knots,
            level: self.level + 1,
            rule: self.rule,
            zeta: self.zeta,
            period: self.period,
        }
    }

    /// Refined grid restricted to fine indices `first .. first + len`.
    /// Closed grids ignore the window and return all `2n` knots.
    pub fn refine(&self, first: usize, len: usize) -> Result<ParamGrid> {
        let mut full = self.refine_full();
        if full.period.is_some() {
            return Ok(full);
        }
        if len == 0 || first + len > full.knots.len() {
            return Err(Error::Invalid(format!(
                "refined window {first}..{} exceeds {} knots",
                first + len,
                full.knots.len()
            )));
        }
        full.knots = full.knots[first..first + len].to_vec();
        Ok(full)
    }
}

/// `Q^k`: points paired with their parameter knots.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSequence<E> {
    grid: ParamGrid,
    points: ElementSequence<E>,
}

impl<E> LabeledSequence<E> {
    pub fn new(grid: ParamGrid, points: ElementSequence<E>) -> Result<Self> {
        if grid.len() != points.len() {
            return Err(Error::DimensionMismatch(grid.len(), points.len()));
        }
        if grid.period().is_some() != points.is_closed() {
            return Err(Error::Invalid(
                "grid periodicity must match the sequence boundary".into(),
            ));
        }
        Ok(Self { grid, points })
    }

    pub fn grid(&self) -> &ParamGrid {
        &self.grid
    }

    pub fn points(&self) -> &ElementSequence<E> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
