use serde::{Deserialize, Serialize};

use super::MetricSpace;
use crate::error::{Error, Result};

/// Boundary semantics for finite sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Periodic: indices wrap modulo the length.
    Closed,
    /// Refinement emits only outputs whose full stencil exists.
    Open,
}

/// A finite, nonempty sequence of space elements.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementSequence<E> {
    elements: Vec<E>,
    boundary: Boundary,
}

impl<E> ElementSequence<E> {
    pub fn new(elements: Vec<E>, boundary: Boundary) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Empty("element sequence"));
        }
        Ok(Self { elements, boundary })
    }

    pub fn open(elements: Vec<E>) -> Result<Self> {
        Self::new(elements, Boundary::Open)
    }

    pub fn closed(elements: Vec<E>) -> Result<Self> {
        Self::new(elements, Boundary::Closed)
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == Boundary::Closed
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<E> {
        self.elements
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.elements.get(i)
    }

    /// Element at a signed index, wrapping for closed sequences.
    pub fn at(&self, i: i64) -> Option<&E> {
        let n = self.elements.len() as i64;
        match self.boundary {
            Boundary::Closed => Some(&self.elements[i.rem_euclid(n) as usize]),
            Boundary::Open => usize::try_from(i).ok().and_then(|i| self.elements.get(i)),
        }
    }

    /// Number of consecutive pairs: `n` when closed, `n - 1` when open.
    pub fn pair_count(&self) -> usize {
        match self.boundary {
            Boundary::Closed => self.elements.len(),
            Boundary::Open => self.elements.len() - 1,
        }
    }

    /// Consecutive pairs `(p_j, p_{j+1})`, including the wrap pair when closed.
    pub fn pairs(&self) -> impl Iterator<Item = (&E, &E)> + '_ {
        let n = self.elements.len();
        (0..self.pair_count()).map(move |j| (&self.elements[j], &self.elements[(j + 1) % n]))
    }

    pub fn map<F, T>(&self, f: F) -> ElementSequence<T>
    where
        F: FnMut(&E) -> T,
    {
        ElementSequence {
            elements: self.elements.iter().map(f).collect(),
            boundary: self.boundary,
        }
    }

    pub fn try_map<F, T>(&self, mut f: F) -> Result<ElementSequence<T>>
    where
        F: FnMut(&E) -> Result<T>,
    {
        let elements = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| f(e).map_err(|err| err.at("map", i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementSequence {
            elements,
            boundary: self.boundary,
        })
    }

    /// Copy with element `index` replaced.
    pub fn with_element(&self, index: usize, value: E) -> Result<Self>
    where
        E: Clone,
    {
        if index >= self.elements.len() {
            return Err(Error::Invalid(format!(
                "index {index} out of range for {} elements",
                self.elements.len()
            )));
        }
        let mut elements = self.elements.clone();
        elements[index] = value;
        Ok(Self {
            elements,
            boundary: self.boundary,
        })
    }
}

/// `δP`: the largest distance between consecutive elements (wrapping when closed).
pub fn delta<S: MetricSpace>(space: &S, seq: &ElementSequence<S::Element>) -> Result<f64> {
    if seq.len() < 2 {
        return Err(Error::UndefinedDelta { len: seq.len() });
    }
    let mut best = 0.0_f64;
    for (j, (a, b)) in seq.pairs().enumerate() {
        let d = space.distance(a, b).map_err(|e| e.at("delta", j))?;
        best = best.max(d);
    }
    Ok(best)
}
