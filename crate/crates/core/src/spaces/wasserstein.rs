use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{check_weight, MetricSpace};

/// Locations closer than this are merged into one atom.
pub const MERGE_DISTANCE: f64 = 1e-12;
/// Allowed deviation of the total mass from one.
pub const MASS_TOLERANCE: f64 = 1e-12;
/// Leftover mass below this is dropped while building couplings.
const CRUMB: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub w: f64,
}

/// Finitely supported probability measure on the line, in canonical form:
/// sorted, strictly increasing locations, positive masses summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct Measure {
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<RawMeasure> for Measure {
    type Error = Error;

    fn try_from(r: RawMeasure) -> Result<Self> {
        Measure::new(r.atoms)
    }
}

impl From<Measure> for RawMeasure {
    fn from(m: Measure) -> Self {
        RawMeasure { atoms: m.atoms }
    }
}

impl Measure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Empty("measure"));
        }
        for (i, a) in atoms.iter().enumerate() {
            if !a.x.is_finite() {
                return Err(Error::NonFinite { index: i, value: a.x });
            }
            if !(a.w > 0.0 && a.w.is_finite()) {
                return Err(Error::Invalid(format!("atom {i} has non-positive mass {}", a.w)));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.w).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
        Ok(Self::canonical(atoms))
    }

    pub fn dirac(x: f64) -> Result<Self> {
        Self::new(vec![Atom { x, w: 1.0 }])
    }

    /// Equal masses at the given locations.
    pub fn uniform(xs: &[f64]) -> Result<Self> {
        let w = 1.0 / xs.len() as f64;
        Self::new(xs.iter().map(|&x| Atom { x, w }).collect())
    }

    /// Sorts and merges atoms closer than [`MERGE_DISTANCE`] at their mass-weighted location.
    fn canonical(mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| a.x.total_cmp(&b.x));
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match out.last_mut() {
                Some(last) if a.x - last.x < MERGE_DISTANCE => {
                    let w = last.w + a.w;
                    last.x = (last.x * last.w + a.x * a.w) / w;
                    last.w = w;
                }
                _ => out.push(a),
            }
        }
        Self { atoms: out }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chunk {
    pub x: f64,
    pub y: f64,
    pub mass: f64,
}

/// Monotone rearrangement coupling, the optimal plan on the line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneCoupling {
    pub chunks: Vec<Chunk>,
}

/// Matches mass of `mu` and `nu` in order of their cumulative distributions.
pub fn quantile_coupling(mu: &Measure, nu: &Measure) -> Result<MonotoneCoupling> {
    for m in [mu, nu] {
        let t = m.total_mass();
        if (t - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotNormalized(t));
        }
    }
    let (a, b) = (&mu.atoms, &nu.atoms);
    let mut chunks = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (a[0].w, b[0].w);
    while i < a.len() && j < b.len() {
        let m = ra.min(rb);
        if m > 0.0 {
            chunks.push(Chunk {
                x: a[i].x,
                y: b[j].x,
                mass: m,
            });
        }
        ra -= m;
        rb -= m;
        if ra <= CRUMB {
            i += 1;
            ra = a.get(i).map_or(0.0, |t| t.w);
        }
        if rb <= CRUMB {
            j += 1;
            rb = b.get(j).map_or(0.0, |t| t.w);
        }
    }
    Ok(MonotoneCoupling { chunks })
}

/// `W_p(mu, nu)` for `p >= 1`.
pub fn wasserstein_distance(mu: &Measure, nu: &Measure, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    let g = quantile_coupling(mu, nu)?;
    let cost: f64 = g.chunks.iter().map(|c| c.mass * (c.x - c.y).abs().powf(p)).sum();
    Ok(cost.powf(1.0 / p))
}

/// Displacement interpolation: push each chunk to `(1 - w) x + w y`.
pub fn wasserstein_average(w: f64, mu: &Measure, nu: &Measure) -> Result<Measure> {
    check_weight(w)?;
    if w == 0.0 {
        return Ok(mu.clone());
    }
    if w == 1.0 {
        return Ok(nu.clone());
    }
    let g = quantile_coupling(mu, nu)?;
    let atoms = g
        .chunks
        .iter()
        .map(|c| Atom {
            x: (1.0 - w) * c.x + w * c.y,
            w: c.mass,
        })
        .collect();
    Ok(Measure::canonical(atoms))
}

/// Probability measures on the line with `W_p` and displacement interpolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wasserstein {
    p: f64,
}

impl Wasserstein {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl MetricSpace for Wasserstein {
    type Element = Measure;

    fn name(&self) -> &'static str {
        "wasserstein"
    }

    fn distance(&self, x: &Measure, y: &Measure) -> Result<f64> {
        wasserstein_distance(x, y, self.p)
    }

    fn average(&self, w: f64, x: &Measure, y: &Measure) -> Result<Measure> {
        wasserstein_average(w, x, y)
    }

    fn is_intrinsic(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn m(atoms: &[(f64, f64)]) -> Measure {
        Measure::new(atoms.iter().map(|&(x, w)| Atom { x, w }).collect()).unwrap()
    }

    #[test]
    fn two_atom_coupling() {
        let mu = m(&[(0.0, 0.5), (1.0, 0.5)]);
        let nu = m(&[(2.0, 0.5), (4.0, 0.5)]);
        let g = quantile_coupling(&mu, &nu).unwrap();
        assert_eq!(
            g.chunks,
            vec![
                Chunk { x: 0.0, y: 2.0, mass: 0.5 },
                Chunk { x: 1.0, y: 4.0, mass: 0.5 }
            ]
        );
        assert_abs_diff_eq!(wasserstein_distance(&mu, &nu, 2.0).unwrap(), 6.5f64.sqrt(), epsilon = 1e-15);
        assert_eq!(wasserstein_average(0.5, &mu, &nu).unwrap(), m(&[(1.0, 0.5), (2.5, 0.5)]));
    }

    #[test]
    fn dirac_splits() {
        let g = quantile_coupling(&m(&[(0.0, 1.0)]), &m(&[(1.0, 0.5), (3.0, 0.5)])).unwrap();
        assert_eq!(g.chunks.len(), 2);
        assert_eq!((g.chunks[1].x, g.chunks[1].y, g.chunks[1].mass), (0.0, 3.0, 0.5));
    }

    #[test]
    fn quarter_geodesic() {
        let s = Wasserstein::new(2.0).unwrap();
        let a = Measure::dirac(0.0).unwrap();
        let b = Measure::dirac(2.0).unwrap();
        let q = s.average(0.25, &a, &b).unwrap();
        assert_eq!(s.distance(&a, &q).unwrap(), 0.5);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Measure::new(vec![Atom { x: 0.0, w: 0.5 }]),
            Err(Error::NotNormalized(_))
        ));
        assert!(Wasserstein::new(0.5).is_err());
        assert_eq!(m(&[(1.0, 0.25), (1.0 + 1e-13, 0.75)]).len(), 1);
    }
}
