//! On-disk data schemas and seeded generators.

use std::f64::consts::TAU;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use subdiv_core::generators as gen;
use subdiv_core::spaces::{FiniteSet, HermitePair, Measure, SpherePoint};

use crate::error::{invalid, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct PairData {
    pub p: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct AtomData {
    pub x: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct MeasureData {
    pub atoms: Vec<AtomData>,
}

/// One sequence of elements of a single space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "space", rename_all = "lowercase")]
pub enum DataFile {
    Euclidean {
        dim: usize,
        closed: bool,
        points: Vec<Vec<f64>>,
    },
    Sphere {
        dim: usize,
        closed: bool,
        points: Vec<Vec<f64>>,
    },
    Hermite {
        dim: usize,
        closed: bool,
        pairs: Vec<PairData>,
    },
    Sets {
        dim: usize,
        closed: bool,
        sets: Vec<Vec<Vec<f64>>>,
    },
    Wasserstein {
        closed: bool,
        measures: Vec<MeasureData>,
    },
}

impl DataFile {
    pub fn space(&self) -> &'static str {
        match self {
            DataFile::Euclidean { .. } => "euclidean",
            DataFile::Sphere { .. } => "sphere",
            DataFile::Hermite { .. } => "hermite",
            DataFile::Sets { .. } => "sets",
            DataFile::Wasserstein { .. } => "wasserstein",
        }
    }

    pub fn closed(&self) -> bool {
        match self {
            DataFile::Euclidean { closed, .. }
            | DataFile::Sphere { closed, .. }
            | DataFile::Hermite { closed, .. }
            | DataFile::Sets { closed, .. }
            | DataFile::Wasserstein { closed, .. } => *closed,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            DataFile::Euclidean { points, .. } | DataFile::Sphere { points, .. } => points.len(),
            DataFile::Hermite { pairs, .. } => pairs.len(),
            DataFile::Sets { sets, .. } => sets.len(),
            DataFile::Wasserstein { measures, .. } => measures.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sphere(points: &[SpherePoint], closed: bool) -> Self {
        DataFile::Sphere {
            dim: points.first().map_or(0, |p| p.dim()),
            closed,
            points: points.iter().map(|p| p.as_slice().to_vec()).collect(),
        }
    }

    pub fn hermite(pairs: &[HermitePair], closed: bool) -> Self {
        DataFile::Hermite {
            dim: pairs.first().map_or(0, |p| p.dim()),
            closed,
            pairs: pairs
                .iter()
                .map(|h| PairData {
                    p: h.p.clone(),
                    v: h.v.as_slice().to_vec(),
                })
                .collect(),
        }
    }

    pub fn sets(sets: &[FiniteSet], closed: bool) -> Self {
        DataFile::Sets {
            dim: sets.first().map_or(0, |s| s.dim()),
            closed,
            sets: sets.iter().map(|s| s.points().to_vec()).collect(),
        }
    }

    pub fn measures(measures: &[Measure], closed: bool) -> Self {
        DataFile::Wasserstein {
            closed,
            measures: measures
                .iter()
                .map(|m| MeasureData {
                    atoms: m.atoms().iter().map(|a| AtomData { x: a.x, w: a.w }).collect(),
                })
                .collect(),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn two() -> usize {
    2
}

/// Seeded data generators. The seed is mandatory for every generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// Hermite samples of a planar circle with exact tangents. Closed data
    /// covers a full turn; open data uses angular `step` (default `2 pi / n`).
    Circle {
        seed: u64,
        n: usize,
        #[serde(default = "one")]
        radius: f64,
        #[serde(default)]
        step: Option<f64>,
        #[serde(default)]
        closed: bool,
    },
    /// Hermite samples of `(r cos t, r sin t, pitch t)` at `t = i step`.
    Helix {
        seed: u64,
        n: usize,
        #[serde(default = "one")]
        radius: f64,
        #[serde(default = "default_pitch")]
        pitch: f64,
        #[serde(default = "default_step")]
        step: f64,
    },
    RandomWalk {
        seed: u64,
        n: usize,
        #[serde(default = "two")]
        dim: usize,
        #[serde(default = "one")]
        step: f64,
        #[serde(default)]
        closed: bool,
    },
    PointCloudTube {
        seed: u64,
        n: usize,
        #[serde(default = "default_size")]
        size: usize,
        #[serde(default = "two")]
        dim: usize,
        #[serde(default = "default_tube")]
        radius: f64,
    },
    GaussianMixture {
        seed: u64,
        n: usize,
        #[serde(default = "default_size")]
        atoms: usize,
    },
    /// Points on the great circle through `e1, e2`, spaced by `step` (default `2 pi / n`).
    GreatCircle {
        seed: u64,
        n: usize,
        #[serde(default = "default_sphere_dim")]
        dim: usize,
        #[serde(default)]
        step: Option<f64>,
        #[serde(default)]
        closed: bool,
    },
    /// Closed small circle on the unit 2-sphere at the given height.
    SmallCircle { seed: u64, n: usize, height: f64 },
    SphereWalk {
        seed: u64,
        n: usize,
        #[serde(default = "default_scale")]
        scale: f64,
        #[serde(default = "default_turn")]
        turn: f64,
    },
    /// Planar Hermite data rescaled to a target `delta`.
    HermiteTurning {
        seed: u64,
        n: usize,
        #[serde(default = "default_delta")]
        delta: f64,
    },
    /// Planar Hermite data with point gaps and tangent angles below one.
    HermiteUnitGaps { seed: u64, n: usize },
}

fn default_pitch() -> f64 {
    0.2
}
fn default_step() -> f64 {
    0.3
}
fn default_size() -> usize {
    4
}
fn default_tube() -> f64 {
    0.5
}
fn default_sphere_dim() -> usize {
    3
}
fn default_scale() -> f64 {
    0.3
}
fn default_turn() -> f64 {
    0.5
}
fn default_delta() -> f64 {
    0.2
}

/// Generator output: the data plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct GeneratedFile {
    #[serde(flatten)]
    pub data: DataFile,
    pub generator: GeneratorMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct GeneratorMeta {
    pub spec: GeneratorSpec,
    /// Lipschitz constant of the sampled curve with respect to the sample index,
    /// in the metric of the target space; absent for random data.
    pub lipschitz: Option<f64>,
}

impl GeneratorSpec {
    pub fn seed(&self) -> u64 {
        match self {
            GeneratorSpec::Circle { seed, .. }
            | GeneratorSpec::Helix { seed, .. }
            | GeneratorSpec::RandomWalk { seed, .. }
            | GeneratorSpec::PointCloudTube { seed, .. }
            | GeneratorSpec::GaussianMixture { seed, .. }
            | GeneratorSpec::GreatCircle { seed, .. }
            | GeneratorSpec::SmallCircle { seed, .. }
            | GeneratorSpec::SphereWalk { seed, .. }
            | GeneratorSpec::HermiteTurning { seed, .. }
            | GeneratorSpec::HermiteUnitGaps { seed, .. } => *seed,
        }
    }

    pub fn with_seed(&self, s: u64) -> Self {
        let mut g = self.clone();
        match &mut g {
            GeneratorSpec::Circle { seed, .. }
            | GeneratorSpec::Helix { seed, .. }
            | GeneratorSpec::RandomWalk { seed, .. }
            | GeneratorSpec::PointCloudTube { seed, .. }
            | GeneratorSpec::GaussianMixture { seed, .. }
            | GeneratorSpec::GreatCircle { seed, .. }
            | GeneratorSpec::SmallCircle { seed, .. }
            | GeneratorSpec::SphereWalk { seed, .. }
            | GeneratorSpec::HermiteTurning { seed, .. }
            | GeneratorSpec::HermiteUnitGaps { seed, .. } => *seed = s,
        }
        g
    }

    /// The same generator with its step-like parameter set to `scale`, used
    /// for proximity sweeps.
    pub fn with_scale(&self, scale: f64) -> CliResult<Self> {
        let mut g = self.clone();
        match &mut g {
            GeneratorSpec::Circle { step, closed, .. } | GeneratorSpec::GreatCircle { step, closed, .. } => {
                *step = Some(scale);
                *closed = false;
            }
            GeneratorSpec::Helix { step, .. } | GeneratorSpec::RandomWalk { step, .. } => *step = scale,
            GeneratorSpec::SphereWalk { scale: s, .. } => *s = scale,
            GeneratorSpec::HermiteTurning { delta, .. } => *delta = scale,
            other => {
                return Err(invalid(format!(
                    "generator {} has no scale parameter",
                    other.id()
                )))
            }
        }
        Ok(g)
    }

    pub fn id(&self) -> &'static str {
        match self {
            GeneratorSpec::Circle { .. } => "circle",
            GeneratorSpec::Helix { .. } => "helix",
            GeneratorSpec::RandomWalk { .. } => "random-walk",
            GeneratorSpec::PointCloudTube { .. } => "point-cloud-tube",
            GeneratorSpec::GaussianMixture { .. } => "gaussian-mixture",
            GeneratorSpec::GreatCircle { .. } => "great-circle",
            GeneratorSpec::SmallCircle { .. } => "small-circle",
            GeneratorSpec::SphereWalk { .. } => "sphere-walk",
            GeneratorSpec::HermiteTurning { .. } => "hermite-turning",
            GeneratorSpec::HermiteUnitGaps { .. } => "hermite-unit-gaps",
        }
    }

    pub fn generate(&self) -> CliResult<GeneratedFile> {
        let n = match self {
            GeneratorSpec::Circle { n, .. }
            | GeneratorSpec::Helix { n, .. }
            | GeneratorSpec::RandomWalk { n, .. }
            | GeneratorSpec::PointCloudTube { n, .. }
            | GeneratorSpec::GaussianMixture { n, .. }
            | GeneratorSpec::GreatCircle { n, .. }
            | GeneratorSpec::SmallCircle { n, .. }
            | GeneratorSpec::SphereWalk { n, .. }
            | GeneratorSpec::HermiteTurning { n, .. }
            | GeneratorSpec::HermiteUnitGaps { n, .. } => *n,
        };
        if n < 2 {
            return Err(invalid(format!("generator {} needs n >= 2", self.id())));
        }
        let (data, lipschitz) = match *self {
            GeneratorSpec::Circle {
                n,
                radius,
                step,
                closed,
                ..
            } => {
                let h = if closed { TAU / n as f64 } else { step.unwrap_or(TAU / n as f64) };
                let pts = gen::circle_hermite(n, radius, h * (n - 1) as f64, closed)?;
                (DataFile::hermite(&pts, closed), Some(h * radius.hypot(1.0)))
            }
            GeneratorSpec::Helix {
                n,
                radius,
                pitch,
                step,
                ..
            } => {
                let speed2 = radius * radius + pitch * pitch;
                let turn = radius / speed2.sqrt();
                let pts = gen::helix_hermite(n, radius, pitch, step)?;
                (DataFile::hermite(&pts, false), Some(step * (speed2 + turn * turn).sqrt()))
            }
            GeneratorSpec::RandomWalk {
                seed,
                n,
                dim,
                step,
                closed,
            } => (
                DataFile::Euclidean {
                    dim,
                    closed,
                    points: gen::random_walk(seed, n, dim, step),
                },
                None,
            ),
            GeneratorSpec::PointCloudTube {
                seed,
                n,
                size,
                dim,
                radius,
            } => (DataFile::sets(&gen::point_cloud_tube(seed, n, size, dim, radius)?, false), None),
            GeneratorSpec::GaussianMixture { seed, n, atoms } => {
                (DataFile::measures(&gen::gaussian_mixture_measures(seed, n, atoms)?, false), None)
            }
            GeneratorSpec::GreatCircle {
                n, dim, step, closed, ..
            } => {
                let h = if closed { TAU / n as f64 } else { step.unwrap_or(TAU / n as f64) };
                (DataFile::sphere(&gen::sphere_great_circle(n, dim, h)?, closed), Some(h))
            }
            GeneratorSpec::SmallCircle { n, height, .. } => {
                if height.is_nan() || height.abs() >= 1.0 {
                    return Err(invalid(format!("small circle height {height} must lie in (-1, 1)")));
                }
                let rho = (1.0 - height * height).sqrt();
                (DataFile::sphere(&gen::sphere_small_circle(n, height)?, true), Some(rho * TAU / n as f64))
            }
            GeneratorSpec::SphereWalk {
                seed, n, scale, turn, ..
            } => (DataFile::sphere(&gen::sphere_walk(seed, n, scale, turn)?, false), None),
            GeneratorSpec::HermiteTurning { seed, n, delta } => {
                (DataFile::hermite(&gen::hermite_turning(seed, n, delta)?, false), None)
            }
            GeneratorSpec::HermiteUnitGaps { seed, n } => {
                (DataFile::hermite(&gen::hermite_unit_gaps(seed, n)?, false), None)
            }
        };
        Ok(GeneratedFile {
            data,
            generator: GeneratorMeta {
                spec: self.clone(),
                lipschitz,
            },
        })
    }
}
