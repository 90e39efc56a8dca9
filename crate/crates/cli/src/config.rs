//! Experiment configuration.

use std::path::PathBuf;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::data::{DataFile, GeneratorSpec};
use crate::error::{invalid, CliResult};

/// A single experiment: data in one space, one scheme, a depth and a list of analyses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub space: SpaceConfig,
    pub scheme: SchemeConfig,
    pub data: DataSource,
    pub levels: usize,
    #[serde(default)]
    pub analyses: Vec<AnalysisConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpaceConfig {
    Euclidean {
        dim: usize,
    },
    Sphere {
        dim: usize,
    },
    Hermite {
        dim: usize,
        #[serde(default)]
        average: HermiteAverage,
        /// Fixed Bezier arm length; adaptive when absent.
        #[serde(default)]
        c: Option<f64>,
    },
    Sets {
        dim: usize,
        /// Point deduplication tolerance.
        #[serde(default)]
        tol: Option<f64>,
    },
    Wasserstein {
        #[serde(default = "default_p")]
        p: f64,
    },
}

fn default_p() -> f64 {
    2.0
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum HermiteAverage {
    #[default]
    Bezier,
    Naive,
}

impl SpaceConfig {
    pub fn id(&self) -> &'static str {
        match self {
            SpaceConfig::Euclidean { .. } => "euclidean",
            SpaceConfig::Sphere { .. } => "sphere",
            SpaceConfig::Hermite { .. } => "hermite",
            SpaceConfig::Sets { .. } => "sets",
            SpaceConfig::Wasserstein { .. } => "wasserstein",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SchemeConfig {
    Elementary,
    Chaikin,
    Averaged { omega: f64 },
    LaneRiesenfeld { rounds: usize },
    HermiteNaive,
    HermiteBezier,
}

impl SchemeConfig {
    pub fn id(&self) -> &'static str {
        match self {
            SchemeConfig::Elementary => "elementary",
            SchemeConfig::Chaikin => "chaikin",
            SchemeConfig::Averaged { .. } => "averaged",
            SchemeConfig::LaneRiesenfeld { .. } => "lane-riesenfeld",
            SchemeConfig::HermiteNaive => "hermite-naive",
            SchemeConfig::HermiteBezier => "hermite-bezier",
        }
    }

    pub fn is_hermite(&self) -> bool {
        matches!(self, SchemeConfig::HermiteNaive | SchemeConfig::HermiteBezier)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum DataSource {
    Inline(DataFile),
    /// Path to a data file, relative to the config file.
    File(PathBuf),
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BoundConfig {
    /// `C delta^2` with the Hermite constant `1/(8 cos^2(1/4))`.
    Hermite,
    Power { constant: f64, exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveConfig {
    /// Planar circle in arc length, Euclidean data.
    Circle {
        #[serde(default = "one")]
        radius: f64,
    },
    /// Circle of latitude on the unit 2-sphere in arc length; height 0 is a great circle.
    SmallCircle { height: f64 },
}

fn one() -> f64 {
    1.0
}

fn default_l() -> usize {
    4
}

fn default_one() -> usize {
    1
}

fn default_blocks() -> usize {
    6
}

fn default_burn_in() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AnalysisConfig {
    Contractivity {
        #[serde(default = "default_l")]
        l_max: usize,
        #[serde(default)]
        start: usize,
    },
    Displacement,
    /// One-step sweep against a second scheme over the generator family.
    Proximity1 {
        against: SchemeConfig,
        scales: Vec<f64>,
        #[serde(default)]
        bound: Option<BoundConfig>,
        #[serde(default)]
        mu: Option<f64>,
    },
    /// Trace of `against` along the configured scheme's own refinements.
    Proximity2 {
        against: SchemeConfig,
        /// Refine `against` in the ambient Euclidean space of the data.
        #[serde(default)]
        embedded: bool,
        #[serde(default = "default_one")]
        l: usize,
        #[serde(default = "default_blocks")]
        blocks: usize,
        #[serde(default = "default_burn_in")]
        burn_in: usize,
    },
    Cauchy {
        #[serde(default)]
        samples: Option<usize>,
    },
    DividedDiff {
        #[serde(default = "default_one")]
        l_max: usize,
        #[serde(default)]
        start: usize,
        #[serde(default)]
        samples: Option<usize>,
    },
    ApproxOrder {
        curve: CurveConfig,
        /// Sample spacings as fractions of the curve period, strictly decreasing.
        hs: Vec<f64>,
        #[serde(default)]
        proxy_levels: Option<usize>,
        #[serde(default)]
        samples: Option<usize>,
    },
    Locality {
        index: usize,
        /// Element of the input to substitute at `index`; the next one when absent.
        #[serde(default)]
        replace_with: Option<usize>,
    },
}

/// Analysis kinds, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AnalysisKind {
    Contractivity,
    Displacement,
    Proximity1,
    Proximity2,
    Cauchy,
    DividedDiff,
    ApproxOrder,
    Locality,
}

impl AnalysisConfig {
    pub fn kind(&self) -> AnalysisKind {
        match self {
            AnalysisConfig::Contractivity { .. } => AnalysisKind::Contractivity,
            AnalysisConfig::Displacement => AnalysisKind::Displacement,
            AnalysisConfig::Proximity1 { .. } => AnalysisKind::Proximity1,
            AnalysisConfig::Proximity2 { .. } => AnalysisKind::Proximity2,
            AnalysisConfig::Cauchy { .. } => AnalysisKind::Cauchy,
            AnalysisConfig::DividedDiff { .. } => AnalysisKind::DividedDiff,
            AnalysisConfig::ApproxOrder { .. } => AnalysisKind::ApproxOrder,
            AnalysisConfig::Locality { .. } => AnalysisKind::Locality,
        }
    }

    /// Parameters used when an analysis is requested but not configured.
    pub fn default_for(kind: AnalysisKind, data_len: usize) -> CliResult<Self> {
        Ok(match kind {
            AnalysisKind::Contractivity => AnalysisConfig::Contractivity {
                l_max: default_l(),
                start: 0,
            },
            AnalysisKind::Displacement => AnalysisConfig::Displacement,
            AnalysisKind::Cauchy => AnalysisConfig::Cauchy { samples: None },
            AnalysisKind::DividedDiff => AnalysisConfig::DividedDiff {
                l_max: 1,
                start: 0,
                samples: None,
            },
            AnalysisKind::Locality => AnalysisConfig::Locality {
                index: data_len / 2,
                replace_with: None,
            },
            AnalysisKind::Proximity1 | AnalysisKind::Proximity2 | AnalysisKind::ApproxOrder => {
                return Err(invalid(format!(
                    "analysis {} needs parameters; add it to \"analyses\" in the config",
                    kind.name()
                )))
            }
        })
    }
}

impl AnalysisKind {
    pub fn name(&self) -> &'static str {
        match self {
            AnalysisKind::Contractivity => "contractivity",
            AnalysisKind::Displacement => "displacement",
            AnalysisKind::Proximity1 => "proximity1",
            AnalysisKind::Proximity2 => "proximity2",
            AnalysisKind::Cauchy => "cauchy",
            AnalysisKind::DividedDiff => "divided-diff",
            AnalysisKind::ApproxOrder => "approx-order",
            AnalysisKind::Locality => "locality",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    /// Include every level's points and knots in the bundle.
    #[serde(default)]
    pub dump_levels: bool,
}

/// Upper bound on `levels`: sequences double per level.
pub const MAX_LEVELS: usize = 24;

impl ExperimentConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.levels > MAX_LEVELS {
            return Err(invalid(format!("levels {} exceeds {MAX_LEVELS}", self.levels)));
        }
        check_scheme(&self.scheme, &self.space)?;
        for a in &self.analyses {
            match a {
                AnalysisConfig::Proximity1 { against, scales, .. } => {
                    check_scheme(against, &self.space)?;
                    if scales.len() < 2 {
                        return Err(invalid("proximity1 needs at least two scales"));
                    }
                }
                AnalysisConfig::Proximity2 {
                    against, embedded, l, blocks, ..
                } => {
                    if *embedded {
                        if against.is_hermite() {
                            return Err(invalid("an embedded proximity2 scheme must be linear"));
                        }
                    } else {
                        check_scheme(against, &self.space)?;
                    }
                    if *l == 0 || *blocks < 2 {
                        return Err(invalid("proximity2 needs l >= 1 and blocks >= 2"));
                    }
                    if blocks * l > MAX_LEVELS {
                        return Err(invalid(format!("proximity2 depth {} exceeds {MAX_LEVELS}", blocks * l)));
                    }
                }
                AnalysisConfig::Contractivity { l_max, .. } | AnalysisConfig::DividedDiff { l_max, .. } => {
                    if *l_max == 0 {
                        return Err(invalid("l_max must be positive"));
                    }
                }
                AnalysisConfig::ApproxOrder { hs, proxy_levels, .. } => {
                    if hs.is_empty() {
                        return Err(invalid("approx-order needs at least one h"));
                    }
                    if proxy_levels.is_some_and(|k| k > MAX_LEVELS) {
                        return Err(invalid(format!("proxy_levels exceeds {MAX_LEVELS}")));
                    }
                }
                AnalysisConfig::Displacement | AnalysisConfig::Cauchy { .. } | AnalysisConfig::Locality { .. } => {}
            }
        }
        Ok(())
    }
}

fn check_scheme(scheme: &SchemeConfig, space: &SpaceConfig) -> CliResult<()> {
    if scheme.is_hermite() && !matches!(space, SpaceConfig::Hermite { .. }) {
        return Err(invalid(format!(
            "scheme {} needs Hermite data, but the space is {}",
            scheme.id(),
            space.id()
        )));
    }
    Ok(())
}
