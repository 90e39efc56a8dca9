//! Experiment execution.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::value::RawValue;
use subdiv_core::analysis::{
    c1_diagnostic, cauchy_trace, check_proximity_type1, check_proximity_type2, contractivity_of_run,
    displacement_of_run, hermite_proximity_constant, locality_check, ProximityBound, DEFAULT_PROXY_LEVELS,
    DEFAULT_SAMPLES,
};
use subdiv_core::metric::{delta, ElementSequence};
use subdiv_core::schemes::{subdivide, Refinement, SubdivisionRun};
use subdiv_core::spaces::{CPolicy, Euclidean, HermiteMode, HermiteSpace, SetSpace, Sphere, Wasserstein};

use crate::backend::{Approx, Backend, Prox2};
use crate::config::{
    AnalysisConfig, AnalysisKind, BoundConfig, DataSource, ExperimentConfig, HermiteAverage, SpaceConfig,
};
use crate::data::{DataFile, GeneratedFile, GeneratorSpec};
use crate::error::{invalid, CliError, CliResult};
use crate::report::{
    level_table, CsvTable, DividedDiffReport, LevelDump, LevelSummary, Overrides, Report, ResultBundle, Runtime,
    ARTIFACT_VERSION,
};

/// Command-line adjustments to a config.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub levels: Option<usize>,
    pub samples: Option<usize>,
    /// Run only analyses of this kind, with defaults when none is configured.
    pub only: Option<AnalysisKind>,
}

pub struct Experiment {
    pub bundle: ResultBundle,
    /// CSV traces keyed by file name.
    pub tables: Vec<(String, CsvTable)>,
}

/// Reads a config file, keeping the exact text for the bundle echo.
pub fn load_config(path: &Path) -> CliResult<(String, ExperimentConfig)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let cfg = ExperimentConfig::parse(&text)?;
    Ok((text, cfg))
}

/// Data for the experiment plus the generator that produced it, if known.
pub fn resolve_data(
    source: &DataSource,
    base: &Path,
    seed: Option<u64>,
) -> CliResult<(DataFile, Option<GeneratorSpec>)> {
    match source {
        DataSource::Inline(d) => {
            if seed.is_some() {
                return Err(invalid("--seed needs a generator data source"));
            }
            Ok((d.clone(), None))
        }
        DataSource::File(p) => {
            if seed.is_some() {
                return Err(invalid("--seed needs a generator data source"));
            }
            let path = base.join(p);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            if value.get("generator").is_some() {
                let g: GeneratedFile =
                    serde_json::from_value(value).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                Ok((g.data, Some(g.generator.spec)))
            } else {
                let d: DataFile =
                    serde_json::from_value(value).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                Ok((d, None))
            }
        }
        DataSource::Generator(g) => {
            let g = seed.map_or_else(|| g.clone(), |s| g.with_seed(s));
            Ok((g.generate()?.data, Some(g)))
        }
    }
}

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    data: &'a DataFile,
    generator: Option<&'a GeneratorSpec>,
    analyses: &'a [AnalysisConfig],
    samples: Option<usize>,
}

struct Output {
    space: String,
    scheme: subdiv_core::schemes::SchemeSpec,
    levels: Vec<LevelSummary>,
    dumps: Option<Vec<LevelDump>>,
    reports: Vec<Report>,
}

pub fn run_experiment(raw: &str, cfg: &ExperimentConfig, base: &Path, opts: &RunOptions) -> CliResult<Experiment> {
    let start = Instant::now();
    let mut cfg = cfg.clone();
    if let Some(l) = opts.levels {
        cfg.levels = l;
        cfg.validate()?;
    }
    let (data, generator) = resolve_data(&cfg.data, base, opts.seed)?;
    if data.is_empty() {
        return Err(invalid("data has no elements"));
    }
    let analyses = match opts.only {
        None => cfg.analyses.clone(),
        Some(kind) => {
            let picked: Vec<_> = cfg.analyses.iter().filter(|a| a.kind() == kind).cloned().collect();
            if picked.is_empty() {
                vec![AnalysisConfig::default_for(kind, data.len())?]
            } else {
                picked
            }
        }
    };
    let ctx = Ctx {
        cfg: &cfg,
        data: &data,
        generator: generator.as_ref(),
        analyses: &analyses,
        samples: opts.samples,
    };
    let out = match cfg.space {
        SpaceConfig::Euclidean { dim } => {
            positive_dim(dim, 1)?;
            execute(Euclidean::new(dim), &ctx)?
        }
        SpaceConfig::Sphere { dim } => {
            positive_dim(dim, 2)?;
            execute(Sphere::new(dim), &ctx)?
        }
        SpaceConfig::Hermite { dim, average, c } => {
            positive_dim(dim, 2)?;
            let mode = match (average, c) {
                (HermiteAverage::Naive, None) => HermiteMode::Naive,
                (HermiteAverage::Naive, Some(_)) => return Err(invalid("c applies only to the bezier average")),
                (HermiteAverage::Bezier, None) => HermiteMode::Bezier(CPolicy::Adaptive),
                (HermiteAverage::Bezier, Some(c)) if c > 0.0 && c.is_finite() => HermiteMode::Bezier(CPolicy::Fixed(c)),
                (HermiteAverage::Bezier, Some(c)) => return Err(invalid(format!("arm length c = {c} must be positive"))),
            };
            execute(HermiteSpace::new(dim, mode), &ctx)?
        }
        SpaceConfig::Sets { dim, tol } => {
            positive_dim(dim, 1)?;
            let space = match tol {
                Some(t) if t >= 0.0 => SetSpace::with_tolerance(dim, t),
                Some(t) => return Err(invalid(format!("set tolerance {t} must be non-negative"))),
                None => SetSpace::new(dim),
            };
            execute(space, &ctx)?
        }
        SpaceConfig::Wasserstein { p } => {
            execute(Wasserstein::new(p).map_err(|e| invalid(e.to_string()))?, &ctx)?
        }
    };

    let mut tables = Vec::new();
    let mut push = |t: CsvTable| {
        let n = tables.iter().filter(|(_, x): &&(String, CsvTable)| x.stem == t.stem).count();
        let name = if n == 0 {
            format!("{}.csv", t.stem)
        } else {
            format!("{}_{}.csv", t.stem, n + 1)
        };
        tables.push((name, t));
    };
    push(level_table(&out.levels));
    for r in &out.reports {
        r.tables().into_iter().for_each(&mut push);
    }

    let config = RawValue::from_string(raw.to_string()).map_err(|e| invalid(e.to_string()))?;
    let bundle = ResultBundle {
        version: ARTIFACT_VERSION.to_string(),
        config,
        overrides: Overrides {
            seed: opts.seed,
            levels: opts.levels,
            samples: opts.samples,
        },
        space: out.space,
        scheme: out.scheme,
        levels: out.levels,
        dumps: out.dumps,
        reports: out.reports,
        runtime: Runtime {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            threads: analyses.len().max(1),
        },
    };
    Ok(Experiment { bundle, tables })
}

fn positive_dim(dim: usize, min: usize) -> CliResult<()> {
    if dim < min {
        return Err(invalid(format!("dimension {dim} is below the minimum {min} for this space")));
    }
    Ok(())
}

fn execute<S: Backend>(space: S, ctx: &Ctx) -> CliResult<Output>
where
    S::Element: Send + Sync,
{
    let seq = space.decode(ctx.data)?;
    let scheme = space.scheme(&ctx.cfg.scheme)?;
    let run = subdivide(&space, &scheme.as_ref(), seq.clone(), ctx.cfg.levels)?;

    let mut levels = Vec::with_capacity(run.levels().len());
    for (k, l) in run.levels().iter().enumerate() {
        let d = if l.points().len() > 1 {
            Some(delta(&space, l.points()).map_err(|e| e.at("delta", k))?)
        } else {
            None
        };
        levels.push(LevelSummary {
            level: k,
            points: l.points().len(),
            origin: l.origin,
            delta: d,
        });
    }
    let dumps = ctx.cfg.output.dump_levels.then(|| {
        run.levels()
            .iter()
            .enumerate()
            .map(|(k, l)| LevelDump {
                level: k,
                origin: l.origin,
                knots: l.grid().knots().to_vec(),
                data: space.encode(l.points().elements(), l.points().is_closed()),
            })
            .collect()
    });

    let (sp, sc, rn, sq) = (&space, scheme.as_ref(), &run, &seq);
    let reports = if ctx.analyses.len() <= 1 {
        ctx.analyses
            .iter()
            .map(|a| analyze(sp, sc, rn, sq, a, ctx))
            .collect::<CliResult<Vec<_>>>()?
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ctx
                .analyses
                .iter()
                .map(|a| s.spawn(move || analyze(sp, sc, rn, sq, a, ctx)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("analysis thread panicked"))
                .collect::<CliResult<Vec<_>>>()
        })?
    };

    Ok(Output {
        space: space.name().to_string(),
        scheme: run.scheme().clone(),
        levels,
        dumps,
        reports,
    })
}

fn analyze<S: Backend>(
    space: &S,
    scheme: &(dyn Refinement<S> + Send + Sync),
    run: &SubdivisionRun<S>,
    seq: &ElementSequence<S::Element>,
    a: &AnalysisConfig,
    ctx: &Ctx,
) -> CliResult<Report>
where
    S::Element: Send + Sync,
{
    let samples = |own: Option<usize>| ctx.samples.or(own).unwrap_or(DEFAULT_SAMPLES);
    Ok(match a {
        AnalysisConfig::Contractivity { l_max, start } => Report::Contractivity(contractivity_of_run(run, *l_max, *start)?),
        AnalysisConfig::Displacement => Report::Displacement(displacement_of_run(run)?),
        AnalysisConfig::Proximity1 {
            against,
            scales,
            bound,
            mu,
        } => {
            let gen = ctx
                .generator
                .ok_or_else(|| invalid("proximity1 needs data produced by a generator"))?;
            let family = scales
                .iter()
                .map(|&s| space.decode(&gen.with_scale(s)?.generate()?.data))
                .collect::<CliResult<Vec<_>>>()?;
            let s2 = space.scheme(against)?;
            let bound = bound.map(|b| match b {
                BoundConfig::Hermite => ProximityBound {
                    constant: hermite_proximity_constant(),
                    exponent: 2.0,
                },
                BoundConfig::Power { constant, exponent } => ProximityBound { constant, exponent },
            });
            let pick = |scale: f64| {
                let i = scales
                    .iter()
                    .position(|s| s.to_bits() == scale.to_bits())
                    .expect("sweep scales come from the config");
                Ok(family[i].clone())
            };
            Report::Proximity1(check_proximity_type1(space, &scheme, &s2.as_ref(), pick, scales, bound, *mu)?)
        }
        AnalysisConfig::Proximity2 {
            against,
            embedded,
            l,
            blocks,
            burn_in,
        } => {
            let params = Prox2 {
                l: *l,
                blocks: *blocks,
                burn_in: *burn_in,
            };
            if *embedded {
                Report::Proximity2(space.proximity2_embedded(scheme, against, seq.clone(), params)?)
            } else {
                let s2 = space.scheme(against)?;
                Report::Proximity2(check_proximity_type2(
                    space,
                    &scheme,
                    space,
                    &s2.as_ref(),
                    |x: &S::Element| x.clone(),
                    seq.clone(),
                    *l,
                    *blocks,
                    *burn_in,
                )?)
            }
        }
        AnalysisConfig::Cauchy { samples: own } => Report::Cauchy(cauchy_trace(run, samples(*own))?),
        AnalysisConfig::DividedDiff {
            l_max,
            start,
            samples: own,
        } => {
            let trace = space.divided_diff(run, samples(*own))?;
            let c1 = c1_diagnostic(&trace, *l_max, *start, space.tolerance());
            Report::DividedDiff(DividedDiffReport { trace, c1 })
        }
        AnalysisConfig::ApproxOrder {
            curve,
            hs,
            proxy_levels,
            samples: own,
        } => Report::ApproxOrder(space.approx_order(
            scheme,
            &Approx {
                curve: *curve,
                hs: hs.clone(),
                levels: proxy_levels.unwrap_or(DEFAULT_PROXY_LEVELS),
                samples: samples(*own),
            },
        )?),
        AnalysisConfig::Locality { index, replace_with } => {
            let n = seq.len();
            let r = replace_with.unwrap_or((index + 1) % n);
            if *index >= n || r >= n || r == *index {
                return Err(invalid(format!(
                    "locality index {index} and replacement {r} must be distinct indices below {n}"
                )));
            }
            Report::Locality(locality_check(
                space,
                &scheme,
                seq,
                *index,
                seq.elements()[r].clone(),
                ctx.cfg.levels,
            )?)
        }
    })
}

/// Output directory: flag, then `SUBDIV_OUTPUT_DIR`, then the config (relative
/// to the config file), then `subdiv-out`.
pub fn output_dir(flag: Option<&Path>, cfg: &ExperimentConfig, base: &Path) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(OUTPUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    match &cfg.output.dir {
        Some(p) => base.join(p),
        None => PathBuf::from("subdiv-out"),
    }
}

pub const OUTPUT_ENV: &str = "SUBDIV_OUTPUT_DIR";

/// Writes `bundle.json` and the CSV traces; returns the bundle path.
pub fn write_experiment(exp: &Experiment, dir: &Path) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let bundle = dir.join("bundle.json");
    let mut text = serde_json::to_string_pretty(&exp.bundle).map_err(|e| invalid(e.to_string()))?;
    text.push('\n');
    std::fs::write(&bundle, text).map_err(|e| CliError::io(&bundle, e))?;
    for (name, t) in &exp.tables {
        let path = dir.join(name);
        std::fs::write(&path, t.to_bytes()).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(bundle)
}
