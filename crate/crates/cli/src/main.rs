use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schemars::schema_for;
use serde_json::{Map, Value};
use subdiv_cli::backend::linear_scheme;
use subdiv_cli::config::{AnalysisKind, ExperimentConfig, SchemeConfig};
use subdiv_cli::data::{DataFile, GeneratedFile, GeneratorSpec};
use subdiv_cli::error::{invalid, CliError, CliResult};
use subdiv_cli::report::{Report, ResultBundle};
use subdiv_cli::run::{load_config, output_dir, run_experiment, write_experiment, RunOptions};
use subdiv_core::schemes::{linear_mask, Mask};
use subdiv_core::spaces::Euclidean;

#[derive(Parser)]
#[command(name = "subdiv", version, about = "Subdivision schemes over metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Refine the configured data and run every configured analysis.
    Subdivide(RunArgs),
    /// Run a single analysis of the configured experiment.
    Analyze {
        #[arg(value_enum)]
        kind: AnalysisKind,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a data file from a seeded generator.
    Generate {
        /// Generator id, e.g. circle, random-walk, gaussian-mixture.
        id: String,
        #[arg(long)]
        seed: u64,
        /// Generator parameter as key=value; values are parsed as JSON when possible.
        #[arg(short = 'p', long = "param", value_parser = parse_param)]
        params: Vec<(String, Value)>,
        /// Directory to write `<id>-<seed>.json` into; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the even/odd mask of a linear scheme.
    Masks {
        /// elementary, chaikin, averaged or lane-riesenfeld.
        scheme: String,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        rounds: Option<usize>,
        /// Length of the impulse sequence.
        #[arg(long, default_value_t = 21)]
        impulse: usize,
        /// Directory to write `masks.json` into; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print JSON schemas.
    Schema {
        #[arg(value_enum, default_value_t = SchemaKind::All)]
        which: SchemaKind,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Replaces the generator seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Replaces the number of refinement levels.
    #[arg(long)]
    levels: Option<usize>,
    /// Sample count for sampled sup-distances.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemaKind {
    All,
    Config,
    Data,
    Generator,
    Generated,
    Bundle,
    Report,
    Mask,
}

fn parse_param(s: &str) -> Result<(String, Value), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.to_string(), v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Subdivide(args) => experiment(&args, None),
        Command::Analyze { kind, run } => experiment(&run, Some(kind)),
        Command::Generate {
            id,
            seed,
            params,
            output,
        } => generate(id, seed, params, output.as_deref()),
        Command::Masks {
            scheme,
            omega,
            rounds,
            impulse,
            output,
        } => masks(&scheme, omega, rounds, impulse, output.as_deref()),
        Command::Schema { which } => emit(&schemas(which), None, "schema.json"),
    }
}

fn experiment(args: &RunArgs, only: Option<AnalysisKind>) -> CliResult<()> {
    let (raw, cfg) = load_config(&args.config)?;
    let base = args.config.parent().unwrap_or(Path::new("."));
    let opts = RunOptions {
        seed: args.seed,
        levels: args.levels,
        samples: args.samples,
        only,
    };
    let exp = run_experiment(&raw, &cfg, base, &opts)?;
    let dir = output_dir(args.output.as_deref(), &cfg, base);
    let path = write_experiment(&exp, &dir)?;
    println!("{}", path.display());
    Ok(())
}

fn generate(id: String, seed: u64, params: Vec<(String, Value)>, output: Option<&Path>) -> CliResult<()> {
    let mut obj = Map::new();
    obj.insert("id".into(), Value::String(id.clone()));
    obj.insert("seed".into(), seed.into());
    obj.extend(params);
    let spec: GeneratorSpec = serde_json::from_value(Value::Object(obj)).map_err(|e| invalid(format!("generator: {e}")))?;
    let file = spec.generate()?;
    emit(&file, output, &format!("{id}-{seed}.json"))
}

fn masks(scheme: &str, omega: Option<f64>, rounds: Option<usize>, impulse: usize, output: Option<&Path>) -> CliResult<()> {
    let mut obj = Map::new();
    obj.insert("id".into(), Value::String(scheme.to_string()));
    if let Some(w) = omega {
        obj.insert("omega".into(), w.into());
    }
    if let Some(n) = rounds {
        obj.insert("rounds".into(), n.into());
    }
    let cfg: SchemeConfig = serde_json::from_value(Value::Object(obj)).map_err(|e| invalid(format!("scheme: {e}")))?;
    let s = linear_scheme::<Euclidean>(&cfg)?;
    let mask: Mask = linear_mask(&s.as_ref(), impulse)?;
    emit(&mask, output, "masks.json")
}

fn schemas(which: SchemaKind) -> Value {
    let one = |k: SchemaKind| -> Value {
        let s = match k {
            SchemaKind::Config => schema_for!(ExperimentConfig),
            SchemaKind::Data => schema_for!(DataFile),
            SchemaKind::Generator => schema_for!(GeneratorSpec),
            SchemaKind::Generated => schema_for!(GeneratedFile),
            SchemaKind::Bundle => schema_for!(ResultBundle),
            SchemaKind::Report => schema_for!(Report),
            SchemaKind::Mask => schema_for!(Mask),
            SchemaKind::All => unreachable!(),
        };
        serde_json::to_value(s).expect("schemas serialize")
    };
    if which != SchemaKind::All {
        return one(which);
    }
    let all: BTreeMap<&str, Value> = [
        ("config", SchemaKind::Config),
        ("data", SchemaKind::Data),
        ("generator", SchemaKind::Generator),
        ("generated", SchemaKind::Generated),
        ("bundle", SchemaKind::Bundle),
        ("report", SchemaKind::Report),
        ("mask", SchemaKind::Mask),
    ]
    .into_iter()
    .map(|(n, k)| (n, one(k)))
    .collect();
    serde_json::to_value(all).expect("schemas serialize")
}

/// Pretty JSON to `dir/name` when a directory is given, else to stdout.
fn emit<T: serde::Serialize>(value: &T, dir: Option<&Path>, name: &str) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| invalid(e.to_string()))?;
    text.push('\n');
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d).map_err(|e| CliError::io(d, e))?;
            let path = d.join(name);
            std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            println!("{}", path.display());
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    Ok(())
}
