use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};

use super::expr::parse_expression;
use super::CliError;
use crate::benchmarks;
use crate::params::StaParams;
use crate::space::SearchSpace;

/// Command-line flags.
#[derive(Debug, Clone, Default, Parser)]
#[command(
    name = "sta",
    version,
    about = "Box-constrained global minimization with the continuous state transition algorithm"
)]
pub struct Args {
    /// TOML file with any of the settings below; flags take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Benchmark name (rastrigin, griewank, sphere, rosenbrock, paper_quadratic)
    /// or an expression over x1..xN.
    #[arg(long)]
    pub function: Option<String>,

    #[arg(long)]
    pub dim: Option<usize>,

    /// Uniform bounds applied to every coordinate, as `lo,hi`.
    #[arg(
        long,
        value_name = "LO,HI",
        allow_hyphen_values = true,
        conflicts_with = "bounds_file"
    )]
    pub bounds: Option<String>,

    /// File with one row of lower bounds and one row of upper bounds.
    #[arg(long, value_name = "PATH")]
    pub bounds_file: Option<PathBuf>,

    #[arg(long)]
    pub iterations: Option<usize>,

    #[arg(long)]
    pub se: Option<usize>,

    #[arg(long, allow_negative_numbers = true)]
    pub alpha_max: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub alpha_min: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub fc: Option<f64>,

    /// Random seed; repeat to run several seeds.
    #[arg(long = "seed")]
    pub seeds: Vec<u64>,

    /// Stop a run once the best value is at or below this.
    #[arg(long, allow_negative_numbers = true)]
    pub target_fitness: Option<f64>,

    #[arg(long, value_name = "PATH")]
    pub out_json: Option<PathBuf>,

    #[arg(long, value_name = "PATH")]
    pub out_csv: Option<PathBuf>,
}

/// Contents of a `--config` file. Same keys as the flags, in snake_case.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub function: Option<String>,
    pub dim: Option<usize>,
    /// `[lo, hi]` for every coordinate.
    pub bounds: Option<[f64; 2]>,
    pub lower: Option<Vec<f64>>,
    pub upper: Option<Vec<f64>>,
    pub bounds_file: Option<PathBuf>,
    pub iterations: Option<usize>,
    pub se: Option<usize>,
    pub alpha_max: Option<f64>,
    pub alpha_min: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub fc: Option<f64>,
    pub seeds: Option<Vec<u64>>,
    pub target_fitness: Option<f64>,
    pub out_json: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub function: String,
    pub space: SearchSpace,
    pub params: StaParams,
    pub seeds: Vec<u64>,
    pub target_fitness: Option<f64>,
    #[serde(skip)]
    pub out_json: Option<PathBuf>,
    #[serde(skip)]
    pub out_csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Debug, Clone)]
enum BoundsSource {
    Uniform(f64, f64),
    Explicit(Vec<f64>, Vec<f64>),
}

/// Parse `lo,hi`.
pub fn parse_bounds_pair(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || {
        CliError::Config(format!(
            "malformed --bounds '{text}': expected LO,HI such as -5.12,5.12"
        ))
    };
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

/// Parse a bounds file: a lower-bound row followed by an upper-bound row.
///
/// Rows are separated by newlines or `;`, values by whitespace or commas.
/// Surrounding brackets and `#` comments are ignored, so `[-3 -2 -1; 3 2 1]`
/// is accepted as well as a plain two-line file.
pub fn parse_bounds_text(text: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for chunk in line.split(';') {
            let chunk = chunk.replace(['[', ']'], " ");
            let values = chunk
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| format!("'{s}' is not a number"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !values.is_empty() {
                rows.push(values);
            }
        }
    }
    match <[Vec<f64>; 2]>::try_from(rows) {
        Ok([lower, upper]) if lower.len() == upper.len() => Ok((lower, upper)),
        Ok([lower, upper]) => Err(format!(
            "lower row has {} values but upper row has {}",
            lower.len(),
            upper.len()
        )),
        Err(rows) => Err(format!(
            "expected 2 rows (lower, upper), found {}",
            rows.len()
        )),
    }
}

fn read_bounds_file(path: &Path) -> Result<BoundsSource, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read bounds file {}: {e}", path.display()))
    })?;
    let (lo, hi) = parse_bounds_text(&text)
        .map_err(|e| CliError::Config(format!("malformed bounds file {}: {e}", path.display())))?;
    Ok(BoundsSource::Explicit(lo, hi))
}

/// Load a TOML config file. Relative `bounds_file` paths resolve against
/// the config file's directory.
pub fn load_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read config file {}: {e}", path.display()))
    })?;
    let mut cfg: FileConfig = toml::from_str(&text)
        .map_err(|e| CliError::Config(format!("malformed config file {}: {e}", path.display())))?;
    if let (Some(bf), Some(dir)) = (cfg.bounds_file.as_mut(), path.parent()) {
        if bf.is_relative() {
            *bf = dir.join(&*bf);
        }
    }
    Ok(cfg)
}

/// Merge flags over an optional config file over defaults.
pub fn parse_config(args: &Args) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };
    resolve(args, &file)
}

fn resolve(args: &Args, file: &FileConfig) -> Result<RunConfig, CliError> {
    let function = args
        .function
        .clone()
        .or_else(|| file.function.clone())
        .ok_or_else(|| {
            CliError::Config(
                "missing --function (a benchmark name or an expression over x1..xN)".into(),
            )
        })?;
    let function = function.trim().to_string();
    let benchmark = benchmarks::lookup(&function);
    if benchmark.is_none() && looks_like_name(&function) {
        let known: Vec<&str> = benchmarks::registry().iter().map(|b| b.name).collect();
        return Err(CliError::Config(format!(
            "unknown function '{function}'; known benchmarks: {}",
            known.join(", ")
        )));
    }

    // Flag-level bounds beat file-level bounds of either form.
    let bounds = if let Some(b) = &args.bounds {
        let (lo, hi) = parse_bounds_pair(b)?;
        Some(BoundsSource::Uniform(lo, hi))
    } else if let Some(path) = &args.bounds_file {
        Some(read_bounds_file(path)?)
    } else if let Some([lo, hi]) = file.bounds {
        Some(BoundsSource::Uniform(lo, hi))
    } else if let (Some(lo), Some(hi)) = (&file.lower, &file.upper) {
        Some(BoundsSource::Explicit(lo.clone(), hi.clone()))
    } else if let Some(path) = &file.bounds_file {
        Some(read_bounds_file(path)?)
    } else {
        None
    };

    let explicit_dim = args.dim.or(file.dim);
    let dim = match (explicit_dim, &bounds) {
        (Some(d), _) => d,
        (None, Some(BoundsSource::Explicit(lo, _))) => lo.len(),
        (None, _) => match benchmark.and_then(|b| b.fixed_dim) {
            Some(d) => d,
            None => return Err(CliError::Config("missing --dim".into())),
        },
    };
    if dim == 0 {
        return Err(CliError::Config("--dim must be at least 1".into()));
    }
    if let Some(b) = benchmark {
        if !b.accepts_dim(dim) {
            return Err(CliError::Config(format!(
                "dimension mismatch: {} is defined for dimension {} but --dim is {dim}",
                b.name,
                b.fixed_dim.unwrap_or(0)
            )));
        }
    }

    let space = match bounds {
        Some(BoundsSource::Uniform(lo, hi)) => SearchSpace::uniform(dim, lo, hi),
        Some(BoundsSource::Explicit(lo, hi)) => {
            if lo.len() != dim {
                return Err(CliError::Config(format!(
                    "dimension mismatch: bounds give {} coordinates but --dim is {dim}",
                    lo.len()
                )));
            }
            SearchSpace::new(lo, hi)
        }
        None => match benchmark.and_then(|b| b.default_space(dim)) {
            Some(space) => Ok(space),
            None => {
                return Err(CliError::Config(
                    "missing --bounds or --bounds-file for an expression objective".into(),
                ))
            }
        },
    }
    .map_err(|e| CliError::Config(format!("malformed bounds: {e}")))?;

    if benchmark.is_none() {
        parse_expression(&function, dim)
            .map_err(|e| CliError::Config(format!("in --function '{function}': {e}")))?;
    }

    let defaults = StaParams::default();
    let params = StaParams {
        alpha_max: args
            .alpha_max
            .or(file.alpha_max)
            .unwrap_or(defaults.alpha_max),
        alpha_min: args
            .alpha_min
            .or(file.alpha_min)
            .unwrap_or(defaults.alpha_min),
        beta: args.beta.or(file.beta).unwrap_or(defaults.beta),
        gamma: args.gamma.or(file.gamma).unwrap_or(defaults.gamma),
        delta: args.delta.or(file.delta).unwrap_or(defaults.delta),
        se: args.se.or(file.se).unwrap_or(defaults.se),
        fc: args.fc.or(file.fc).unwrap_or(defaults.fc),
        iterations: args
            .iterations
            .or(file.iterations)
            .unwrap_or(defaults.iterations),
    };
    params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let seeds = if !args.seeds.is_empty() {
        args.seeds.clone()
    } else {
        file.seeds
            .clone()
            .filter(|s| !s.is_empty())
            .unwrap_or_else(|| vec![0])
    };

    Ok(RunConfig {
        function: benchmark.map(|b| b.name.to_string()).unwrap_or(function),
        space,
        params,
        seeds,
        target_fitness: args.target_fitness.or(file.target_fitness),
        out_json: args.out_json.clone().or_else(|| file.out_json.clone()),
        out_csv: args.out_csv.clone().or_else(|| file.out_csv.clone()),
    })
}

/// A bare identifier that is not a variable reference.
fn looks_like_name(s: &str) -> bool {
    let mut chars = s.chars();
    let ident = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    let variable = s
        .strip_prefix('x')
        .is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()));
    ident && !variable && s != "pi"
}
