use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::expr::{parse_expression, Expression};
use super::CliError;
use crate::benchmarks::{self, BenchmarkSpec};
use crate::engine::{sta_run_with, RunControl, RunResult};
use crate::objective::Objective;
use crate::params::StaParams;
use crate::rng::RandomSource;
use crate::space::SearchSpace;

/// Objective selected on the command line.
#[derive(Debug, Clone)]
pub enum Function {
    Benchmark(&'static BenchmarkSpec),
    Expression(Expression),
}

impl Function {
    pub fn resolve(name: &str, dim: usize) -> Result<Self, CliError> {
        if let Some(b) = benchmarks::lookup(name) {
            if !b.accepts_dim(dim) {
                return Err(CliError::Config(format!(
                    "{} does not accept dimension {dim}",
                    b.name
                )));
            }
            return Ok(Function::Benchmark(b));
        }
        parse_expression(name, dim)
            .map(Function::Expression)
            .map_err(|e| CliError::Config(format!("in --function '{name}': {e}")))
    }
}

impl Objective for Function {
    fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            Function::Benchmark(b) => b.evaluate(x),
            Function::Expression(e) => e.evaluate(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedRun {
    pub result: RunResult,
    pub runtime_ms: f64,
}

/// One element of the JSON summary array. Carries everything needed to
/// replay the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub seed: u64,
    pub function: String,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub best: Vec<f64>,
    pub fbest: f64,
    pub evaluations: u64,
    pub iterations_run: usize,
    pub runtime_ms: f64,
    pub target_fitness: Option<f64>,
    pub params: StaParams,
}

impl SummaryEntry {
    /// Configuration reproducing this single-seed run.
    pub fn to_config(&self) -> Result<RunConfig, CliError> {
        let space = SearchSpace::new(self.lower.clone(), self.upper.clone())
            .map_err(|e| CliError::Config(format!("summary entry has invalid bounds: {e}")))?;
        Ok(RunConfig {
            function: self.function.clone(),
            space,
            params: self.params,
            seeds: vec![self.seed],
            target_fitness: self.target_fitness,
            out_json: None,
            out_csv: None,
        })
    }
}

/// Run every seed of `config`, in seed order.
pub fn run_config(config: &RunConfig) -> Result<Vec<SeedRun>, CliError> {
    let function = Function::resolve(&config.function, config.dim())?;
    let control = RunControl {
        target_fitness: config.target_fitness,
    };
    config
        .seeds
        .iter()
        .map(|&seed| {
            let start = Instant::now();
            let mut rng = RandomSource::new(seed);
            let result = sta_run_with(
                &function,
                &config.space,
                &config.params,
                &mut rng,
                control,
                |_| {},
            )
            .map_err(|source| CliError::Run { seed, source })?;
            Ok(SeedRun {
                result,
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

pub fn summary_entries(config: &RunConfig, runs: &[SeedRun]) -> Vec<SummaryEntry> {
    runs.iter()
        .map(|run| SummaryEntry {
            seed: run.result.seed,
            function: config.function.clone(),
            lower: config.space.lower().to_vec(),
            upper: config.space.upper().to_vec(),
            best: run.result.best.clone(),
            fbest: run.result.fbest,
            evaluations: run.result.evaluations,
            iterations_run: run.result.history.len(),
            runtime_ms: run.runtime_ms,
            target_fitness: config.target_fitness,
            params: config.params,
        })
        .collect()
}

pub fn summary_json(config: &RunConfig, runs: &[SeedRun]) -> String {
    let mut s = serde_json::to_string_pretty(&summary_entries(config, runs))
        .expect("summary is serializable");
    s.push('\n');
    s
}

/// Long-format convergence history: `seed,iteration,fbest`, iterations 1-based.
pub fn history_csv(runs: &[SeedRun]) -> String {
    let mut out = String::from("seed,iteration,fbest\n");
    for run in runs {
        for (i, f) in run.result.history.iter().enumerate() {
            writeln!(out, "{},{},{:?}", run.result.seed, i + 1, f).unwrap();
        }
    }
    out
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".partial");
    path.with_file_name(name)
}

/// Write all outputs, or none: contents go to `.partial` files first and are
/// renamed into place only after every write succeeded.
fn write_outputs(outputs: &[(&Path, String)]) -> Result<(), CliError> {
    let mut staged: Vec<(PathBuf, &Path)> = Vec::new();
    let cleanup = |staged: &[(PathBuf, &Path)]| {
        for (tmp, _) in staged {
            let _ = fs::remove_file(tmp);
        }
    };
    for (path, contents) in outputs {
        let tmp = tmp_path(path);
        if let Err(e) = fs::write(&tmp, contents) {
            let _ = fs::remove_file(&tmp);
            cleanup(&staged);
            return Err(CliError::Io(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
        staged.push((tmp, path));
    }
    for (i, (tmp, path)) in staged.iter().enumerate() {
        if let Err(e) = fs::rename(tmp, path) {
            cleanup(&staged[i..]);
            return Err(CliError::Io(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
    }
    Ok(())
}

fn format_vector(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Run `config`, write the requested files and print a summary to `out`.
pub fn run_command(config: &RunConfig, out: &mut dyn Write) -> Result<Vec<SeedRun>, CliError> {
    let runs = run_config(config)?;

    let mut outputs = Vec::new();
    if let Some(path) = &config.out_json {
        outputs.push((path.as_path(), summary_json(config, &runs)));
    }
    if let Some(path) = &config.out_csv {
        outputs.push((path.as_path(), history_csv(&runs)));
    }
    write_outputs(&outputs)?;

    let io = |e: std::io::Error| CliError::Io(format!("cannot write to stdout: {e}"));
    writeln!(out, "function: {} (dim {})", config.function, config.dim()).map_err(io)?;
    for run in &runs {
        let r = &run.result;
        writeln!(out, "seed {}:", r.seed).map_err(io)?;
        writeln!(out, "  Best  = {}", format_vector(&r.best)).map_err(io)?;
        writeln!(out, "  fBest = {:e}", r.fbest).map_err(io)?;
        writeln!(
            out,
            "  {} iterations, {} evaluations, {:.1} ms",
            r.history.len(),
            r.evaluations,
            run.runtime_ms
        )
        .map_err(io)?;
    }
    Ok(runs)
}
