//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cell::Cell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sta::benchmarks::{self, paper_quadratic, PAPER_QUADRATIC_OPTIMUM};
use sta::cli::parse_expression;
use sta::{
    initialize, op_axes, op_expand, op_rotate, op_translate, select_best, sta_run, sta_run_with,
    Objective, RandomSource, RunControl, RunResult, SampleBatch, SearchSpace, StaParams,
};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("runtime {:.2}s exceeds {limit_s}s", elapsed.as_secs_f64())
    })
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn random_vector(rng: &mut RandomSource, n: usize) -> Vec<f64> {
    let scale = 10f64.powf(rng.uniform(-3.0, 3.0));
    (0..n)
        .map(|_| {
            if rng.unit() < 0.2 {
                0.0
            } else {
                rng.uniform(-scale, scale)
            }
        })
        .collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

const TRIALS: usize = 10_000;
const SE: usize = 30;

fn operator_geometry() -> Result<String, String> {
    let start = Instant::now();
    let mut inputs = RandomSource::new(0xA11CE);
    let mut rng = RandomSource::new(0xB0B);
    let mut samples = 0usize;

    for _ in 0..TRIALS {
        let n = 1 + inputs.index(15);
        let best = random_vector(&mut inputs, n);
        let alpha = 10f64.powf(inputs.uniform(-4.0, 0.5));
        for row in op_rotate(&best, SE, alpha, &mut rng).rows() {
            ensure(dist(row, &best) <= alpha, || {
                format!("rotation step {} > alpha {alpha}", dist(row, &best))
            })?;
        }

        let old = random_vector(&mut inputs, n);
        let new = random_vector(&mut inputs, n);
        let beta = 10f64.powf(inputs.uniform(-3.0, 1.0));
        let d: Vec<f64> = new.iter().zip(&old).map(|(a, b)| a - b).collect();
        for row in op_translate(&old, &new, SE, beta, &mut rng).rows() {
            ensure(dist(row, &new) <= beta, || {
                format!("translation step {} > beta {beta}", dist(row, &new))
            })?;
            // row - new = s * d for a single s >= 0. Fit s by least squares; each
            // coordinate may deviate only by the rounding of the stored row.
            let step: Vec<f64> = row.iter().zip(&new).map(|(a, b)| a - b).collect();
            let dd: f64 = d.iter().map(|v| v * v).sum();
            let s = if dd > 0.0 {
                step.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>() / dd
            } else {
                0.0
            };
            ensure(s >= 0.0, || {
                format!("translation moved backwards (s = {s})")
            })?;
            let round = |j: usize| 4.0 * f64::EPSILON * (new[j].abs() + step[j].abs());
            let s_err = if dd > 0.0 {
                (0..n).map(|k| round(k) * d[k].abs()).sum::<f64>() / dd
            } else {
                0.0
            };
            for j in 0..n {
                let slack = round(j) + s_err * d[j].abs();
                ensure((step[j] - s * d[j]).abs() <= slack, || {
                    format!(
                        "translation not collinear at coordinate {j}: {} vs {}",
                        step[j],
                        s * d[j]
                    )
                })?;
            }
        }

        let zeros: Vec<usize> = (0..n).filter(|&j| best[j] == 0.0).collect();
        let gamma = 10f64.powf(inputs.uniform(-2.0, 1.0));
        for row in op_expand(&best, SE, gamma, &mut rng).rows() {
            ensure(zeros.iter().all(|&j| row[j] == 0.0), || {
                "expansion changed a zero coordinate".into()
            })?;
        }
        let delta = 10f64.powf(inputs.uniform(-2.0, 1.0));
        for row in op_axes(&best, SE, delta, &mut rng).rows() {
            ensure(zeros.iter().all(|&j| row[j] == 0.0), || {
                "axesion changed a zero coordinate".into()
            })?;
            let changed = row.iter().zip(&best).filter(|(a, b)| a != b).count();
            ensure(changed <= 1, || {
                format!("axesion changed {changed} coordinates")
            })?;
        }
        samples += 4 * SE;
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!(
        "{TRIALS} trials per operator, {samples} samples, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

/// Counts calls and records whether any evaluated point left the box.
struct Instrumented<'a> {
    inner: &'a dyn Objective,
    space: &'a SearchSpace,
    calls: Cell<u64>,
    infeasible: Cell<u64>,
}

impl Objective for Instrumented<'_> {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.calls.set(self.calls.get() + 1);
        if !self.space.contains(x) {
            self.infeasible.set(self.infeasible.get() + 1);
        }
        self.inner.evaluate(x)
    }
}

fn bits(r: &RunResult) -> (Vec<u64>, u64, Vec<u64>, u64, u64) {
    (
        r.best.iter().map(|v| v.to_bits()).collect(),
        r.fbest.to_bits(),
        r.history.iter().map(|v| v.to_bits()).collect(),
        r.evaluations,
        r.seed,
    )
}

fn engine_invariants() -> Result<String, String> {
    let start = Instant::now();
    let mut pick = RandomSource::new(2024);
    let params = StaParams {
        iterations: 200,
        ..StaParams::default()
    };
    let registry = benchmarks::registry();
    let mut total_evals = 0u64;

    for run in 0..100 {
        let bench = &registry[pick.index(registry.len())];
        let dim = bench.fixed_dim.unwrap_or_else(|| 2 + pick.index(14));
        let space = bench.default_space(dim).unwrap();
        let seed = pick.index(usize::MAX) as u64;
        let counted = Instrumented {
            inner: bench,
            space: &space,
            calls: Cell::new(0),
            infeasible: Cell::new(0),
        };

        let mut infeasible_incumbent = false;
        let result = sta_run_with(
            &counted,
            &space,
            &params,
            &mut RandomSource::new(seed),
            RunControl::default(),
            |s| {
                infeasible_incumbent |= !space.contains(&s.best.coords);
            },
        )
        .map_err(|e| format!("run {run} ({}): {e}", bench.name))?;

        let label = format!("run {run} ({} {dim}D, seed {seed})", bench.name);
        ensure(result.history.len() == params.iterations, || {
            format!("{label}: history length")
        })?;
        ensure(result.history.windows(2).all(|w| w[1] <= w[0]), || {
            format!("{label}: history increased")
        })?;
        ensure(result.history.last() == Some(&result.fbest), || {
            format!("{label}: last history != fbest")
        })?;
        ensure(
            !infeasible_incumbent && space.contains(&result.best),
            || format!("{label}: infeasible incumbent"),
        )?;
        ensure(counted.infeasible.get() == 0, || {
            format!("{label}: evaluated an out-of-box point")
        })?;
        ensure(counted.calls.get() == result.evaluations, || {
            format!(
                "{label}: counter {} vs instrumented {}",
                result.evaluations,
                counted.calls.get()
            )
        })?;
        ensure(
            (result.evaluations - params.se as u64).is_multiple_of(params.se as u64),
            || format!("{label}: evaluations not a multiple of se"),
        )?;

        let again = sta_run(&counted, &space, &params, &mut RandomSource::new(seed)).unwrap();
        ensure(bits(&again) == bits(&result), || {
            format!("{label}: rerun with the same seed differs")
        })?;
        total_evals += result.evaluations;
    }
    within(start.elapsed(), 60.0)?;
    Ok(format!(
        "100 runs, {total_evals} evaluations, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn alpha_schedule() -> Result<String, String> {
    let params = StaParams {
        iterations: 50,
        ..StaParams::default()
    };
    let space = SearchSpace::uniform(2, -1.0, 1.0).unwrap();
    let mut alphas = Vec::new();
    sta_run_with(
        &benchmarks::sphere,
        &space,
        &params,
        &mut RandomSource::new(1),
        RunControl::default(),
        |s| alphas.push(s.alpha),
    )
    .map_err(|e| e.to_string())?;

    // Independent replay of the recurrence: reset below alpha_min, use, divide.
    let mut expected = Vec::new();
    let mut a = 1.0f64;
    for _ in 0..50 {
        if a < 1e-4 {
            a = 1.0;
        }
        expected.push(a);
        a /= 2.0;
    }
    ensure(alphas == expected, || format!("observed {alphas:?}"))?;
    let period = 1 + alphas[1..].iter().position(|&a| a == 1.0).unwrap();
    ensure(period == 14, || format!("period {period}"))?;
    ensure(alphas[13] == 2f64.powi(-13), || {
        "last alpha of a cycle is not 2^-13".into()
    })?;
    Ok(format!(
        "period {period}, alpha range [{:e}, 1]",
        alphas[13]
    ))
}

fn run_seeds(
    name: &str,
    dim: usize,
    iterations: usize,
    seeds: impl Iterator<Item = u64>,
) -> Vec<(u64, RunResult)> {
    let bench = benchmarks::lookup(name).unwrap();
    let space = bench.default_space(dim).unwrap();
    let params = StaParams {
        iterations,
        ..StaParams::default()
    };
    seeds
        .map(|seed| {
            (
                seed,
                sta_run(bench, &space, &params, &mut RandomSource::new(seed)).unwrap(),
            )
        })
        .collect()
}

fn sphere_10d() -> Result<String, String> {
    let start = Instant::now();
    let runs = run_seeds("sphere", 10, 1000, 0..10);
    for (seed, r) in &runs {
        ensure(r.fbest <= 1e-8, || {
            format!("seed {seed}: fbest {:e}", r.fbest)
        })?;
        ensure(r.evaluations <= 180_030, || {
            format!("seed {seed}: {} evaluations", r.evaluations)
        })?;
    }
    within(start.elapsed(), 30.0)?;
    let worst = runs.iter().map(|(_, r)| r.fbest).fold(0.0, f64::max);
    Ok(format!(
        "worst fbest {worst:e} over 10 seeds, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn rastrigin_10d() -> Result<String, String> {
    let bench = benchmarks::lookup("rastrigin").unwrap();
    let space = bench.default_space(10).unwrap();
    let runs = run_seeds("rastrigin", 10, 1000, 0..11);
    for (seed, r) in &runs {
        let init = initialize(&space, 30, &mut RandomSource::new(*seed), bench).unwrap();
        ensure(r.fbest <= init.fitness * 1e-3, || {
            format!(
                "seed {seed}: fbest {:e} vs initial {:e}",
                r.fbest, init.fitness
            )
        })?;
    }
    let med = median(runs.iter().map(|(_, r)| r.fbest).collect());
    ensure(med <= 1.0, || format!("median fbest {med:e}"))?;
    Ok(format!("median fbest {med:e}, every run improved >= 1000x"))
}

fn griewank_15d() -> Result<String, String> {
    let runs = run_seeds("griewank", 15, 1000, 0..11);
    let med = median(runs.iter().map(|(_, r)| r.fbest).collect());
    ensure(med <= 0.1, || format!("median fbest {med:e}"))?;
    let worst = runs.iter().map(|(_, r)| r.fbest).fold(0.0, f64::max);
    Ok(format!("median fbest {med:e}, worst {worst:e}"))
}

/// Minimum of the quadratic over its box by a coarse grid followed by a
/// 1e-3 grid around the coarse winner.
fn grid_optimum() -> f64 {
    let grid = |lo: [f64; 3], hi: [f64; 3], step: f64| {
        let steps = |k: usize| ((hi[k] - lo[k]) / step).round() as usize;
        let mut best = (f64::INFINITY, [0.0; 3]);
        for i in 0..=steps(0) {
            let x1 = lo[0] + i as f64 * step;
            for j in 0..=steps(1) {
                let x2 = lo[1] + j as f64 * step;
                for k in 0..=steps(2) {
                    let x = [x1, x2, lo[2] + k as f64 * step];
                    let f = (x[0] - 1.0).powi(2)
                        + (x[1] - 2.0 * x[0]).powi(2)
                        + (x[2] - 3.0 * x[1]).powi(2);
                    if f < best.0 {
                        best = (f, x);
                    }
                }
            }
        }
        best
    };
    let (_, c) = grid([-3.0, -2.0, -1.0], [3.0, 2.0, 1.0], 0.02);
    let lo = [
        (c[0] - 0.05).max(-3.0),
        (c[1] - 0.05).max(-2.0),
        (c[2] - 0.05).max(-1.0),
    ];
    let hi = [
        (c[0] + 0.05).min(3.0),
        (c[1] + 0.05).min(2.0),
        (c[2] + 0.05).min(1.0),
    ];
    grid(lo, hi, 1e-3).0
}

fn paper_quadratic_3d() -> Result<String, String> {
    let grid = grid_optimum();
    ensure(
        grid >= PAPER_QUADRATIC_OPTIMUM - 1e-12 && grid - PAPER_QUADRATIC_OPTIMUM < 1e-5,
        || format!("grid optimum {grid} disagrees with {PAPER_QUADRATIC_OPTIMUM}"),
    )?;
    let gap = |iterations| {
        median(
            run_seeds("paper_quadratic", 3, iterations, 0..21)
                .iter()
                .map(|(_, r)| (r.fbest - PAPER_QUADRATIC_OPTIMUM).abs())
                .collect(),
        )
    };
    let (g100, g10) = (gap(100), gap(10));
    ensure(g100 <= 1e-4, || {
        format!("100 iterations: median gap {g100:e}")
    })?;
    ensure(g10 <= 1e-2, || format!("10 iterations: median gap {g10:e}"))?;
    Ok(format!("f* = {PAPER_QUADRATIC_OPTIMUM:.6} (grid {grid:.6}); median gap {g100:e} @100 it, {g10:e} @10 it"))
}

fn selection_oracle() -> Result<String, String> {
    let space = SearchSpace::uniform(10, -5.12, 5.12).unwrap();
    let mut rng = RandomSource::new(77);
    for trial in 0..1000 {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|_| (0..10).map(|_| rng.uniform(-5.12, 5.12)).collect())
            .collect();
        let batch = SampleBatch::from_rows(10, &rows);
        let picked = select_best(&benchmarks::rastrigin, &batch).map_err(|e| e.to_string())?;

        let mut best = 0;
        let values: Vec<f64> = rows.iter().map(|r| benchmarks::rastrigin(r)).collect();
        for i in 1..values.len() {
            if values[i] < values[best] {
                best = i;
            }
        }
        ensure(
            picked.coords == rows[best] && picked.fitness.to_bits() == values[best].to_bits(),
            || format!("trial {trial}: selected a different row"),
        )?;
        ensure(space.contains(&picked.coords), || {
            "selected row outside box".into()
        })?;
    }
    Ok("1000 batches of 30, exact match".into())
}

fn expression_differential() -> Result<String, String> {
    let expr =
        parse_expression("(x1-1)^2+(x2 - 2*x1)^2+(x3-3*x2)^2", 3).map_err(|e| e.to_string())?;
    let mut rng = RandomSource::new(99);
    let mut max_err: f64 = 0.0;
    for _ in 0..1000 {
        let x = [
            rng.uniform(-3.0, 3.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(-1.0, 1.0),
        ];
        max_err = max_err.max((expr.evaluate(&x) - paper_quadratic(&x)).abs());
    }
    ensure(max_err <= 1e-12, || {
        format!("max abs difference {max_err:e}")
    })?;
    Ok(format!("max abs difference {max_err:e} over 1000 points"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("operator geometry", operator_geometry),
        ("engine invariants", engine_invariants),
        ("alpha schedule", alpha_schedule),
        ("sphere 10D", sphere_10d),
        ("rastrigin 10D", rastrigin_10d),
        ("griewank 15D", griewank_15d),
        ("paper quadratic 3D", paper_quadratic_3d),
        ("selection oracle", selection_oracle),
        ("expression differential", expression_differential),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
