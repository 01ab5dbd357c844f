//! The search loop.
//!
//! A state `x_k` is moved to `x_{k+1} = A_k x_k + B_k u_k`, where the
//! transition matrices are realised by the stochastic operators in
//! [`crate::operators`]. Each iteration runs an expansion, a rotation and an
//! axesion phase on the incumbent, in that order. A phase samples `se`
//! candidates, clamps them into the box, keeps the best if it strictly
//! improves the incumbent, and only then follows up with a translation
//! batch along the improving direction. The rotation radius `alpha` is
//! halved (divided by `fc`) after each iteration and reset to `alpha_max`
//! whenever it falls below `alpha_min`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, StaError};
use crate::objective::{Objective, Solution};
use crate::operators::{op_axes, op_expand, op_rotate, op_translate, SampleBatch};
use crate::params::StaParams;
use crate::rng::RandomSource;
use crate::space::SearchSpace;

/// Operator used by a phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseKind {
    Expansion,
    Rotation,
    Axesion,
}

impl PhaseKind {
    pub const ORDER: [PhaseKind; 3] = [
        PhaseKind::Expansion,
        PhaseKind::Rotation,
        PhaseKind::Axesion,
    ];
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseKind::Expansion => "expansion",
            PhaseKind::Rotation => "rotation",
            PhaseKind::Axesion => "axesion",
        })
    }
}

/// Mutable state of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunState {
    pub best: Solution,
    /// Rotation factor used by the current iteration.
    pub alpha: f64,
    /// 1-based iteration counter, 0 before the first iteration.
    pub iter: usize,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best: Vec<f64>,
    pub fbest: f64,
    /// Incumbent fitness after each completed iteration.
    pub history: Vec<f64>,
    pub evaluations: u64,
    pub seed: u64,
}

/// Result of a single phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOutcome {
    pub best: Solution,
    pub evaluations: u64,
    pub improved: bool,
    pub translated: bool,
}

/// Non-algorithmic run options.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunControl {
    /// Stop after the first iteration whose incumbent fitness is at or
    /// below this value. Off by default.
    pub target_fitness: Option<f64>,
}

/// Draw `se` uniform points in the box and keep the best.
///
/// Fails if the objective is non-finite at any of them.
pub fn initialize<O: Objective + ?Sized>(
    space: &SearchSpace,
    se: usize,
    rng: &mut RandomSource,
    objective: &O,
) -> Result<Solution> {
    if se == 0 {
        return Err(StaError::EmptyBatch);
    }
    let n = space.dim();
    let mut batch = SampleBatch::with_capacity(n, se);
    let mut row = vec![0.0; n];
    for _ in 0..se {
        for ((x, &l), &u) in row.iter_mut().zip(space.lower()).zip(space.upper()) {
            *x = l + rng.unit() * (u - l);
        }
        batch.push_row(&row);
    }
    let values = objective.evaluate_batch(&batch);
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(StaError::NonFiniteInitial {
            point: batch.row(i).to_vec(),
            value: values[i],
        });
    }
    let i = argmin(&values).expect("finite non-empty batch");
    Ok(Solution::new(batch.row(i).to_vec(), values[i]))
}

/// Clamp every row of the batch into the box.
pub fn project(mut batch: SampleBatch, space: &SearchSpace) -> SampleBatch {
    assert_eq!(
        batch.dim(),
        space.dim(),
        "batch and space dimensions differ"
    );
    for row in batch.rows_mut() {
        space.clamp_in_place(row);
    }
    batch
}

/// Index of the smallest value; first one wins on ties, non-finite values
/// never win.
fn argmin(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        match best {
            Some((_, b)) if v >= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Evaluate every row and return the one with the lowest value.
///
/// Non-finite values count as `+inf`. Ties go to the lowest row index.
pub fn select_best<O: Objective + ?Sized>(objective: &O, batch: &SampleBatch) -> Result<Solution> {
    if batch.is_empty() {
        return Err(StaError::EmptyBatch);
    }
    let values = objective.evaluate_batch(batch);
    let i = argmin(&values).ok_or(StaError::NoFiniteCandidate(values.len()))?;
    Ok(Solution::new(batch.row(i).to_vec(), values[i]))
}

/// Keep the candidate only if it is strictly better.
pub fn greedy_update(incumbent: Solution, candidate: Solution) -> Solution {
    if candidate.fitness < incumbent.fitness {
        candidate
    } else {
        incumbent
    }
}

/// Project, evaluate and greedily merge one batch into `incumbent`.
/// Returns the new incumbent and whether it changed.
fn absorb<O: Objective + ?Sized>(
    objective: &O,
    space: &SearchSpace,
    incumbent: Solution,
    batch: SampleBatch,
) -> (Solution, bool) {
    let batch = project(batch, space);
    match select_best(objective, &batch) {
        Ok(candidate) if candidate.fitness < incumbent.fitness => (candidate, true),
        // A batch with no finite value cannot improve anything.
        _ => (incumbent, false),
    }
}

/// Run one operator phase with the conditional translation follow-up.
///
/// `alpha` is only used by the rotation phase.
pub fn phase<O: Objective + ?Sized>(
    kind: PhaseKind,
    objective: &O,
    space: &SearchSpace,
    incumbent: Solution,
    alpha: f64,
    params: &StaParams,
    rng: &mut RandomSource,
) -> PhaseOutcome {
    let se = params.se;
    let batch = match kind {
        PhaseKind::Expansion => op_expand(&incumbent.coords, se, params.gamma, rng),
        PhaseKind::Rotation => op_rotate(&incumbent.coords, se, alpha, rng),
        PhaseKind::Axesion => op_axes(&incumbent.coords, se, params.delta, rng),
    };
    let mut evaluations = batch.len() as u64;
    let old = incumbent.coords.clone();
    let (best, improved) = absorb(objective, space, incumbent, batch);
    if !improved {
        return PhaseOutcome {
            best,
            evaluations,
            improved,
            translated: false,
        };
    }

    let batch = op_translate(&old, &best.coords, se, params.beta, rng);
    evaluations += batch.len() as u64;
    let (best, _) = absorb(objective, space, best, batch);
    PhaseOutcome {
        best,
        evaluations,
        improved,
        translated: true,
    }
}

/// Run the full algorithm with default run control.
pub fn sta_run<O: Objective + ?Sized>(
    objective: &O,
    space: &SearchSpace,
    params: &StaParams,
    rng: &mut RandomSource,
) -> Result<RunResult> {
    sta_run_with(objective, space, params, rng, RunControl::default(), |_| {})
}

/// Run the full algorithm, calling `observer` once per completed iteration.
pub fn sta_run_with<O, F>(
    objective: &O,
    space: &SearchSpace,
    params: &StaParams,
    rng: &mut RandomSource,
    control: RunControl,
    mut observer: F,
) -> Result<RunResult>
where
    O: Objective + ?Sized,
    F: FnMut(&RunState),
{
    params.validate()?;
    let best = initialize(space, params.se, rng, objective)?;
    let mut state = RunState {
        best,
        alpha: params.alpha_max,
        iter: 0,
        evaluations: params.se as u64,
    };
    let mut history = Vec::with_capacity(params.iterations);

    for iter in 1..=params.iterations {
        state.iter = iter;
        if state.alpha < params.alpha_min {
            state.alpha = params.alpha_max;
        }
        for kind in PhaseKind::ORDER {
            let outcome = phase(kind, objective, space, state.best, state.alpha, params, rng);
            state.best = outcome.best;
            state.evaluations += outcome.evaluations;
        }
        history.push(state.best.fitness);
        observer(&state);
        if control
            .target_fitness
            .is_some_and(|t| state.best.fitness <= t)
        {
            break;
        }
        state.alpha /= params.fc;
    }

    Ok(RunResult {
        best: state.best.coords,
        fbest: state.best.fitness,
        history,
        evaluations: state.evaluations,
        seed: rng.seed(),
    })
}
