//! Continuous state transition algorithm for box-constrained global
//! minimization.
//!
//! An individual-based stochastic search: four state transformation
//! operators (rotation, translation, expansion, axesion) sample a
//! neighbourhood of the incumbent best solution, candidates are clamped into
//! the box, and the incumbent is replaced only on strict improvement.
//!
//! ```
//! use sta::{benchmarks, sta_run, RandomSource, SearchSpace, StaParams};
//!
//! let space = SearchSpace::uniform(5, -5.12, 5.12).unwrap();
//! let params = StaParams { iterations: 200, ..StaParams::default() };
//! let result = sta_run(&benchmarks::rastrigin, &space, &params, &mut RandomSource::new(0)).unwrap();
//! assert!(result.fbest <= result.history[0]);
//! ```

pub mod benchmarks;
pub mod cli;
pub mod engine;
pub mod error;
pub mod objective;
pub mod operators;
pub mod params;
pub mod rng;
pub mod space;

pub use engine::{
    greedy_update, initialize, phase, project, select_best, sta_run, sta_run_with, PhaseKind,
    PhaseOutcome, RunControl, RunResult, RunState,
};
pub use error::StaError;
pub use objective::{Objective, Solution};
pub use operators::{op_axes, op_expand, op_rotate, op_translate, SampleBatch};
pub use params::{default_params, StaParams};
pub use rng::RandomSource;
pub use space::SearchSpace;
