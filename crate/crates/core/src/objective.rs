use serde::{Deserialize, Serialize};

use crate::operators::SampleBatch;

/// A function to be minimized.
///
/// Implementations must be deterministic; the optimizer assumes the same
/// input always yields the same value. The batch form exists so that
/// vectorized objectives can evaluate a whole sample batch at once and must
/// agree with mapping [`Objective::evaluate`] over the rows.
pub trait Objective {
    fn evaluate(&self, x: &[f64]) -> f64;

    fn evaluate_batch(&self, batch: &SampleBatch) -> Vec<f64> {
        batch.rows().map(|x| self.evaluate(x)).collect()
    }
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// A state together with its objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub coords: Vec<f64>,
    pub fitness: f64,
}

impl Solution {
    pub fn new(coords: Vec<f64>, fitness: f64) -> Self {
        Self { coords, fitness }
    }

    pub fn evaluate<O: Objective + ?Sized>(objective: &O, coords: Vec<f64>) -> Self {
        let fitness = objective.evaluate(&coords);
        Self { coords, fitness }
    }
}
