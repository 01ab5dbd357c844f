//! State transformation operators.
//!
//! Each sampler takes the incumbent and returns `se` independent candidate
//! states. Random draws happen row by row, in the order documented on each
//! function, so a fixed seed always reproduces the same batch.

use crate::rng::RandomSource;

/// Guard added to vector norms before dividing by them.
pub const NORM_EPS: f64 = f64::EPSILON;

/// `se` candidate states of dimension `dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    dim: usize,
    data: Vec<f64>,
}

impl SampleBatch {
    pub fn with_capacity(dim: usize, rows: usize) -> Self {
        Self {
            dim,
            data: Vec::with_capacity(dim * rows),
        }
    }

    pub fn from_rows<I, R>(dim: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[f64]>,
    {
        let mut batch = Self::with_capacity(dim, 0);
        for row in rows {
            batch.push_row(row.as_ref());
        }
        batch
    }

    pub fn push_row(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.dim, "row length must match batch dimension");
        self.data.extend_from_slice(row);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + DoubleEndedIterator + '_ {
        self.data.chunks_exact(self.dim.max(1))
    }

    pub fn rows_mut(&mut self) -> impl ExactSizeIterator<Item = &mut [f64]> + '_ {
        self.data.chunks_exact_mut(self.dim.max(1))
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Rotation: `best + alpha / (n (|best| + eps)) * R * best`, with a fresh
/// `n x n` matrix `R` of uniform `[-1, 1]` entries per row.
///
/// Every sample lies within distance `alpha` of `best`.
/// Draw order: for each row, the entries of `R` in row-major order.
pub fn op_rotate(best: &[f64], se: usize, alpha: f64, rng: &mut RandomSource) -> SampleBatch {
    let n = best.len();
    let scale = alpha / (n as f64 * (norm(best) + NORM_EPS));
    let mut batch = SampleBatch::with_capacity(n, se);
    let mut row = vec![0.0; n];
    for _ in 0..se {
        for (out, &b) in row.iter_mut().zip(best) {
            let mut acc = 0.0;
            for &x in best {
                acc += rng.uniform(-1.0, 1.0) * x;
            }
            *out = b + scale * acc;
        }
        batch.push_row(&row);
    }
    batch
}

/// Translation: `new_best + beta * r * (new_best - old_best) / (|new_best - old_best| + eps)`
/// with `r` uniform on `[0, 1)`, drawn once per row.
///
/// Samples lie on the ray from `new_best` pointing away from `old_best`,
/// at most `beta` away from `new_best`.
pub fn op_translate(
    old_best: &[f64],
    new_best: &[f64],
    se: usize,
    beta: f64,
    rng: &mut RandomSource,
) -> SampleBatch {
    assert_eq!(
        old_best.len(),
        new_best.len(),
        "translation endpoints must share a dimension"
    );
    let n = new_best.len();
    let diff: Vec<f64> = new_best.iter().zip(old_best).map(|(a, b)| a - b).collect();
    let scale = beta / (norm(&diff) + NORM_EPS);
    let mut batch = SampleBatch::with_capacity(n, se);
    let mut row = vec![0.0; n];
    for _ in 0..se {
        let t = scale * rng.unit();
        for ((out, &b), &d) in row.iter_mut().zip(new_best).zip(&diff) {
            *out = b + t * d;
        }
        batch.push_row(&row);
    }
    batch
}

/// Expansion: `best + gamma * (g .* best)` with `g` a vector of independent
/// standard normals drawn per row (coordinate order).
pub fn op_expand(best: &[f64], se: usize, gamma: f64, rng: &mut RandomSource) -> SampleBatch {
    let n = best.len();
    let mut batch = SampleBatch::with_capacity(n, se);
    let mut row = vec![0.0; n];
    for _ in 0..se {
        for (out, &b) in row.iter_mut().zip(best) {
            *out = b + gamma * rng.standard_normal() * b;
        }
        batch.push_row(&row);
    }
    batch
}

/// Axesion: perturb a single uniformly chosen coordinate `j` of `best` to
/// `best[j] + delta * g * best[j]`, `g` standard normal.
///
/// Draw order per row: the axis index, then one normal.
pub fn op_axes(best: &[f64], se: usize, delta: f64, rng: &mut RandomSource) -> SampleBatch {
    let n = best.len();
    let mut batch = SampleBatch::with_capacity(n, se);
    let mut row = best.to_vec();
    for _ in 0..se {
        let j = rng.index(n);
        let g = rng.standard_normal();
        row[j] = best[j] + delta * g * best[j];
        batch.push_row(&row);
        row[j] = best[j];
    }
    batch
}
