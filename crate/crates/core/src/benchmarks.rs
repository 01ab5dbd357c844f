//! Test objectives with known optima, plus a name registry.

use std::f64::consts::PI;

use crate::objective::Objective;
use crate::space::SearchSpace;

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `10 n + sum(x_i^2 - 10 cos(2 pi x_i))`
pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

/// `1 + sum(x_i^2) / 4000 - prod(cos(x_i / sqrt(i)))`, `i` starting at 1.
pub fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sum - prod
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

/// `(x1 - 1)^2 + (x2 - 2 x1)^2 + (x3 - 3 x2)^2`
pub fn paper_quadratic(x: &[f64]) -> f64 {
    assert_eq!(x.len(), 3, "paper_quadratic is defined on R^3");
    (x[0] - 1.0).powi(2) + (x[1] - 2.0 * x[0]).powi(2) + (x[2] - 3.0 * x[1]).powi(2)
}

/// Minimum of [`paper_quadratic`] over its default box, attained with
/// `x3 = 1` active at `(16/46, 17/46, 1)`.
pub const PAPER_QUADRATIC_OPTIMUM: f64 = 1150.0 / 2116.0;

#[derive(Debug, Clone, Copy)]
enum DefaultBox {
    Uniform(f64, f64),
    PerCoordinate(&'static [f64], &'static [f64]),
}

/// A registered benchmark.
#[derive(Debug, Clone, Copy)]
pub struct BenchmarkSpec {
    pub name: &'static str,
    pub function: fn(&[f64]) -> f64,
    /// Set for functions only defined in one dimension.
    pub fixed_dim: Option<usize>,
    /// Global minimum value over the default box.
    pub reference_optimum: f64,
    argmin: fn(usize) -> Vec<f64>,
    default_box: DefaultBox,
}

impl BenchmarkSpec {
    pub fn default_space(&self, dim: usize) -> Option<SearchSpace> {
        if self.fixed_dim.is_some_and(|d| d != dim) {
            return None;
        }
        match self.default_box {
            DefaultBox::Uniform(lo, hi) => SearchSpace::uniform(dim, lo, hi).ok(),
            DefaultBox::PerCoordinate(lo, hi) => SearchSpace::new(lo.to_vec(), hi.to_vec()).ok(),
        }
    }

    pub fn reference_argmin(&self, dim: usize) -> Vec<f64> {
        (self.argmin)(dim)
    }

    pub fn accepts_dim(&self, dim: usize) -> bool {
        dim >= 1 && self.fixed_dim.is_none_or(|d| d == dim)
    }
}

impl Objective for BenchmarkSpec {
    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.function)(x)
    }
}

static REGISTRY: [BenchmarkSpec; 5] = [
    BenchmarkSpec {
        name: "rastrigin",
        function: rastrigin,
        fixed_dim: None,
        reference_optimum: 0.0,
        argmin: |n| vec![0.0; n],
        default_box: DefaultBox::Uniform(-5.12, 5.12),
    },
    BenchmarkSpec {
        name: "griewank",
        function: griewank,
        fixed_dim: None,
        reference_optimum: 0.0,
        argmin: |n| vec![0.0; n],
        default_box: DefaultBox::Uniform(-600.0, 600.0),
    },
    BenchmarkSpec {
        name: "sphere",
        function: sphere,
        fixed_dim: None,
        reference_optimum: 0.0,
        argmin: |n| vec![0.0; n],
        default_box: DefaultBox::Uniform(-100.0, 100.0),
    },
    BenchmarkSpec {
        name: "rosenbrock",
        function: rosenbrock,
        fixed_dim: None,
        reference_optimum: 0.0,
        argmin: |n| vec![1.0; n],
        default_box: DefaultBox::Uniform(-2.048, 2.048),
    },
    BenchmarkSpec {
        name: "paper_quadratic",
        function: paper_quadratic,
        fixed_dim: Some(3),
        reference_optimum: PAPER_QUADRATIC_OPTIMUM,
        argmin: |_| vec![16.0 / 46.0, 17.0 / 46.0, 1.0],
        default_box: DefaultBox::PerCoordinate(&[-3.0, -2.0, -1.0], &[3.0, 2.0, 1.0]),
    },
];

pub fn registry() -> &'static [BenchmarkSpec] {
    &REGISTRY
}

/// Case-insensitive lookup.
pub fn lookup(name: &str) -> Option<&'static BenchmarkSpec> {
    REGISTRY
        .iter()
        .find(|b| b.name.eq_ignore_ascii_case(name.trim()))
}
