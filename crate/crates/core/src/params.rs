use serde::{Deserialize, Serialize};

use crate::error::{Result, StaError};

/// Algorithm constants.
///
/// `alpha_*` control the rotation radius schedule: alpha starts at
/// `alpha_max`, is divided by `fc` after every iteration and is reset to
/// `alpha_max` once it drops below `alpha_min`. `beta`, `gamma` and `delta`
/// scale the translation, expansion and axesion operators. `se` is the
/// number of samples drawn per operator application.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaParams {
    pub alpha_max: f64,
    pub alpha_min: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub se: usize,
    pub fc: f64,
    pub iterations: usize,
}

impl Default for StaParams {
    fn default() -> Self {
        Self {
            alpha_max: 1.0,
            alpha_min: 1e-4,
            beta: 1.0,
            gamma: 1.0,
            delta: 1.0,
            se: 30,
            fc: 2.0,
            iterations: 1000,
        }
    }
}

pub fn default_params() -> StaParams {
    StaParams::default()
}

impl StaParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("alpha_max", self.alpha_max),
            ("alpha_min", self.alpha_min),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(StaError::InvalidParams(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.alpha_min > self.alpha_max {
            return Err(StaError::InvalidParams(format!(
                "alpha_min ({}) exceeds alpha_max ({})",
                self.alpha_min, self.alpha_max
            )));
        }
        if !(self.fc.is_finite() && self.fc > 1.0) {
            return Err(StaError::InvalidParams(format!(
                "fc must be greater than 1, got {}",
                self.fc
            )));
        }
        if self.se == 0 {
            return Err(StaError::InvalidParams("se must be at least 1".into()));
        }
        if self.iterations == 0 {
            return Err(StaError::InvalidParams(
                "iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Number of iterations in one alpha cycle: the smallest `p` with
    /// `alpha_max / fc^p < alpha_min`.
    pub fn alpha_period(&self) -> usize {
        let mut alpha = self.alpha_max;
        let mut p = 0;
        while alpha >= self.alpha_min {
            alpha /= self.fc;
            p += 1;
        }
        p
    }
}
