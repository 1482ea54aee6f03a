//! Time grids and labeled evolution traces.
//!
//! Grids are expressed in units of 1/gamma0 at the API boundary (matching
//! how results are plotted) and converted to absolute time inside the
//! engines.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::state::QubitDensityMatrix;
use serde::{Deserialize, Serialize};

/// Strictly increasing, non-negative times in units of 1/gamma0.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    gamma_times: Vec<f64>,
}

impl TimeGrid {
    pub fn from_times(gamma_times: Vec<f64>) -> Result<Self> {
        if gamma_times.is_empty() {
            return Err(Error::InvalidParam("time grid is empty".into()));
        }
        if !gamma_times[0].is_finite() || gamma_times[0] < 0.0 {
            return Err(Error::InvalidParam(format!(
                "grid must start at a non-negative time, got {}",
                gamma_times[0]
            )));
        }
        for w in gamma_times.windows(2) {
            if !w[1].is_finite() || w[1] <= w[0] {
                return Err(Error::InvalidParam(format!(
                    "grid times must be strictly increasing and finite ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(TimeGrid { gamma_times })
    }

    /// Uniform grid 0, dt, 2 dt, ..., up to and including t_max (within
    /// rounding).
    pub fn uniform(t_max: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !(t_max > 0.0) {
            return Err(Error::InvalidParam(format!(
                "uniform grid needs positive t_max and dt, got ({t_max}, {dt})"
            )));
        }
        let n = (t_max / dt).round() as usize;
        let times = (0..=n).map(|i| i as f64 * dt).collect();
        Self::from_times(times)
    }

    pub fn times(&self) -> &[f64] {
        &self.gamma_times
    }

    pub fn len(&self) -> usize {
        self.gamma_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma_times.is_empty()
    }

    /// Times in absolute units for the given parameters.
    pub fn absolute_times(&self, params: &ModelParams) -> Vec<f64> {
        self.gamma_times
            .iter()
            .map(|&t| params.absolute_time(t))
            .collect()
    }
}

/// Which engine or closed form produced a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    NonMarkovLowT,
    ZeroT,
    Markov,
    Oracle,
    Functional,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::NonMarkovLowT => "nm",
            Method::ZeroT => "zeroT",
            Method::Markov => "markov",
            Method::Oracle => "oracle",
            Method::Functional => "functional",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nm" => Ok(Method::NonMarkovLowT),
            "zeroT" | "zerot" => Ok(Method::ZeroT),
            "markov" => Ok(Method::Markov),
            "oracle" => Ok(Method::Oracle),
            "functional" => Ok(Method::Functional),
            other => Err(Error::InvalidParam(format!(
                "unknown method '{other}' (expected nm|zeroT|markov|oracle|functional)"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Labeled time series of reduced states.
#[derive(Clone, Debug)]
pub struct EvolutionTrace {
    pub method: Method,
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub states: Vec<QubitDensityMatrix>,
}

impl EvolutionTrace {
    pub fn new(
        method: Method,
        params: ModelParams,
        grid: TimeGrid,
        states: Vec<QubitDensityMatrix>,
    ) -> Result<Self> {
        if states.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} states for {} grid points",
                states.len(),
                grid.len()
            )));
        }
        Ok(EvolutionTrace { method, params, grid, states })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn rho11(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.population_excited()).collect()
    }

    pub fn coherence_abs(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.coherence_abs()).collect()
    }
}
