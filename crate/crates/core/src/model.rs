//! Physical parameters: qubit frequency, zero-temperature emission rate,
//! inverse temperature, and the discretized bath.
//!
//! Units are hbar = k_B = 1 throughout. The decay rate `gamma0` is the
//! primary coupling-strength parameter; per-mode couplings live on the
//! [`BathSpec`] and are calibrated against `gamma0` by the engines.

use crate::error::{Error, Result};

/// Boltzmann factor x = exp(-beta * omega0); zero at beta = +infinity.
pub fn derive_x(omega0: f64, beta: f64) -> Result<f64> {
    if !(omega0 > 0.0) {
        return Err(Error::InvalidParam(format!("omega0 must be positive, got {omega0}")));
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidParam(format!("beta must be positive, got {beta}")));
    }
    if beta.is_infinite() {
        return Ok(0.0);
    }
    Ok((-beta * omega0).exp())
}

/// Qubit and coupling parameters. Immutable after construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    omega0: f64,
    gamma0: f64,
    beta: f64,
    x: f64,
}

impl ModelParams {
    pub fn new(omega0: f64, gamma0: f64, beta: f64) -> Result<Self> {
        if !(gamma0 > 0.0) || !gamma0.is_finite() {
            return Err(Error::InvalidParam(format!("gamma0 must be positive, got {gamma0}")));
        }
        let x = derive_x(omega0, beta)?;
        Ok(ModelParams { omega0, gamma0, beta, x })
    }

    /// Construct from the Boltzmann factor x instead of beta.
    pub fn from_x(omega0: f64, gamma0: f64, x: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidParam(format!("x must lie in [0, 1), got {x}")));
        }
        let beta = if x == 0.0 { f64::INFINITY } else { -x.ln() / omega0 };
        Self::new(omega0, gamma0, beta)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// exp(-beta * omega0), the thermal occupation scale.
    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.x == 0.0
    }

    /// Convert a time in units of 1/gamma0 to absolute time.
    pub fn absolute_time(&self, t_gamma: f64) -> f64 {
        t_gamma / self.gamma0
    }

    /// Non-fatal regime warnings: the closed forms assume a cold, weakly
    /// coupled bath.
    pub fn validity_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.x >= 0.2 {
            out.push(format!(
                "x = {:.3} >= 0.2: outside the low-temperature regime of the closed forms",
                self.x
            ));
        }
        if self.gamma0 / self.omega0 >= 0.1 {
            out.push(format!(
                "gamma0/omega0 = {:.3} >= 0.1: outside the weak-coupling regime",
                self.gamma0 / self.omega0
            ));
        }
        out
    }
}

/// One discretized field mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathMode {
    /// Angular frequency.
    pub omega: f64,
    /// Real non-negative coupling amplitude; any phase is a gauge choice
    /// absorbed into the mode operator.
    pub lambda: f64,
}

/// Discretized bath: ordered mode list plus inverse temperature.
#[derive(Clone, Debug, PartialEq)]
pub struct BathSpec {
    modes: Vec<BathMode>,
    beta: f64,
}

impl BathSpec {
    pub fn new(modes: Vec<BathMode>, beta: f64) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParam("bath needs at least one mode".into()));
        }
        if !(beta > 0.0) {
            return Err(Error::InvalidParam(format!("beta must be positive, got {beta}")));
        }
        for (i, m) in modes.iter().enumerate() {
            if !(m.omega > 0.0) || !m.omega.is_finite() {
                return Err(Error::InvalidParam(format!(
                    "mode {i}: omega must be positive and finite, got {}",
                    m.omega
                )));
            }
            if m.lambda < 0.0 || !m.lambda.is_finite() {
                return Err(Error::InvalidParam(format!(
                    "mode {i}: lambda must be non-negative, got {}",
                    m.lambda
                )));
            }
            if i > 0 && modes[i - 1].omega >= m.omega {
                return Err(Error::InvalidParam(format!(
                    "mode frequencies must be strictly increasing at index {i}"
                )));
            }
        }
        Ok(BathSpec { modes, beta })
    }

    pub fn modes(&self) -> &[BathMode] {
        &self.modes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn omega_max(&self) -> f64 {
        self.modes.last().unwrap().omega
    }

    /// Indices of modes at frequency `omega0` within `tol`.
    pub fn resonant_indices(&self, omega0: f64, tol: f64) -> Vec<usize> {
        self.modes
            .iter()
            .enumerate()
            .filter(|(_, m)| (m.omega - omega0).abs() <= tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the mode closest to `omega0`.
    pub fn nearest_mode(&self, omega0: f64) -> usize {
        let mut best = 0;
        let mut bestd = f64::INFINITY;
        for (i, m) in self.modes.iter().enumerate() {
            let d = (m.omega - omega0).abs();
            if d < bestd {
                bestd = d;
                best = i;
            }
        }
        best
    }
}
