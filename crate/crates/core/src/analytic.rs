//! Closed-form reduced dynamics.
//!
//! Three families:
//!
//! * the low-temperature non-Markovian solution, in which the thermal
//!   suppression factor
//!   `Upsilon(t) = (1 - x) / (1 - x e^{-gamma0 t})`, with
//!   `x = e^{-beta omega0}`, interpolates between 1 at t = 0 and 1 - x as
//!   the qubit and bath build up correlations;
//! * its zero-temperature limit (pure exponential decay at rate gamma0);
//! * the Markovian fixed-bath baseline, a single exponential at rate
//!   `gamma0 coth(beta omega0 / 2)`.
//!
//! The populations of the non-Markovian family are evaluated through two
//! independent expressions (the excited-state form and the ground-state
//! form) and cross-checked at every grid point; a transcription error in
//! either would trip the assertion immediately.

use crate::error::Result;
use crate::grid::{EvolutionTrace, Method, TimeGrid};
use crate::model::ModelParams;
use crate::state::{validate_density_matrix, QubitDensityMatrix};
use num_complex::Complex64 as C64;

/// The three closed-form families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MethodLabel {
    NonMarkovLowT,
    ZeroT,
    Markov,
}

impl From<MethodLabel> for Method {
    fn from(m: MethodLabel) -> Method {
        match m {
            MethodLabel::NonMarkovLowT => Method::NonMarkovLowT,
            MethodLabel::ZeroT => Method::ZeroT,
            MethodLabel::Markov => Method::Markov,
        }
    }
}

/// Thermal suppression factor `(1 - x) / (1 - x e^{-gamma0 t})` at absolute
/// time `t`. Monotone non-increasing from 1 toward 1 - x.
pub fn upsilon(params: &ModelParams, t: f64) -> f64 {
    let x = params.x();
    (1.0 - x) / (1.0 - x * (-params.gamma0() * t).exp())
}

/// `coth(beta omega0 / 2)` computed as `(1 + x)/(1 - x)`; stays finite for
/// all beta including +infinity (where it is 1).
pub fn coth_half(params: &ModelParams) -> f64 {
    let x = params.x();
    (1.0 + x) / (1.0 - x)
}

fn one_minus_exp_ratio(params: &ModelParams, t: f64) -> f64 {
    // (1 - e^{-gamma0 t}) / (1 - x e^{-gamma0 t})
    let u = (-params.gamma0() * t).exp();
    (1.0 - u) / (1.0 - params.x() * u)
}

/// Low-temperature non-Markovian evolution.
pub fn evolve_nonmarkov(
    params: &ModelParams,
    rho0: &QubitDensityMatrix,
    grid: &TimeGrid,
) -> Result<EvolutionTrace> {
    let (p11, p00) = (rho0.rho11().re, rho0.rho00().re);
    let states = grid
        .absolute_times(params)
        .into_iter()
        .map(|t| {
            let ups = upsilon(params, t);
            let ratio = one_minus_exp_ratio(params, t);
            // excited-state form
            let rho11 = (1.0 - ups) * p00 + (1.0 - ratio * ups) * p11;
            // independent ground-state form; the two must be complementary
            let rho00 = ups * p00 + ratio * ups * p11;
            assert!(
                (rho11 + rho00 - 1.0).abs() <= 1e-12,
                "population cross-check failed at t = {t}: {rho11} + {rho00}"
            );
            let envelope = (-params.gamma0() * t / 2.0).exp() * ups;
            let phase = C64::from_polar(1.0, -params.omega0() * t);
            let rho10 = envelope * phase * rho0.rho10();
            validate_density_matrix(C64::new(rho00, 0.0), rho10.conj(), rho10, C64::new(rho11, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    EvolutionTrace::new(Method::NonMarkovLowT, *params, grid.clone(), states)
}

/// Zero-temperature evolution: spontaneous emission only.
pub fn evolve_zero_temperature(
    params: &ModelParams,
    rho0: &QubitDensityMatrix,
    grid: &TimeGrid,
) -> Result<EvolutionTrace> {
    let (p11, p00) = (rho0.rho11().re, rho0.rho00().re);
    let states = grid
        .absolute_times(params)
        .into_iter()
        .map(|t| {
            let u = (-params.gamma0() * t).exp();
            let rho11 = p11 * u;
            let rho00 = p00 + p11 * (1.0 - u);
            let rho10 = rho0.rho10()
                * C64::from_polar((-params.gamma0() * t / 2.0).exp(), -params.omega0() * t);
            validate_density_matrix(C64::new(rho00, 0.0), rho10.conj(), rho10, C64::new(rho11, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    EvolutionTrace::new(Method::ZeroT, *params, grid.clone(), states)
}

/// Markovian fixed-bath evolution.
///
/// At beta = +infinity the `(1 + x)/(1 - x)` form of coth is exactly 1 and
/// this reduces to the zero-temperature result rather than degenerating.
pub fn evolve_markov(
    params: &ModelParams,
    rho0: &QubitDensityMatrix,
    grid: &TimeGrid,
) -> Result<EvolutionTrace> {
    let (p11_0, _) = (rho0.rho11().re, rho0.rho00().re);
    let x = params.x();
    let cth = coth_half(params);
    let p11_inf = x / (1.0 + x);
    let states = grid
        .absolute_times(params)
        .into_iter()
        .map(|t| {
            let u = (-params.gamma0() * cth * t).exp();
            let rho11 = p11_0 * u + p11_inf * (1.0 - u);
            let rho00 = 1.0 - rho11;
            let rho10 = rho0.rho10()
                * C64::from_polar(
                    (-params.gamma0() * t / 2.0 * cth).exp(),
                    -params.omega0() * t,
                );
            validate_density_matrix(C64::new(rho00, 0.0), rho10.conj(), rho10, C64::new(rho11, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    EvolutionTrace::new(Method::Markov, *params, grid.clone(), states)
}

/// Long-time state of each family. Coherence decays completely in all three.
pub fn asymptotic_state(params: &ModelParams, method: MethodLabel) -> QubitDensityMatrix {
    let x = params.x();
    let rho11 = match method {
        MethodLabel::NonMarkovLowT => x,
        MethodLabel::Markov => x / (1.0 + x),
        MethodLabel::ZeroT => 0.0,
    };
    QubitDensityMatrix::from_parts(rho11, C64::new(0.0, 0.0)).unwrap()
}

/// Dispatch by label.
pub fn evolve(
    params: &ModelParams,
    rho0: &QubitDensityMatrix,
    grid: &TimeGrid,
    method: MethodLabel,
) -> Result<EvolutionTrace> {
    match method {
        MethodLabel::NonMarkovLowT => evolve_nonmarkov(params, rho0, grid),
        MethodLabel::ZeroT => evolve_zero_temperature(params, rho0, grid),
        MethodLabel::Markov => evolve_markov(params, rho0, grid),
    }
}
