//! Derived quantities: decoherence and relaxation rates, their ratio,
//! fidelity against free evolution, and von Neumann entropy.
//!
//! Rates are logarithmic derivatives extracted from traces by second-order
//! finite differences (central stencils inside, one-sided at the ends).
//! Points where the defining quotient degenerates (vanished coherence,
//! reached asymptote) are reported as absent rather than as infinities.
//! For the analytic families, exact closed-form rates live in
//! [`closed_form`] and double as the convergence reference for the stencils.

use crate::error::{Error, Result};
use crate::grid::{EvolutionTrace, Method, TimeGrid};
use crate::model::ModelParams;
use crate::state::QubitDensityMatrix;
use num_complex::Complex64 as C64;

/// Coherence magnitudes below this are treated as fully decohered.
pub const COHERENCE_FLOOR: f64 = 1e-12;
/// Population distances to the asymptote below this are treated as relaxed.
pub const RELAXATION_FLOOR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateKind {
    Decoherence,
    Relaxation,
    Ratio,
}

/// Rate series on a grid; `None` marks degenerate points.
#[derive(Clone, Debug)]
pub struct RateSeries {
    pub kind: RateKind,
    pub grid: TimeGrid,
    pub values: Vec<Option<f64>>,
}

/// Second-order derivative of `y` on (possibly non-uniform) `t`, three-point
/// stencils throughout.
fn derivative_3pt(t: &[f64], y: &[C64]) -> Vec<C64> {
    let n = t.len();
    assert!(n >= 3, "need at least three points for second-order stencils");
    let mut out = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        // choose the stencil window: one-sided at the ends
        let j = if i == 0 { 1 } else if i == n - 1 { n - 2 } else { i };
        let (t0, t1, t2) = (t[j - 1], t[j], t[j + 1]);
        let (y0, y1, y2) = (y[j - 1], y[j], y[j + 1]);
        let x = t[i];
        // Lagrange derivative weights at x for nodes (t0, t1, t2)
        let w0 = (2.0 * x - t1 - t2) / ((t0 - t1) * (t0 - t2));
        let w1 = (2.0 * x - t0 - t2) / ((t1 - t0) * (t1 - t2));
        let w2 = (2.0 * x - t0 - t1) / ((t2 - t0) * (t2 - t1));
        out[i] = y0 * w0 + y1 * w1 + y2 * w2;
    }
    out
}

/// Instantaneous decoherence rate `Re[-d rho10/dt / rho10]` from a trace.
///
/// The oscillatory carrier contributes only to the imaginary part and is
/// discarded; the real part equals `-d/dt ln |rho10|`.
pub fn decoherence_rate(trace: &EvolutionTrace) -> Result<RateSeries> {
    if trace.len() < 3 {
        return Err(Error::InvalidParam(format!(
            "decoherence rate needs at least 3 grid points, got {}",
            trace.len()
        )));
    }
    let t = trace.grid.absolute_times(&trace.params);
    let coh: Vec<C64> = trace.states.iter().map(|s| s.rho10()).collect();
    let dcoh = derivative_3pt(&t, &coh);
    let values = coh
        .iter()
        .zip(&dcoh)
        .map(|(c, dc)| {
            if c.norm() <= COHERENCE_FLOOR {
                None
            } else {
                Some((-dc / c).re)
            }
        })
        .collect();
    Ok(RateSeries { kind: RateKind::Decoherence, grid: trace.grid.clone(), values })
}

/// Instantaneous relaxation rate
/// `-d rho11/dt / (rho11 - rho11(infinity))` from a trace.
///
/// `rho_inf` must be the asymptotic state of the same method that produced
/// the trace; `rho_inf_method` makes the pairing explicit.
pub fn relaxation_rate(
    trace: &EvolutionTrace,
    rho_inf: &QubitDensityMatrix,
    rho_inf_method: Method,
) -> Result<RateSeries> {
    if rho_inf_method != trace.method {
        return Err(Error::InvalidParam(format!(
            "asymptotic state is for method {rho_inf_method}, trace is {}",
            trace.method
        )));
    }
    if trace.len() < 3 {
        return Err(Error::InvalidParam(format!(
            "relaxation rate needs at least 3 grid points, got {}",
            trace.len()
        )));
    }
    let t = trace.grid.absolute_times(&trace.params);
    let p_inf = rho_inf.population_excited();
    let pop: Vec<C64> = trace
        .states
        .iter()
        .map(|s| C64::new(s.population_excited(), 0.0))
        .collect();
    let dpop = derivative_3pt(&t, &pop);
    let values = pop
        .iter()
        .zip(&dpop)
        .map(|(p, dp)| {
            let gap = p.re - p_inf;
            if gap.abs() <= RELAXATION_FLOOR {
                None
            } else {
                Some(-dp.re / gap)
            }
        })
        .collect();
    Ok(RateSeries { kind: RateKind::Relaxation, grid: trace.grid.clone(), values })
}

/// Pointwise quotient of two rate series on the same grid.
pub fn rate_ratio(dec: &RateSeries, rel: &RateSeries) -> Result<RateSeries> {
    if dec.grid != rel.grid {
        return Err(Error::GridMismatch("rate ratio needs identical grids".into()));
    }
    let values = dec
        .values
        .iter()
        .zip(&rel.values)
        .map(|(d, r)| match (d, r) {
            (Some(d), Some(r)) if r.abs() > 0.0 => Some(d / r),
            _ => None,
        })
        .collect();
    Ok(RateSeries { kind: RateKind::Ratio, grid: dec.grid.clone(), values })
}

/// Overlap of the evolved state with the freely evolved initial state,
/// `f(t) = Tr[rho(t) U0(t) rho(0) U0^dagger(t)]`, with `U0` generated by the
/// bare qubit Hamiltonian alone.
///
/// This is the direct overlap, not the Uhlmann fidelity: for mixed inputs
/// `f(0) = Tr rho(0)^2`.
pub fn fidelity_vs_free(trace: &EvolutionTrace, rho0: &QubitDensityMatrix) -> Vec<f64> {
    let omega0 = trace.params.omega0();
    trace
        .grid
        .absolute_times(&trace.params)
        .into_iter()
        .zip(&trace.states)
        .map(|(t, s)| {
            let free_coh = rho0.rho10() * C64::from_polar(1.0, -omega0 * t);
            s.rho11().re * rho0.rho11().re
                + s.rho00().re * rho0.rho00().re
                + 2.0 * (s.rho10() * free_coh.conj()).re
        })
        .collect()
}

/// Von Neumann entropy in nats, via the closed-form qubit eigenvalues
/// `(1 +- sqrt((rho11 - rho00)^2 + 4 |rho10|^2)) / 2`.
pub fn von_neumann_entropy(rho: &QubitDensityMatrix) -> f64 {
    let d = rho.rho11().re - rho.rho00().re;
    let r = (d * d + 4.0 * rho.rho10().norm_sqr()).sqrt();
    let lambdas = [(1.0 + r) / 2.0, (1.0 - r) / 2.0];
    lambdas
        .into_iter()
        .map(|l| {
            let l = l.clamp(0.0, 1.0);
            if l > 0.0 {
                -l * l.ln()
            } else {
                0.0
            }
        })
        .sum()
}

/// Exact rates and fidelity envelopes for the analytic families.
pub mod closed_form {
    use super::*;
    use crate::analytic::{coth_half, upsilon};

    /// Non-Markovian decoherence rate
    /// `gamma0/2 + gamma0 x e^{-gamma0 t} / (1 - x e^{-gamma0 t})`.
    /// Starts at the thermal value `(gamma0/2) coth(beta omega0/2)` and
    /// relaxes to the zero-temperature value gamma0/2.
    pub fn nm_decoherence_rate(params: &ModelParams, t: f64) -> f64 {
        let g = params.gamma0();
        let xu = params.x() * (-g * t).exp();
        g / 2.0 + g * xu / (1.0 - xu)
    }

    /// Non-Markovian relaxation rate for an initially excited qubit,
    /// obtained by logarithmic differentiation of the population closed
    /// form toward its thermal asymptote.
    pub fn nm_relaxation_rate(params: &ModelParams, t: f64) -> f64 {
        let g = params.gamma0();
        let x = params.x();
        let u = (-g * t).exp();
        let xu = x * u;
        g * (1.0 - 2.0 * x + xu) / ((1.0 - xu) * (1.0 - 2.0 * x + x * xu))
    }

    /// Markovian decoherence rate, constant `(gamma0/2) coth(beta omega0/2)`.
    pub fn markov_decoherence_rate(params: &ModelParams) -> f64 {
        params.gamma0() / 2.0 * coth_half(params)
    }

    /// Markovian relaxation rate, constant `gamma0 coth(beta omega0/2)`.
    pub fn markov_relaxation_rate(params: &ModelParams) -> f64 {
        params.gamma0() * coth_half(params)
    }

    /// Non-Markovian fidelity of the sigma_x eigenstate:
    /// `1/2 + (1/2) e^{-gamma0 t/2} Upsilon(t)`; the carrier phase cancels
    /// against the free evolution.
    pub fn nm_sigmax_fidelity(params: &ModelParams, t: f64) -> f64 {
        0.5 + 0.5 * (-params.gamma0() * t / 2.0).exp() * upsilon(params, t)
    }

    /// Markovian fidelity of the sigma_x eigenstate.
    pub fn markov_sigmax_fidelity(params: &ModelParams, t: f64) -> f64 {
        0.5 + 0.5 * (-params.gamma0() * t / 2.0 * coth_half(params)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{
        asymptotic_state, evolve_markov, evolve_nonmarkov, evolve_zero_temperature, MethodLabel,
    };

    fn params_x005() -> ModelParams {
        ModelParams::from_x(1.0, 0.01, 0.05).unwrap()
    }

    #[test]
    fn zero_t_decoherence_rate_is_half_gamma() {
        let p = ModelParams::new(1.0, 0.01, f64::INFINITY).unwrap();
        let g = TimeGrid::uniform(3.0, 0.05).unwrap();
        let tr = evolve_zero_temperature(&p, &QubitDensityMatrix::sigma_x_plus(), &g).unwrap();
        let rate = decoherence_rate(&tr).unwrap();
        for v in rate.values.iter().flatten() {
            assert!((v - 0.005).abs() < 1e-6, "rate {v}");
        }
    }

    #[test]
    fn nm_decoherence_rate_closed_form_endpoints() {
        let p = params_x005();
        let r0 = closed_form::nm_decoherence_rate(&p, 0.0);
        assert!((r0 / (p.gamma0() / 2.0) - 1.105_263_157_894_736_8).abs() < 1e-12);
        let r_late = closed_form::nm_decoherence_rate(&p, 800.0);
        assert!((r_late / (p.gamma0() / 2.0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn finite_difference_matches_closed_form_at_second_order() {
        let p = params_x005();
        let rho0 = QubitDensityMatrix::sigma_x_plus();
        let mut errs = Vec::new();
        for dt in [0.1, 0.05] {
            let g = TimeGrid::uniform(5.0, dt).unwrap();
            let tr = evolve_nonmarkov(&p, &rho0, &g).unwrap();
            let fd = decoherence_rate(&tr).unwrap();
            let worst = fd
                .values
                .iter()
                .zip(g.times())
                .map(|(v, &tg)| {
                    let exact = closed_form::nm_decoherence_rate(&p, tg / p.gamma0());
                    (v.unwrap() - exact).abs()
                })
                .fold(0.0f64, f64::max);
            errs.push(worst);
        }
        // halving the step should cut the error by about 4
        let ratio = errs[0] / errs[1];
        assert!(ratio > 2.5 && ratio < 6.0, "convergence ratio {ratio}, errs {errs:?}");
    }

    #[test]
    fn zero_t_relaxation_rate_is_gamma() {
        let p = ModelParams::new(1.0, 0.01, f64::INFINITY).unwrap();
        let g = TimeGrid::uniform(3.0, 0.05).unwrap();
        let tr = evolve_zero_temperature(&p, &QubitDensityMatrix::excited(), &g).unwrap();
        let inf = asymptotic_state(&p, MethodLabel::ZeroT);
        let rate = relaxation_rate(&tr, &inf, Method::ZeroT).unwrap();
        for v in rate.values.iter().flatten() {
            assert!((v - 0.01).abs() < 1e-6, "rate {v}");
        }
    }

    #[test]
    fn markov_relaxation_rate_is_constant_coth() {
        let p = params_x005();
        let g = TimeGrid::uniform(3.0, 0.05).unwrap();
        let tr = evolve_markov(&p, &QubitDensityMatrix::excited(), &g).unwrap();
        let inf = asymptotic_state(&p, MethodLabel::Markov);
        let rate = relaxation_rate(&tr, &inf, Method::Markov).unwrap();
        let expect = closed_form::markov_relaxation_rate(&p);
        for v in rate.values.iter().flatten() {
            assert!((v - expect).abs() / expect < 1e-6, "rate {v} vs {expect}");
        }
    }

    #[test]
    fn relaxation_rejects_mismatched_asymptote() {
        let p = params_x005();
        let g = TimeGrid::uniform(3.0, 0.5).unwrap();
        let tr = evolve_markov(&p, &QubitDensityMatrix::excited(), &g).unwrap();
        let inf = asymptotic_state(&p, MethodLabel::ZeroT);
        assert!(relaxation_rate(&tr, &inf, Method::ZeroT).is_err());
    }

    #[test]
    fn rate_ratio_half_for_both_baselines() {
        let p = params_x005();
        let g = TimeGrid::uniform(5.0, 0.05).unwrap();
        // zero temperature
        let pz = ModelParams::new(1.0, 0.01, f64::INFINITY).unwrap();
        let tr = evolve_zero_temperature(&pz, &QubitDensityMatrix::sigma_x_plus(), &g).unwrap();
        let dec = decoherence_rate(&tr).unwrap();
        let tr_e = evolve_zero_temperature(&pz, &QubitDensityMatrix::excited(), &g).unwrap();
        let rel =
            relaxation_rate(&tr_e, &asymptotic_state(&pz, MethodLabel::ZeroT), Method::ZeroT)
                .unwrap();
        let ratio = rate_ratio(&dec, &rel).unwrap();
        for v in ratio.values.iter().flatten() {
            assert!((v - 0.5).abs() < 1e-5, "ratio {v}");
        }
        // Markov at finite temperature
        let tr = evolve_markov(&p, &QubitDensityMatrix::sigma_x_plus(), &g).unwrap();
        let dec = decoherence_rate(&tr).unwrap();
        let tr_e = evolve_markov(&p, &QubitDensityMatrix::excited(), &g).unwrap();
        let rel =
            relaxation_rate(&tr_e, &asymptotic_state(&p, MethodLabel::Markov), Method::Markov)
                .unwrap();
        let ratio = rate_ratio(&dec, &rel).unwrap();
        for v in ratio.values.iter().flatten() {
            assert!((v - 0.5).abs() < 1e-5, "ratio {v}");
        }
    }

    #[test]
    fn nm_rate_ratio_near_half() {
        let p = params_x005();
        let g = TimeGrid::uniform(5.0, 0.02).unwrap();
        let dec = decoherence_rate(
            &evolve_nonmarkov(&p, &QubitDensityMatrix::sigma_x_plus(), &g).unwrap(),
        )
        .unwrap();
        let rel = relaxation_rate(
            &evolve_nonmarkov(&p, &QubitDensityMatrix::excited(), &g).unwrap(),
            &asymptotic_state(&p, MethodLabel::NonMarkovLowT),
            Method::NonMarkovLowT,
        )
        .unwrap();
        let ratio = rate_ratio(&dec, &rel).unwrap();
        for (v, &tg) in ratio.values.iter().zip(g.times()) {
            if tg >= 0.1 {
                let v = v.expect("ratio defined on [0.1, 5]");
                assert!((v - 0.5).abs() <= 0.06, "ratio {v} at t_gamma = {tg}");
            }
        }
    }

    #[test]
    fn fidelity_boundary_values() {
        let p = params_x005();
        let g = TimeGrid::uniform(40.0, 0.05).unwrap();
        let rho0 = QubitDensityMatrix::sigma_x_plus();
        let tr = evolve_nonmarkov(&p, &rho0, &g).unwrap();
        let f = fidelity_vs_free(&tr, &rho0);
        assert!((f[0] - 1.0).abs() < 1e-14, "pure state starts at unit fidelity");
        assert!((f.last().unwrap() - 0.5).abs() < 1e-8, "coherence floor at long times");
        // frozen value at gamma0 t = 1
        let idx = 20;
        assert!((g.times()[idx] - 1.0).abs() < 1e-12);
        assert!((f[idx] - 0.793_500_707_170_363_7).abs() < 1e-12);
        // closed form matches the trace overlap everywhere
        for (fi, &tg) in f.iter().zip(g.times()) {
            let cf = closed_form::nm_sigmax_fidelity(&p, tg / p.gamma0());
            assert!((fi - cf).abs() < 1e-12);
        }
    }

    #[test]
    fn fidelity_of_mixed_state_starts_at_purity() {
        let p = params_x005();
        let g = TimeGrid::uniform(1.0, 0.5).unwrap();
        let rho0 = QubitDensityMatrix::from_parts(0.3, C64::new(0.2, 0.1)).unwrap();
        let tr = evolve_nonmarkov(&p, &rho0, &g).unwrap();
        let f = fidelity_vs_free(&tr, &rho0);
        assert!((f[0] - rho0.purity()).abs() < 1e-14);
    }

    #[test]
    fn entropy_reference_points() {
        assert_eq!(von_neumann_entropy(&QubitDensityMatrix::excited()), 0.0);
        assert_eq!(von_neumann_entropy(&QubitDensityMatrix::sigma_x_plus()), 0.0);
        let mixed = von_neumann_entropy(&QubitDensityMatrix::maximally_mixed());
        assert!((mixed - 0.693_147_180_559_945_3).abs() < 1e-15);
        let thermal = QubitDensityMatrix::from_parts(0.05, C64::new(0.0, 0.0)).unwrap();
        assert!((von_neumann_entropy(&thermal) - 0.198_515_243_345_872_56).abs() < 1e-15);
    }

    #[test]
    fn entropy_invariant_under_coherence_phase() {
        for k in 0..8 {
            let phase = C64::from_polar(0.3, k as f64 * 0.7);
            let rho = QubitDensityMatrix::from_parts(0.4, phase).unwrap();
            let s0 = von_neumann_entropy(&QubitDensityMatrix::from_parts(0.4, C64::new(0.3, 0.0)).unwrap());
            assert!((von_neumann_entropy(&rho) - s0).abs() < 1e-14);
        }
    }

    #[test]
    fn entropy_difference_sign_pattern() {
        // initially the correlated dynamics mixes less, at intermediate times
        // more, and the late-time difference settles at the gap between the
        // two thermal asymptotes
        let p = params_x005();
        let g = TimeGrid::uniform(40.0, 0.05).unwrap();
        let rho0 = QubitDensityMatrix::excited();
        let nm = evolve_nonmarkov(&p, &rho0, &g).unwrap();
        let mk = evolve_markov(&p, &rho0, &g).unwrap();
        let diff: Vec<f64> = nm
            .states
            .iter()
            .zip(&mk.states)
            .map(|(a, b)| von_neumann_entropy(a) - von_neumann_entropy(b))
            .collect();
        assert!(diff[4] < 0.0, "early difference should be negative, got {}", diff[4]);
        assert!(diff[400] > 0.0, "intermediate difference should be positive");
        // after the peak the difference decreases monotonically toward the
        // asymptotic entropy gap
        let peak = diff
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        for w in diff[peak..].windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        let gap = 0.198_515_243_345_872_56 - 0.191_444_081_957_717_3;
        assert!((diff.last().unwrap() - gap).abs() < 1e-4);
    }

    #[test]
    fn nm_fidelity_dominates_markov() {
        let p = params_x005();
        let g = TimeGrid::uniform(10.0, 0.05).unwrap();
        let rho0 = QubitDensityMatrix::sigma_x_plus();
        let f_nm = fidelity_vs_free(&evolve_nonmarkov(&p, &rho0, &g).unwrap(), &rho0);
        let f_mk = fidelity_vs_free(&evolve_markov(&p, &rho0, &g).unwrap(), &rho0);
        for (a, b) in f_nm.iter().zip(&f_mk) {
            assert!(a >= &(b - 1e-14));
        }
    }

    #[test]
    fn degenerate_points_are_absent_not_infinite() {
        let p = ModelParams::new(1.0, 0.01, f64::INFINITY).unwrap();
        // ground state: no coherence, population already at the asymptote
        let g = TimeGrid::uniform(1.0, 0.1).unwrap();
        let tr = evolve_zero_temperature(&p, &QubitDensityMatrix::ground(), &g).unwrap();
        let dec = decoherence_rate(&tr).unwrap();
        assert!(dec.values.iter().all(Option::is_none));
        let rel = relaxation_rate(&tr, &asymptotic_state(&p, MethodLabel::ZeroT), Method::ZeroT)
            .unwrap();
        assert!(rel.values.iter().all(Option::is_none));
    }
}
