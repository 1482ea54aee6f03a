//! The reduced qubit state: a 2x2 complex Hermitian unit-trace matrix.
//!
//! Construction always goes through [`validate_density_matrix`], which
//! hermitizes, renormalizes small trace drift, and rejects anything outside
//! tight tolerances, so a `QubitDensityMatrix` value can be assumed physical
//! everywhere downstream.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

/// Hard tolerance: trace deviation and positivity violation beyond this are
/// rejected as unphysical rather than repaired.
pub const HARD_TOL: f64 = 1e-8;

/// Reduced density matrix of the two-level atom. `rho11` is the excited-state
/// population, `rho10` the coherence (row 1, column 0).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitDensityMatrix {
    rho00: C64,
    rho01: C64,
    rho10: C64,
    rho11: C64,
}

/// Hermitize and check raw matrix entries, returning a physical state.
///
/// The off-diagonals are averaged against each other's conjugate, diagonal
/// imaginary parts below the hard tolerance are dropped, and the trace is
/// renormalized only when it is within the hard tolerance of one.
pub fn validate_density_matrix(
    rho00: C64,
    rho01: C64,
    rho10: C64,
    rho11: C64,
) -> Result<QubitDensityMatrix> {
    for (name, v) in [("rho00", rho00), ("rho01", rho01), ("rho10", rho10), ("rho11", rho11)] {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NotAState(format!("{name} is not finite: {v}")));
        }
    }
    if rho00.im.abs() > HARD_TOL || rho11.im.abs() > HARD_TOL {
        return Err(Error::NotAState(format!(
            "diagonal entries have imaginary parts ({:.3e}, {:.3e})",
            rho00.im, rho11.im
        )));
    }
    let off = 0.5 * (rho10 + rho01.conj());
    let mut p0 = rho00.re;
    let mut p1 = rho11.re;
    let trace = p0 + p1;
    if (trace - 1.0).abs() > HARD_TOL {
        return Err(Error::NotAState(format!("trace = {trace:.12} deviates from 1")));
    }
    p0 /= trace;
    p1 /= trace;
    let mut off = off / trace;
    if p0 < -HARD_TOL || p1 < -HARD_TOL {
        return Err(Error::NotAState(format!("negative population ({p0:.3e}, {p1:.3e})")));
    }
    p0 = p0.max(0.0);
    p1 = p1.max(0.0);
    let bound = p0 * p1;
    let coh2 = off.norm_sqr();
    if coh2 > bound + HARD_TOL {
        return Err(Error::NotAState(format!(
            "positivity violated: |rho10|^2 = {coh2:.6e} > rho00*rho11 = {bound:.6e}"
        )));
    }
    if coh2 > bound && bound >= 0.0 {
        // within tolerance of the boundary; clamp onto it
        off *= (bound / coh2).sqrt();
    }
    Ok(QubitDensityMatrix {
        rho00: C64::new(p0, 0.0),
        rho01: off.conj(),
        rho10: off,
        rho11: C64::new(p1, 0.0),
    })
}

impl QubitDensityMatrix {
    pub fn new(rho00: C64, rho01: C64, rho10: C64, rho11: C64) -> Result<Self> {
        validate_density_matrix(rho00, rho01, rho10, rho11)
    }

    /// Build from excited population and coherence; `rho00 = 1 - rho11`.
    pub fn from_parts(rho11: f64, rho10: C64) -> Result<Self> {
        validate_density_matrix(
            C64::new(1.0 - rho11, 0.0),
            rho10.conj(),
            rho10,
            C64::new(rho11, 0.0),
        )
    }

    /// Pure excited state |1><1|.
    pub fn excited() -> Self {
        Self::from_parts(1.0, C64::new(0.0, 0.0)).unwrap()
    }

    /// Pure ground state |0><0|.
    pub fn ground() -> Self {
        Self::from_parts(0.0, C64::new(0.0, 0.0)).unwrap()
    }

    /// Maximally mixed state, identity/2.
    pub fn maximally_mixed() -> Self {
        Self::from_parts(0.5, C64::new(0.0, 0.0)).unwrap()
    }

    /// The sigma_x eigenstate (|0> + |1>)/sqrt(2).
    pub fn sigma_x_plus() -> Self {
        Self::from_parts(0.5, C64::new(0.5, 0.0)).unwrap()
    }

    pub fn rho00(&self) -> C64 {
        self.rho00
    }

    pub fn rho01(&self) -> C64 {
        self.rho01
    }

    pub fn rho10(&self) -> C64 {
        self.rho10
    }

    pub fn rho11(&self) -> C64 {
        self.rho11
    }

    /// Excited-state population as a real number.
    pub fn population_excited(&self) -> f64 {
        self.rho11.re
    }

    pub fn population_ground(&self) -> f64 {
        self.rho00.re
    }

    /// Coherence magnitude |rho10|.
    pub fn coherence_abs(&self) -> f64 {
        self.rho10.norm()
    }

    /// Tr rho^2.
    pub fn purity(&self) -> f64 {
        self.rho00.re * self.rho00.re
            + self.rho11.re * self.rho11.re
            + 2.0 * self.rho10.norm_sqr()
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            (self.rho00 - other.rho00).norm(),
            (self.rho10 - other.rho10).norm(),
            (self.rho11 - other.rho11).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}
