//! Reduced dynamics of a two-level atom coupled to a thermal multimode
//! field bath.
//!
//! The crate provides three independent routes to the same physics:
//!
//! * [`analytic`] — closed-form low-temperature non-Markovian evolution,
//!   its zero-temperature limit, and the Markovian fixed-bath baseline;
//! * [`oracle`] — brute-force ground truth: a discretized bath, a truncated
//!   Boltzmann-weighted Fock ensemble, and exact evolution by
//!   eigendecomposition of each excitation-number sector;
//! * [`functional`] — the amplitude-functional hierarchy: a coupled linear
//!   ODE system over photon-number distributions whose thermal sums
//!   assemble the reduced density matrix, plus pole-approximation closed
//!   forms of the same functionals.
//!
//! [`observables`] derives decoherence/relaxation rates, fidelity, and von
//! Neumann entropy from any trace, and [`validation`] bundles the
//! cross-engine consistency checks into a machine-readable report.
//!
//! Units: hbar = k_B = 1; time grids are expressed in units of 1/gamma0.

pub mod analytic;
pub mod error;
pub mod fock;
pub mod functional;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod state;
pub mod validation;

pub use error::{Error, Result};
pub use grid::{EvolutionTrace, Method, TimeGrid};
pub use model::{BathMode, BathSpec, ModelParams};
pub use state::{validate_density_matrix, QubitDensityMatrix};

/// Run closures in parallel when the `parallel` feature is enabled,
/// sequentially otherwise. Results come back in input order either way.
pub(crate) fn map_indexed<T, F, R>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
    }
}
