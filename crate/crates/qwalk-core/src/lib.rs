//! Coined quantum walks on the integer lattice `Z^d`.
//!
//! A walk is specified by an `N x N` unitary coin together with one
//! integer shift vector per coin component; a step applies the coin at
//! every site and then translates each component along its shift. The
//! crate provides:
//!
//! - exact position-space evolution on dynamically grown windows
//!   ([`evolve`]), and an independent momentum-space path that applies
//!   the walk's momentum-dependent one-step matrix node-wise on a
//!   periodic grid ([`evolve::evolve_spectral`]);
//! - spectral analysis of the one-step matrix: eigenvalue branches,
//!   group-velocity vectors, and the discretised weak-limit law of the
//!   rescaled position `X_n / n` ([`spectral::limit_law`]);
//! - convergence diagnostics in exact Kolmogorov distance and in
//!   moments, including closed-form reference laws for the standard
//!   two-state families ([`convergence`]);
//! - deterministic CSV/JSON serialisation of every result table
//!   ([`export`]).
//!
//! Numerical tolerances used by validation gates live in [`tol`].

pub mod cdf;
pub mod coin;
pub mod convergence;
pub mod eigen;
pub mod error;
pub mod evolve;
pub mod export;
pub mod fourier;
pub mod grid;
pub mod matrix;
pub mod spectral;
pub mod state;
pub mod tol;
pub mod walk;

pub use cdf::{kolmogorov_distance, projected_cdf, sup_gap_continuous, StepCdf};
pub use coin::{coin_family, make_coin, CoinMatrix, Family};
pub use convergence::{
    biased_support, compare_to_limit, compare_with_law, cramer_wold_suite, default_projections,
    ensemble_run_grid, hadamard_closed_form, ConvergenceReport, ConvergenceRow, HadamardMixedLaw,
};
pub use error::{Error, Result};
pub use evolve::{
    evolve, evolve_ensemble, evolve_ensemble_spectral, evolve_spectral, scaled_moment,
    spectral_grid_for, step, EvolutionResult,
};
pub use grid::MomentumGrid;
pub use spectral::{
    eigensystem, limit_cdf, limit_moment, limit_law, u_of_k, velocity, Eigensystem, LawMeta,
    LimitLaw, OmegaAtom, UkMatrix,
};
pub use state::{point_state, Distribution, Ensemble, PositionState, Window};
pub use walk::{tensor_spec, ShiftSet, WalkSpec};
