//! Numeric tolerances used by validation checks throughout the crate.
//!
//! Each constant is an absolute bound; all quantities it is compared
//! against live on O(1) scales (unit-norm states, unit-modulus spectra),
//! so no relative scaling is needed.

/// Max |(A^H A - I)_ij| accepted when validating a coin or U(k) matrix.
pub const UNITARITY: f64 = 1e-12;

/// Allowed drift of a state's squared norm away from 1.
pub const STATE_NORM: f64 = 1e-12;

/// Allowed deviation of a probability distribution's total mass from 1.
pub const DIST_SUM: f64 = 1e-10;

/// Allowed deviation of |lambda| from 1 for eigenvalues of a unitary.
pub const EIGENVALUE_MODULUS: f64 = 1e-10;

/// Max |<v_i, v_j>| (i != j) accepted for a non-degenerate eigenbasis.
pub const EIGENVECTOR_ORTHO: f64 = 1e-8;

/// Eigenvalue gap below which a momentum node counts as degenerate.
/// Degenerate nodes are dropped from limit-law quadrature and their
/// weight renormalised away.
pub const DEGENERACY_GAP: f64 = 1e-8;

/// Allowed deviation of limit-law weights from total mass 1.
pub const WEIGHT_SUM: f64 = 1e-8;

/// Entries with |a_ij| at or below this count as zero when classifying
/// a coin as diagonal (drift-only walk).
pub const DIAGONAL_COIN: f64 = 1e-12;
