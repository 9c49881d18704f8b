//! Numerical tolerances, centralized so the whole crate (and its test
//! suite) turns on one set of knobs.

/// Tolerance for identity checks (orthonormality, completeness,
/// chain/direct agreement at the matrix level, trace preservation).
pub const EQ_TOL: f64 = 1e-10;

/// Maximum allowed deviation from Hermiticity, `max |a_ij - conj(a_ji)|`.
pub const HERM_TOL: f64 = 1e-10;

/// Jacobi eigensolver convergence: off-diagonal Frobenius norm below this
/// stops the sweep loop.
pub const EIG_TOL: f64 = 1e-13;

/// Pure-state normalization: `|Σ|a_i|² - 1|` must stay below this.
pub const NORM_TOL: f64 = 1e-10;

/// Density matrices may have eigenvalues down to `-PSD_TOL` before they are
/// rejected as not positive semidefinite.
pub const PSD_TOL: f64 = 1e-8;

/// Agreement required between the operator-chain evaluation of a measure
/// and its direct trace evaluation.
pub const CHAIN_TOL: f64 = 1e-9;

/// Largest imaginary residual a measure may discard when taking the real
/// part of an analytically real sum.
pub const IMAG_TOL: f64 = 1e-9;

/// Criterion values within this margin of their threshold report
/// `NotDetected`: the criteria are strict-inequality violations, and
/// product pure states sit exactly on the bound.
pub const VERDICT_MARGIN: f64 = 1e-10;
