//! Entanglement measures from operator expectation values.
//!
//! For a bipartite pure state the family `M(n) = 1 − Tr ρ_Aⁿ` (n ≥ 2) of
//! entanglement monotones can be rewritten as a nested sum of expectation
//! values of any complete, Hilbert-Schmidt-orthonormal operator basis of
//! the A-side operator space. This crate builds three such bases (Pauli,
//! generalized Gell-Mann, Weyl clock/shift monomials), verifies the
//! completeness identities that make the rewriting exact, evaluates the
//! measures along both routes, and applies sum-uncertainty entanglement
//! criteria (plus a PPT baseline) to mixed and many-particle states.
//!
//! ```
//! use qent::measures::{me_chain, me_direct};
//! use qent::bases::pauli_basis;
//! use qent::states::PureState;
//!
//! let bell = PureState::bell_phi_plus();
//! let direct = me_direct(&bell, 2, &[0]).unwrap();
//! let chain = me_chain(&bell, 2, &[&pauli_basis()], &[0]).unwrap();
//! assert!((direct.value - 0.5).abs() < 1e-12);
//! assert!((chain.value - direct.value).abs() < 1e-9);
//! ```

pub mod bases;
pub mod criteria;
pub mod error;
pub mod measures;
pub mod numerics;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
