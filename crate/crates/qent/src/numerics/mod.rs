//! Dense complex linear algebra at desk scale: construction, tensor
//! products, partial trace and transpose, matrix power traces, and a
//! Jacobi eigensolver for Hermitian matrices.
//!
//! Everything operates on immutable values and returns fresh matrices;
//! nothing here holds interior mutability, so all types are freely
//! shareable across threads.

mod eigh;
mod matrix;
mod partial;
mod structure;

pub use eigh::{eigh, Eigh};
pub use matrix::ComplexMatrix;
pub use partial::{embed_at, partial_trace, partial_transpose};
pub use structure::TensorStructure;
