//! Invariants, function basis and syzygies of third-order symmetric tensors
//! in three dimensions.

pub mod checks;
pub mod error;
pub mod exact;
pub mod expr;
pub mod function_basis;
pub mod invariants;
pub mod io;
pub mod optimizer;
pub mod scalar;
pub mod syzygy;
pub mod tensor;
pub mod witness;

pub use error::{Error, Result};
pub use invariants::{all_invariants, invariants_of, Invariant, InvariantVector, Parity};
pub use scalar::{ExactScalar, Field, Scalar};
pub use tensor::{decompose, recompose, HarmonicParts, Orthogonal3, Sym3Tensor, Traceless3Tensor, Vec3};
