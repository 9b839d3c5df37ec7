//! Exact second-moment properties of local random quantum circuits.
//!
//! A circuit here is a prespecified arrangement of independent Haar-random
//! two-qudit gates acting on `n` qudits of local dimension `q`, preceded by an
//! implicit layer of independent Haar-random single-qudit gates (so every
//! ensemble is invariant under local unitaries). For such ensembles the
//! averaged two-copy moment operator of the output state is a non-negative
//! combination of the tensor-product permutation operators
//! `F_x = ⊗_i F^{x_i}`, `x ∈ F_2^n`, where `F` swaps the two copies of one
//! qudit. Evolving the `2^n` expansion coefficients under the per-gate
//! transfer rule is exact and cheap, which makes collision probabilities,
//! anti-concentration errors and relative-error 2-design diagnostics
//! computable far beyond statevector sizes.
//!
//! The crate is organized as:
//!
//! - [`model`]: shared parameter/vector/matrix types, bit utilities,
//!   compensated summation.
//! - [`wht`]: the fast Walsh–Hadamard transform connecting the permutation
//!   basis to the local projector (symmetric/antisymmetric) basis.
//! - [`arch`]: circuit layouts (brickwork, random pairings, JSON files).
//! - [`statmech`]: the exact coefficient-vector evolution, transfer matrices
//!   and collision probabilities.
//! - [`metrics`]: Haar reference values, anti-concentration error, the
//!   state-design error bound, spectral coefficients and projector-basis
//!   unitary-design diagnostics.
//! - [`mc`]: an independent Monte Carlo statevector oracle with seeded,
//!   reproducible estimators.

pub mod arch;
pub mod error;
pub mod mc;
pub mod metrics;
pub mod model;
pub mod statmech;
pub mod wht;

pub use arch::{all_to_all, brickwork_1d, parse_architecture, Architecture, Boundary};
pub use error::{Error, Result};
pub use model::{
    hamming_weight, pairwise_sum, ConfigIndex, ModelParams, MomentVector, TransferMatrix,
    DEFAULT_TOLERANCE,
};
pub use statmech::{
    apply_gate, collision_probability, evolve, initial_moment, pair_weights, trace_check,
    transfer_matrix, PairTransfer,
};
