//! Finite-dimensional operator-algebra laboratory for CHSH/Bell quantities.
//!
//! The crate builds, evaluates, maximizes, and transports CHSH correlations
//! over matrix algebras:
//!
//! - [`linalg`]: dense complex matrices with Hermitian eigendecomposition,
//!   SVD, polar decomposition with partial isometry, tensor products, and
//!   partial traces.
//! - [`algebra`]: density-matrix states and the closure operations of the
//!   state space (convex combinations, twists, positivity).
//! - [`bell`]: admissible observable quadruples, the Bell operator and its
//!   Tsirelson ceiling, the constructive maximal-violation pair from
//!   non-commuting projections, the commutator norm identity, and a see-saw
//!   optimizer for the correlation supremum.
//! - [`functor`]: unital *-monomorphisms between matrix algebras, their
//!   composition, and the dual pullback action on states, including the
//!   CHSH preservation check for factor-wise embeddings.
//! - [`field`]: a periodic lattice free scalar field with wedge regions,
//!   Gaussian vacuum reduction to two wedge modes, truncated two-mode
//!   squeezed states, and pseudospin CHSH observables.
//!
//! All operations are pure and deterministic for fixed inputs; random
//! sampling is seeded explicitly through [`sampling`]. Independent work
//! items (see-saw restarts, sweep points) can run on the rayon pool via the
//! `parallel` feature with results identical to the sequential path.

pub mod algebra;
pub mod bell;
pub mod error;
pub mod exec;
pub mod field;
pub mod functor;
pub mod linalg;
pub mod sampling;

pub use error::{Error, Result};
