//! Decide whether a bipartite mixed state can be distilled into a pure
//! entangled state, with unit fidelity, from a *finite* number of copies.
//!
//! The decision is constructive: a state is distillable from `n` copies
//! exactly when the regrouped tensor power carries a *distillable subspace*
//! (DSS) — a product subspace in which the state's component is pure and
//! entangled. This crate finds those subspaces, synthesizes the one-way
//! projective protocol that extracts them, and classifies two-qubit states
//! by their λ′ spectrum.
//!
//! The main entry points, bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a cyclic-Jacobi Hermitian
//!   eigensolver, SVD and Kronecker products.
//! - [`state`]: validated bipartite density matrices, tensor powers with
//!   A/B regrouping, product-subspace projections, partial transpose.
//! - [`schmidt`]: Schmidt decompositions of pure bipartite vectors, local
//!   filtering, entanglement entropy.
//! - [`dss`]: search, verification and combination of distillable
//!   subspaces; the zero-pattern/rank consistency check.
//! - [`protocol`]: one-way projective protocols built from a DSS
//!   partition, outcome accounting and finite-copy yield.
//! - [`two_qubit`]: the λ′ spectrum, inseparability and quasi-separability
//!   tests, and the finite-copy distillability classifier for 2⊗2 states.
//! - [`io`]: the JSON state-file format and deterministic analysis
//!   reports used by the `dss-distill` command-line tool.
//!
//! # Quick start
//!
//! ```
//! use dss_core::state::BipartiteDensity;
//! use dss_core::dss::find_dss;
//! use dss_core::linalg::ComplexMatrix;
//!
//! // An equal mixture of the Bell state (|00⟩+|11⟩)/√2 and |01⟩.
//! let rho = BipartiteDensity::new(
//!     ComplexMatrix::from_real(4, 4, &[
//!         0.25, 0.0, 0.0, 0.25,
//!         0.0,  0.5, 0.0, 0.0,
//!         0.0,  0.0, 0.0, 0.0,
//!         0.25, 0.0, 0.0, 0.25,
//!     ]),
//!     2, 2, dss_core::TOL,
//! ).unwrap();
//!
//! // No single-copy DSS exists for a mixed two-qubit state...
//! assert!(find_dss(&rho, 2, 2, dss_core::TOL).unwrap().is_empty());
//!
//! // ...but two copies carry one, with probability 1/8.
//! let rho2 = rho.tensor_power(2).unwrap();
//! let hits = find_dss(&rho2, 2, 2, dss_core::TOL).unwrap();
//! assert_eq!(hits.len(), 1);
//! assert!((hits[0].probability - 0.125).abs() < 1e-12);
//! ```

pub mod dss;
pub mod io;
pub mod linalg;
pub mod protocol;
pub mod schmidt;
pub mod state;
pub mod two_qubit;

mod error;
mod guide;

#[cfg(test)]
pub(crate) mod test_fixtures;

pub use error::{Error, Result};

/// Default absolute tolerance (max-norm) for all validation and
/// numerical-rank decisions. Double precision at dimensions ≤ a few
/// hundred keeps roundoff far below this; every operation accepts an
/// explicit override.
pub const TOL: f64 = 1e-9;

/// Default relative cutoff below which Schmidt coefficients are treated
/// as zero. Schmidt number is discontinuous, so the cutoff is explicit
/// and configurable in [`schmidt::schmidt_decompose`].
pub const SCHMIDT_CUTOFF: f64 = 1e-8;

/// Default cap on the row count of a materialized tensor power.
pub const MAX_DIM: usize = 4096;

/// Default cap on the number of subset pairs a DSS search may enumerate.
pub const SEARCH_BUDGET: u128 = 1_000_000;
