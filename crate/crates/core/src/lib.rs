//! Exact verification of the quadratic hypercube counterexample to Borsuk's
//! conjecture.
//!
//! - [`hypercube`]: ±1 vertices, the set `M`, and the embedding `x ↦ (x_i x_j)`.
//! - [`ortho`]: the orthogonality graph on `M`, ortho-free subsets and the
//!   part-count lower bound.
//! - [`polynomials`]: square-free polynomials over GF(p) and the rank checks
//!   behind `|A| <= alpha(n)`.
//! - [`bounds`]: the exact search for the least prime giving a counterexample.
//! - [`certificate`]: JSON witnesses that can be re-checked independently.

pub mod binomial;
pub mod bitset;
pub mod bounds;
pub mod certificate;
mod decimal;
pub mod error;
pub mod field;
pub mod hypercube;
pub mod mis;
pub mod ortho;
pub mod polynomials;
pub mod suite;

pub use error::{Error, Result};
