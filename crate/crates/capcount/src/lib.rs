//! Capacities of real stable polynomials and the coefficient lower bounds
//! they certify.
//!
//! The crate computes `cap_alpha(P) = inf_{x > 0} P(x) / prod x_i^alpha_i`
//! for sparse polynomials with non-negative coefficients, decides
//! real-rootedness exactly via the Hermite-Sylvester criterion, counts
//! orientations with prescribed in-degrees and perfect matchings of
//! bipartite multigraphs exactly, and verifies that every exact count
//! dominates its capacity-based lower bound.

pub mod bounds;
pub mod capacity;
pub mod counting;
pub mod graph;
pub mod poly;
pub mod simplex;
pub mod stability;

mod coeff;
mod error;

pub use coeff::{Coefficient, FieldCoefficient};
pub use error::{Error, Result};
pub use graph::MultiGraph;
pub use poly::{ExponentVector, SparsePolynomial, UnivariatePoly};
