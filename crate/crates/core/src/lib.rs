//! Exact enumeration of abelian `b_0`-stable subalgebras of `g_1` for every
//! `Z_2`-grading `g = g_0 ⊕ g_1` of a simple Lie algebra.
//!
//! Three independent counts are produced for each involution class: a closed
//! form in Weyl group orders and connection indices, a breadth-first search
//! for σ-minuscule affine Weyl group elements, and a direct search over weight
//! subsets of `g_1`.

pub mod census;
pub mod cli;
pub mod error;
pub mod golden;
pub mod involution;
pub mod linalg;
pub mod oracle;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};

/// Integer scalar used for root coordinates and lattice computations.
pub type Int = i64;
/// Exact rational scalar.
pub type Rational = num_rational::Ratio<Int>;
pub type IntMatrix = linalg::Matrix<Int>;
pub type RatMatrix = linalg::Matrix<Rational>;
