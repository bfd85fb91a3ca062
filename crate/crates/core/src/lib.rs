//! Numerical solver for square systems of Laurent polynomial equations,
//! working in homogeneous (Cox) coordinates on the toric compactification
//! cut out by the Newton polytopes.
//!
//! The pipeline: Newton polytopes -> Minkowski sum -> ring of homogeneous
//! coordinates graded by the divisor class group -> resultant map between
//! graded pieces -> cokernel -> multiplication matrices -> simultaneous
//! eigenvalues -> Cox coordinates of every solution, including solutions on
//! or near the torus-invariant boundary divisors where affine solvers break
//! down.

pub mod cox;
pub mod error;
mod hull;
pub mod lattice;
pub mod polytope;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
