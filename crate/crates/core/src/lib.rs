//! Combinatorial models of E_n operads.
//!
//! The crate builds the complete-graphs poset operads, the right-adjoint
//! constructions `R`, `R₁`, `R₂` over Z/2-sets, monoids and 2-truncated
//! operads, an exact-rational little n-cubes operad, and generalized tensor
//! products of cube operads. Claims about these objects are checked by brute
//! force: operad axioms on every composable tuple at small arity, and integer
//! homology of the nerves of the arity posets.

pub mod adjoint;
pub mod complex;
pub mod cubes;
pub mod edges;
pub mod error;
pub mod graphs;
pub mod homology;
pub mod operad;
pub mod perm;
pub mod poset;
pub mod report;
pub mod suites;
pub mod tensor;

pub use error::{Error, Result};
