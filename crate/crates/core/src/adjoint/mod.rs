//! Right-adjoint constructions: `R` on Z/2-sets, the atomic operad `R₁` of a
//! monoid, `R₂` on 2-truncated operads, their unit maps, and the finiteness
//! obstruction for 2-cogenerated operads.

pub mod monoid;
pub mod obstruction;
pub mod r;
pub mod trunc2;
pub mod z2;

pub use monoid::{AtomicOperad, FiniteMonoid, Monoid};
pub use obstruction::{finiteness_obstruction_witness, FinitenessWitness};
pub use r::{r_unit_map, ru_nonclosure_check, NonClosure, RConstruction, REdgeLabelling};
pub use trunc2::{r2t2_equals_ru_check, R2Element, R2Operad, Trunc2, TruncatedOperad};
pub use z2::{FiniteZ2Carrier, FiniteZ2Set, UCarrier, Z2Carrier};
