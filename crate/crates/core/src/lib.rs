//! A workbench for Stone duality over prime fields.
//!
//! Finite commutative `F_p`-algebras are given by structure constants. On top
//! of them this crate computes the pearl (the Frobenius-fixed subalgebra), the
//! universal p-Boolean quotient, primitive idempotent decompositions, the
//! finite Stone duality functors, light profinite towers with their closed and
//! open subobjects, and modules over function algebras as sheaves.

pub mod duality;
pub mod error;
pub mod fpalgebra;
pub mod limits;
pub mod pearl;
pub mod profinite;
pub mod sheafmod;
pub mod spectrum;

pub use error::{Error, ErrorClass, Result};
pub use limits::Limits;
