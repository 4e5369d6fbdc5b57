//! Prime-field scalars, linear algebra over `F_p`, and finite commutative
//! `F_p`-algebras with their homomorphisms and standard constructions.

mod algebra;
mod construct;
mod field;
mod hom;
mod matrix;
mod poly;

pub use algebra::{AlgebraJson, FiniteAlgebra, Validation};
pub use construct::{
    base_field, corestrict, function_algebra, function_algebra_n, ideal_closure, kron, product,
    quotient_by_ideal, relative_tensor, span_algebra, tensor, univariate_quotient, Product,
    Quotient, Subalgebra, Tensor,
};
pub use field::{PrimeField, Scalar, MAX_PRIME};
pub use hom::{enumerate_homs, AlgebraHom};
pub use matrix::{FpMatrix, Subspace};
pub use poly::Poly;
