//! Lie algebras given by structure constants, with a Cartan involution,
//! the Killing form and the inner product `-c B(X, theta Y)`.

mod algebra;
mod inner;
pub(crate) mod json;
mod structure;

pub use algebra::{cartan_decompose, centralizer, subalgebra_generated, Element, LieAlgebra};
pub use inner::InnerProduct;
pub use json::AlgebraJson;
pub(crate) use json::{matrix_to_strings, strings_to_rows};
pub use structure::StructureConstants;
