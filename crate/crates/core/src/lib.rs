//! Relational structures, invariant multilinear forms over cyclotomic
//! fields, their monomial symmetry groups, and the representation theory of
//! the resulting wreath products.

pub mod autgroup;
pub mod caps;
pub mod error;
pub mod forms;
pub mod fraisse;
pub mod relstruct;
pub mod repthy;

pub use autgroup::{monomial_automorphism_search, MonomialGroup, MonomialMap};
pub use caps::Caps;
pub use error::{Error, Result};
pub use forms::{CyclotomicScalar, Polynomial, SparseForm, Vector};
pub use relstruct::{OrbitPartition, PermGroup, Permutation, RelationalStructure, Signature};
