//! Tensor powers of the permutation module twisted by `μ_m`: orbit
//! summands, their characters, and orbit-count growth along truncations.

mod character;
mod length;

pub use character::{irreducibility_check, summand_decomposition, tuple_character, SummandDecomposition, TupleCharacter};
pub use length::{classify, length_report, HypergraphFamily, SearchFamily, LengthReport, LineFamily, TruncationFamily, Verdict};
