//! Hom spaces, submodule closure, simplicity, radicals, Fitting splitting,
//! projective covers, blocks and centres.

mod endalg;
mod hom;
mod projective;
mod split;
mod submodule;

pub use endalg::{
    end_algebra, end_algebra_canonical_text, from_parts, hom_as_gmodule, CoordinateSystem, EndAlgebra, EndBasisElement, GHom,
};
pub use hom::{hom_space, hom_space_unblocked, Degree, HomSpace};
pub use projective::{
    blocks, certify_generic_seed, digit_tuples, first_kernel_projective, first_kernel_projectives, projective_covers,
    restricted_simples, ProjectiveCover,
};
pub(crate) use projective::assemble;
pub use split::{is_isomorphic, split_indecomposables, Summand, SummandDecomposition};
pub use submodule::{highest_weight_vectors, is_simple, radical_and_head, radical_layers, spin, RadicalHead, Simplicity};

#[cfg(test)]
mod tests;
