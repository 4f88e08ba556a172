//! Generators of the endomorphism algebra of projectives for the Frobenius
//! kernels of SL_2, their relations up to measured scalars, monomial spanning
//! and the centre.

mod center;
mod generation;
mod generators;
mod pieces;
mod relations;
mod rules;

pub use generators::{build_generators, generators_are_intertwiners, to_dot, EndGenerator, GenKind, Presentation};
pub use center::{block_centers, predicted_elements, verify_center, BlockCenter, BlockKind};
pub use generation::{monomial_span_rows, verify_generation, SpanRow};
pub use pieces::{normalize, swap_matrix, Chain, SingleLevel};
pub use rules::verify_tensor_rules;
pub use relations::{relations_report, verify_relations, RelationReport};
