//! Module calculus: simples, baby Vermas, Frobenius twists, tensor products,
//! duals, level restriction and validation.

mod construct;
mod label;
mod module;
mod serial;
mod validate;

pub use construct::{
    baby_verma, build_simple, dual, direct_sum, extend_levels, frobenius_twist, frobenius_twist_capped,
    restrict_levels, simple_restricted, tensor, tensor_all,
};
pub use label::WeightLabel;
pub use module::ModuleRep;
pub use serial::{from_canonical_text, to_canonical_text};
pub use validate::{validate, ValidationReport};
