//! Twist elements for baby Vermas, the Hom-space isomorphism
//! `V_{mu - mu'} -> Hom(Z_mu, Z_mu' (x) V)`, twisted composition on graded
//! endomorphism algebras and the rescaling that identifies them.

mod equivalence;
mod homiso;
mod pipelines;
mod twist;

pub use equivalence::{
    extend_multiplicatively, solve_rescaling, transport, twisted_product, twisted_projective, verify_equivalence,
    Extension, GradedEnd, RescalingSolution,
};
pub use homiso::{hom_iso, hom_iso_inverse, vector_weight, verma_tensor_split, VermaSummand};
pub use pipelines::{composition_law_holds, generic_seeds, verify_hom_iso, verify_projectives, verify_twist};
pub use twist::{twist_closed_form, twist_oracle, TwistElement};

#[cfg(test)]
mod tests;
