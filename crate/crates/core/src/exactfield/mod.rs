//! Exact arithmetic over `F_p` and `F_{p^2}` and the dense linear algebra built on it.

mod eigen;
mod field;
mod matrix;

pub use eigen::{joint_eigenspaces, JointEigenspace};
pub use field::{default_quadratic_modulus, is_prime, FieldCtx, FieldElement, MAX_PRIME};
pub use matrix::{Matrix, Solution, SpanBuilder};
