//! Exact-arithmetic workbench for modules over higher Frobenius kernels of
//! `SL_2` and their generic p-character deformations.
pub mod endpresent;
pub mod error;
pub mod exactfield;
pub mod homology;
pub mod repcore;
pub mod report;
pub mod smallalg;
pub mod steinberg;
pub mod vermatwist;
pub use error::{Error, Result};
