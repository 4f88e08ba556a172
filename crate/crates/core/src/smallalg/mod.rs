//! The reduced enveloping algebra `u_chi(sl2)` in a PBW basis and the
//! divided-power calculus behind every tensor construction.

mod divided;
mod pbw;
mod pchar;

pub use divided::{binomial_mod_p, coproduct_terms, divided_power_plan, multinomial_mod_p, DividedPowerPlan};
pub use pbw::{build_u_chi, Gen, PBWElement, UChi};
pub use pchar::PChar;
