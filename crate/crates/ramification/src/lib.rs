//! Lower and upper ramification filtrations of a finite Galois extension,
//! stored as group orders only, with the Herbrand transforms between them.

mod herbrand;
mod profile;

pub use herbrand::{herbrand_phi, herbrand_psi, PiecewiseLinearFn};
pub use profile::{
    cyclic_quotient_profile, cyclic_subgroup_profile, cyclotomic_profile, different_lower,
    different_upper, lower_to_upper, profile_from_upper, tame_compose, FiltrationProfile,
    UpperStep,
};
