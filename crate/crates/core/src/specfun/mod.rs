//! Real special functions: Airy Ai/Ai′, Bessel J_ν/J′_ν of real order, log-gamma.
//!
//! Every function here is a pure function of its arguments.

mod airy;
mod bessel;
mod gamma;

pub use airy::{airy_ai, airy_ai_prime, airy_pair, AI0, AIP0, AIRY_MAX, AIRY_MIN};
pub use bessel::{
    bessel_j, bessel_j_and_prime, bessel_j_prime, MAX_ARG as BESSEL_MAX_ARG, MAX_ORDER as BESSEL_MAX_ORDER,
};
pub use gamma::log_gamma;
