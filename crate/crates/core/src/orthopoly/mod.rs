//! Classical weights, orthonormal weighted functions and Gauss rules.

mod family;
mod gauss;
mod phi;

pub use family::{recurrence_coeffs, WeightFamily};
pub use gauss::{gauss_legendre, gauss_rule, PlainRule, QuadratureRule, MAX_ORDER};
pub use phi::{phi, phi_all, phi_scaled, Scaled};

pub(crate) use phi::phi_into;
