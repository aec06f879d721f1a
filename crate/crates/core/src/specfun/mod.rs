//! Special functions and quadrature.

mod gamma;
mod kummer;
mod legendre;
mod quadrature;

pub use gamma::{cos_pi, digamma, gamma, is_gamma_pole, ln_gamma_signed, rgamma, sin_pi};
pub use kummer::{kummer_m, kummer_u_3half};
pub use legendre::{legendre_all, legendre_fill};
pub use quadrature::{gauss_legendre, QuadratureRule};

/// Default per-panel quadrature order.
pub const DEFAULT_QUAD_ORDER: usize = 64;
