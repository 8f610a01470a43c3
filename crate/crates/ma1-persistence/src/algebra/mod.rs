//! Exact arithmetic backing the series expansion: the ring ℚ[s] with
//! `s = (2π)^{-1/2}`, polynomials over it, Hermite polynomials, and the
//! Gaussian integrals that drive the coefficient recursion.

mod gaussian;
mod gpoly;
mod hermite;
mod pi;

pub use gaussian::{half_moment, mehler_kernel, monomial_hq_normsq, phi_derivative_at_zero};
pub(crate) use gaussian::factorial;
pub use gpoly::GPoly;
pub use hermite::{hermite_normalized_values, HermitePoly};
pub use pi::PiElement;
