//! Generic numerical building blocks: bracketed root finding and quadrature.

pub mod quad;
pub mod roots;

pub use quad::{integrate, integrate_pieces, QuadConfig, QuadError};
pub use roots::{bisect, brent, first_sign_change, linspace, logspace, RootError, Tolerance};
